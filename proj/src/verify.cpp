#include "kdet/verify.hpp"

#include <cmath>
#include <sstream>

#include "kdet/baselines.hpp"
#include "kdet/criteria.hpp"
#include "kdet/ensembles.hpp"
#include "kdet/observables.hpp"
#include "kdet/rng.hpp"
#include "kdet/twocopy.hpp"

namespace kdet::verify {

void SuiteResult::check(bool ok, const std::string& description) {
  ++checks;
  if (!ok) {
    ++failures;
    if (messages.size() < 20) messages.push_back(description);
  }
}

namespace {

DensityOperator random_dense_state(const DimensionVector& dims, Rng& rng) {
  const int m = 1 + rng.uniform_int(3);
  return random_mixed(dims, PartitionMode::max_part_size, dims.site_count(), m, rng);
}

ProductLabel random_label(const DimensionVector& dims, Rng& rng) {
  std::vector<int> l(static_cast<std::size_t>(dims.site_count()));
  for (int i = 0; i < dims.site_count(); ++i) l[static_cast<std::size_t>(i)] = rng.uniform_int(dims.dim(i));
  return ProductLabel(std::move(l));
}

LocalVector random_local(int d, Rng& rng) {
  std::vector<cplx> a(static_cast<std::size_t>(d));
  double norm2 = 0.0;
  for (cplx& c : a) {
    c = rng.complex_normal();
    norm2 += std::norm(c);
  }
  const double norm = std::sqrt(norm2);
  for (cplx& c : a) c /= norm;
  return LocalVector(std::move(a));
}

ProductVector random_product_vector(const DimensionVector& dims, Rng& rng) {
  std::vector<LocalVector> sites;
  sites.reserve(static_cast<std::size_t>(dims.site_count()));
  for (int i = 0; i < dims.site_count(); ++i) sites.push_back(random_local(dims.dim(i), rng));
  return ProductVector::from_locals(dims, std::move(sites));
}

std::string describe(const std::string& what, double got, double want) {
  std::ostringstream os;
  os << what << ": got " << got << ", expected " << want;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Two-copy oracle equivalence

namespace {

void oracle_config(SuiteResult& result, const DimensionVector& dims, int n_states, Rng& rng) {
  const std::uint64_t total = dims.total_dimension();
  const auto subsets = enumerate_proper_subsets(dims.site_count());
  for (int s = 0; s < n_states; ++s) {
    const DensityOperator rho = random_dense_state(dims, rng);
    for (std::uint64_t fx = 0; fx < total; ++fx) {
      for (std::uint64_t fy = 0; fy < total; ++fy) {
        const SwapFiducial phi =
            SwapFiducial::from_labels(dims, unflatten(dims, fx), unflatten(dims, fy));
        const double reduced = swap_expectation(rho, phi);
        const double brute = oracle_two_copy(rho, phi);
        result.check(std::abs(reduced - brute) < 1e-10,
                     describe("oracle swap mismatch", reduced, brute));
        for (const PartitionMask& alpha : subsets) {
          const double red = partial_swap_expectation(rho, phi, alpha);
          const double oracle = oracle_two_copy(rho, phi, alpha);
          result.check(std::abs(red - oracle) < 1e-10,
                       describe("oracle partial-swap mismatch", red, oracle));
        }
      }
    }
    // General (non-basis) product fiducials, spot checks.
    const SwapFiducial general(random_product_vector(dims, rng), random_product_vector(dims, rng));
    result.check(std::abs(swap_expectation(rho, general) - oracle_two_copy(rho, general)) < 1e-10,
                 "oracle swap mismatch on general fiducial");
    for (const PartitionMask& alpha : subsets) {
      const double red = partial_swap_expectation(rho, general, alpha);
      const double oracle = oracle_two_copy(rho, general, alpha);
      result.check(std::abs(red - oracle) < 1e-10,
                   describe("oracle partial-swap mismatch on general fiducial", red, oracle));
    }
  }
}

}  // namespace

SuiteResult oracle_suite(std::uint64_t seed, int states_per_config, int only_n_qubits) {
  SuiteResult result;
  result.name = "oracle";
  Rng rng(Rng::splitmix(seed ^ 0x6f72636cULL));
  if (only_n_qubits > 0) {
    oracle_config(result, DimensionVector::qubits(only_n_qubits), states_per_config, rng);
  } else {
    oracle_config(result, DimensionVector::qubits(3), states_per_config, rng);
    oracle_config(result, DimensionVector::qudits(2, 3), states_per_config, rng);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Soundness

namespace {

ElementFiducial random_element_fiducial(const DimensionVector& dims, Rng& rng) {
  const int d = dims.uniform_dim();
  std::vector<int> omega;
  for (int w = 0; w < d; ++w) {
    if (rng.uniform() < 0.5) omega.push_back(w);
  }
  if (omega.empty()) omega.push_back(rng.uniform_int(d));
  return ElementFiducial(random_label(dims, rng), std::move(omega));
}

}  // namespace

SuiteResult soundness_suite(std::uint64_t seed, int samples) {
  SuiteResult result;
  result.name = "soundness";
  const std::pair<int, int> configs[] = {{4, 2}, {4, 3}, {5, 2}};
  Rng rng(Rng::splitmix(seed ^ 0x736f756eULL));
  for (const auto& [n, k] : configs) {
    const DimensionVector dims = DimensionVector::qubits(n);
    for (int s = 0; s < samples; ++s) {
      {
        const DensityOperator rho =
            random_mixed(dims, PartitionMode::max_part_size, k, 6, rng);
        const SwapFiducial phi =
            SwapFiducial::from_labels(dims, random_label(dims, rng), random_label(dims, rng));
        const CriterionVerdict t1 = theorem1_evaluate(rho, phi, k);
        result.check(!t1.violated, describe("theorem 1 violated on a k-producible state (N=" +
                                                std::to_string(n) + ", k=" + std::to_string(k) + ")",
                                            t1.margin, 0.0));
        const CriterionVerdict t2 = theorem2_evaluate(rho, random_element_fiducial(dims, rng), k);
        result.check(!t2.violated, describe("theorem 2 violated on a k-producible state (N=" +
                                                std::to_string(n) + ", k=" + std::to_string(k) + ")",
                                            t2.margin, 0.0));
      }
      {
        const DensityOperator rho =
            random_mixed(dims, PartitionMode::exactly_k_parts, k, 6, rng);
        const SwapFiducial phi =
            SwapFiducial::from_labels(dims, random_label(dims, rng), random_label(dims, rng));
        const CriterionVerdict t3 = theorem3_evaluate(rho, phi, k);
        result.check(!t3.violated, describe("theorem 3 violated on a k-separable state (N=" +
                                                std::to_string(n) + ", k=" + std::to_string(k) + ")",
                                            t3.margin, 0.0));
        const CriterionVerdict t4 = theorem4_evaluate(rho, random_element_fiducial(dims, rng), k);
        result.check(!t4.violated, describe("theorem 4 violated on a k-separable state (N=" +
                                                std::to_string(n) + ", k=" + std::to_string(k) + ")",
                                            t4.margin, 0.0));
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Special-case recovery (density-matrix-element forms)

namespace {

/// Corner-element criterion written directly in flat density-matrix indices:
/// lhs = (2^k - 2) |rho_{0, D-1}|, rhs = sum over proper alpha of
/// sqrt(rho_aa rho_bb) with a = flat(y on alpha), b = flat(D-1) - a.
std::pair<double, double> corner_element_form(const Eigen::MatrixXcd& m,
                                              const DimensionVector& dims, int k) {
  const auto dd = static_cast<Eigen::Index>(dims.total_dimension());
  const double lhs = (std::exp2(k) - 2.0) * std::abs(m(0, dd - 1));
  double rhs = 0.0;
  for (const PartitionMask& alpha : enumerate_proper_subsets(dims.site_count())) {
    std::uint64_t a = 0;
    for (int i = 0; i < dims.site_count(); ++i) {
      if (alpha.contains(i)) a += static_cast<std::uint64_t>(dims.dim(i) - 1) * dims.stride(i);
    }
    const std::uint64_t b = static_cast<std::uint64_t>(dd - 1) - a;
    rhs += std::sqrt(m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)).real() *
                     m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real());
  }
  return {lhs, rhs};
}

/// Single-excitation element criterion in flat indices: the Theorem 4 special
/// case with base 0..0 and Omega = {1..d-1}.
std::pair<double, double> excitation_element_form(const Eigen::MatrixXcd& m,
                                                  const DimensionVector& dims, int k) {
  const int n = dims.site_count();
  const int d = dims.uniform_dim();
  double lhs = 0.0, geo = 0.0, diag = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int a = 1; a < d; ++a) {
      const auto fi = static_cast<Eigen::Index>(static_cast<std::uint64_t>(a) * dims.stride(i));
      diag += m(fi, fi).real();
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int b = 1; b < d; ++b) {
          const auto fj = static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) * dims.stride(j));
          lhs += std::abs(m(fi, fj));
          geo += std::sqrt(m(0, 0).real() * m(fi + fj, fi + fj).real());
        }
      }
    }
  }
  return {lhs, geo + static_cast<double>(d - 1) * (n - k) * diag};
}

void special_case_config(SuiteResult& result, const DimensionVector& dims, int n_states,
                         Rng& rng) {
  const int n = dims.site_count();
  const int d = dims.uniform_dim();
  std::vector<int> top(static_cast<std::size_t>(n), d - 1);
  const SwapFiducial corner_phi =
      SwapFiducial::from_labels(dims, uniform_label(n, 0), ProductLabel(top));
  std::vector<int> omega;
  for (int w = 1; w < d; ++w) omega.push_back(w);
  const ElementFiducial excitation(uniform_label(n, 0), omega);

  for (int s = 0; s < n_states; ++s) {
    const DensityOperator rho = random_dense_state(dims, rng);
    const Eigen::MatrixXcd& m = rho.matrix();
    for (int k = 2; k <= n; ++k) {
      const auto [lhs, rhs] = corner_element_form(m, dims, k);
      const CriterionVerdict t3 = theorem3_evaluate(rho, corner_phi, k);
      result.check(std::abs(t3.lhs - lhs) < 1e-10 && std::abs(t3.rhs - rhs) < 1e-10,
                   describe("theorem 3 corner special case lhs", t3.lhs, lhs));
    }
    for (int k = 2; k <= n - 1; ++k) {
      const auto [lhs, rhs] = excitation_element_form(m, dims, k);
      const CriterionVerdict t4 = theorem4_evaluate(rho, excitation, k);
      result.check(std::abs(t4.lhs - lhs) < 1e-10 && std::abs(t4.rhs - rhs) < 1e-10,
                   describe("theorem 4 excitation special case lhs", t4.lhs, lhs));
      const CriterionVerdict c4 = criterion_IV(rho, k);
      result.check(std::abs(t4.lhs - c4.lhs) < 1e-10 && std::abs(t4.rhs - c4.rhs) < 1e-10,
                   describe("theorem 4 vs criterion IV lhs", t4.lhs, c4.lhs));
    }
  }
}

}  // namespace

SuiteResult special_case_suite(std::uint64_t seed, int states_per_config) {
  SuiteResult result;
  result.name = "special";
  Rng rng(Rng::splitmix(seed ^ 0x73706563ULL));
  special_case_config(result, DimensionVector::qubits(3), states_per_config, rng);
  special_case_config(result, DimensionVector::qudits(2, 3), states_per_config, rng);
  special_case_config(result, DimensionVector::qudits(3, 3), states_per_config, rng);
  return result;
}

// ---------------------------------------------------------------------------
// Observable identities

namespace {

SwapFiducial random_orthogonal_fiducial(const DimensionVector& dims, Rng& rng) {
  std::vector<LocalVector> xs, ys;
  for (int i = 0; i < dims.site_count(); ++i) {
    const LocalVector x = random_local(dims.dim(i), rng);
    // Orthogonalize a second random vector against x.
    for (int attempt = 0;; ++attempt) {
      const LocalVector raw = random_local(dims.dim(i), rng);
      std::vector<cplx> a = raw.amplitudes();
      const cplx ov = x.overlap(raw);
      double norm2 = 0.0;
      for (int b = 0; b < dims.dim(i); ++b) {
        a[static_cast<std::size_t>(b)] -= ov * x.amplitude(b);
        norm2 += std::norm(a[static_cast<std::size_t>(b)]);
      }
      if (norm2 > 1e-6 || attempt > 8) {
        const double norm = std::sqrt(norm2);
        for (cplx& c : a) c /= norm;
        ys.emplace_back(std::move(a));
        break;
      }
    }
    xs.push_back(x);
  }
  return {ProductVector::from_locals(dims, std::move(xs)),
          ProductVector::from_locals(dims, std::move(ys))};
}

}  // namespace

SuiteResult observable_suite(std::uint64_t seed) {
  SuiteResult result;
  result.name = "observables";
  Rng rng(Rng::splitmix(seed ^ 0x6f627365ULL));

  for (int n = 2; n <= 4; ++n) {
    const DimensionVector dims = DimensionVector::qubits(n);
    for (int rep = 0; rep < 4; ++rep) {
      const SwapFiducial phi = random_orthogonal_fiducial(dims, rng);
      const SwapObservables obs = build_swap_observables(phi);
      Eigen::MatrixXcd acc_m = Eigen::MatrixXcd::Zero(obs.m.rows(), obs.m.cols());
      Eigen::MatrixXcd acc_mt = acc_m;
      for (int l = 1; l <= n; ++l) {
        const double sign = l % 2 == 0 ? 1.0 : -1.0;
        acc_m += sign * obs.m_l[static_cast<std::size_t>(l - 1)];
        acc_mt += sign * obs.m_tilde_l[static_cast<std::size_t>(l - 1)];
        result.check((obs.m_l[static_cast<std::size_t>(l - 1)] -
                      obs.m_l[static_cast<std::size_t>(l - 1)].adjoint())
                             .cwiseAbs()
                             .maxCoeff() < 1e-12,
                     "M_l not Hermitian");
      }
      result.check((acc_m - static_cast<double>(n) * obs.m).cwiseAbs().maxCoeff() < 1e-12,
                   "sum (-1)^l M_l != N M at N=" + std::to_string(n));
      result.check((acc_mt - static_cast<double>(n) * obs.m_tilde).cwiseAbs().maxCoeff() < 1e-12,
                   "sum (-1)^l M~_l != N M~ at N=" + std::to_string(n));

      const DensityOperator rho = random_dense_state(dims, rng);
      const cplx e = rho.element(phi.phi1, phi.phi2);
      const double m_exp = (rho.matrix() * obs.m).trace().real();
      const double mt_exp = (rho.matrix() * obs.m_tilde).trace().real();
      result.check(std::abs(m_exp - 2.0 * e.real()) < 1e-11,
                   describe("<M> != 2 Re element", m_exp, 2.0 * e.real()));
      result.check(std::abs(mt_exp + 2.0 * e.imag()) < 1e-11,
                   describe("<M~> != -2 Im element", mt_exp, -2.0 * e.imag()));
      const double reconstructed = 0.5 * std::hypot(m_exp, mt_exp);
      result.check(std::abs(reconstructed - std::abs(e)) < 1e-11,
                   describe("|element| reconstruction", reconstructed, std::abs(e)));
    }
  }

  // Element observables on qutrits.
  const DimensionVector dims3 = DimensionVector::qudits(3, 3);
  for (int rep = 0; rep < 6; ++rep) {
    const ElementFiducial f(random_label(dims3, rng), {1, 2});
    const DensityOperator rho = random_dense_state(dims3, rng);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const int s = 1 + rng.uniform_int(2);
        const int t = 1 + rng.uniform_int(2);
        const ElementObservables obs = build_element_observables(dims3, f, i, j, s, t);
        const cplx e =
            rho.element(ProductVector::from_label(dims3, f.replaced(i, s)),
                        ProductVector::from_label(dims3, f.replaced(j, t)));
        const double m_exp = (rho.matrix() * obs.m_st_ij).trace().real();
        const double mt_exp = (rho.matrix() * obs.m_tilde_st_ij).trace().real();
        result.check(std::abs(m_exp - 4.0 * e.real()) < 1e-11,
                     describe("<M^st_ij> != 4 Re element", m_exp, 4.0 * e.real()));
        result.check(std::abs(mt_exp + 4.0 * e.imag()) < 1e-11,
                     describe("<M~^st_ij> != -4 Im element", mt_exp, -4.0 * e.imag()));
      }
    }
  }
  return result;
}

}  // namespace kdet::verify
