#include "kdet/baselines.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "kdet/kernels.hpp"
#include "kdet/linalg.hpp"

namespace kdet {

CollectiveOperator collective_from_local(const DimensionVector& dims,
                                         const Eigen::MatrixXcd& local, std::string descriptor) {
  const auto total = static_cast<Eigen::Index>(dims.total_dimension());
  if (dims.total_dimension() > caps::dense_dimension) {
    throw std::invalid_argument("collective_from_local: dimension exceeds dense cap");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(total, total);
  for (int i = 0; i < dims.site_count(); ++i) sum += embed_site(dims, i, local);
  return {std::move(sum), std::move(descriptor)};
}

CollectiveOperator collective_half_sigma_z(int n_qubits) {
  Eigen::MatrixXcd half_sz(2, 2);
  half_sz << 0.5, 0.0, 0.0, -0.5;
  return collective_from_local(DimensionVector::qubits(n_qubits), half_sz, "half_sigma_z");
}

Spectrum spectrum_of(const DensityOperator& rho) {
  const DensityOperator d = rho.is_dense() ? rho : rho.to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(d.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectrum_of: eigendecomposition failed");
  }
  const Eigen::Index n = solver.eigenvalues().size();
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  const double trace_err = std::abs(s.eigenvalues.sum() - 1.0);
  if (trace_err > 1e-9) {
    throw std::runtime_error("spectrum_of: eigenvalue sum differs from 1 by " +
                             std::to_string(trace_err));
  }
  if (s.eigenvalues(n - 1) < tol::psd_floor) {
    throw std::runtime_error("spectrum_of: negative eigenvalue " +
                             std::to_string(s.eigenvalues(n - 1)));
  }
  return s;
}

double qfi(const DensityOperator& rho, const CollectiveOperator& h) {
  const DensityOperator d = rho.is_dense() ? rho : rho.to_dense();
  const Eigen::Index n = d.matrix().rows();
  if (h.matrix.rows() != n || h.matrix.cols() != n) {
    throw std::invalid_argument("qfi: operator dimension mismatch");
  }
  if ((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() > tol::hermiticity) {
    throw std::invalid_argument("qfi: H not Hermitian");
  }
  const Spectrum s = spectrum_of(d);
  const Eigen::MatrixXcd h_eig = s.eigenvectors.adjoint() * h.matrix * s.eigenvectors;
  std::vector<double> lambda(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) lambda[static_cast<std::size_t>(i)] = s.eigenvalues(i);
  std::vector<double> habs2(static_cast<std::size_t>(n * n));
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index m = 0; m < n; ++m)
      habs2[static_cast<std::size_t>(l * n + m)] = std::norm(h_eig(l, m));
  return kernels::qfi_pair_sum(lambda, habs2.data(), tol::qfi_pair_skip);
}

namespace {

CriterionVerdict qfi_verdict(const DensityOperator& rho, int k, double bound,
                             std::string criterion, Conclusion on_violation) {
  for (int d : rho.dims().dims()) {
    if (d != 2) throw std::invalid_argument(criterion + ": defined for qubit systems only");
  }
  const double f = qfi(rho, collective_half_sigma_z(rho.dims().site_count()));
  CriterionVerdict v;
  v.criterion = std::move(criterion);
  v.k = k;
  v.lhs = f;
  v.rhs = bound;
  v.margin = f - bound;
  v.violated = v.margin > CriterionVerdict::tolerance(f, bound);
  v.conclusion = v.violated ? on_violation : Conclusion::inconclusive;
  return v;
}

}  // namespace

CriterionVerdict criterion_I(const DensityOperator& rho, int k) {
  const int n = rho.dims().site_count();
  if (k < 1 || k > n - 1) throw std::invalid_argument("criterion_I: need 1 <= k <= N-1");
  const int s = n / k;
  const double bound = static_cast<double>(s) * k * k + static_cast<double>(n - s * k) * (n - s * k);
  return qfi_verdict(rho, k, bound, "critI", Conclusion::contains_kplus1_partite_entanglement);
}

CriterionVerdict criterion_II(const DensityOperator& rho, int k) {
  const int n = rho.dims().site_count();
  if (k < 2 || k > n) throw std::invalid_argument("criterion_II: need 2 <= k <= N");
  const double bound = static_cast<double>(n - k + 1) * (n - k + 1) + k - 1;
  return qfi_verdict(rho, k, bound, "critII", Conclusion::k_nonseparable);
}

std::vector<Eigen::MatrixXcd> gellmann_generators(int d) {
  if (d < 2) throw std::invalid_argument("gellmann_generators: need d >= 2");
  std::vector<Eigen::MatrixXcd> gens;
  gens.reserve(static_cast<std::size_t>(d) * d - 1);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      gens.push_back(std::move(sym));
      Eigen::MatrixXcd anti = Eigen::MatrixXcd::Zero(d, d);
      anti(j, k) = cplx(0.0, -1.0);
      anti(k, j) = cplx(0.0, 1.0);
      gens.push_back(std::move(anti));
    }
  }
  for (int l = 1; l < d; ++l) {
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(d, d);
    const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int j = 0; j < l; ++j) diag(j, j) = scale;
    diag(l, l) = -scale * l;
    gens.push_back(std::move(diag));
  }
  return gens;
}

CriterionVerdict criterion_III(const DensityOperator& rho) {
  const DimensionVector& dims = rho.dims();
  const int d = dims.uniform_dim();
  const int n = dims.site_count();
  const DensityOperator dense = rho.is_dense() ? rho : rho.to_dense();
  const Eigen::MatrixXcd& m = dense.matrix();

  double variance_sum = 0.0;
  for (const Eigen::MatrixXcd& g : gellmann_generators(d)) {
    const Eigen::MatrixXcd big = collective_from_local(dims, g, "gellmann").matrix;
    const double mean = (m * big).trace().real();
    const double second = (m * big * big).trace().real();
    variance_sum += second - mean * mean;
  }
  const double threshold = 2.0 * n * (d - 2) + (n % 2 == 1 ? 2.0 : 0.0);

  CriterionVerdict v;
  v.criterion = "critIII";
  v.k = 2;
  v.lhs = threshold;
  v.rhs = variance_sum;
  v.margin = threshold - variance_sum;
  v.violated = v.margin > CriterionVerdict::tolerance(threshold, variance_sum);
  v.conclusion =
      v.violated ? Conclusion::contains_kplus1_partite_entanglement : Conclusion::inconclusive;
  return v;
}

CriterionVerdict criterion_IV(const DensityOperator& rho, int k) {
  const DimensionVector& dims = rho.dims();
  const int d = dims.uniform_dim();
  const int n = dims.site_count();
  if (k < 2 || k > n - 1) throw std::invalid_argument("criterion_IV: need 2 <= k <= N-1");

  const auto pv = [&](const ProductLabel& l) { return ProductVector::from_label(dims, l); };
  const ProductLabel zero = uniform_label(n, 0);
  const double rho_00 = rho.element(pv(zero), pv(zero)).real();

  double lhs = 0.0;
  double geo = 0.0;
  double diag = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int a = 1; a < d; ++a) {
      ProductLabel exc_i = zero;
      exc_i.labels[static_cast<std::size_t>(i)] = a;
      diag += rho.element(pv(exc_i), pv(exc_i)).real();
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        for (int b = 1; b < d; ++b) {
          ProductLabel exc_j = zero;
          exc_j.labels[static_cast<std::size_t>(j)] = b;
          lhs += std::abs(rho.element(pv(exc_i), pv(exc_j)));
          ProductLabel exc_ij = exc_i;
          exc_ij.labels[static_cast<std::size_t>(j)] = b;
          double prod = rho_00 * rho.element(pv(exc_ij), pv(exc_ij)).real();
          if (prod < 0.0) prod = 0.0;
          geo += std::sqrt(prod);
        }
      }
    }
  }
  // The published display carries (N-k) on the diagonal sum with a stray free
  // index; the well-formed reading that matches the Theorem 4 special case
  // (base 0..0, Omega = {1..d-1}, T = d-1) carries (d-1)(N-k).
  const double rhs = geo + static_cast<double>(d - 1) * (n - k) * diag;

  CriterionVerdict v;
  v.criterion = "critIV";
  v.k = k;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = lhs - rhs;
  v.violated = v.margin > CriterionVerdict::tolerance(lhs, rhs);
  v.conclusion = v.violated ? Conclusion::k_nonseparable : Conclusion::inconclusive;
  v.warnings.push_back("criterion (IV) diagonal term read as rho[x,x] with coefficient (d-1)(N-k)");
  return v;
}

}  // namespace kdet
