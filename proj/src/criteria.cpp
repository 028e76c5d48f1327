#include "kdet/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kdet {

double CriterionVerdict::tolerance(double lhs, double rhs) {
  return tol::verdict_rel * (1.0 + std::abs(lhs) + std::abs(rhs));
}

std::string conclusion_text(const CriterionVerdict& v) {
  switch (v.conclusion) {
    case Conclusion::contains_kplus1_partite_entanglement:
      return "contains-" + std::to_string(v.k + 1) + "-partite-entanglement";
    case Conclusion::k_nonseparable:
      return std::to_string(v.k) + "-nonseparable";
    case Conclusion::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int r_of(int n_sites, int k) {
  if (k < 1 || k > n_sites - 1) {
    throw std::invalid_argument("r_of: need 1 <= k <= N-1");
  }
  return (n_sites + k - 1) / k;
}

namespace {

CriterionVerdict finish_verdict(std::string criterion, int k, double lhs, double rhs,
                                Conclusion on_violation) {
  CriterionVerdict v;
  v.criterion = std::move(criterion);
  v.k = k;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = lhs - rhs;
  v.violated = v.margin > CriterionVerdict::tolerance(lhs, rhs);
  v.conclusion = v.violated ? on_violation : Conclusion::inconclusive;
  return v;
}

CriterionVerdict swap_criterion(const DensityOperator& rho, const SwapFiducial& phi, int k,
                                double prefactor, std::string criterion, Conclusion on_violation) {
  const double lhs = prefactor * std::sqrt(swap_expectation(rho, phi));
  const double rhs = subset_sqrt_sum(rho, phi);
  return finish_verdict(std::move(criterion), k, lhs, rhs, on_violation);
}

}  // namespace

CriterionVerdict theorem1_evaluate(const DensityOperator& rho, const SwapFiducial& phi, int k) {
  const int n = rho.dims().site_count();
  if (k < 1 || k > n - 1) throw std::invalid_argument("theorem1_evaluate: need 1 <= k <= N-1");
  const int r = r_of(n, k);
  const double prefactor = std::exp2(r) - 2.0;
  return swap_criterion(rho, phi, k, prefactor, "thm1",
                        Conclusion::contains_kplus1_partite_entanglement);
}

CriterionVerdict theorem3_evaluate(const DensityOperator& rho, const SwapFiducial& phi, int k) {
  const int n = rho.dims().site_count();
  if (k < 2 || k > n) throw std::invalid_argument("theorem3_evaluate: need 2 <= k <= N");
  const double prefactor = std::exp2(k) - 2.0;
  return swap_criterion(rho, phi, k, prefactor, "thm3", Conclusion::k_nonseparable);
}

// ---------------------------------------------------------------------------
// Element-fiducial criteria (Theorems 2 and 4)

ElementFiducial::ElementFiducial(ProductLabel base, std::vector<int> omega)
    : base_(std::move(base)), omega_(std::move(omega)) {
  if (omega_.empty()) throw std::invalid_argument("ElementFiducial: Omega must be nonempty");
  std::vector<int> sorted = omega_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("ElementFiducial: duplicate entries in Omega");
  }
}

void ElementFiducial::validate_against(const DimensionVector& dims) const {
  const int d = dims.uniform_dim();  // throws on unequal local dimensions
  if (base_.site_count() != dims.site_count()) {
    throw std::invalid_argument("ElementFiducial: base label has wrong site count");
  }
  flat_index(dims, base_);
  for (int w : omega_) {
    if (w < 0 || w >= d) {
      throw std::invalid_argument("ElementFiducial: omega entry " + std::to_string(w) +
                                  " outside local dimension " + std::to_string(d));
    }
  }
}

ProductLabel ElementFiducial::replaced(int site, int s) const {
  ProductLabel l = base_;
  l.labels[static_cast<std::size_t>(site)] = s;
  return l;
}

ProductLabel ElementFiducial::replaced2(int site_i, int s, int site_j, int t) const {
  ProductLabel l = base_;
  l.labels[static_cast<std::size_t>(site_i)] = s;
  l.labels[static_cast<std::size_t>(site_j)] = t;
  return l;
}

ElementSums element_fiducial_sums(const DensityOperator& rho, const ElementFiducial& f) {
  const DimensionVector& dims = rho.dims();
  f.validate_against(dims);
  const int n = dims.site_count();

  ElementSums sums;
  sums.n_sites = n;
  sums.t_count = f.t_count();
  for (int i = 0; i < n; ++i) {
    for (int s : f.omega()) {
      if (s == f.base()[i]) sums.base_in_omega = true;
    }
  }

  const auto pv = [&](const ProductLabel& l) { return ProductVector::from_label(dims, l); };
  const double base_diag = rho.element(pv(f.base()), pv(f.base())).real();

  for (int s : f.omega()) {
    for (int i = 0; i < n; ++i) {
      const ProductVector psi_s_i = pv(f.replaced(i, s));
      sums.diag += rho.element(psi_s_i, psi_s_i).real();
      for (int t : f.omega()) {
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          const ProductVector psi_t_j = pv(f.replaced(j, t));
          sums.offdiag += std::abs(rho.element(psi_s_i, psi_t_j));
          const ProductVector psi_st_ij = pv(f.replaced2(i, s, j, t));
          double prod = base_diag * rho.element(psi_st_ij, psi_st_ij).real();
          if (prod < 0.0) prod = 0.0;
          sums.geo += std::sqrt(prod);
        }
      }
    }
  }
  return sums;
}

namespace {

CriterionVerdict element_criterion(const DensityOperator& rho, const ElementFiducial& f, int k,
                                   double diag_coeff, std::string criterion,
                                   Conclusion on_violation) {
  const ElementSums sums = element_fiducial_sums(rho, f);
  CriterionVerdict v =
      finish_verdict(std::move(criterion), k, sums.offdiag, sums.geo + diag_coeff * sums.diag,
                     on_violation);
  if (sums.base_in_omega) {
    v.warnings.push_back(
        "Omega contains the base label at some site; the corresponding |psi^s_i> coincide with "
        "the base state");
  }
  return v;
}

}  // namespace

CriterionVerdict theorem2_evaluate(const DensityOperator& rho, const ElementFiducial& f, int k) {
  const int n = rho.dims().site_count();
  if (k < 2 || k > n - 1) throw std::invalid_argument("theorem2_evaluate: need 2 <= k <= N-1");
  const double coeff = static_cast<double>(f.t_count()) * (k - 1);
  return element_criterion(rho, f, k, coeff, "thm2",
                           Conclusion::contains_kplus1_partite_entanglement);
}

CriterionVerdict theorem4_evaluate(const DensityOperator& rho, const ElementFiducial& f, int k) {
  const int n = rho.dims().site_count();
  if (k < 2 || k > n - 1) throw std::invalid_argument("theorem4_evaluate: need 2 <= k <= N-1");
  const double coeff = static_cast<double>(f.t_count()) * (n - k);
  return element_criterion(rho, f, k, coeff, "thm4", Conclusion::k_nonseparable);
}

std::vector<CriterionVerdict> theorem2_k1_evaluate(const DensityOperator& rho,
                                                   const ElementFiducial& f) {
  const DimensionVector& dims = rho.dims();
  f.validate_against(dims);
  const int n = dims.site_count();
  const auto pv = [&](const ProductLabel& l) { return ProductVector::from_label(dims, l); };
  const double base_diag = rho.element(pv(f.base()), pv(f.base())).real();

  std::vector<CriterionVerdict> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int s : f.omega()) {
        for (int t : f.omega()) {
          const double lhs = std::abs(rho.element(pv(f.replaced(i, s)), pv(f.replaced(j, t))));
          double prod = base_diag * rho.element(pv(f.replaced2(i, s, j, t)),
                                                pv(f.replaced2(i, s, j, t))).real();
          if (prod < 0.0) prod = 0.0;
          CriterionVerdict v = finish_verdict("thm2k1", 1, lhs, std::sqrt(prod),
                                              Conclusion::contains_kplus1_partite_entanglement);
          v.detail = "i=" + std::to_string(i) + " j=" + std::to_string(j) +
                     " s=" + std::to_string(s) + " t=" + std::to_string(t);
          out.push_back(std::move(v));
        }
      }
    }
  }
  return out;
}

}  // namespace kdet
