#pragma once

#include <string>
#include <vector>

#include "kdet/state.hpp"
#include "kdet/twocopy.hpp"

namespace kdet {

enum class Conclusion {
  contains_kplus1_partite_entanglement,
  k_nonseparable,
  inconclusive,
};

/// Outcome of one criterion inequality. The criteria are sufficient
/// conditions only, so a non-violation always concludes "inconclusive".
/// Margin is lhs - rhs; a violation requires margin > tolerance(lhs, rhs).
struct CriterionVerdict {
  std::string criterion;
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool violated = false;
  Conclusion conclusion = Conclusion::inconclusive;
  std::vector<std::string> warnings;
  std::string detail;  // extra indices for per-pair verdicts

  static double tolerance(double lhs, double rhs);
};

/// Human-readable conclusion ("contains-4-partite-entanglement",
/// "3-nonseparable", "inconclusive").
std::string conclusion_text(const CriterionVerdict& v);

/// r = ceil(N/k): N/k when k divides N, floor(N/k)+1 otherwise.
int r_of(int n_sites, int k);

/// Theorem 1: a k-producible state obeys
///   (2^r - 2) sqrt(<Phi|rho^{x2} P|Phi>) <= sum_alpha sqrt(<Phi|P_a^+ rho^{x2} P_a|Phi>);
/// violation certifies (k+1)-partite entanglement. 1 <= k <= N-1.
CriterionVerdict theorem1_evaluate(const DensityOperator& rho, const SwapFiducial& phi, int k);

/// Theorem 3: same sums with prefactor 2^k - 2; violation certifies
/// k-nonseparability. 2 <= k <= N.
CriterionVerdict theorem3_evaluate(const DensityOperator& rho, const SwapFiducial& phi, int k);

/// Base product label x plus the local-state set Omega = {w_1..w_T} defining
/// the single-site replacements |psi^s_i> of Theorems 2/4. Requires equal
/// local dimensions.
class ElementFiducial {
 public:
  ElementFiducial(ProductLabel base, std::vector<int> omega);

  const ProductLabel& base() const { return base_; }
  const std::vector<int>& omega() const { return omega_; }
  int t_count() const { return static_cast<int>(omega_.size()); }

  void validate_against(const DimensionVector& dims) const;
  /// Label with site i replaced by s.
  ProductLabel replaced(int site, int s) const;
  /// Label with sites i and j replaced by s and t (i != j).
  ProductLabel replaced2(int site_i, int s, int site_j, int t) const;

 private:
  ProductLabel base_;
  std::vector<int> omega_;
};

/// The three sums shared by Theorems 2 and 4 (all over s,t in Omega and
/// ordered site pairs i != j):
///   offdiag = sum |<psi^s_i| rho |psi^t_j>|
///   geo     = sum sqrt(<psi|rho|psi> <psi^{st}_{ij}|rho|psi^{st}_{ij}>)
///   diag    = sum_{s,i} <psi^s_i| rho |psi^s_i>
struct ElementSums {
  double offdiag = 0.0;
  double geo = 0.0;
  double diag = 0.0;
  int n_sites = 0;
  int t_count = 0;
  bool base_in_omega = false;  // some omega equals the base label at some site
};

ElementSums element_fiducial_sums(const DensityOperator& rho, const ElementFiducial& f);

/// Theorem 2: a k-producible state obeys
///   offdiag <= geo + T(k-1) * diag; violation certifies (k+1)-partite
/// entanglement. 2 <= k <= N-1.
CriterionVerdict theorem2_evaluate(const DensityOperator& rho, const ElementFiducial& f, int k);

/// Theorem 4: a k-separable state obeys offdiag <= geo + T(N-k) * diag;
/// violation certifies k-nonseparability. 2 <= k <= N-1.
CriterionVerdict theorem4_evaluate(const DensityOperator& rho, const ElementFiducial& f, int k);

/// The k = 1 inequalities (one per unordered site pair and (s,t) choice):
///   |<psi^s_i| rho |psi^t_j>| <= sqrt(<psi|rho|psi> <psi^{st}_{ij}|rho|psi^{st}_{ij}>).
/// Any violation certifies 2-partite entanglement (the state is not fully
/// separable).
std::vector<CriterionVerdict> theorem2_k1_evaluate(const DensityOperator& rho,
                                                   const ElementFiducial& f);

}  // namespace kdet
