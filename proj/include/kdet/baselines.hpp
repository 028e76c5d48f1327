#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kdet/criteria.hpp"
#include "kdet/state.hpp"

namespace kdet {

/// Dense Hermitian operator on the full Hilbert space, tagged with where it
/// came from (which local generator summed over which sites).
struct CollectiveOperator {
  Eigen::MatrixXcd matrix;
  std::string descriptor;
};

/// sum_i local^{(i)} over all sites.
CollectiveOperator collective_from_local(const DimensionVector& dims,
                                         const Eigen::MatrixXcd& local, std::string descriptor);

/// H = (1/2) sum_i sigma_z^{(i)} on N qubits.
CollectiveOperator collective_half_sigma_z(int n_qubits);

/// Eigendecomposition of a density operator, eigenvalues descending.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // columns, matching eigenvalue order
};

Spectrum spectrum_of(const DensityOperator& rho);

/// Quantum Fisher information
///   F(rho, H) = sum_{l,l'} 2 (lam_l - lam_l')^2 / (lam_l + lam_l') |<l|H|l'>|^2
/// by full eigendecomposition (pairs with lam_l + lam_l' <= 1e-12 dropped).
/// Mixture inputs are densified first, subject to the dense cap.
double qfi(const DensityOperator& rho, const CollectiveOperator& h);

/// (I): F(rho, H) > s k^2 + (N - s k)^2 with s = floor(N/k) certifies
/// (k+1)-partite entanglement on N qubits.
CriterionVerdict criterion_I(const DensityOperator& rho, int k);

/// (II): F(rho, H) > (N-k+1)^2 + k - 1 certifies k-nonseparability.
CriterionVerdict criterion_II(const DensityOperator& rho, int k);

/// Generalized Gell-Mann basis of su(d): symmetric and antisymmetric pair
/// matrices plus diagonal traceless ones, tr(g_m g_n) = 2 delta_mn.
std::vector<Eigen::MatrixXcd> gellmann_generators(int d);

/// (III): a 2-producible state has sum_m V(rho, G_m) >= 2N(d-2) (+2 when N is
/// odd); a strictly smaller variance sum certifies 3-partite entanglement.
/// The inequality runs opposite to the others, so the verdict reports the
/// bound as lhs and the variance sum as rhs, keeping margin > 0 equivalent to
/// a violation.
CriterionVerdict criterion_III(const DensityOperator& rho);

/// (IV): density-matrix-element criterion for k-nonseparability, written with
/// 1-based flat indices in the source; evaluated here directly from matrix
/// elements so it agrees with theorem4_evaluate under base 0..0 and
/// Omega = {1..d-1}.
CriterionVerdict criterion_IV(const DensityOperator& rho, int k);

}  // namespace kdet
