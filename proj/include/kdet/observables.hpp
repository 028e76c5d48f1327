#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kdet/criteria.hpp"
#include "kdet/twocopy.hpp"

namespace kdet {

/// Local-observable decomposition of |<phi1|rho|phi2>|:
///   M = |phi1><phi2| + |phi2><phi1|,  M~ = -i|phi1><phi2| + i|phi2><phi1|,
/// plus the N product observables M_l, M~_l whose alternating sums recover
/// N*M and N*M~. Requires <x_n|y_n> = 0 at every site.
struct SwapObservables {
  Eigen::MatrixXcd m;
  Eigen::MatrixXcd m_tilde;
  std::vector<Eigen::MatrixXcd> m_l;        // l = 1..N
  std::vector<Eigen::MatrixXcd> m_tilde_l;  // l = 1..N
};

SwapObservables build_swap_observables(const SwapFiducial& phi,
                                       std::uint64_t dimension_cap = caps::dense_dimension);

/// Product-form observables for one matrix element of the Theorem 2/4 sums:
///   <M^st_ij> = 4 Re <psi^s_i|rho|psi^t_j>,  <M~^st_ij> = -4 Im <...>,
/// built from the local factors M^s_i = |s><x_i| + |x_i><s| and
/// M~^s_i = i|s><x_i| - i|x_i><s|.
struct ElementObservables {
  Eigen::MatrixXcd m_st_ij;
  Eigen::MatrixXcd m_tilde_st_ij;
  Eigen::MatrixXcd local_m_s_i;
  Eigen::MatrixXcd local_m_tilde_s_i;
  Eigen::MatrixXcd local_m_t_j;
  Eigen::MatrixXcd local_m_tilde_t_j;
};

ElementObservables build_element_observables(const DimensionVector& dims,
                                             const ElementFiducial& f, int site_i, int site_j,
                                             int s, int t,
                                             std::uint64_t dimension_cap = caps::dense_dimension);

}  // namespace kdet
