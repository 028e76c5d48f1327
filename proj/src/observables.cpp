#include "kdet/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kdet/linalg.hpp"

namespace kdet {

namespace {

Eigen::VectorXcd site_vector(const ProductVector& v, int site, int d) {
  Eigen::VectorXcd out(d);
  for (int b = 0; b < d; ++b) out(b) = v.site_amplitude(site, b);
  return out;
}

}  // namespace

SwapObservables build_swap_observables(const SwapFiducial& phi, std::uint64_t dimension_cap) {
  const DimensionVector& dims = phi.phi1.dims();
  if (dims.total_dimension() > dimension_cap) {
    throw std::invalid_argument("build_swap_observables: dimension exceeds cap");
  }
  const int n = dims.site_count();
  for (int i = 0; i < n; ++i) {
    if (std::abs(phi.phi1.local_overlap(i, phi.phi2)) > tol::orthogonality) {
      throw std::invalid_argument(
          "build_swap_observables: fiducials must be locally orthogonal (<x_n|y_n> = 0), site " +
          std::to_string(i));
    }
  }

  const Eigen::VectorXcd v1 = phi.phi1.dense();
  const Eigen::VectorXcd v2 = phi.phi2.dense();
  SwapObservables out;
  out.m = v1 * v2.adjoint() + v2 * v1.adjoint();
  out.m_tilde = cplx(0.0, -1.0) * (v1 * v2.adjoint()) + cplx(0.0, 1.0) * (v2 * v1.adjoint());

  // M_l = (x)_n [cos(t_l)(|y><x| + |x><y|) + sin(t_l)(i|y><x| - i|x><y|)],
  // with t_l = l*pi/N for M_l and (l*pi + pi/2)/N for M~_l.
  const auto product_observable = [&](double theta) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (int site = 0; site < n; ++site) {
      const int d = dims.dim(site);
      const Eigen::VectorXcd x = site_vector(phi.phi1, site, d);
      const Eigen::VectorXcd y = site_vector(phi.phi2, site, d);
      const Eigen::MatrixXcd yx = y * x.adjoint();
      const Eigen::MatrixXcd local = std::cos(theta) * (yx + yx.adjoint()) +
                                     std::sin(theta) * (cplx(0.0, 1.0) * yx - cplx(0.0, 1.0) * yx.adjoint());
      acc = kron(acc, local);
    }
    return acc;
  };

  out.m_l.reserve(static_cast<std::size_t>(n));
  out.m_tilde_l.reserve(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) {
    out.m_l.push_back(product_observable(l * M_PI / n));
    out.m_tilde_l.push_back(product_observable((l * M_PI + M_PI / 2.0) / n));
  }
  return out;
}

ElementObservables build_element_observables(const DimensionVector& dims,
                                             const ElementFiducial& f, int site_i, int site_j,
                                             int s, int t, std::uint64_t dimension_cap) {
  f.validate_against(dims);
  if (dims.total_dimension() > dimension_cap) {
    throw std::invalid_argument("build_element_observables: dimension exceeds cap");
  }
  const int n = dims.site_count();
  if (site_i == site_j) throw std::invalid_argument("build_element_observables: need i != j");
  if (site_i < 0 || site_i >= n || site_j < 0 || site_j >= n) {
    throw std::invalid_argument("build_element_observables: site index out of range");
  }
  const auto in_omega = [&](int w) {
    for (int o : f.omega()) {
      if (o == w) return true;
    }
    return false;
  };
  if (!in_omega(s) || !in_omega(t)) {
    throw std::invalid_argument("build_element_observables: s and t must be members of Omega");
  }

  const int d = dims.uniform_dim();
  const auto local_pair = [&](int site, int level) {
    const int x = f.base()[site];
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    m(level, x) += 1.0;
    m(x, level) += 1.0;
    Eigen::MatrixXcd mt = Eigen::MatrixXcd::Zero(d, d);
    mt(level, x) += cplx(0.0, 1.0);
    mt(x, level) += cplx(0.0, -1.0);
    return std::make_pair(m, mt);
  };

  ElementObservables out;
  std::tie(out.local_m_s_i, out.local_m_tilde_s_i) = local_pair(site_i, s);
  std::tie(out.local_m_t_j, out.local_m_tilde_t_j) = local_pair(site_j, t);

  const auto assemble = [&](const Eigen::MatrixXcd& at_i, const Eigen::MatrixXcd& at_j) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (int site = 0; site < n; ++site) {
      if (site == site_i) {
        acc = kron(acc, at_i);
      } else if (site == site_j) {
        acc = kron(acc, at_j);
      } else {
        Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(d, d);
        proj(f.base()[site], f.base()[site]) = 1.0;
        acc = kron(acc, proj);
      }
    }
    return acc;
  };

  out.m_st_ij = assemble(out.local_m_s_i, out.local_m_t_j) +
                assemble(out.local_m_tilde_s_i, out.local_m_tilde_t_j);
  out.m_tilde_st_ij = assemble(out.local_m_s_i, out.local_m_tilde_t_j) -
                      assemble(out.local_m_tilde_s_i, out.local_m_t_j);
  return out;
}

}  // namespace kdet
