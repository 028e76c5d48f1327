#include "kdet/twocopy.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kdet/kernels.hpp"

namespace kdet {

PartitionMask::PartitionMask(std::uint32_t bits, int n_sites) : bits_(bits), n_(n_sites) {
  if (n_sites < 2 || n_sites > 30) throw std::invalid_argument("PartitionMask: site count out of range");
  if (bits >= (1u << n_sites)) throw std::invalid_argument("PartitionMask: bits exceed site count");
}

int PartitionMask::popcount() const { return std::popcount(bits_); }

SwapFiducial::SwapFiducial(ProductVector p1, ProductVector p2)
    : phi1(std::move(p1)), phi2(std::move(p2)) {
  if (phi1.dims() != phi2.dims()) throw std::invalid_argument("SwapFiducial: dimension mismatch");
}

SwapFiducial SwapFiducial::from_labels(const DimensionVector& dims, ProductLabel x, ProductLabel y) {
  return {ProductVector::from_label(dims, std::move(x)), ProductVector::from_label(dims, std::move(y))};
}

double swap_expectation(const DensityOperator& rho, const SwapFiducial& phi) {
  return std::norm(rho.element(phi.phi1, phi.phi2));
}

double partial_swap_expectation(const DensityOperator& rho, const SwapFiducial& phi,
                                const PartitionMask& alpha) {
  if (alpha.site_count() != rho.dims().site_count()) {
    throw std::invalid_argument("partial_swap_expectation: mask site count mismatch");
  }
  if (alpha.empty() || alpha.full()) {
    throw std::invalid_argument("partial_swap_expectation: alpha must be a nonempty proper subset");
  }
  const ProductVector a = phi.phi1.mixed_with(phi.phi2, alpha.bits());
  const ProductVector b = phi.phi2.mixed_with(phi.phi1, alpha.bits());
  const double da = rho.element(a, a).real();
  const double db = rho.element(b, b).real();
  return da * db;
}

// ---------------------------------------------------------------------------
// Subset enumeration

ProperSubsets::ProperSubsets(int n_sites) : n_(n_sites) {
  if (n_sites < 2 || n_sites > 30) {
    throw std::invalid_argument("ProperSubsets: need 2 <= N <= 30, got " + std::to_string(n_sites));
  }
}

ProperSubsets::iterator::iterator(std::uint64_t counter, int n)
    : counter_(counter), gray_(0), full_((1u << n) - 1u), n_(n) {
  if (counter_ < (std::uint64_t(1) << n_)) {
    gray_ = static_cast<std::uint32_t>(counter_ ^ (counter_ >> 1));
    skip_degenerate();
  }
}

void ProperSubsets::iterator::skip_degenerate() {
  while (counter_ < (std::uint64_t(1) << n_) && (gray_ == 0 || gray_ == full_)) {
    ++counter_;
    gray_ = static_cast<std::uint32_t>(counter_ ^ (counter_ >> 1));
  }
}

ProperSubsets::iterator& ProperSubsets::iterator::operator++() {
  ++counter_;
  gray_ = static_cast<std::uint32_t>(counter_ ^ (counter_ >> 1));
  skip_degenerate();
  return *this;
}

std::vector<PartitionMask> enumerate_proper_subsets(int n_sites) {
  ProperSubsets range(n_sites);
  std::vector<PartitionMask> out;
  out.reserve(range.size());
  for (PartitionMask m : range) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------
// Subset sums

namespace {

// Gray-code walk over proper subsets calling f(flat_a) with the flat index of
// the pattern a(alpha) = (y on alpha, x off alpha). flat_b follows from
// flat_a + flat_b = flat_x + flat_y.
template <typename F>
void gray_walk_labels(const DimensionVector& dims, const ProductLabel& x, const ProductLabel& y,
                      F&& f) {
  const int n = dims.site_count();
  std::uint64_t flat_a = flat_index(dims, x);
  std::uint32_t gray = 0;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint64_t counter = 1; counter < (std::uint64_t(1) << n); ++counter) {
    const int bit = std::countr_zero(counter);
    const std::uint64_t step = static_cast<std::uint64_t>(y[bit] - x[bit]) * dims.stride(bit);
    gray ^= (1u << bit);
    if (gray & (1u << bit)) {
      flat_a += step;  // site joined alpha: x_bit -> y_bit
    } else {
      flat_a -= step;
    }
    if (gray == 0 || gray == full) continue;
    f(flat_a);
  }
}

bool basis_fiducial(const SwapFiducial& phi) {
  return phi.phi1.is_basis() && phi.phi2.is_basis();
}

double general_diagonal(const DensityOperator& rho, const ProductVector& v) {
  return rho.element(v, v).real();
}

}  // namespace

double subset_sqrt_sum(const DensityOperator& rho, const SwapFiducial& phi) {
  const DimensionVector& dims = rho.dims();
  const int n = dims.site_count();
  if (phi.phi1.dims() != dims) throw std::invalid_argument("subset_sqrt_sum: dimension mismatch");
  if (n > caps::subset_sum_sites) {
    throw std::invalid_argument("subset_sqrt_sum: subset sum capped at N <= " +
                                std::to_string(caps::subset_sum_sites));
  }
  if (basis_fiducial(phi)) {
    const std::uint64_t fx = phi.phi1.flat();
    const std::uint64_t fy = phi.phi2.flat();
    constexpr std::size_t chunk = std::size_t(1) << 14;
    std::vector<double> da, db;
    da.reserve(chunk);
    db.reserve(chunk);
    double total = 0.0;
    gray_walk_labels(dims, phi.phi1.label(), phi.phi2.label(), [&](std::uint64_t flat_a) {
      da.push_back(rho.diagonal(flat_a));
      db.push_back(rho.diagonal(fx + fy - flat_a));
      if (da.size() == chunk) {
        total += kernels::sum_sqrt_prod(da, db);
        da.clear();
        db.clear();
      }
    });
    total += kernels::sum_sqrt_prod(da, db);
    return total;
  }
  double total = 0.0;
  for (PartitionMask alpha : ProperSubsets(n)) {
    const ProductVector a = phi.phi1.mixed_with(phi.phi2, alpha.bits());
    const ProductVector b = phi.phi2.mixed_with(phi.phi1, alpha.bits());
    double prod = general_diagonal(rho, a) * general_diagonal(rho, b);
    if (prod < 0.0) prod = 0.0;
    total += std::sqrt(prod);
  }
  return total;
}

void stage_partial_swap_diagonals(const DensityOperator& rho, const SwapFiducial& phi,
                                  std::vector<double>& diag_a, std::vector<double>& diag_b) {
  const DimensionVector& dims = rho.dims();
  const int n = dims.site_count();
  if (!basis_fiducial(phi)) {
    throw std::invalid_argument("stage_partial_swap_diagonals: basis-label fiducials required");
  }
  if (n > caps::staged_sweep_sites) {
    throw std::invalid_argument("stage_partial_swap_diagonals: too many sites to stage");
  }
  const std::uint64_t count = (std::uint64_t(1) << n) - 2;
  diag_a.clear();
  diag_b.clear();
  diag_a.reserve(count);
  diag_b.reserve(count);
  const std::uint64_t fx = phi.phi1.flat();
  const std::uint64_t fy = phi.phi2.flat();
  gray_walk_labels(dims, phi.phi1.label(), phi.phi2.label(), [&](std::uint64_t flat_a) {
    diag_a.push_back(rho.diagonal(flat_a));
    diag_b.push_back(rho.diagonal(fx + fy - flat_a));
  });
}

// ---------------------------------------------------------------------------
// Brute-force oracle

double oracle_two_copy(const DensityOperator& rho, const SwapFiducial& phi,
                       std::optional<PartitionMask> alpha, std::uint64_t two_copy_cap) {
  const DimensionVector& dims = rho.dims();
  const std::uint64_t d = dims.total_dimension();
  if (d > two_copy_cap / d) {
    throw std::invalid_argument("oracle_two_copy: two-copy dimension exceeds cap");
  }
  if (alpha && (alpha->empty() || alpha->full())) {
    throw std::invalid_argument("oracle_two_copy: alpha must be a nonempty proper subset");
  }
  const DensityOperator dense = rho.is_dense() ? rho : rho.to_dense();
  const Eigen::MatrixXcd& m = dense.matrix();
  const auto nd = static_cast<Eigen::Index>(d);
  const Eigen::Index nd2 = nd * nd;

  // rho (x) rho, fully materialized.
  Eigen::MatrixXcd rho2(nd2, nd2);
  for (Eigen::Index r1 = 0; r1 < nd; ++r1)
    for (Eigen::Index c1 = 0; c1 < nd; ++c1)
      rho2.block(r1 * nd, c1 * nd, nd, nd) = m(r1, c1) * m;

  // Explicit permutation matrix from the index map |r>|s> -> swapped copies.
  const std::uint32_t bits = alpha ? alpha->bits() : (1u << dims.site_count()) - 1u;
  Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(nd2, nd2);
  for (Eigen::Index r = 0; r < nd; ++r) {
    const ProductLabel lr = unflatten(dims, static_cast<std::uint64_t>(r));
    for (Eigen::Index s = 0; s < nd; ++s) {
      const ProductLabel ls = unflatten(dims, static_cast<std::uint64_t>(s));
      std::vector<int> out_r(lr.labels), out_s(ls.labels);
      for (int i = 0; i < dims.site_count(); ++i) {
        if ((bits >> i) & 1u) std::swap(out_r[static_cast<std::size_t>(i)], out_s[static_cast<std::size_t>(i)]);
      }
      const auto pr = static_cast<Eigen::Index>(flat_index(dims, ProductLabel(out_r)));
      const auto ps = static_cast<Eigen::Index>(flat_index(dims, ProductLabel(out_s)));
      perm(pr * nd + ps, r * nd + s) = 1.0;
    }
  }

  const Eigen::VectorXcd v1 = phi.phi1.dense();
  const Eigen::VectorXcd v2 = phi.phi2.dense();
  Eigen::VectorXcd big(nd2);
  for (Eigen::Index i = 0; i < nd; ++i) big.segment(i * nd, nd) = v1(i) * v2;

  cplx value;
  if (alpha) {
    const Eigen::VectorXcd w = perm * big;
    value = w.dot(rho2 * w);
  } else {
    value = big.dot(rho2 * (perm * big));
  }
  if (std::abs(value.imag()) >= tol::oracle_imag) {
    throw std::runtime_error("oracle_two_copy: quadratic form has imaginary residue " +
                             std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace kdet
