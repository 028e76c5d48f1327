#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

#include "kdet/state.hpp"

namespace kdet {

/// Nonempty proper subset alpha of the N sites, as a bitmask.
class PartitionMask {
 public:
  PartitionMask(std::uint32_t bits, int n_sites);

  std::uint32_t bits() const { return bits_; }
  int site_count() const { return n_; }
  bool empty() const { return bits_ == 0; }
  bool full() const { return bits_ == (n_ == 32 ? ~0u : ((1u << n_) - 1u)); }
  bool contains(int site) const { return (bits_ >> site) & 1u; }
  PartitionMask complement() const { return {~bits_ & ((1u << n_) - 1u), n_}; }
  int popcount() const;

  bool operator==(const PartitionMask&) const = default;

 private:
  std::uint32_t bits_;
  int n_;
};

/// The pair of fully separable fiducials defining |Phi> = |phi1>|phi2> in the
/// Theorem 1/3 expectation values.
struct SwapFiducial {
  ProductVector phi1;
  ProductVector phi2;

  SwapFiducial(ProductVector p1, ProductVector p2);
  static SwapFiducial from_labels(const DimensionVector& dims, ProductLabel x, ProductLabel y);
};

/// <Phi| rho^{x2} P |Phi> = |<phi1| rho |phi2>|^2. Exact single-copy
/// reduction; no two-copy object is built.
double swap_expectation(const DensityOperator& rho, const SwapFiducial& phi);

/// <Phi| P_a^dag rho^{x2} P_a |Phi> = <a|rho|a><b|rho|b> with the swapped
/// patterns a = (y on alpha, x off), b = (x on alpha, y off).
double partial_swap_expectation(const DensityOperator& rho, const SwapFiducial& phi,
                                const PartitionMask& alpha);

/// Iterates the 2^N - 2 nonempty proper subsets in reflected-Gray-code order
/// (the full mask is skipped in place when the sequence reaches it).
class ProperSubsets {
 public:
  explicit ProperSubsets(int n_sites);

  class iterator {
   public:
    using value_type = PartitionMask;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    PartitionMask operator*() const { return {gray_, n_}; }
    iterator& operator++();
    iterator operator++(int) { iterator t = *this; ++(*this); return t; }
    bool operator==(const iterator& o) const { return counter_ == o.counter_; }

   private:
    friend class ProperSubsets;
    iterator(std::uint64_t counter, int n);
    void skip_degenerate();
    std::uint64_t counter_;
    std::uint32_t gray_;
    std::uint32_t full_;
    int n_;
  };

  iterator begin() const { return iterator(1, n_); }
  iterator end() const { return iterator(std::uint64_t(1) << n_, n_); }
  std::uint64_t size() const { return (std::uint64_t(1) << n_) - 2; }

 private:
  int n_;
};

std::vector<PartitionMask> enumerate_proper_subsets(int n_sites);

/// sum over all nonempty proper alpha of sqrt(partial_swap_expectation),
/// i.e. the right-hand side of the Theorem 1/3 inequalities. Streams the
/// Gray-code subset walk through fixed-size chunks and reduces each chunk
/// with the SIMD kernels; capped at N <= caps::subset_sum_sites.
double subset_sqrt_sum(const DensityOperator& rho, const SwapFiducial& phi);

/// Stages per-subset diagonals <a(alpha)|rho|a(alpha)> and <b(alpha)|rho|b(alpha)>
/// for all proper subsets in Gray order into the two output arrays.
/// Requires basis-label fiducials and N small enough for the arrays.
void stage_partial_swap_diagonals(const DensityOperator& rho, const SwapFiducial& phi,
                                  std::vector<double>& diag_a, std::vector<double>& diag_b);

/// Brute-force oracle: builds rho (x) rho and the explicit 0/1 permutation
/// matrix for P (no alpha) or P_alpha, and returns the quadratic form
/// <Phi|...|Phi>. Intended for equivalence testing only.
double oracle_two_copy(const DensityOperator& rho, const SwapFiducial& phi,
                       std::optional<PartitionMask> alpha = std::nullopt,
                       std::uint64_t two_copy_cap = caps::two_copy_dimension);

}  // namespace kdet
