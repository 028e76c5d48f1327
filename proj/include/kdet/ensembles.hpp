#pragma once

#include <vector>

#include "kdet/rng.hpp"
#include "kdet/state.hpp"

namespace kdet {

/// Disjoint site sets covering {0..N-1}. In producible mode every part has at
/// most k sites; in separable mode there are exactly k parts.
struct PartitionSpec {
  std::vector<std::vector<int>> parts;

  int part_count() const { return static_cast<int>(parts.size()); }
  int max_part_size() const;
  void validate_cover(int n_sites) const;
};

enum class PartitionMode { max_part_size, exactly_k_parts };

/// Uniformly random set partition satisfying the mode constraint, by
/// rejection from exact uniform set-partition sampling (restricted-growth
/// DP over completion counts). N <= 20.
PartitionSpec random_partition(int n_sites, PartitionMode mode, int k, Rng& rng);

/// Tensor product of Haar-random pure states on each part, expanded to the
/// global sparse form.
PureStateSparse random_pure_for_partition(const PartitionSpec& partition,
                                          const DimensionVector& dims, Rng& rng);

/// sum_j w_j |phi_j><phi_j| with Dirichlet(1,..,1) weights and an independent
/// random partition per component. Producible mode with max part size k gives
/// k-producible states; exactly-k-parts mode gives k-separable states.
DensityOperator random_mixed(const DimensionVector& dims, PartitionMode mode, int k,
                             int n_components, Rng& rng);

}  // namespace kdet
