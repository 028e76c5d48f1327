#include "kdet/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kdet {

int PartitionSpec::max_part_size() const {
  int m = 0;
  for (const auto& p : parts) m = std::max(m, static_cast<int>(p.size()));
  return m;
}

void PartitionSpec::validate_cover(int n_sites) const {
  std::vector<bool> seen(static_cast<std::size_t>(n_sites), false);
  for (const auto& part : parts) {
    if (part.empty()) throw std::invalid_argument("PartitionSpec: empty part");
    for (int s : part) {
      if (s < 0 || s >= n_sites) throw std::invalid_argument("PartitionSpec: site out of range");
      if (seen[static_cast<std::size_t>(s)]) throw std::invalid_argument("PartitionSpec: parts overlap");
      seen[static_cast<std::size_t>(s)] = true;
    }
  }
  for (bool b : seen) {
    if (!b) throw std::invalid_argument("PartitionSpec: parts do not cover all sites");
  }
}

namespace {

// Completion counts for uniform set-partition sampling: ways[i][b] = number
// of set partitions reachable after the first i elements occupy b blocks.
std::vector<std::vector<std::uint64_t>> completion_counts(int n) {
  std::vector<std::vector<std::uint64_t>> ways(static_cast<std::size_t>(n) + 1,
                                               std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 2, 0));
  for (int b = 0; b <= n; ++b) ways[static_cast<std::size_t>(n)][static_cast<std::size_t>(b)] = 1;
  for (int i = n - 1; i >= 0; --i) {
    for (int b = 0; b <= i; ++b) {
      ways[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] =
          static_cast<std::uint64_t>(b) * ways[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(b)] +
          ways[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(b) + 1];
    }
  }
  return ways;
}

PartitionSpec uniform_set_partition(int n, Rng& rng,
                                    const std::vector<std::vector<std::uint64_t>>& ways) {
  PartitionSpec spec;
  for (int i = 0; i < n; ++i) {
    const int b = spec.part_count();
    const std::uint64_t total = ways[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
    // Pick among b existing blocks (each weight ways[i+1][b]) or a new block.
    const std::uint64_t stay = ways[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(b)];
    std::uint64_t ticket = static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(total));
    if (ticket >= total) ticket = total - 1;
    if (ticket < static_cast<std::uint64_t>(b) * stay) {
      spec.parts[static_cast<std::size_t>(ticket / stay)].push_back(i);
    } else {
      spec.parts.push_back({i});
    }
  }
  return spec;
}

}  // namespace

PartitionSpec random_partition(int n_sites, PartitionMode mode, int k, Rng& rng) {
  if (n_sites < 2 || n_sites > 20) throw std::invalid_argument("random_partition: need 2 <= N <= 20");
  if (mode == PartitionMode::max_part_size) {
    if (k < 1 || k > n_sites) throw std::invalid_argument("random_partition: need 1 <= k <= N");
  } else {
    if (k < 2 || k > n_sites) throw std::invalid_argument("random_partition: need 2 <= k <= N");
  }

  // Forced cases: all-singleton partitions.
  if ((mode == PartitionMode::max_part_size && k == 1) ||
      (mode == PartitionMode::exactly_k_parts && k == n_sites)) {
    PartitionSpec spec;
    for (int i = 0; i < n_sites; ++i) spec.parts.push_back({i});
    return spec;
  }

  static thread_local int cached_n = -1;
  static thread_local std::vector<std::vector<std::uint64_t>> cached_ways;
  if (cached_n != n_sites) {
    cached_ways = completion_counts(n_sites);
    cached_n = n_sites;
  }

  for (int attempt = 0; attempt < 1000000; ++attempt) {
    PartitionSpec spec = uniform_set_partition(n_sites, rng, cached_ways);
    const bool ok = mode == PartitionMode::max_part_size ? spec.max_part_size() <= k
                                                         : spec.part_count() == k;
    if (ok) return spec;
  }
  throw std::runtime_error("random_partition: rejection sampling did not terminate");
}

PureStateSparse random_pure_for_partition(const PartitionSpec& partition,
                                          const DimensionVector& dims, Rng& rng) {
  partition.validate_cover(dims.site_count());
  if (dims.total_dimension() > caps::dense_dimension) {
    throw std::invalid_argument("random_pure_for_partition: dimension exceeds dense cap");
  }

  // Haar-random amplitudes per part, indexed by the part's own flat order.
  std::vector<std::vector<cplx>> part_amps;
  part_amps.reserve(partition.parts.size());
  for (const auto& part : partition.parts) {
    std::uint64_t part_dim = 1;
    for (int s : part) part_dim *= static_cast<std::uint64_t>(dims.dim(s));
    std::vector<cplx> amps(part_dim);
    double norm2 = 0.0;
    for (cplx& a : amps) {
      a = rng.complex_normal();
      norm2 += std::norm(a);
    }
    const double norm = std::sqrt(norm2);
    for (cplx& a : amps) a /= norm;
    part_amps.push_back(std::move(amps));
  }

  std::vector<std::pair<ProductLabel, cplx>> terms;
  terms.reserve(dims.total_dimension());
  for (std::uint64_t flat = 0; flat < dims.total_dimension(); ++flat) {
    const ProductLabel label = unflatten(dims, flat);
    cplx amp = 1.0;
    for (std::size_t pi = 0; pi < partition.parts.size() && amp != cplx(0.0, 0.0); ++pi) {
      std::uint64_t sub = 0;
      for (int s : partition.parts[pi]) {
        sub = sub * static_cast<std::uint64_t>(dims.dim(s)) + static_cast<std::uint64_t>(label[s]);
      }
      amp *= part_amps[pi][sub];
    }
    if (std::abs(amp) >= tol::amplitude_prune) terms.emplace_back(label, amp);
  }
  return PureStateSparse(dims, terms);
}

DensityOperator random_mixed(const DimensionVector& dims, PartitionMode mode, int k,
                             int n_components, Rng& rng) {
  if (n_components < 1) throw std::invalid_argument("random_mixed: need at least one component");
  if (dims.total_dimension() > caps::dense_dimension) {
    throw std::invalid_argument("random_mixed: dimension exceeds dense cap");
  }
  // Dirichlet(1,..,1) weights via normalized exponentials.
  std::vector<double> weights(static_cast<std::size_t>(n_components));
  double total = 0.0;
  for (double& w : weights) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w = -std::log(u);
    total += w;
  }
  for (double& w : weights) w /= total;

  const auto n = static_cast<Eigen::Index>(dims.total_dimension());
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n, n);
  for (int c = 0; c < n_components; ++c) {
    const PartitionSpec partition = random_partition(dims.site_count(), mode, k, rng);
    const PureStateSparse psi = random_pure_for_partition(partition, dims, rng);
    const Eigen::VectorXcd v = psi.dense();
    mat.noalias() += weights[static_cast<std::size_t>(c)] * (v * v.adjoint());
  }
  // Exact Hermitization absorbs accumulation asymmetry.
  mat = ((mat + mat.adjoint()) / 2.0).eval();
  return DensityOperator::dense(std::move(mat), dims);
}

}  // namespace kdet
