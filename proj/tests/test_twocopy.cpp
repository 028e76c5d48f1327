#include <doctest.h>

#include <bit>
#include <cmath>
#include <set>

#include "kdet/ensembles.hpp"
#include "kdet/rng.hpp"
#include "kdet/twocopy.hpp"

using namespace kdet;

namespace {

SwapFiducial ghz_fiducial(int n) {
  const DimensionVector dims = DimensionVector::qubits(n);
  return SwapFiducial::from_labels(dims, uniform_label(n, 0), uniform_label(n, 1));
}

}  // namespace

TEST_CASE("swap_expectation on the GHZ family") {
  // GhzMix(10, 0.2, 0.1): |0.1 + 0.05i|^2 = 0.0125.
  CHECK(swap_expectation(family_ghz_mix(10, 0.2, 0.1), ghz_fiducial(10)) ==
        doctest::Approx(0.0125).epsilon(1e-12));
  // Pure product |0^N>: orthogonal off-diagonal element.
  const DimensionVector dims = DimensionVector::qubits(4);
  const DensityOperator product = DensityOperator::mixture(
      dims, {{1.0, make_pure_sparse({{uniform_label(4, 0), 1.0}}, dims)}}, 0.0);
  CHECK(swap_expectation(product, ghz_fiducial(4)) == doctest::Approx(0.0));
  // Pure GHZ_N: 1/4.
  CHECK(swap_expectation(family_ghz_mix(6, 1.0, 0.0), ghz_fiducial(6)) ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("swap_expectation is symmetric under phi1 <-> phi2") {
  Rng rng(5);
  const DensityOperator rho = random_mixed(DimensionVector::qubits(3),
                                           PartitionMode::max_part_size, 3, 2, rng);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<int> x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.uniform_int(2);
      y[i] = rng.uniform_int(2);
    }
    const SwapFiducial fwd =
        SwapFiducial::from_labels(rho.dims(), ProductLabel(x), ProductLabel(y));
    const SwapFiducial rev =
        SwapFiducial::from_labels(rho.dims(), ProductLabel(y), ProductLabel(x));
    CHECK(swap_expectation(rho, fwd) == doctest::Approx(swap_expectation(rho, rev)).epsilon(1e-12));
  }
}

TEST_CASE("partial_swap_expectation on the GHZ family") {
  const DensityOperator rho = family_ghz_mix(10, 0.25, 0.15);
  const SwapFiducial phi = ghz_fiducial(10);
  const double expected = std::pow(0.6 / 1024.0, 2);
  for (std::uint32_t bits : {0x1u, 0x3u, 0x155u, 0x3feu}) {
    CHECK(partial_swap_expectation(rho, phi, PartitionMask(bits, 10)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  // Pure GHZ: mixed patterns have zero overlap with both components.
  CHECK(partial_swap_expectation(family_ghz_mix(10, 1.0, 0.0), phi, PartitionMask(0x7u, 10)) ==
        doctest::Approx(0.0));
  // Maximally mixed: all diagonals equal 1/2^N.
  CHECK(partial_swap_expectation(family_ghz_mix(10, 0.0, 0.0), phi, PartitionMask(0x21u, 10)) ==
        doctest::Approx(std::pow(1.0 / 1024.0, 2)).epsilon(1e-12));

  CHECK_THROWS_AS(partial_swap_expectation(rho, phi, PartitionMask(0u, 10)), std::invalid_argument);
  CHECK_THROWS_AS(partial_swap_expectation(rho, phi, PartitionMask(0x3ffu, 10)),
                  std::invalid_argument);
}

TEST_CASE("complement symmetry of partial swaps") {
  Rng rng(17);
  const DimensionVector dims({2, 3, 2});
  const DensityOperator rho = random_mixed(dims, PartitionMode::max_part_size, 3, 3, rng);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<int> x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.uniform_int(dims.dim(i));
      y[i] = rng.uniform_int(dims.dim(i));
    }
    const SwapFiducial phi = SwapFiducial::from_labels(dims, ProductLabel(x), ProductLabel(y));
    for (const PartitionMask& alpha : enumerate_proper_subsets(3)) {
      CHECK(partial_swap_expectation(rho, phi, alpha) ==
            doctest::Approx(partial_swap_expectation(rho, phi, alpha.complement())).epsilon(1e-12));
    }
  }
}

TEST_CASE("enumerate_proper_subsets yields each mask once in Gray order") {
  CHECK(enumerate_proper_subsets(3).size() == 6);
  const auto masks10 = enumerate_proper_subsets(10);
  CHECK(masks10.size() == 1022);

  std::set<std::uint32_t> seen;
  for (const PartitionMask& m : masks10) {
    CHECK_FALSE(m.empty());
    CHECK_FALSE(m.full());
    seen.insert(m.bits());
  }
  CHECK(seen.size() == 1022);
  // Closed under complement.
  for (const PartitionMask& m : masks10) CHECK(seen.count(m.complement().bits()) == 1);
  // Gray adjacency holds except across the two skipped masks.
  int non_adjacent = 0;
  for (std::size_t i = 1; i < masks10.size(); ++i) {
    const std::uint32_t diff = masks10[i].bits() ^ masks10[i - 1].bits();
    if (std::popcount(diff) != 1) ++non_adjacent;
  }
  CHECK(non_adjacent <= 2);

  CHECK_THROWS_AS(enumerate_proper_subsets(1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_proper_subsets(31), std::invalid_argument);
}

TEST_CASE("subset_sqrt_sum equals the explicit enumeration") {
  Rng rng(23);
  const DimensionVector dims({2, 2, 3});
  const DensityOperator rho = random_mixed(dims, PartitionMode::max_part_size, 3, 2, rng);
  std::vector<int> x = {0, 1, 2}, y = {1, 0, 0};
  const SwapFiducial phi = SwapFiducial::from_labels(dims, ProductLabel(x), ProductLabel(y));
  double direct = 0.0;
  for (const PartitionMask& alpha : enumerate_proper_subsets(3)) {
    direct += std::sqrt(partial_swap_expectation(rho, phi, alpha));
  }
  CHECK(subset_sqrt_sum(rho, phi) == doctest::Approx(direct).epsilon(1e-12));

  // Mixture path agrees with the dense path.
  const DensityOperator mix = family_ghz_mix(5, 0.3, 0.3);
  const SwapFiducial phi5 = ghz_fiducial(5);
  CHECK(subset_sqrt_sum(mix, phi5) ==
        doctest::Approx(subset_sqrt_sum(mix.to_dense(), phi5)).epsilon(1e-12));
}

TEST_CASE("oracle_two_copy spot checks") {
  // Orthogonal fiducials on |00><00| give zero.
  const DimensionVector dims({3, 3});
  const DensityOperator rho = DensityOperator::mixture(
      dims, {{1.0, make_pure_sparse({{ProductLabel{0, 0}, 1.0}}, dims)}}, 0.0);
  const SwapFiducial phi = SwapFiducial::from_labels(dims, ProductLabel{0, 0}, ProductLabel{1, 1});
  CHECK(oracle_two_copy(rho, phi) == doctest::Approx(0.0));

  // Equivalence against the reductions on a handful of random states (the
  // full sweep lives in the acceptance suite).
  Rng rng(29);
  const DimensionVector q3 = DimensionVector::qubits(3);
  for (int rep = 0; rep < 5; ++rep) {
    const DensityOperator state = random_mixed(q3, PartitionMode::max_part_size, 3, 2, rng);
    std::vector<int> x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x[i] = rng.uniform_int(2);
      y[i] = rng.uniform_int(2);
    }
    const SwapFiducial f = SwapFiducial::from_labels(q3, ProductLabel(x), ProductLabel(y));
    CHECK(oracle_two_copy(state, f) == doctest::Approx(swap_expectation(state, f)).epsilon(1e-10));
    for (const PartitionMask& alpha : enumerate_proper_subsets(3)) {
      CHECK(oracle_two_copy(state, f, alpha) ==
            doctest::Approx(partial_swap_expectation(state, f, alpha)).epsilon(1e-10));
    }
  }

  // Cap: 4 qutrits have D^2 = 6561 <= 16384 but 5 qutrits exceed it.
  CHECK_THROWS_AS(oracle_two_copy(family_w_qutrit_mix(0.5, 0.2),
                                  SwapFiducial::from_labels(DimensionVector::qudits(4, 3),
                                                            uniform_label(4, 0), uniform_label(4, 2)),
                                  std::nullopt, 100),
                  std::invalid_argument);
}

TEST_CASE("staged diagonals match per-subset evaluation") {
  const DensityOperator rho = family_ghz_mix(6, 0.45, 0.2);
  const SwapFiducial phi = ghz_fiducial(6);
  std::vector<double> da, db;
  stage_partial_swap_diagonals(rho, phi, da, db);
  REQUIRE(da.size() == 62);
  std::size_t idx = 0;
  for (const PartitionMask& alpha : ProperSubsets(6)) {
    const double expect = partial_swap_expectation(rho, phi, alpha);
    CHECK(da[idx] * db[idx] == doctest::Approx(expect).epsilon(1e-12));
    ++idx;
  }
}

TEST_CASE("subset sums are capped at N <= 24 sites") {
  const int n = 25;
  const DimensionVector dims = DimensionVector::qubits(n);
  const DensityOperator rho = DensityOperator::mixture(
      dims, {{1.0, make_pure_sparse({{uniform_label(n, 0), 1.0}}, dims)}}, 0.0);
  const SwapFiducial phi =
      SwapFiducial::from_labels(dims, uniform_label(n, 0), uniform_label(n, 1));
  CHECK_THROWS_AS(subset_sqrt_sum(rho, phi), std::invalid_argument);
}
