#include <doctest.h>

#include <cmath>

#include "kdet/ensembles.hpp"
#include "kdet/rng.hpp"

using namespace kdet;

TEST_CASE("forced partitions") {
  Rng rng(1);
  const PartitionSpec singles = random_partition(4, PartitionMode::max_part_size, 1, rng);
  CHECK(singles.part_count() == 4);
  CHECK(singles.max_part_size() == 1);
  const PartitionSpec four_parts = random_partition(4, PartitionMode::exactly_k_parts, 4, rng);
  CHECK(four_parts.part_count() == 4);
}

TEST_CASE("mode constraints always hold") {
  Rng rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const PartitionSpec a = random_partition(5, PartitionMode::max_part_size, 2, rng);
    a.validate_cover(5);
    CHECK(a.max_part_size() <= 2);
    const PartitionSpec b = random_partition(5, PartitionMode::exactly_k_parts, 3, rng);
    b.validate_cover(5);
    CHECK(b.part_count() == 3);
  }
  CHECK_THROWS_AS(random_partition(4, PartitionMode::max_part_size, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_partition(4, PartitionMode::exactly_k_parts, 1, rng), std::invalid_argument);
  CHECK_THROWS_AS(random_partition(4, PartitionMode::exactly_k_parts, 5, rng), std::invalid_argument);
}

TEST_CASE("partition sampling covers distinct shapes") {
  Rng rng(3);
  int saw_pairs = 0, saw_mixed = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const PartitionSpec spec = random_partition(4, PartitionMode::max_part_size, 2, rng);
    if (spec.part_count() == 2) ++saw_pairs;
    if (spec.part_count() == 3) ++saw_mixed;
  }
  CHECK(saw_pairs > 0);
  CHECK(saw_mixed > 0);
}

TEST_CASE("random_pure_for_partition produces unit-norm states") {
  Rng rng(4);
  const DimensionVector dims = DimensionVector::qubits(3);
  PartitionSpec whole;
  whole.parts.push_back({0, 1, 2});
  const PureStateSparse psi = random_pure_for_partition(whole, dims, rng);
  double norm2 = 0.0;
  for (const auto& t : psi.terms()) norm2 += std::norm(t.amp);
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));

  // Two different seeds give distinct states.
  Rng rng_a(5), rng_b(6);
  const PureStateSparse a = random_pure_for_partition(whole, dims, rng_a);
  const PureStateSparse b = random_pure_for_partition(whole, dims, rng_b);
  CHECK(std::abs(a.overlap(b)) < 1.0 - 1e-6);
}

TEST_CASE("random_mixed yields valid density operators") {
  Rng rng(7);
  const DimensionVector dims = DimensionVector::qubits(4);
  for (int rep = 0; rep < 5; ++rep) {
    const DensityOperator rho = random_mixed(dims, PartitionMode::max_part_size, 2, 6, rng);
    CHECK(rho.is_dense());
    CHECK(std::abs(rho.matrix().trace() - cplx(1.0, 0.0)) < 1e-12);
    CHECK(rho.min_eigenvalue() > -1e-10);
  }
  // m = 1 with an unconstrained partition is an arbitrary pure state.
  const DensityOperator pure = random_mixed(dims, PartitionMode::max_part_size, 4, 1, rng);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pure.matrix());
  CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("identical seeds reproduce identical states bit for bit") {
  const DimensionVector dims = DimensionVector::qubits(4);
  Rng a(99), b(99);
  const DensityOperator ra = random_mixed(dims, PartitionMode::exactly_k_parts, 2, 4, a);
  const DensityOperator rb = random_mixed(dims, PartitionMode::exactly_k_parts, 2, 4, b);
  CHECK((ra.matrix() - rb.matrix()).cwiseAbs().maxCoeff() == 0.0);
}
