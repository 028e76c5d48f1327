#include <doctest.h>

#include <cmath>

#include "kdet/criteria.hpp"
#include "kdet/ensembles.hpp"
#include "kdet/rng.hpp"

using namespace kdet;

namespace {

SwapFiducial ghz_fiducial(int n) {
  const DimensionVector dims = DimensionVector::qubits(n);
  return SwapFiducial::from_labels(dims, uniform_label(n, 0), uniform_label(n, 1));
}

const ElementFiducial w_fiducial{uniform_label(4, 0), {1, 2}};

}  // namespace

TEST_CASE("r_of reproduces both branch cases") {
  CHECK(r_of(10, 3) == 4);
  CHECK(r_of(10, 5) == 2);
  CHECK(r_of(9, 3) == 3);
  CHECK(r_of(10, 4) == 3);
  CHECK(r_of(10, 1) == 10);
  CHECK_THROWS_AS(r_of(10, 0), std::invalid_argument);
  CHECK_THROWS_AS(r_of(10, 10), std::invalid_argument);
}

TEST_CASE("theorem 1 on the GHZ family") {
  const SwapFiducial phi = ghz_fiducial(10);

  const CriterionVerdict pure = theorem1_evaluate(family_ghz_mix(10, 1.0, 0.0), phi, 3);
  CHECK(pure.lhs == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(pure.rhs == doctest::Approx(0.0));
  CHECK(pure.violated);
  CHECK(conclusion_text(pure) == "contains-4-partite-entanglement");

  const CriterionVerdict mix = theorem1_evaluate(family_ghz_mix(10, 0.2, 0.1), phi, 3);
  CHECK(mix.lhs == doctest::Approx(14.0 * std::sqrt(0.0125)).epsilon(1e-12));
  CHECK(mix.rhs == doctest::Approx(1022.0 * 0.7 / 1024.0).epsilon(1e-12));
  CHECK(mix.violated);

  for (int k = 1; k <= 9; ++k) {
    const CriterionVerdict v = theorem1_evaluate(family_ghz_mix(10, 0.0, 0.0), phi, k);
    CHECK_FALSE(v.violated);
    CHECK(v.conclusion == Conclusion::inconclusive);
  }

  CHECK_THROWS_AS(theorem1_evaluate(family_ghz_mix(10, 0.5, 0.0), phi, 0), std::invalid_argument);
  CHECK_THROWS_AS(theorem1_evaluate(family_ghz_mix(10, 0.5, 0.0), phi, 10), std::invalid_argument);
}

TEST_CASE("theorem 3 on the GHZ family") {
  const SwapFiducial phi = ghz_fiducial(10);
  const CriterionVerdict genuine = theorem3_evaluate(family_ghz_mix(10, 1.0, 0.0), phi, 2);
  CHECK(genuine.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(genuine.rhs == doctest::Approx(0.0));
  CHECK(genuine.violated);
  CHECK(conclusion_text(genuine) == "2-nonseparable");

  // Closed-form threshold along q = 0 at k = 3: p* = 511/2047.
  const double p_star = 511.0 / 2047.0;
  CHECK(theorem3_evaluate(family_ghz_mix(10, p_star + 1e-4, 0.0), phi, 3).violated);
  CHECK_FALSE(theorem3_evaluate(family_ghz_mix(10, p_star - 1e-4, 0.0), phi, 3).violated);

  // A fully separable basis mixture with basis-orthogonal fiducials has lhs 0.
  const DimensionVector dims = DimensionVector::qubits(4);
  const DensityOperator sep = DensityOperator::mixture(
      dims,
      {{0.5, make_pure_sparse({{uniform_label(4, 0), 1.0}}, dims)},
       {0.5, make_pure_sparse({{ProductLabel{0, 1, 0, 1}, 1.0}}, dims)}},
      0.0);
  const CriterionVerdict v = theorem3_evaluate(sep, ghz_fiducial(4), 2);
  CHECK(v.lhs == doctest::Approx(0.0));
  CHECK_FALSE(v.violated);

  CHECK_THROWS_AS(theorem3_evaluate(family_ghz_mix(10, 0.5, 0.0), phi, 1), std::invalid_argument);
  CHECK_THROWS_AS(theorem3_evaluate(family_ghz_mix(10, 0.5, 0.0), phi, 11), std::invalid_argument);
}

TEST_CASE("theorem 1 monotonicity in r on the GHZ grid") {
  const SwapFiducial phi = ghz_fiducial(10);
  for (double p : {0.05, 0.126, 0.2, 0.3, 0.6}) {
    for (double q : {0.0, 0.1, 0.25}) {
      if (p + q > 1.0) continue;
      const DensityOperator rho = family_ghz_mix(10, p, q);
      double prev_lhs = -1.0;
      int prev_r = 0;
      bool prev_violated = false;
      // k descending makes r nondecreasing.
      for (int k = 9; k >= 1; --k) {
        const CriterionVerdict v = theorem1_evaluate(rho, phi, k);
        const int r = r_of(10, k);
        if (prev_r > 0) {
          CHECK(r >= prev_r);
          CHECK(v.lhs >= prev_lhs - 1e-12);
          if (prev_violated && r >= prev_r) CHECK(v.violated);
        }
        prev_lhs = v.lhs;
        prev_r = r;
        prev_violated = v.violated;
      }
    }
  }
}

TEST_CASE("theorem 3 at k=2 coincides with theorem 1 at k=N-1") {
  Rng rng(31);
  const DimensionVector dims = DimensionVector::qubits(4);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityOperator rho = random_mixed(dims, PartitionMode::max_part_size, 4, 3, rng);
    std::vector<int> x(4), y(4);
    for (int i = 0; i < 4; ++i) {
      x[i] = rng.uniform_int(2);
      y[i] = rng.uniform_int(2);
    }
    const SwapFiducial phi = SwapFiducial::from_labels(dims, ProductLabel(x), ProductLabel(y));
    const CriterionVerdict t3 = theorem3_evaluate(rho, phi, 2);
    const CriterionVerdict t1 = theorem1_evaluate(rho, phi, 3);
    CHECK(t3.lhs == t1.lhs);
    CHECK(t3.rhs == t1.rhs);
    CHECK(t3.violated == t1.violated);
  }
}

TEST_CASE("theorem 2 on the pure 4-qutrit W state") {
  const DensityOperator w = family_w_qutrit_mix(1.0, 0.0);
  const CriterionVerdict k3 = theorem2_evaluate(w, w_fiducial, 3);
  CHECK(k3.lhs == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(k3.rhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(k3.violated);
  CHECK(conclusion_text(k3) == "contains-4-partite-entanglement");

  const CriterionVerdict k2 = theorem2_evaluate(w, w_fiducial, 2);
  CHECK(k2.lhs == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(k2.rhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(k2.violated);

  // Closed-form threshold along q = 0 at k = 2: p* = 16/97.
  const double p_star = 16.0 / 97.0;
  CHECK(theorem2_evaluate(family_w_qutrit_mix(p_star + 1e-4, 0.0), w_fiducial, 2).violated);
  CHECK_FALSE(theorem2_evaluate(family_w_qutrit_mix(p_star - 1e-4, 0.0), w_fiducial, 2).violated);

  CHECK_THROWS_AS(theorem2_evaluate(w, w_fiducial, 1), std::invalid_argument);
  CHECK_THROWS_AS(theorem2_evaluate(w, w_fiducial, 4), std::invalid_argument);
  // Unequal local dimensions are rejected.
  const DimensionVector uneven({2, 3, 2});
  const DensityOperator rho_uneven = DensityOperator::mixture(
      uneven, {{1.0, make_pure_sparse({{ProductLabel{0, 0, 0}, 1.0}}, uneven)}}, 0.0);
  CHECK_THROWS_AS(theorem2_evaluate(rho_uneven, ElementFiducial(uniform_label(3, 0), {1}), 2),
                  std::invalid_argument);
}

TEST_CASE("theorem 4 on the W family") {
  const DensityOperator w = family_w_qutrit_mix(1.0, 0.0);
  const CriterionVerdict k2 = theorem4_evaluate(w, w_fiducial, 2);
  CHECK(k2.lhs == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(k2.rhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(k2.violated);
  CHECK(conclusion_text(k2) == "2-nonseparable");

  // Closed form at k = 3 along q = 0: 6p > 48(1-p)/81 + 2(p + 8(1-p)/81).
  const double p_star = 16.0 / 97.0;
  CHECK(theorem4_evaluate(family_w_qutrit_mix(p_star + 1e-4, 0.0), w_fiducial, 3).violated);
  CHECK_FALSE(theorem4_evaluate(family_w_qutrit_mix(p_star - 1e-4, 0.0), w_fiducial, 3).violated);

  const CriterionVerdict mixed = theorem4_evaluate(family_w_qutrit_mix(0.0, 0.0), w_fiducial, 2);
  CHECK(mixed.lhs == doctest::Approx(0.0));
  CHECK_FALSE(mixed.violated);
}

TEST_CASE("base labels inside Omega carry a warning") {
  const DensityOperator rho = family_w_qutrit_mix(0.5, 0.3);
  const ElementFiducial degenerate(uniform_label(4, 1), {1, 2});
  const CriterionVerdict v = theorem4_evaluate(rho, degenerate, 2);
  CHECK_FALSE(v.warnings.empty());
  const CriterionVerdict clean = theorem4_evaluate(rho, w_fiducial, 2);
  CHECK(clean.warnings.empty());
}

TEST_CASE("ElementFiducial rejects duplicates and bad levels") {
  CHECK_THROWS_AS(ElementFiducial(uniform_label(4, 0), {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(ElementFiducial(uniform_label(4, 0), {}), std::invalid_argument);
  const ElementFiducial f(uniform_label(4, 0), {5});
  CHECK_THROWS_AS(f.validate_against(DimensionVector::qudits(4, 3)), std::invalid_argument);
}

TEST_CASE("theorem 2 k=1 inequalities") {
  const DimensionVector dims = DimensionVector::qubits(4);

  // Pure product state: equality within tolerance, no violation.
  const DensityOperator product = DensityOperator::mixture(
      dims, {{1.0, make_pure_sparse({{uniform_label(4, 0), 1.0}}, dims)}}, 0.0);
  for (const CriterionVerdict& v :
       theorem2_k1_evaluate(product, ElementFiducial(uniform_label(4, 0), {1}))) {
    CHECK_FALSE(v.violated);
    CHECK(v.k == 1);
  }

  // (|01> + |10>)/sqrt(2) on the first two qubits: pair (0,1) violates.
  const double a = 1.0 / std::sqrt(2.0);
  const DensityOperator bell = DensityOperator::mixture(
      dims,
      {{1.0, make_pure_sparse({{ProductLabel{0, 1, 0, 0}, a}, {ProductLabel{1, 0, 0, 0}, a}}, dims)}},
      0.0);
  const auto verdicts = theorem2_k1_evaluate(bell, ElementFiducial(uniform_label(4, 0), {1}));
  CHECK(verdicts.size() == 6);  // C(4,2) pairs, T = 1
  int violations = 0;
  for (const CriterionVerdict& v : verdicts) {
    if (v.violated) {
      ++violations;
      CHECK(v.lhs == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(v.rhs == doctest::Approx(0.0));
      CHECK(v.detail == "i=0 j=1 s=1 t=1");
      CHECK(conclusion_text(v) == "contains-2-partite-entanglement");
    }
  }
  CHECK(violations == 1);

  // Maximally mixed: every lhs vanishes.
  for (const CriterionVerdict& v : theorem2_k1_evaluate(family_ghz_mix(4, 0.0, 0.0),
                                                        ElementFiducial(uniform_label(4, 0), {1}))) {
    CHECK(v.lhs == doctest::Approx(0.0));
    CHECK_FALSE(v.violated);
  }
}

TEST_CASE("1-producible random product states satisfy the k=1 equality case") {
  Rng rng(37);
  const DimensionVector dims = DimensionVector::qubits(4);
  PartitionSpec singletons;
  for (int i = 0; i < 4; ++i) singletons.parts.push_back({i});
  for (int rep = 0; rep < 50; ++rep) {
    const PureStateSparse psi = random_pure_for_partition(singletons, dims, rng);
    const DensityOperator rho = DensityOperator::mixture(dims, {{1.0, psi}}, 0.0);
    std::vector<int> base(4);
    for (int i = 0; i < 4; ++i) base[i] = rng.uniform_int(2);
    const ElementFiducial f(ProductLabel(base), {rng.uniform_int(2)});
    for (const CriterionVerdict& v : theorem2_k1_evaluate(rho, f)) {
      CHECK(v.lhs == doctest::Approx(v.rhs).epsilon(1e-10));
      CHECK_FALSE(v.violated);
    }
  }
}

TEST_CASE("theorem 1 at k=1 is sound on fully separable ensembles") {
  Rng rng(83);
  const DimensionVector dims = DimensionVector::qubits(4);
  for (int rep = 0; rep < 100; ++rep) {
    const DensityOperator rho = random_mixed(dims, PartitionMode::max_part_size, 1, 5, rng);
    std::vector<int> x(4), y(4);
    for (int i = 0; i < 4; ++i) {
      x[i] = rng.uniform_int(2);
      y[i] = rng.uniform_int(2);
    }
    const SwapFiducial phi = SwapFiducial::from_labels(dims, ProductLabel(x), ProductLabel(y));
    CHECK_FALSE(theorem1_evaluate(rho, phi, 1).violated);
  }
}
