#include <doctest.h>

#include <cmath>
#include <complex>

#include "kdet/rng.hpp"
#include "kdet/state.hpp"

using namespace kdet;

namespace {

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

ProductVector basis_vec(const DimensionVector& dims, ProductLabel l) {
  return ProductVector::from_label(dims, std::move(l));
}

}  // namespace

TEST_CASE("DimensionVector validates sites, dimensions and overflow") {
  CHECK_THROWS_AS(DimensionVector({2}), std::invalid_argument);
  CHECK_THROWS_AS(DimensionVector({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(DimensionVector(std::vector<int>(70, 2)), std::invalid_argument);
  const DimensionVector d({2, 3, 4});
  CHECK(d.total_dimension() == 24);
  CHECK(d.stride(0) == 12);
  CHECK(d.stride(2) == 1);
  CHECK(flat_index(d, ProductLabel{1, 2, 3}) == 23);
  CHECK(unflatten(d, 23) == ProductLabel{1, 2, 3});
  CHECK_THROWS_AS(flat_index(d, ProductLabel{0, 3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(flat_index(d, ProductLabel{0, 0}), std::invalid_argument);
  CHECK_FALSE(d.uniform());
  CHECK(DimensionVector::qudits(4, 3).uniform_dim() == 3);
}

TEST_CASE("make_pure_sparse normalizes, prunes and validates") {
  const DimensionVector dims({2, 2, 2});
  const PureStateSparse ghz = make_pure_sparse(
      {{ProductLabel{0, 0, 0}, inv_sqrt2}, {ProductLabel{1, 1, 1}, inv_sqrt2}}, dims);
  double norm2 = 0.0;
  for (const auto& t : ghz.terms()) norm2 += std::norm(t.amp);
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ghz.terms().size() == 2);
  CHECK(ghz.renormalization_shift() < 1e-12);

  const PureStateSparse product = make_pure_sparse({{ProductLabel{0, 0}, 1.0}}, DimensionVector({2, 2}));
  CHECK(product.amplitude_at(0) == cplx(1.0, 0.0));

  // Unnormalized input is renormalized and the shift recorded.
  const PureStateSparse scaled = make_pure_sparse({{ProductLabel{0, 0}, 2.0}}, DimensionVector({2, 2}));
  CHECK(scaled.amplitude_at(0).real() == doctest::Approx(1.0));
  CHECK(scaled.renormalization_shift() == doctest::Approx(1.0));

  CHECK_THROWS_AS(make_pure_sparse({}, dims), std::invalid_argument);
  CHECK_THROWS_AS(make_pure_sparse({{ProductLabel{0, 0, 2}, 1.0}}, dims), std::invalid_argument);
  CHECK_THROWS_AS(make_pure_sparse({{ProductLabel{0, 0, 0}, 0.0}}, dims), std::invalid_argument);
  CHECK_THROWS_AS(make_pure_sparse({{ProductLabel{0, 0, 0}, 1.0}, {ProductLabel{0, 0, 0}, 1.0}}, dims),
                  std::invalid_argument);
}

TEST_CASE("the 4-qutrit W state has 8 terms of squared weight 1/8") {
  const PureStateSparse w = PureStateSparse::w_qutrit4();
  CHECK(w.terms().size() == 8);
  for (const auto& t : w.terms()) CHECK(std::norm(t.amp) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("shifted W support labels contain exactly three 1s") {
  const PureStateSparse w = PureStateSparse::w_qutrit4_shifted();
  CHECK(w.terms().size() == 8);
  for (const auto& t : w.terms()) {
    const ProductLabel l = w.label_of(t);
    int ones = 0;
    for (int i = 0; i < 4; ++i) ones += l[i] == 1 ? 1 : 0;
    CHECK(ones == 3);
  }
}

TEST_CASE("family_ghz_mix corners and matrix elements") {
  // Noiseless corner: pure |G><G|.
  const DensityOperator pure = family_ghz_mix(10, 1.0, 0.0);
  CHECK(pure.components().size() == 1);
  CHECK(pure.noise_weight() == doctest::Approx(0.0));

  // Identity corner.
  const DensityOperator mixed = family_ghz_mix(10, 0.0, 0.0);
  CHECK(mixed.components().empty());
  CHECK(mixed.noise_weight() == doctest::Approx(1.0));

  // <0^10| rho |1^10> = p/2 + i q/2.
  const DensityOperator rho = family_ghz_mix(10, 0.2, 0.1);
  const DimensionVector& dims = rho.dims();
  const cplx e = rho.element(basis_vec(dims, uniform_label(10, 0)), basis_vec(dims, uniform_label(10, 1)));
  CHECK(e.real() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(e.imag() == doctest::Approx(0.05).epsilon(1e-12));

  // A mixed pattern is orthogonal to both GHZ components.
  ProductLabel mixed_label = uniform_label(10, 0);
  mixed_label.labels[1] = 1;
  const cplx diag = rho.element(basis_vec(dims, mixed_label), basis_vec(dims, mixed_label));
  CHECK(diag.real() == doctest::Approx(0.7 / 1024.0).epsilon(1e-12));
  CHECK(diag.imag() == doctest::Approx(0.0));

  CHECK_THROWS_AS(family_ghz_mix(10, 0.8, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(family_ghz_mix(10, -0.1, 0.3), std::invalid_argument);
}

TEST_CASE("family_w_qutrit_mix corners and the noise-only diagonal") {
  const DensityOperator pure_w = family_w_qutrit_mix(1.0, 0.0);
  CHECK(pure_w.components().size() == 1);
  const DensityOperator pure_shift = family_w_qutrit_mix(0.0, 1.0);
  CHECK(pure_shift.components().size() == 1);

  // |0000> is absent from both pure components.
  const DensityOperator rho = family_w_qutrit_mix(0.3, 0.2);
  const ProductVector zero = basis_vec(rho.dims(), uniform_label(4, 0));
  CHECK(rho.element(zero, zero).real() == doctest::Approx(0.5 / 81.0).epsilon(1e-12));
}

TEST_CASE("matrix_element is Hermitian and real on the diagonal") {
  Rng rng(7);
  const DensityOperator rho = family_w_qutrit_mix(0.35, 0.25);
  const DimensionVector& dims = rho.dims();
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<int> la(4), lb(4);
    for (int i = 0; i < 4; ++i) {
      la[i] = rng.uniform_int(3);
      lb[i] = rng.uniform_int(3);
    }
    const ProductVector a = basis_vec(dims, ProductLabel(la));
    const ProductVector b = basis_vec(dims, ProductLabel(lb));
    const cplx ab = rho.element(a, b);
    const cplx ba = rho.element(b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
    const cplx aa = rho.element(a, a);
    CHECK(std::abs(aa.imag()) < 1e-12);
    CHECK(aa.real() >= -1e-10);
  }
}

TEST_CASE("diagonal elements of a mixture sum to one") {
  const DensityOperator rho = family_w_qutrit_mix(0.4, 0.35);
  double total = 0.0;
  for (std::uint64_t i = 0; i < rho.dims().total_dimension(); ++i) total += rho.diagonal(i);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("to_dense agrees with matrix_element everywhere") {
  const DensityOperator pure = family_ghz_mix(3, 1.0, 0.0);
  const DensityOperator dense_pure = pure.to_dense();
  const Eigen::MatrixXcd& m = dense_pure.matrix();
  CHECK(m(0, 0).real() == doctest::Approx(0.5));
  CHECK(m(0, 7).real() == doctest::Approx(0.5));
  CHECK(m(7, 0).real() == doctest::Approx(0.5));
  CHECK(m(7, 7).real() == doctest::Approx(0.5));
  CHECK(std::abs(m.trace() - cplx(1.0, 0.0)) < 1e-12);

  const DensityOperator identity = family_ghz_mix(3, 0.0, 0.0).to_dense();
  CHECK((identity.matrix() - Eigen::MatrixXcd::Identity(8, 8) / 8.0).cwiseAbs().maxCoeff() < 1e-14);

  Rng rng(11);
  const DensityOperator rho = family_w_qutrit_mix(0.5, 0.5);
  const DensityOperator dense = rho.to_dense();
  CHECK(std::abs(dense.matrix().trace() - cplx(1.0, 0.0)) < 1e-12);
  for (int rep = 0; rep < 50; ++rep) {
    const std::uint64_t r = static_cast<std::uint64_t>(rng.uniform_int(81));
    const std::uint64_t c = static_cast<std::uint64_t>(rng.uniform_int(81));
    const ProductVector vr = basis_vec(rho.dims(), unflatten(rho.dims(), r));
    const ProductVector vc = basis_vec(rho.dims(), unflatten(rho.dims(), c));
    CHECK(std::abs(rho.element(vr, vc) -
                   dense.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) < 1e-12);
  }

  CHECK_THROWS_AS(family_ghz_mix(13, 0.1, 0.1).to_dense(), std::invalid_argument);
}

TEST_CASE("general product-vector fiducials agree with the dense path") {
  Rng rng(13);
  const DensityOperator rho = family_ghz_mix(3, 0.6, 0.2);
  const DensityOperator dense = rho.to_dense();
  const DimensionVector& dims = rho.dims();
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<LocalVector> sites_a, sites_b;
    for (int i = 0; i < 3; ++i) {
      std::vector<cplx> a(2), b(2);
      double na = 0.0, nb = 0.0;
      for (int x = 0; x < 2; ++x) {
        a[x] = rng.complex_normal();
        b[x] = rng.complex_normal();
        na += std::norm(a[x]);
        nb += std::norm(b[x]);
      }
      for (int x = 0; x < 2; ++x) {
        a[x] /= std::sqrt(na);
        b[x] /= std::sqrt(nb);
      }
      sites_a.emplace_back(std::move(a));
      sites_b.emplace_back(std::move(b));
    }
    const ProductVector va = ProductVector::from_locals(dims, sites_a);
    const ProductVector vb = ProductVector::from_locals(dims, sites_b);
    CHECK(std::abs(rho.element(va, vb) - dense.element(va, vb)) < 1e-12);
  }
}

TEST_CASE("dense construction validates Hermiticity and trace") {
  const DimensionVector dims({2, 2});
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  bad(0, 1) = cplx(0.1, 0.0);  // not Hermitian
  CHECK_THROWS_AS(DensityOperator::dense(bad, dims), std::invalid_argument);
  Eigen::MatrixXcd off_trace = Eigen::MatrixXcd::Identity(4, 4);
  CHECK_THROWS_AS(DensityOperator::dense(off_trace, dims), std::invalid_argument);
  const DensityOperator ok = DensityOperator::dense(Eigen::MatrixXcd::Identity(4, 4) / 4.0, dims);
  CHECK(ok.min_eigenvalue() == doctest::Approx(0.25));
}

TEST_CASE("mixture weights must sum to one") {
  const DimensionVector dims({2, 2});
  const PureStateSparse s = make_pure_sparse({{ProductLabel{0, 0}, 1.0}}, dims);
  CHECK_THROWS_AS(DensityOperator::mixture(dims, {{0.5, s}}, 0.2), std::invalid_argument);
  CHECK_NOTHROW(DensityOperator::mixture(dims, {{0.5, s}}, 0.5));
}

TEST_CASE("to_dense agrees with matrix_element on every basis pair") {
  const DensityOperator rho = family_w_qutrit_mix(0.3, 0.45);
  const DensityOperator dense = rho.to_dense();
  const DimensionVector& dims = rho.dims();
  for (std::uint64_t r = 0; r < 81; ++r) {
    const ProductVector vr = basis_vec(dims, unflatten(dims, r));
    for (std::uint64_t c = 0; c < 81; ++c) {
      const ProductVector vc = basis_vec(dims, unflatten(dims, c));
      CHECK(std::abs(rho.element(vr, vc) -
                     dense.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) <
            1e-12);
    }
  }
}
