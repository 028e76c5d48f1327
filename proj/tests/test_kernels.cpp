#include <doctest.h>

#include <cmath>
#include <vector>

#include "kdet/kernels.hpp"
#include "kdet/rng.hpp"

using namespace kdet;

namespace {

std::vector<double> random_vec(std::size_t n, Rng& rng, bool allow_negative = false) {
  std::vector<double> v(n);
  for (double& x : v) {
    x = rng.uniform();
    if (allow_negative && rng.uniform() < 0.2) x = -x * 1e-14;
  }
  return v;
}

struct IsaGuard {
  kernels::Isa saved;
  IsaGuard() : saved(kernels::active_isa()) {}
  ~IsaGuard() { kernels::force_isa(saved); }
};

}  // namespace

TEST_CASE("sum_sqrt_prod matches scalar reference on every compiled ISA") {
  Rng rng(101);
  IsaGuard guard;
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 32u, 33u, 1000u, 1022u}) {
    const auto a = random_vec(n, rng, true);
    const auto b = random_vec(n, rng, true);
    const double ref = kernels::sum_sqrt_prod_scalar(a, b);
    for (kernels::Isa isa : {kernels::Isa::scalar, kernels::Isa::avx2, kernels::Isa::neon}) {
      if (!kernels::isa_available(isa)) continue;
      kernels::force_isa(isa);
      const double got = kernels::sum_sqrt_prod(a, b);
      CHECK(std::abs(got - ref) <= 1e-12 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_CASE("sum_sqrt_prod clamps negative inputs to zero") {
  const std::vector<double> a = {-1.0, 4.0};
  const std::vector<double> b = {9.0, 9.0};
  CHECK(kernels::sum_sqrt_prod_scalar(a, b) == doctest::Approx(6.0));
  CHECK(kernels::sum_sqrt_prod(a, b) == doctest::Approx(6.0));
}

TEST_CASE("affine_combine matches scalar reference on every compiled ISA") {
  Rng rng(202);
  IsaGuard guard;
  for (std::size_t n : {0u, 1u, 3u, 4u, 17u, 1022u}) {
    const auto c0 = random_vec(n, rng);
    const auto c1 = random_vec(n, rng);
    const double* cols[2] = {c0.data(), c1.data()};
    const double coeffs[2] = {0.31, 0.47};
    std::vector<double> ref(n), got(n);
    kernels::affine_combine_scalar(ref, 0.125, std::span<const double* const>(cols, 2),
                                   std::span<const double>(coeffs, 2));
    for (kernels::Isa isa : {kernels::Isa::scalar, kernels::Isa::avx2, kernels::Isa::neon}) {
      if (!kernels::isa_available(isa)) continue;
      kernels::force_isa(isa);
      kernels::affine_combine(got, 0.125, std::span<const double* const>(cols, 2),
                              std::span<const double>(coeffs, 2));
      for (std::size_t i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("qfi_pair_sum matches scalar reference and skips vanishing pairs") {
  Rng rng(303);
  IsaGuard guard;
  for (std::size_t n : {1u, 2u, 5u, 8u, 33u}) {
    std::vector<double> lambda(n);
    double total = 0.0;
    for (double& l : lambda) {
      l = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
      total += l;
    }
    for (double& l : lambda) l /= (total > 0 ? total : 1.0);
    std::vector<double> habs2(n * n);
    for (double& h : habs2) h = rng.uniform();
    const double ref = kernels::qfi_pair_sum_scalar(lambda, habs2.data(), 1e-12);
    for (kernels::Isa isa : {kernels::Isa::scalar, kernels::Isa::avx2, kernels::Isa::neon}) {
      if (!kernels::isa_available(isa)) continue;
      kernels::force_isa(isa);
      const double got = kernels::qfi_pair_sum(lambda, habs2.data(), 1e-12);
      CHECK(std::abs(got - ref) <= 1e-11 * (1.0 + std::abs(ref)));
    }
  }
  // All eigenvalues in one degenerate cluster: every difference vanishes.
  const std::vector<double> flat(16, 1.0 / 16.0);
  std::vector<double> habs2(16 * 16, 1.0);
  CHECK(kernels::qfi_pair_sum_scalar(flat, habs2.data(), 1e-12) == doctest::Approx(0.0));
}

TEST_CASE("forcing an unavailable ISA throws") {
#if !defined(__aarch64__)
  CHECK_THROWS_AS(kernels::force_isa(kernels::Isa::neon), std::invalid_argument);
#endif
  CHECK(kernels::isa_available(kernels::Isa::scalar));
}
