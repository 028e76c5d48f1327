#include "kdet/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kdet::kernels {

double sum_sqrt_prod_scalar(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a[i] > 0.0 ? a[i] : 0.0;
    const double y = b[i] > 0.0 ? b[i] : 0.0;
    acc += std::sqrt(x * y);
  }
  return acc;
}

void affine_combine_scalar(std::span<double> out, double bias,
                           std::span<const double* const> cols,
                           std::span<const double> coeffs) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = bias;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const double* col = cols[c];
    const double w = coeffs[c];
    for (std::size_t i = 0; i < n; ++i) out[i] += w * col[i];
  }
}

double qfi_pair_sum_scalar(std::span<const double> lambda, const double* habs2, double skip_eps) {
  const std::size_t n = lambda.size();
  double acc = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const double ll = lambda[l];
    const double* row = habs2 + l * n;
    for (std::size_t m = 0; m < n; ++m) {
      const double s = ll + lambda[m];
      if (s <= skip_eps) continue;
      const double d = ll - lambda[m];
      acc += 2.0 * d * d / s * row[m];
    }
  }
  return acc;
}

#if defined(__x86_64__) || defined(_M_X64)
#define KDET_X86 1
#else
#define KDET_X86 0
#endif

#if KDET_X86 && defined(KDET_HAVE_AVX2)
double sum_sqrt_prod_avx2(std::span<const double> a, std::span<const double> b);
void affine_combine_avx2(std::span<double> out, double bias,
                         std::span<const double* const> cols,
                         std::span<const double> coeffs);
double qfi_pair_sum_avx2(std::span<const double> lambda, const double* habs2, double skip_eps);
#endif

#if defined(__aarch64__) && defined(KDET_HAVE_NEON)
double sum_sqrt_prod_neon(std::span<const double> a, std::span<const double> b);
void affine_combine_neon(std::span<double> out, double bias,
                         std::span<const double* const> cols,
                         std::span<const double> coeffs);
double qfi_pair_sum_neon(std::span<const double> lambda, const double* habs2, double skip_eps);
#endif

namespace {

Isa detect_isa() {
#if KDET_X86 && defined(KDET_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
#if defined(__aarch64__) && defined(KDET_HAVE_NEON)
  return Isa::neon;
#endif
  return Isa::scalar;
}

Isa& current_isa() {
  static Isa isa = detect_isa();
  return isa;
}

}  // namespace

Isa active_isa() { return current_isa(); }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if KDET_X86 && defined(KDET_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__) && defined(KDET_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument(std::string("kernels: ISA not available: ") + isa_name(isa));
  }
  current_isa() = isa;
}

double sum_sqrt_prod(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sum_sqrt_prod: size mismatch");
  switch (current_isa()) {
#if KDET_X86 && defined(KDET_HAVE_AVX2)
    case Isa::avx2: return sum_sqrt_prod_avx2(a, b);
#endif
#if defined(__aarch64__) && defined(KDET_HAVE_NEON)
    case Isa::neon: return sum_sqrt_prod_neon(a, b);
#endif
    default: return sum_sqrt_prod_scalar(a, b);
  }
}

void affine_combine(std::span<double> out, double bias,
                    std::span<const double* const> cols,
                    std::span<const double> coeffs) {
  if (cols.size() != coeffs.size()) throw std::invalid_argument("affine_combine: size mismatch");
  switch (current_isa()) {
#if KDET_X86 && defined(KDET_HAVE_AVX2)
    case Isa::avx2: affine_combine_avx2(out, bias, cols, coeffs); return;
#endif
#if defined(__aarch64__) && defined(KDET_HAVE_NEON)
    case Isa::neon: affine_combine_neon(out, bias, cols, coeffs); return;
#endif
    default: affine_combine_scalar(out, bias, cols, coeffs); return;
  }
}

double qfi_pair_sum(std::span<const double> lambda, const double* habs2, double skip_eps) {
  switch (current_isa()) {
#if KDET_X86 && defined(KDET_HAVE_AVX2)
    case Isa::avx2: return qfi_pair_sum_avx2(lambda, habs2, skip_eps);
#endif
#if defined(__aarch64__) && defined(KDET_HAVE_NEON)
    case Isa::neon: return qfi_pair_sum_neon(lambda, habs2, skip_eps);
#endif
    default: return qfi_pair_sum_scalar(lambda, habs2, skip_eps);
  }
}

}  // namespace kdet::kernels
