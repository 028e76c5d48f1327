// NEON variants (aarch64) of the reduction kernels, mirroring the AVX2 file
// two lanes at a time.

#include <arm_neon.h>

#include <cmath>
#include <span>

namespace kdet::kernels {

double sum_sqrt_prod_neon(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = zero;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t x = vmaxq_f64(vld1q_f64(a.data() + i), zero);
    const float64x2_t y = vmaxq_f64(vld1q_f64(b.data() + i), zero);
    acc = vaddq_f64(acc, vsqrtq_f64(vmulq_f64(x, y)));
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double x = a[i] > 0.0 ? a[i] : 0.0;
    const double y = b[i] > 0.0 ? b[i] : 0.0;
    tail += std::sqrt(x * y);
  }
  return vaddvq_f64(acc) + tail;
}

void affine_combine_neon(std::span<double> out, double bias,
                         std::span<const double* const> cols,
                         std::span<const double> coeffs) {
  const std::size_t n = out.size();
  const float64x2_t b = vdupq_n_f64(bias);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = b;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      v = vfmaq_n_f64(v, vld1q_f64(cols[c] + i), coeffs[c]);
    }
    vst1q_f64(out.data() + i, v);
  }
  for (; i < n; ++i) {
    double v = bias;
    for (std::size_t c = 0; c < cols.size(); ++c) v += coeffs[c] * cols[c][i];
    out[i] = v;
  }
}

double qfi_pair_sum_neon(std::span<const double> lambda, const double* habs2, double skip_eps) {
  const std::size_t n = lambda.size();
  const float64x2_t eps = vdupq_n_f64(skip_eps);
  double total = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const float64x2_t ll = vdupq_n_f64(lambda[l]);
    const double* row = habs2 + l * n;
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t m = 0;
    for (; m + 2 <= n; m += 2) {
      const float64x2_t lm = vld1q_f64(lambda.data() + m);
      const float64x2_t s = vaddq_f64(ll, lm);
      const float64x2_t d = vsubq_f64(ll, lm);
      const float64x2_t w = vdivq_f64(vmulq_n_f64(vmulq_f64(d, d), 2.0), s);
      const uint64x2_t keep = vcgtq_f64(s, eps);
      const float64x2_t term =
          vreinterpretq_f64_u64(vandq_u64(keep, vreinterpretq_u64_f64(vmulq_f64(w, vld1q_f64(row + m)))));
      acc = vaddq_f64(acc, term);
    }
    double tail = 0.0;
    for (; m < n; ++m) {
      const double s = lambda[l] + lambda[m];
      if (s <= skip_eps) continue;
      const double d = lambda[l] - lambda[m];
      tail += 2.0 * d * d / s * row[m];
    }
    total += vaddvq_f64(acc) + tail;
  }
  return total;
}

}  // namespace kdet::kernels
