// AVX2 variants of the reduction kernels. This translation unit is the only
// one compiled with -mavx2; callers dispatch through kernels.cpp after a
// runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <span>

namespace kdet::kernels {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  const __m128d s1 = _mm_add_sd(s2, _mm_unpackhi_pd(s2, s2));
  return _mm_cvtsd_f64(s1);
}

}  // namespace

double sum_sqrt_prod_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_max_pd(_mm256_loadu_pd(a.data() + i), zero);
    const __m256d y = _mm256_max_pd(_mm256_loadu_pd(b.data() + i), zero);
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(_mm256_mul_pd(x, y)));
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double x = a[i] > 0.0 ? a[i] : 0.0;
    const double y = b[i] > 0.0 ? b[i] : 0.0;
    tail += std::sqrt(x * y);
  }
  return hsum(acc) + tail;
}

void affine_combine_avx2(std::span<double> out, double bias,
                         std::span<const double* const> cols,
                         std::span<const double> coeffs) {
  const std::size_t n = out.size();
  const __m256d b = _mm256_set1_pd(bias);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = b;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      v = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[c]), _mm256_loadu_pd(cols[c] + i), v);
    }
    _mm256_storeu_pd(out.data() + i, v);
  }
  for (; i < n; ++i) {
    double v = bias;
    for (std::size_t c = 0; c < cols.size(); ++c) v += coeffs[c] * cols[c][i];
    out[i] = v;
  }
}

double qfi_pair_sum_avx2(std::span<const double> lambda, const double* habs2, double skip_eps) {
  const std::size_t n = lambda.size();
  const __m256d eps = _mm256_set1_pd(skip_eps);
  const __m256d two = _mm256_set1_pd(2.0);
  double total = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    const __m256d ll = _mm256_set1_pd(lambda[l]);
    const double* row = habs2 + l * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t m = 0;
    for (; m + 4 <= n; m += 4) {
      const __m256d lm = _mm256_loadu_pd(lambda.data() + m);
      const __m256d s = _mm256_add_pd(ll, lm);
      const __m256d d = _mm256_sub_pd(ll, lm);
      const __m256d w = _mm256_div_pd(_mm256_mul_pd(two, _mm256_mul_pd(d, d)), s);
      const __m256d keep = _mm256_cmp_pd(s, eps, _CMP_GT_OQ);
      const __m256d term = _mm256_and_pd(keep, _mm256_mul_pd(w, _mm256_loadu_pd(row + m)));
      acc = _mm256_add_pd(acc, term);
    }
    double tail = 0.0;
    for (; m < n; ++m) {
      const double s = lambda[l] + lambda[m];
      if (s <= skip_eps) continue;
      const double d = lambda[l] - lambda[m];
      tail += 2.0 * d * d / s * row[m];
    }
    total += hsum(acc) + tail;
  }
  return total;
}

}  // namespace kdet::kernels
