// AVX2 kernel variants. This translation unit is compiled with -mavx2 -mfma;
// nothing here may be called unless the CPU reports both features.

#if CVT_KERNELS_AVX2

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace cvt::kernels::detail {

namespace {

// exp(x) for 4 doubles, Cephes-style: x = n ln2 + r, e^x = 2^n * e^r with
// e^r from a rational approximation in r. Accurate to ~1 ulp on the reduced
// range; inputs below the underflow threshold flush to +0.
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
  const __m256d hi = _mm256_set1_pd(709.782712893383996843);
  const __m256d lo = _mm256_set1_pd(-708.396418532264106224);

  const __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  __m256d xx = _mm256_max_pd(_mm256_min_pd(x, hi), lo);

  __m256d nf =
      _mm256_floor_pd(_mm256_fmadd_pd(xx, log2e, _mm256_set1_pd(0.5)));
  xx = _mm256_fnmadd_pd(nf, ln2_hi, xx);
  xx = _mm256_fnmadd_pd(nf, ln2_lo, xx);

  const __m256d x2 = _mm256_mul_pd(xx, xx);
  __m256d px = _mm256_fmadd_pd(p0, x2, p1);
  px = _mm256_fmadd_pd(px, x2, p2);
  px = _mm256_mul_pd(px, xx);
  __m256d qx = _mm256_fmadd_pd(q0, x2, q1);
  qx = _mm256_fmadd_pd(qx, x2, q2);
  qx = _mm256_fmadd_pd(qx, x2, q3);
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

  // Scale by 2^n through the exponent field; n stays in [-1074, 1025] after
  // the clamp above, so the biased exponent cannot wrap.
  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(under, e);
}

void exp_poly_row_avx2(const double* m, std::size_t n, double decay,
                       const double* coef, std::size_t ncoef, double scale,
                       double* out) {
  const __m256d vdecay = _mm256_set1_pd(-decay);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mi = _mm256_loadu_pd(m + i);
    __m256d poly = _mm256_set1_pd(coef[ncoef - 1]);
    for (std::size_t k = ncoef - 1; k-- > 0;)
      poly = _mm256_fmadd_pd(poly, mi, _mm256_set1_pd(coef[k]));
    const __m256d ex = exp_pd(_mm256_mul_pd(vdecay, mi));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vscale, _mm256_mul_pd(ex, poly)));
  }
  if (i < n) scalar_table().exp_poly_row(m + i, n - i, decay, coef, ncoef, scale, out + i);
}

void radius2_row_avx2(const double* xs, std::size_t n, double x0, double psq,
                      double* out) {
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vpsq = _mm256_set1_pd(psq);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx0);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(dx, dx, vpsq));
  }
  if (i < n) scalar_table().radius2_row(xs + i, n - i, x0, psq, out + i);
}

void gauss_quad_row_avx2(const double* xs, std::size_t n, double x0, double dp,
                         double qxx, double qxp, double qpp, double scale,
                         double* out) {
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vqxx = _mm256_set1_pd(qxx);
  const __m256d vcx = _mm256_set1_pd(2.0 * qxp * dp);
  const __m256d vcp = _mm256_set1_pd(qpp * dp * dp);
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx0);
    const __m256d quad =
        _mm256_fmadd_pd(_mm256_fmadd_pd(vqxx, dx, vcx), dx, vcp);
    const __m256d ex = exp_pd(_mm256_sub_pd(_mm256_setzero_pd(), quad));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vscale, ex));
  }
  if (i < n)
    scalar_table().gauss_quad_row(xs + i, n - i, x0, dp, qxx, qxp, qpp, scale, out + i);
}

double min_value_avx2(const double* v, std::size_t n) {
  std::size_t i = 0;
  double m = v[0];
  if (n >= 4) {
    __m256d vm = _mm256_loadu_pd(v);
    for (i = 4; i + 4 <= n; i += 4)
      vm = _mm256_min_pd(vm, _mm256_loadu_pd(v + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    m = lanes[0];
    for (int k = 1; k < 4; ++k)
      if (lanes[k] < m) m = lanes[k];
  }
  for (; i < n; ++i)
    if (v[i] < m) m = v[i];
  return m;
}

void scaled_add_avx2(double* acc, const double* src, double w, std::size_t n) {
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(acc + i);
    const __m256d s = _mm256_loadu_pd(src + i);
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(vw, s, a));
  }
  for (; i < n; ++i) acc[i] = std::fma(w, src[i], acc[i]);
}

}  // namespace

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const KernelTable& avx2_table() {
  static const KernelTable table = {
      exp_poly_row_avx2, radius2_row_avx2, gauss_quad_row_avx2,
      min_value_avx2,    scaled_add_avx2,
  };
  return table;
}

}  // namespace cvt::kernels::detail

#endif  // CVT_KERNELS_AVX2
