#include <cmath>
#include <numbers>

#include "qmp/simd/kernels.hpp"

#ifdef __AVX2__
#include <immintrin.h>
#endif

namespace qmp::simd::avx2 {

#ifdef __AVX2__

namespace {

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline __m256d load_tail(const double* p, std::size_t count, double fill) {
  alignas(32) double buf[4] = {fill, fill, fill, fill};
  for (std::size_t l = 0; l < count; ++l) buf[l] = p[l];
  return _mm256_load_pd(buf);
}

}  // namespace

bool compiled() { return true; }

void log_christoffel_sum(const double* diag, const double* off, std::size_t n, const double* xs,
                         std::size_t m, double* out) {
  const __m256d big = _mm256_set1_pd(kBig), small = _mm256_set1_pd(kSmall);
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < m; i += 4) {
    std::size_t lanes = m - i < 4 ? m - i : 4;
    __m256d x = lanes == 4 ? _mm256_loadu_pd(xs + i) : load_tail(xs + i, lanes, 0.5);
    __m256d pm1 = _mm256_setzero_pd(), p0 = one, sum = one, scale = _mm256_setzero_pd();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      __m256d t = _mm256_mul_pd(_mm256_sub_pd(x, _mm256_set1_pd(diag[k])), p0);
      __m256d u = _mm256_mul_pd(_mm256_set1_pd(off[k]), pm1);
      __m256d p1 = _mm256_div_pd(_mm256_sub_pd(t, u), _mm256_set1_pd(off[k + 1]));
      pm1 = p0;
      p0 = p1;
      __m256d mask = _mm256_cmp_pd(vabs(p0), big, _CMP_GT_OQ);
      if (!_mm256_testz_pd(mask, mask)) {
        p0 = _mm256_blendv_pd(p0, _mm256_mul_pd(p0, small), mask);
        pm1 = _mm256_blendv_pd(pm1, _mm256_mul_pd(pm1, small), mask);
        sum = _mm256_blendv_pd(sum, _mm256_mul_pd(_mm256_mul_pd(sum, small), small), mask);
        scale = _mm256_blendv_pd(scale, _mm256_add_pd(scale, one), mask);
      }
      sum = _mm256_add_pd(sum, _mm256_mul_pd(p0, p0));
    }
    alignas(32) double s[4], sc[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(sc, scale);
    for (std::size_t l = 0; l < lanes; ++l)
      out[i + l] = std::log(s[l]) + sc[l] * (800.0 * std::numbers::ln2);
  }
}

void newton_ratio(const double* diag, const double* offsq, std::size_t n, const double* xs,
                  std::size_t m, double* out) {
  const __m256d big = _mm256_set1_pd(kBig), small = _mm256_set1_pd(kSmall);
  for (std::size_t i = 0; i < m; i += 4) {
    std::size_t lanes = m - i < 4 ? m - i : 4;
    __m256d x = lanes == 4 ? _mm256_loadu_pd(xs + i) : load_tail(xs + i, lanes, 0.5);
    __m256d pm1 = _mm256_setzero_pd(), p0 = _mm256_set1_pd(1.0);
    __m256d dm1 = _mm256_setzero_pd(), d0 = _mm256_setzero_pd();
    for (std::size_t k = 0; k < n; ++k) {
      __m256d xb = _mm256_sub_pd(x, _mm256_set1_pd(diag[k]));
      __m256d lam = _mm256_set1_pd(offsq[k]);
      __m256d p1 = _mm256_sub_pd(_mm256_mul_pd(xb, p0), _mm256_mul_pd(lam, pm1));
      __m256d d1 = _mm256_sub_pd(_mm256_add_pd(p0, _mm256_mul_pd(xb, d0)), _mm256_mul_pd(lam, dm1));
      pm1 = p0;
      p0 = p1;
      dm1 = d0;
      d0 = d1;
      __m256d mag = _mm256_max_pd(vabs(p0), vabs(d0));
      __m256d hi = _mm256_cmp_pd(mag, big, _CMP_GT_OQ);
      __m256d lo = _mm256_cmp_pd(mag, small, _CMP_LT_OQ);
      __m256d any = _mm256_or_pd(hi, lo);
      if (!_mm256_testz_pd(any, any)) {
        __m256d f = _mm256_blendv_pd(_mm256_set1_pd(1.0), small, hi);
        f = _mm256_blendv_pd(f, big, lo);
        p0 = _mm256_mul_pd(p0, f);
        pm1 = _mm256_mul_pd(pm1, f);
        d0 = _mm256_mul_pd(d0, f);
        dm1 = _mm256_mul_pd(dm1, f);
      }
    }
    alignas(32) double r[4];
    _mm256_store_pd(r, _mm256_div_pd(p0, d0));
    for (std::size_t l = 0; l < lanes; ++l) out[i + l] = r[l];
  }
}

void sturm_count(const double* diag, const double* offsq, std::size_t n, const double* shifts,
                 std::size_t m, std::int64_t* out) {
  const __m256d pivmin = _mm256_set1_pd(kPivMin), neg_pivmin = _mm256_set1_pd(-kPivMin);
  const __m256d one = _mm256_set1_pd(1.0), zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < m; i += 4) {
    std::size_t lanes = m - i < 4 ? m - i : 4;
    __m256d x = lanes == 4 ? _mm256_loadu_pd(shifts + i) : load_tail(shifts + i, lanes, 0.0);
    __m256d d = one, cnt = zero;
    for (std::size_t k = 0; k < n; ++k) {
      __m256d v = k == 0 ? zero : _mm256_div_pd(_mm256_set1_pd(offsq[k]), d);
      d = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(diag[k]), x), v);
      __m256d tiny = _mm256_cmp_pd(vabs(d), pivmin, _CMP_LT_OQ);
      d = _mm256_blendv_pd(d, neg_pivmin, tiny);
      __m256d neg = _mm256_cmp_pd(d, zero, _CMP_LT_OQ);
      cnt = _mm256_add_pd(cnt, _mm256_and_pd(neg, one));
    }
    alignas(32) double c[4];
    _mm256_store_pd(c, cnt);
    for (std::size_t l = 0; l < lanes; ++l) out[i + l] = static_cast<std::int64_t>(c[l]);
  }
}

double compensated_dot(const double* x, const double* y, std::size_t n) {
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    __m256d t = _mm256_add_pd(s, v);
    __m256d big_s = _mm256_cmp_pd(vabs(s), vabs(v), _CMP_GE_OQ);
    __m256d e1 = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    __m256d e2 = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    c = _mm256_add_pd(c, _mm256_blendv_pd(e2, e1, big_s));
    s = t;
  }
  alignas(32) double sl[4], cl[4];
  _mm256_store_pd(sl, s);
  _mm256_store_pd(cl, c);
  double tot = 0.0, comp = 0.0;
  auto add = [&](double v) {
    double t = tot + v;
    if (std::fabs(tot) >= std::fabs(v))
      comp += (tot - t) + v;
    else
      comp += (v - t) + tot;
    tot = t;
  };
  for (int l = 0; l < 4; ++l) add(sl[l]);
  for (int l = 0; l < 4; ++l) add(cl[l]);
  for (; i < n; ++i) add(x[i] * y[i]);
  return tot + comp;
}

#else

bool compiled() { return false; }
void log_christoffel_sum(const double*, const double*, std::size_t, const double*, std::size_t,
                         double*) {}
void newton_ratio(const double*, const double*, std::size_t, const double*, std::size_t, double*) {}
void sturm_count(const double*, const double*, std::size_t, const double*, std::size_t,
                 std::int64_t*) {}
double compensated_dot(const double*, const double*, std::size_t) { return 0.0; }

#endif

}  // namespace qmp::simd::avx2
