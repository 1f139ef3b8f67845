#include <cmath>
#include <numbers>

#include "qmp/simd/kernels.hpp"

namespace qmp::simd::scalar {

void log_christoffel_sum(const double* diag, const double* off, std::size_t n, const double* xs,
                         std::size_t m, double* out) {
  for (std::size_t i = 0; i < m; ++i) {
    const double x = xs[i];
    double pm1 = 0.0, p0 = 1.0, sum = 1.0, scale = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      double t = (x - diag[k]) * p0;
      double u = off[k] * pm1;
      double p1 = (t - u) / off[k + 1];
      pm1 = p0;
      p0 = p1;
      if (std::fabs(p0) > kBig) {
        p0 = p0 * kSmall;
        pm1 = pm1 * kSmall;
        sum = sum * kSmall * kSmall;
        scale = scale + 1.0;
      }
      sum = sum + p0 * p0;
    }
    out[i] = std::log(sum) + scale * (800.0 * std::numbers::ln2);
  }
}

void newton_ratio(const double* diag, const double* offsq, std::size_t n, const double* xs,
                  std::size_t m, double* out) {
  for (std::size_t i = 0; i < m; ++i) {
    const double x = xs[i];
    double pm1 = 0.0, p0 = 1.0, dm1 = 0.0, d0 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double xb = x - diag[k];
      double p1 = xb * p0 - offsq[k] * pm1;
      double d1 = (p0 + xb * d0) - offsq[k] * dm1;
      pm1 = p0;
      p0 = p1;
      dm1 = d0;
      d0 = d1;
      double mag = std::fmax(std::fabs(p0), std::fabs(d0));
      if (mag > kBig) {
        p0 = p0 * kSmall;
        pm1 = pm1 * kSmall;
        d0 = d0 * kSmall;
        dm1 = dm1 * kSmall;
      } else if (mag < kSmall) {
        p0 = p0 * kBig;
        pm1 = pm1 * kBig;
        d0 = d0 * kBig;
        dm1 = dm1 * kBig;
      }
    }
    out[i] = p0 / d0;
  }
}

void sturm_count(const double* diag, const double* offsq, std::size_t n, const double* shifts,
                 std::size_t m, std::int64_t* out) {
  for (std::size_t i = 0; i < m; ++i) {
    const double x = shifts[i];
    double d = 1.0, cnt = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double v = offsq[k] / d;
      if (k == 0) v = 0.0;
      d = (diag[k] - x) - v;
      if (std::fabs(d) < kPivMin) d = -kPivMin;
      if (d < 0.0) cnt = cnt + 1.0;
    }
    out[i] = static_cast<std::int64_t>(cnt);
  }
}

double compensated_dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i] * y[i];
    double t = s + v;
    if (std::fabs(s) >= std::fabs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  return s + c;
}

}  // namespace qmp::simd::scalar
