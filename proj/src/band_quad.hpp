#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qmp/limitlaw.hpp"
#include "qmp/quad.hpp"

namespace qmp::detail {

// Integrate g over [lo, hi] inside the band (a, b), with u^2 substitutions on the
// pieces touching a or b. `brk` is an optional extra breakpoint.
template <class G, class Q>
inline double band_integrate(const LimitShape& sh, G g, double lo, double hi, double brk, Q quadrature) {
  const double a = sh.a, b = sh.b;
  lo = std::max(lo, a);
  hi = std::min(hi, b);
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts{lo, hi};
  double m = 0.5 * (a + b);
  if (m > lo && m < hi) pts.push_back(m);
  if (std::isfinite(brk) && brk > lo && brk < hi) pts.push_back(brk);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double p = pts[i], q = pts[i + 1];
    if (p == a && q <= m) {
      // x == a only when u^2 underflows against a; the c = 0 hard edge would give 0 * inf there
      total += quadrature(
          [&](double u) {
            double x = a + u * u;
            return x > a ? 2.0 * u * g(x) : 0.0;
          },
          0.0, std::sqrt(q - a));
    } else if (q == b && p >= m) {
      total += quadrature([&](double u) { return 2.0 * u * g(b - u * u); }, 0.0, std::sqrt(b - p));
    } else {
      total += quadrature(g, p, q);
    }
  }
  return total;
}

inline auto kronrod_q(double tol, double accept, double abs_floor = 0.0) {
  return [tol, accept, abs_floor](auto f, double lo, double hi) {
    return quad::kronrod(f, lo, hi, tol, accept, 20, abs_floor);
  };
}

inline auto tanh_sinh_q(double tol, double accept) {
  return [tol, accept](auto f, double lo, double hi) {
    return quad::tanh_sinh([&](double x) { return f(x); }, lo, hi, tol, accept);
  };
}


inline double no_break() { return std::nan(""); }

}  // namespace qmp::detail
