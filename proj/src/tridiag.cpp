#include "qmp/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "qmp/errors.hpp"
#include "qmp/simd/kernels.hpp"

namespace qmp {

namespace {

// d: diagonal, e: e[k] couples k,k+1 (e[n-1] = 0 on entry). z accumulates the first row
// of the eigenvector matrix when non-null.
void tqli(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z) {
  const long n = static_cast<long>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  for (long l = 0; l < n; ++l) {
    int iter = 0;
    long m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw EigensolveFailure("tridiagonal QL: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        long i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            f = (*z)[i + 1];
            (*z)[i + 1] = s * (*z)[i] + c * f;
            (*z)[i] = c * (*z)[i] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> tridiag_eigenvalues_ql(std::vector<double> diag, std::vector<double> off) {
  off.resize(diag.size(), 0.0);
  if (!off.empty()) off.back() = 0.0;
  tqli(diag, off, nullptr);
  std::sort(diag.begin(), diag.end());
  return diag;
}

TridiagEigen tridiag_eigen_first(std::vector<double> diag, std::vector<double> off) {
  const std::size_t n = diag.size();
  off.resize(n, 0.0);
  if (n) off.back() = 0.0;
  std::vector<double> z(n, 0.0);
  if (n) z[0] = 1.0;
  tqli(diag, off, &z);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
  TridiagEigen r;
  for (std::size_t k : idx) {
    r.values.push_back(diag[k]);
    r.first_components.push_back(z[k]);
  }
  return r;
}

std::vector<double> tridiag_eigenvalues_bisection(const std::vector<double>& diag,
                                                  const std::vector<double>& off) {
  const std::size_t n = diag.size();
  std::vector<double> offsq(n, 0.0);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t k = 0; k < n; ++k) {
    double left = k > 0 ? std::fabs(off[k - 1]) : 0.0;
    double right = k + 1 < n ? std::fabs(off[k]) : 0.0;
    if (k > 0) offsq[k] = off[k - 1] * off[k - 1];
    lo = std::min(lo, diag[k] - left - right);
    hi = std::max(hi, diag[k] + left + right);
  }
  const double scale = std::max(std::fabs(lo), std::fabs(hi));
  lo -= 1e-12 * scale + 1e-300;
  hi += 1e-12 * scale + 1e-300;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // the (k+1)-th eigenvalue is the smallest x with count(x) >= k+1
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 4 * std::numeric_limits<double>::epsilon() * scale; ++it) {
      double mid = 0.5 * (a + b);
      std::int64_t cnt;
      simd::sturm_count(diag.data(), offsq.data(), n, &mid, 1, &cnt);
      if (cnt >= static_cast<std::int64_t>(k + 1))
        b = mid;
      else
        a = mid;
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& off) {
  try {
    return tridiag_eigenvalues_ql(diag, off);
  } catch (const EigensolveFailure&) {
    return tridiag_eigenvalues_bisection(diag, off);
  }
}

}  // namespace qmp
