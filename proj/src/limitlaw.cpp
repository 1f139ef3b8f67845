#include "qmp/limitlaw.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "qmp/errors.hpp"
#include "qmp/quad.hpp"
#include "band_quad.hpp"

namespace qmp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCriticalBand = 1e-10;

// -expm1(-y) = 1 - e^{-y}
double one_minus_exp(double y) { return -std::expm1(-y); }

double crit_fn(double lam, double c) { return std::exp(-lam) * (1.0 + std::exp(-c * lam)) - 1.0; }

}  // namespace

double lambda_crit(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("lambda_crit: c must be >= 0");
  // F(0) = 1 > 0 and F(log 2) <= 0
  double lo = 0.0, hi = std::log(2.0);
  for (int i = 0; i < 60 && hi - lo > 1e-6; ++i) {
    double mid = 0.5 * (lo + hi);
    (crit_fn(mid, c) > 0.0 ? lo : hi) = mid;
  }
  double lam = 0.5 * (lo + hi);
  for (int i = 0; i < 20; ++i) {
    double e1 = std::exp(-lam), ec = std::exp(-c * lam);
    double f = e1 * (1.0 + ec) - 1.0;
    double fp = -e1 * (1.0 + ec) - c * e1 * ec;
    double step = f / fp;
    lam -= step;
    if (std::fabs(step) <= 1e-16 * lam) break;
  }
  return lam;
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::Band: return "band";
    case Regime::Saturated: return "saturated";
    case Regime::Critical: return "critical";
  }
  return "unknown";
}

LimitShape shape(double lambda, double c) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("shape: lambda must be positive (use mp_density for lambda = 0)");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("shape: c must be >= 0");
  LimitShape sh;
  sh.lambda = lambda;
  sh.c = c;
  sh.s = std::exp(-lambda);
  sh.lambda_c = lambda_crit(c);
  double u = std::sqrt(sh.s * one_minus_exp((c + 1.0) * lambda));
  double v = std::sqrt(std::exp(-(c + 1.0) * lambda) * one_minus_exp(lambda));
  sh.b = (u + v) * (u + v);
  // a b = s^2 (1 - s^c)^2, which avoids the cancellation in (u - v)^2
  double w = sh.s * one_minus_exp(c * lambda);
  sh.a = w * w / sh.b;
  if (std::fabs(lambda - sh.lambda_c) <= kCriticalBand) {
    sh.regime = Regime::Critical;
    sh.b = std::min(sh.b, 1.0);
  } else {
    sh.regime = lambda > sh.lambda_c ? Regime::Saturated : Regime::Band;
  }
  sh.sat_end = sh.saturated() ? 1.0 : sh.b;
  return sh;
}

double density(double x, const LimitShape& sh) {
  if (!(x > sh.a) || !(x < 1.0)) return 0.0;
  const double lam = sh.lambda;
  if (x >= sh.b) return sh.saturated() ? 1.0 / (lam * x) : 0.0;
  double r1x = std::sqrt(1.0 - x), r1a = std::sqrt(1.0 - sh.a), r1b = std::sqrt(1.0 - sh.b);
  double ang;
  if (sh.saturated()) {
    ang = std::atan2(std::sqrt(x - sh.a) * (r1x + r1b), std::sqrt(sh.b - x) * (r1x + r1a));
  } else {
    ang = std::atan2(std::sqrt((x - sh.a) * (sh.b - x)), (r1x + r1a) * (r1x + r1b));
  }
  return 2.0 * ang / (kPi * lam * x);
}

double density(double x, double lambda, double c) { return density(x, shape(lambda, c)); }

double density_v0(double x, double lambda, double c) {
  LimitShape sh = shape(lambda, c);
  if (!(x > sh.a) || !(x < 1.0)) return 0.0;
  if (x >= sh.b) return sh.saturated() ? 1.0 / (lambda * x) : 0.0;
  double s = sh.s, sc = std::exp(-c * lambda);
  double r = 2.0 * s * std::sqrt(sc * (1.0 - x));
  double num = x - s - s * sc + r;
  double den = s + s * sc + r - x;
  double ang = den > 0.0 ? std::atan(std::sqrt(std::max(num, 0.0) / den)) : kPi / 2.0;
  return 2.0 * ang / (kPi * lambda * x);
}

std::pair<double, double> x0_x1(double x, double lambda, double c) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("x0_x1: x must lie in (0,1)");
  double sc = std::exp(-c * lambda);
  double om = one_minus_exp(c * lambda);
  double D = om * om + 4.0 * sc * x;
  return {x * (1.0 + sc) / D, 2.0 * x * std::sqrt(sc * (1.0 - x)) / D};
}

double density_integral_rep(double x, double lambda, double c) {
  if (!(lambda > 0.0)) throw DomainError("density_integral_rep: lambda must be positive");
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  double s = std::exp(-lambda), sc = std::exp(-c * lambda);
  double om = one_minus_exp(c * lambda);
  double D = om * om + 4.0 * sc * x;
  auto [x0, x1] = x0_x1(x, lambda, c);
  double lo = x0 - x1, hi = x0 + x1;
  if (hi <= s || x1 <= 0.0) return 0.0;
  // t = x0 + x1 cos(theta) restricted to t in (s, 1)
  double th_max = lo >= s ? kPi : std::acos(std::clamp((s - x0) / x1, -1.0, 1.0));
  double th_min = hi > 1.0 ? std::acos(std::clamp((1.0 - x0) / x1, -1.0, 1.0)) : 0.0;
  if (!(th_max > th_min)) return 0.0;
  double I = quad::kronrod([&](double th) { return 1.0 / (x0 + x1 * std::cos(th)); }, th_min,
                           th_max, 1e-14, 1e-10);
  return I / (kPi * lambda * std::sqrt(D));
}

double cdf(double x, double lambda, double c) {
  LimitShape sh = shape(lambda, c);
  if (!(x > sh.a)) return 0.0;
  if (x >= sh.sat_end) return 1.0;
  auto f = [&](double t) { return density(t, sh); };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // next to an edge the piece is tiny and its relative error is rounding noise in x - a
  auto q = detail::kronrod_q(1e-13, 1e-9, 1e-14);
  // integrate from the nearer band edge so each piece has only the u^2-substituted endpoint
  const double m = 0.5 * (sh.a + sh.b);
  double v;
  if (x <= m) {
    v = detail::band_integrate(sh, f, sh.a, x, nan, q);
  } else {
    double band_mass = sh.saturated() ? 1.0 - std::log(1.0 / sh.b) / lambda : 1.0;
    v = band_mass - detail::band_integrate(sh, f, std::min(x, sh.b), sh.b, nan, q);
  }
  if (sh.saturated() && x > sh.b) v += std::log(x / sh.b) / lambda;
  return std::clamp(v, 0.0, 1.0);
}

std::vector<double> cdf_grid(const std::vector<double>& xs, double lambda, double c) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = cdf(xs[i], lambda, c);
  // enforce monotonicity along increasing x
  std::vector<std::size_t> idx(xs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  double run = 0.0;
  for (std::size_t i : idx) {
    run = std::max(run, out[i]);
    out[i] = run;
  }
  return out;
}

double density_moment(long p, double lambda, double c) {
  if (p < 0) throw DomainError("density_moment: p must be >= 0");
  LimitShape sh = shape(lambda, c);
  auto f = [&](double t) { return std::pow(t, static_cast<double>(p)) * density(t, sh); };
  double v = detail::band_integrate(sh, f, sh.a, sh.b, std::numeric_limits<double>::quiet_NaN(),
                            detail::kronrod_q(1e-14, 1e-9));
  if (sh.saturated()) {
    if (p == 0)
      v += std::log(1.0 / sh.b) / lambda;
    else
      v += (1.0 - std::pow(sh.b, static_cast<double>(p))) / (static_cast<double>(p) * lambda);
  }
  return v;
}

std::complex<double> cauchy_transform(std::complex<double> z, double lambda, double c) {
  using cd = std::complex<double>;
  LimitShape sh = shape(lambda, c);
  if (z.imag() == 0.0 && z.real() >= sh.a && z.real() <= sh.sat_end)
    throw DomainError("cauchy_transform: z lies on the support");
  const double a = sh.a, b = sh.b, w = b - a;
  auto nan = std::numeric_limits<double>::quiet_NaN();

  // distance from z to [a, b]
  double xr = std::clamp(z.real(), a, b);
  double dist = std::abs(z - cd(xr, 0.0));
  cd g;
  if (dist > 0.25 * w) {
    auto re = [&](double x) { return (1.0 / (z - x)).real() * density(x, sh); };
    auto im = [&](double x) { return (1.0 / (z - x)).imag() * density(x, sh); };
    g = cd(detail::band_integrate(sh, re, a, b, nan, detail::kronrod_q(1e-13, 1e-9)),
           detail::band_integrate(sh, im, a, b, nan, detail::kronrod_q(1e-13, 1e-9)));
  } else {
    xr = std::clamp(xr, a + 1e-3 * w, b - 1e-3 * w);
    double rr = density(xr, sh);
    auto re = [&](double x) { return ((density(x, sh) - rr) / (z - x)).real(); };
    auto im = [&](double x) { return ((density(x, sh) - rr) / (z - x)).imag(); };
    g = cd(detail::band_integrate(sh, re, a, b, xr, detail::tanh_sinh_q(1e-12, 1e-8)),
           detail::band_integrate(sh, im, a, b, xr, detail::tanh_sinh_q(1e-12, 1e-8)));
    g += rr * (std::log(z - a) - std::log(z - b));
  }
  if (sh.saturated()) {
    // int_b^1 dx / (lambda x (z - x)) = (1/(lambda z)) [log(1/b) + log(z-b) - log(z-1)]
    g += (std::log(1.0 / b) + std::log(z - b) - std::log(z - 1.0)) / (lambda * z);
  }
  return g;
}

double mp_density(double x, double c) {
  if (!(c >= 0.0)) throw DomainError("mp_density: c must be >= 0");
  double r = std::sqrt(c + 1.0);
  double xm = (r - 1.0) * (r - 1.0), xp = (r + 1.0) * (r + 1.0);
  if (!(x > xm && x < xp)) return 0.0;
  return std::sqrt((xp - x) * (x - xm)) / (2.0 * kPi * x);
}

double scaled_density(double x, double lambda, double c) {
  if (lambda == 0.0) return mp_density(x, c);
  return lambda * density(lambda * x, lambda, c);
}

double recurrence_A(double t, double lambda, double c) {
  return std::exp(-lambda * t) *
         std::sqrt(std::exp(-c * lambda) * one_minus_exp(lambda * t) * one_minus_exp((c + t) * lambda));
}

double recurrence_B(double t, double lambda, double c) {
  return std::exp(-lambda * t) * one_minus_exp((c + t) * lambda) +
         std::exp(-(c + t) * lambda) * one_minus_exp(lambda * t);
}

double arcsine_mixture_density(double x, double lambda, double c) {
  if (!(lambda > 0.0)) throw DomainError("arcsine_mixture_density: lambda must be positive");
  // g(s) = (B + 2A - x)(x - B + 2A), positive exactly on the s-band
  auto g = [&](double s) {
    double A = recurrence_A(s, lambda, c), B = recurrence_B(s, lambda, c);
    return 4.0 * A * A - (x - B) * (x - B);
  };
  constexpr int kScan = 512;
  std::vector<double> gs(kScan + 1);
  for (int k = 0; k <= kScan; ++k) gs[k] = g(static_cast<double>(k) / kScan);

  // returns the bracket end on the positive side, so the substituted integrand stays bounded
  auto root = [&](double lo, double hi) {
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    try {
      auto r = boost::math::tools::toms748_solve(g, lo, hi, tol, it);
      return g(r.first) > 0.0 ? r.first : r.second;
    } catch (const std::exception&) {
      throw RootBracketFailure("arcsine_mixture_density: root bracketing failed");
    }
  };

  double total = 0.0;
  int k = 0;
  while (k <= kScan) {
    if (gs[k] <= 0.0) {
      ++k;
      continue;
    }
    double lo = k == 0 ? 0.0 : root(static_cast<double>(k - 1) / kScan, static_cast<double>(k) / kScan);
    int j = k;
    while (j <= kScan && gs[j] > 0.0) ++j;
    bool clipped = j > kScan;
    double hi = clipped ? 1.0 : root(static_cast<double>(j - 1) / kScan, static_cast<double>(j) / kScan);
    // Close to a root g is replaced by its secant model, since the computed g there is
    // dominated by rounding.
    const double eta = 1e-7 * (hi - lo);
    const double slope_lo = g(lo + eta) / eta;
    const double slope_hi = clipped ? 0.0 : g(hi - eta) / eta;
    if (clipped) {
      // only the lower end is a square-root zero: s = lo + u^2
      total += quad::kronrod(
          [&](double u) {
            double d = u * u;
            if (d < eta) return 2.0 / std::sqrt(slope_lo);
            double v = g(lo + d);
            return v > 0.0 ? 2.0 * u / std::sqrt(v) : 0.0;
          },
          0.0, std::sqrt(hi - lo), 1e-10, 1e-7);
    } else {
      double half = 0.5 * (hi - lo);
      total += quad::kronrod(
          [&](double th) {
            double sh2 = std::sin(0.5 * th), ch2 = std::cos(0.5 * th);
            double d_lo = 2.0 * half * sh2 * sh2, d_hi = 2.0 * half * ch2 * ch2;
            if (d_lo < eta) return std::sqrt(2.0 * half / slope_lo) * ch2;
            if (d_hi < eta) return std::sqrt(2.0 * half / slope_hi) * sh2;
            double v = g(lo + d_lo);
            return v > 0.0 ? half * std::sin(th) / std::sqrt(v) : 0.0;
          },
          0.0, kPi, 1e-10, 1e-7);
    }
    k = j;
  }
  return total / kPi;
}

}  // namespace qmp
