#include "qmp/equilibrium.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "band_quad.hpp"
#include "qmp/errors.hpp"
#include "qmp/moments.hpp"
#include "qmp/orthopoly.hpp"
#include "qmp/parallel.hpp"
#include "qmp/qcore.hpp"
#include "qmp/quad.hpp"

namespace qmp {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;
using Gauss10 = boost::math::quadrature::gauss<double, 10>;

bool is_saturated(const LimitShape& sh) { return sh.regime == Regime::Saturated; }

// mass of the q-MP law `sh` on [lo, hi]
double law_mass(const LimitShape& sh, double lo, double hi) {
  double total = 0.0;
  const double a = sh.a, b = sh.b, m = 0.5 * (a + b);
  auto piece = [&](double p, double q) {
    if (!(q > p)) return;
    if (q <= m) {
      total += Gauss10::integrate(
          [&](double u) {
            double x = a + u * u;
            return x > a ? 2.0 * u * density(x, sh) : 0.0;
          },
          std::sqrt(p - a), std::sqrt(q - a));
    } else {
      total += Gauss10::integrate([&](double u) { return 2.0 * u * density(b - u * u, sh); },
                                  std::sqrt(b - q), std::sqrt(b - p));
    }
  };
  double p = std::max(lo, a), q = std::min(hi, b);
  if (q > p) {
    if (p < m && q > m) {
      piece(p, m);
      piece(m, q);
    } else {
      piece(p, q);
    }
  }
  if (is_saturated(sh)) {
    double s0 = std::max(lo, b), s1 = std::min(hi, 1.0);
    if (s1 > s0) total += std::log(s1 / s0) / sh.lambda;
  }
  return total;
}

// cos-clustered points on [lo, hi], both ends included
void append_segment(std::vector<double>& g, double lo, double hi, std::size_t n) {
  for (std::size_t k = g.empty() ? 0 : 1; k <= n; ++k) {
    double t = 0.5 * (1.0 - std::cos(kPi * static_cast<double>(k) / static_cast<double>(n)));
    g.push_back(k == n ? hi : lo + (hi - lo) * t);
  }
}

// cell average of Li2(x)/lambda - c log x
double field_average(double lo, double hi, double lambda, double c) {
  const double w = hi - lo;
  if (lo == 0.0 || hi == 1.0) {
    auto Fli = [](double x) {
      double t = x < 1.0 ? (1.0 - x) * std::log1p(-x) : 0.0;
      return x * dilog(x) - t - x;
    };
    auto Flog = [](double x) { return x > 0.0 ? x * std::log(x) - x : 0.0; };
    double v = (Fli(hi) - Fli(lo)) / lambda;
    if (c != 0.0) v -= c * (Flog(hi) - Flog(lo));
    return v / w;
  }
  return Gauss10::integrate([&](double x) { return dilog(x) / lambda - c * std::log(x); }, lo, hi) / w;
}

// u^2 log|u|/2 - 3u^2/4, whose second derivative is log|u|
double phi(double u) { return u == 0.0 ? 0.0 : 0.5 * u * u * std::log(std::fabs(u)) - 0.75 * u * u; }

// average of log|x - y| over x in [a1,b1], y in [a2,b2]
double log_kernel_average(double a1, double b1, double a2, double b2) {
  double h1 = b1 - a1, h2 = b2 - a2;
  double d = std::fabs(0.5 * (a1 + b1) - 0.5 * (a2 + b2));
  if (a1 == a2 && b1 == b2) return std::log(h1) - 1.5;
  if (d < 20.0 * std::max(h1, h2)) {
    double v = phi(b1 - a2) - phi(a1 - a2) - phi(b1 - b2) + phi(a1 - b2);
    return v / (h1 * h2);
  }
  double s1 = h1 * h1, s2 = h2 * h2;
  double w4 = s1 * s1 / 80.0 + s2 * s2 / 80.0 + s1 * s2 / 24.0;
  double d2 = d * d;
  return std::log(d) - (s1 + s2) / (24.0 * d2) - w4 / (4.0 * d2 * d2);
}

double safe_log_abs(double v) { return v != 0.0 ? std::log(std::fabs(v)) : 0.0; }

// canonical-branch R(z) = (z-a)^{1/2} (z-b)^{1/2}
cd R_of(cd z, double a, double b) { return std::sqrt(z - a) * std::sqrt(z - b); }

double R_real(double x, double a, double b) {
  if (x < a) return -std::sqrt((a - x) * (b - x));
  return std::sqrt((x - a) * (x - b));
}

}  // namespace

double d_sat(const LimitShape& sh) { return is_saturated(sh) ? 1.0 : sh.b; }

SupportDecomposition support_decomposition(double lambda, double c) {
  LimitShape sh = shape(lambda, c);
  SupportDecomposition sd;
  double d = d_sat(sh);
  sd.void_left = {0.0, sh.a};
  sd.band = {sh.a, sh.b};
  sd.saturated = {sh.b, is_saturated(sh) ? d : sh.b};
  sd.void_right = {d, 1.0};
  return sd;
}

double DensityProfile::mass() const {
  double m = 0.0;
  for (std::size_t i = 0; i < cells(); ++i) m += cell_mass(i);
  return m;
}

double DensityProfile::constraint(std::size_t i) const {
  double lo = grid[i], hi = grid[i + 1];
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log(hi / lo) / (lambda * (hi - lo));
}

DensityProfile make_profile(double lambda, double c, std::size_t cells) {
  LimitShape sh = shape(lambda, c);
  if (cells < 20) throw DomainError("make_profile: at least 20 cells required");
  std::vector<std::pair<double, double>> segs;
  if (sh.a > 0.0) segs.push_back({0.0, sh.a});
  segs.push_back({sh.a, sh.b});
  if (sh.b < 1.0 - 1e-12) segs.push_back({sh.b, 1.0});
  std::size_t n_band = segs.size() == 1 ? cells : (cells * 3) / 5;
  std::size_t rest = cells - n_band;
  std::size_t others = segs.size() - 1;

  DensityProfile p;
  p.lambda = lambda;
  p.c = c;
  std::size_t used = 0, k_other = 0;
  for (auto [lo, hi] : segs) {
    std::size_t n;
    if (lo == sh.a && hi == sh.b) {
      n = n_band;
    } else {
      ++k_other;
      n = k_other == others ? rest - used : rest / others;
      used += n;
    }
    append_segment(p.grid, lo, hi, n);
  }
  if (sh.b >= 1.0 - 1e-12) p.grid.back() = 1.0;
  return law_on_grid(p, lambda, c);
}

DensityProfile law_on_grid(const DensityProfile& base, double lambda2, double c2) {
  LimitShape sh = shape(lambda2, c2);
  DensityProfile p;
  p.lambda = base.lambda;
  p.c = base.c;
  p.grid = base.grid;
  std::size_t n = p.grid.size() - 1;
  p.weights.resize(n);
  p.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double lo = p.grid[i], hi = p.grid[i + 1];
    p.weights[i] = hi - lo;
    double m;
    if (is_saturated(sh) && lo >= sh.b && lambda2 == base.lambda)
      m = std::log(hi / lo) / lambda2;  // exactly the constraint
    else
      m = law_mass(sh, lo, hi);
    p.values[i] = m / p.weights[i];
  }
  return p;
}

DensityProfile mix(const DensityProfile& mu, const DensityProfile& nu, double eps) {
  if (mu.grid != nu.grid) throw DomainError("mix: profiles live on different grids");
  DensityProfile p = mu;
  for (std::size_t i = 0; i < p.cells(); ++i) p.values[i] = (1.0 - eps) * mu.values[i] + eps * nu.values[i];
  return p;
}

bool admissible(const DensityProfile& p, double rel_tol) {
  for (std::size_t i = 0; i < p.cells(); ++i) {
    if (p.values[i] < 0.0) return false;
    double cap = p.constraint(i);
    if (p.values[i] > cap * (1.0 + rel_tol) + 1e-12) return false;
  }
  return true;
}

double energy_functional(const DensityProfile& profile, double lambda, double c) {
  if (!admissible(profile)) throw ConstraintViolation("energy_functional: profile exceeds 1/(lambda x)");
  const std::size_t n = profile.cells();
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < n; ++i)
    if (profile.values[i] != 0.0) live.push_back(i);
  std::vector<double> rows(live.size(), 0.0);
  parallel_for(live.size(), [&](std::size_t ii) {
    std::size_t i = live[ii];
    double a1 = profile.grid[i], b1 = profile.grid[i + 1];
    double acc = 0.0;
    for (std::size_t jj = 0; jj < live.size(); ++jj) {
      std::size_t j = live[jj];
      acc += profile.cell_mass(j) *
             log_kernel_average(a1, b1, profile.grid[j], profile.grid[j + 1]);
    }
    rows[ii] = profile.cell_mass(i) *
               (-acc + field_average(a1, b1, lambda, c));
  });
  double total = 0.0, comp = 0.0;
  for (double r : rows) {
    double y = r - comp;
    double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  return total;
}

DensityProfile bump_profile(const DensityProfile& base, const Bump& bump) {
  if (bump.kind == Bump::Kind::Law) return law_on_grid(base, bump.lambda2, base.c);
  DensityProfile p = base;
  const double x1 = bump.x1, x2 = bump.x2, w = x2 - x1;
  if (!(x2 > x1) || x1 < 0.0 || x2 > 1.0) throw DomainError("bump_profile: bad support");
  double norm = bump.kind == Bump::Kind::Packed ? std::log(x2 / x1) / base.lambda : 0.5 * w;
  // antiderivative of the unnormalized bump
  auto F = [&](double x) {
    x = std::clamp(x, x1, x2);
    if (bump.kind == Bump::Kind::Packed) return std::log(x / x1) / base.lambda;
    double t = x - x1;
    return 0.5 * t - w * std::sin(2.0 * kPi * t / w) / (4.0 * kPi);
  };
  for (std::size_t i = 0; i < p.cells(); ++i)
    p.values[i] = (F(p.grid[i + 1]) - F(p.grid[i])) / norm / p.weights[i];
  return p;
}

std::vector<Bump> default_bumps(const LimitShape& sh) {
  const double a = sh.a, b = sh.b, w = b - a, d = d_sat(sh);
  std::vector<Bump> out;
  out.push_back({"band_mid", Bump::Kind::Smooth, a + 0.3 * w, a + 0.7 * w, 0.0, true});
  out.push_back({"band_left", Bump::Kind::Smooth, a + 0.1 * w, a + 0.4 * w, 0.0, true});
  if (a > 1e-2)
    out.push_back({"void_left", Bump::Kind::Smooth, 0.2 * a, 0.8 * a, 0.0, false});
  else
    out.push_back({"band_right", Bump::Kind::Smooth, a + 0.55 * w, a + 0.85 * w, 0.0, true});
  // a unit-mass sin^2 bump of width L peaks at 2/L, which must stay under 1/(lambda x) after eps = 0.1
  if (0.6 * (1.0 - d) > 0.3 * sh.lambda)
    out.push_back({"void_right", Bump::Kind::Smooth, d + 0.2 * (1.0 - d), d + 0.8 * (1.0 - d), 0.0, false});
  else if (d < 1.0 - 1e-2)
    out.push_back({"void_right_packed", Bump::Kind::Packed, d, 1.0, 0.0, false});
  else
    out.push_back({"packed_top", Bump::Kind::Packed, std::exp(-sh.lambda), 1.0, 0.0, false});
  out.push_back({"law_1.25", Bump::Kind::Law, 0.0, 0.0, 1.25 * sh.lambda, false});
  return out;
}

double effective_potential(double x, double lambda, double c) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("effective_potential: x must lie in (0,1)");
  LimitShape sh = shape(lambda, c);
  auto f = [&](double y) {
    double r = density(y, sh);
    return r != 0.0 ? safe_log_abs(x - y) * r : 0.0;
  };
  double brk = (x > sh.a && x < sh.b) ? x : detail::no_break();
  double band = detail::band_integrate(sh, f, sh.a, sh.b, brk, detail::tanh_sinh_q(1e-12, 1e-8));
  double sat = 0.0;
  if (is_saturated(sh)) {
    auto g = [&](double y) { return safe_log_abs(x - y) / (lambda * y); };
    if (x > sh.b)
      sat = quad::tanh_sinh(g, sh.b, x, 1e-12, 1e-8) + quad::tanh_sinh(g, x, 1.0, 1e-12, 1e-8);
    else
      sat = quad::tanh_sinh(g, sh.b, 1.0, 1e-12, 1e-8);
  }
  return -2.0 * (band + sat) + dilog(x) / lambda - c * std::log(x);
}

namespace {

// 2 pv int mu(y)/(x-y) dy with symmetric excision of radius h
double pv_sum(double x, const LimitShape& sh, double h) {
  const double lam = sh.lambda;
  auto f = [&](double y) { return density(y, sh) / (x - y); };
  auto q = detail::tanh_sinh_q(1e-12, 1e-8);
  double outer = detail::band_integrate(sh, f, sh.a, x - h, detail::no_break(), q) +
                 detail::band_integrate(sh, f, x + h, sh.b, detail::no_break(), q);
  double eta = std::min(1e-5 * (sh.b - sh.a), 0.25 * h);
  double dmu = (density(x + eta, sh) - density(x - eta, sh)) / (2.0 * eta);
  double inner = -2.0 * h * dmu;
  double sat = 0.0;
  if (is_saturated(sh)) sat = (std::log(1.0 / sh.b) + std::log((sh.b - x) / (1.0 - x))) / (lam * x);
  return 2.0 * (outer + inner + sat);
}

}  // namespace

PvResult pv_residual_detail(double x, double lambda, double c) {
  LimitShape sh = shape(lambda, c);
  if (!(x > sh.a && x < sh.b)) throw DomainError("pv_residual: x must lie inside the band");
  double h = 1e-4 * (sh.b - sh.a);
  h = std::min({h, 0.5 * (x - sh.a), 0.5 * (sh.b - x)});
  double tail = std::log1p(-x) / (lambda * x) + c / x;
  double r1 = pv_sum(x, sh, h) + tail;
  double r2 = pv_sum(x, sh, 0.5 * h) + tail;
  return {r1, std::fabs(r1 - r2)};
}

double pv_residual(double x, double lambda, double c) { return pv_residual_detail(x, lambda, c).residual; }

double h_function(double x, double lambda, double c) {
  LimitShape sh = shape(lambda, c);
  if (!(x > 0.0 && x < 1.0) || (x >= sh.a && x <= sh.b))
    throw DomainError("h_function: x must lie in (0,1) off the band");
  auto f = [&](double y) { return density(y, sh) / (x - y); };
  double band = detail::band_integrate(sh, f, sh.a, sh.b, detail::no_break(), detail::kronrod_q(1e-13, 1e-9));
  double sat = 0.0;
  if (is_saturated(sh))
    sat = (std::log(1.0 / sh.b) + std::log(std::fabs(x - sh.b) / std::fabs(1.0 - x))) / (lambda * x);
  return 2.0 * (band + sat) + c / x + std::log1p(-x) / (lambda * x);
}

double h_function_closed(double x, double lambda, double c) {
  LimitShape sh = shape(lambda, c);
  const double a = sh.a, b = sh.b;
  if (!(a > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  // the I terms come from the jump of the saturated part across (b,1)
  double K = c / std::sqrt(a * b) - appendix_J(0.0, a, b) / lambda;
  double V = appendix_J(x, a, b) / lambda;
  if (is_saturated(sh)) {
    K -= 2.0 * appendix_I(0.0, a, b) / lambda;
    V += 2.0 * appendix_I(x, a, b) / lambda;
  }
  return -R_real(x, a, b) / x * (K + V);
}

double appendix_J(double x, double a, double b) {
  if (x < a) {
    double sa = std::sqrt(a - x), sb = std::sqrt(b - x);
    return 2.0 / (sa * sb) *
           std::log((sb + sa) * std::sqrt(1.0 - x) / (sb * std::sqrt(1.0 - a) + sa * std::sqrt(1.0 - b)));
  }
  if (x > b && x < 1.0) {
    double sa = std::sqrt(x - a), sb = std::sqrt(x - b);
    return -2.0 / (sa * sb) *
           std::log((sb + sa) * std::sqrt(1.0 - x) / (sb * std::sqrt(1.0 - a) + sa * std::sqrt(1.0 - b)));
  }
  throw DomainError("appendix_J: x must lie in [0,a) or (b,1)");
}

double appendix_J_quad(double x, double a, double b) {
  if (x >= a && x <= b) throw DomainError("appendix_J_quad: x inside [a,b]");
  return quad::exp_sinh([&](double s) { return 1.0 / ((s - x) * std::sqrt((s - a) * (s - b))); }, 1.0,
                        1e-13, 1e-9);
}

double appendix_I(double x, double a, double b) {
  if (x < a) {
    double sa = std::sqrt(a - x), sb = std::sqrt(b - x);
    double p = sb * std::sqrt(1.0 - a), q = sa * std::sqrt(1.0 - b);
    return std::log((p + q) / (p - q)) / (sa * sb);
  }
  if (x > b && x < 1.0) {
    double sa = std::sqrt(x - a), sb = std::sqrt(x - b);
    double p = sb * std::sqrt(1.0 - a), q = sa * std::sqrt(1.0 - b);
    return -std::log((p + q) / (q - p)) / (sa * sb);
  }
  throw DomainError("appendix_I: x must lie in [0,a) or (b,1)");
}

double appendix_I_quad(double x, double a, double b) {
  // s = b + u^2 removes the endpoint singularity: ds / R(s) = 2 du / sqrt(s - a)
  const double U = std::sqrt(1.0 - b);
  if (x < a) {
    return quad::kronrod([&](double u) {
      double s = b + u * u;
      return 2.0 / ((s - x) * std::sqrt(s - a));
    }, 0.0, U, 1e-13, 1e-9);
  }
  if (x > b && x < 1.0) {
    // principal value at u = ux: F(u) / (u - ux) with F(u) = 2 / ((u + ux) sqrt(s - a))
    const double ux = std::sqrt(x - b);
    // (F(u) - F(ux)) / (u - ux) with the cancellation done by hand
    const double rx = std::sqrt(x - a);
    const double Fx = 1.0 / (ux * rx);
    auto g = [&](double u) {
      double r = std::sqrt(b + u * u - a);
      return -(r + 2.0 * ux * (u + ux) / (r + rx)) / ((u + ux) * r * ux * rx);
    };
    double v = quad::kronrod(g, 0.0, ux, 1e-13, 1e-9) + quad::kronrod(g, ux, U, 1e-13, 1e-9);
    return v + Fx * std::log((U - ux) / ux);
  }
  throw DomainError("appendix_I_quad: x must lie in [0,a) or (b,1)");
}

SystemResiduals system_residuals(double lambda, double c, std::optional<double> M1) {
  LimitShape sh = shape(lambda, c);
  const double a = sh.a, b = sh.b, d = d_sat(sh), lam = lambda;
  const double m1 = M1 ? *M1 : limit_moment(1, lambda, c);
  double sa = std::sqrt(a), sb = std::sqrt(b);
  double l1a = std::sqrt(1.0 - a), l1b = std::sqrt(1.0 - b);
  double P = std::sqrt(b * (d - a)), Q = std::sqrt(a * (d - b));
  double Ld = std::log((std::sqrt(d - a) + std::sqrt(d - b)) / std::sqrt(b - a));
  double L1 = std::log((l1a + l1b) / 2.0);
  SystemResiduals r;
  r.r1 = -c / 2.0 - std::log((l1a * sb + l1b * sa) / (sb + sa)) / lam + std::log((P + Q) / (P - Q)) / lam;
  r.r2 = -c / 2.0 - L1 / lam + 2.0 * Ld / lam - 1.0;
  r.r3 = -(c + 1.0 / lam + 2.0) * (a + b) / 4.0 + (1.0 - l1a * l1b - (a + b) * L1) / (2.0 * lam) +
         (std::sqrt((d - a) * (d - b)) + (a + b) * Ld) / lam - m1;
  return r;
}

std::map<std::string, double> appendix_prop_integrals(double a, double b, double d, cd z) {
  if (!(0.0 < a && a < b && b <= d && d <= 1.0))
    throw DomainError("appendix_prop_integrals: need 0 < a < b <= d <= 1");
  if (z.imag() == 0.0 && z.real() >= a && z.real() <= d)
    throw DomainError("appendix_prop_integrals: z on the cut");
  std::map<std::string, double> res;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  // (1/2 pi i) int_a^b f(s) / R_+(s) ds = -(1/2 pi) int_0^pi f(mid + half cos t) dt
  auto cut_integral = [&](auto f) {
    double re = quad::kronrod([&](double t) { return cd(f(mid + half * std::cos(t))).real(); }, 0.0, kPi, 1e-14, 1e-10);
    double im = quad::kronrod([&](double t) { return cd(f(mid + half * std::cos(t))).imag(); }, 0.0, kPi, 1e-14, 1e-10);
    return -cd(re, im) / (2.0 * kPi);
  };
  const cd Rz = R_of(z, a, b);
  const double sab = std::sqrt(a * b);

  cd main_q = cut_integral([&](double s) { return 1.0 / (s * (z - s)); });
  cd main_c = -1.0 / (2.0 * z * sab) - 1.0 / (2.0 * z * Rz);
  res["A1_main"] = std::abs(main_q - main_c);
  for (int j = -1; j <= 1; ++j) {
    double v = cut_integral([&](double s) { return std::pow(s, j); }).real();
    double closed = j == -1 ? -1.0 / (2.0 * sab) : j == 0 ? -0.5 : -(a + b) / 4.0;
    res["A1_j" + std::to_string(j)] = std::fabs(v - closed);
    if (j == 1) res["A1_j1_paper"] = std::fabs(v - (-0.25 - (a + b) / 4.0));
  }

  // int_b^d s^j / R(s) ds, with s = b + u^2
  const double U = std::sqrt(d - b);
  const double Ld = std::log((std::sqrt(d - a) + std::sqrt(d - b)) / std::sqrt(b - a));
  for (int j = -1; j <= 1; ++j) {
    double v = quad::kronrod([&](double u) {
      double s = b + u * u;
      return 2.0 * std::pow(s, j) / std::sqrt(s - a);
    }, 0.0, U, 1e-14, 1e-10);
    double closed;
    if (j == -1) {
      double P = std::sqrt(b * (d - a)), Q = std::sqrt(a * (d - b));
      closed = std::log((P + Q) / (P - Q)) / sab;
    } else if (j == 0) {
      closed = 2.0 * Ld;
    } else {
      closed = std::sqrt((d - a) * (d - b)) + (a + b) * Ld;
    }
    res["A2_j" + std::to_string(j)] = std::fabs(v - closed);
  }

  if (z.imag() != 0.0) {
    cd a3_q = cut_integral([&](double s) { return std::log1p(-s) / (s * (z - s)); });
    cd zb = std::sqrt(z - b), za = std::sqrt(z - a);
    cd p1 = std::sqrt(1.0 - a) * zb, p2 = std::sqrt(1.0 - b) * za;
    cd a3_c = -std::log(1.0 - z) / (2.0 * z * Rz) + std::log((zb + za) / (zb - za)) / (2.0 * z * Rz) -
              std::log((p1 + p2) / (p1 - p2)) / (2.0 * z * Rz) -
              std::log((std::sqrt(b * (1.0 - a)) + std::sqrt(a * (1.0 - b))) / (std::sqrt(b) + std::sqrt(a))) /
                  (z * sab);
    res["A3"] = std::abs(a3_q - a3_c);
  }
  return res;
}

WeightCheck weight_asymptotics_check(double x, double lambda, double c, long d,
                                     const std::vector<long>& N_list) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("weight_asymptotics_check: x must lie in (0,1)");
  if (!(lambda > 0.0)) throw DomainError("weight_asymptotics_check: lambda must be positive");
  WeightCheck wc;
  wc.N = N_list;
  const double field = dilog(x) / lambda - c * std::log(x);
  for (long N : N_list) {
    ModelParams mp{lambda, c, d, N};
    wc.r.push_back(std::fabs(log_weight(x, mp) + static_cast<double>(N) * field));
  }
  wc.limit = std::fabs(static_cast<double>(d) * std::log(x) - 0.5 * std::log1p(-x));
  if (!wc.r.empty()) {
    auto [mn, mx] = std::minmax_element(wc.r.begin(), wc.r.end());
    wc.ratio = *mn > 0.0 ? *mx / *mn : std::numeric_limits<double>::infinity();
  }
  return wc;
}

EnergyReport verify_panel(double lambda, double c) {
  EnergyReport rep;
  rep.lambda = lambda;
  rep.c = c;
  rep.shape = shape(lambda, c);
  const LimitShape& sh = rep.shape;
  const double a = sh.a, b = sh.b, w = b - a, d = d_sat(sh);

  // Euler-Lagrange equality on the band
  constexpr int kPts = 30;
  const double delta = 1e-3 * w;
  std::vector<double> band_v(kPts);
  for (int i = 0; i < kPts; ++i) {
    double x = a + delta + (w - 2.0 * delta) * i / (kPts - 1.0);
    band_v[i] = effective_potential(x, lambda, c);
  }
  auto [mn, mx] = std::minmax_element(band_v.begin(), band_v.end());
  rep.el_equality_spread = *mx - *mn;
  double level = 0.0;
  for (double v : band_v) level += v;
  level /= kPts;
  rep.potential_level = level;

  // inequalities: >= level on voids, <= level on the saturated region.
  // Since V' = -h, this needs h > 0 on (0,a) and on a saturated (b,1), h < 0 on a right void.
  auto scan = [&](double lo, double hi, int sign, int hsign, const std::string& name) {
    if (!(hi - lo > 1e-9)) return;
    double m = std::numeric_limits<double>::infinity();
    double hm = std::numeric_limits<double>::infinity();
    for (int i = 1; i < kPts; ++i) {
      double x = lo + (hi - lo) * i / static_cast<double>(kPts);
      m = std::min(m, sign * (effective_potential(x, lambda, c) - level));
      double hv = h_function(x, lambda, c);
      hm = std::min(hm, hsign * hv);
      double hc = h_function_closed(x, lambda, c);
      if (std::isfinite(hc))
        rep.h_closed_residual = std::max(rep.h_closed_residual, std::fabs(hc - hv) / std::max(1.0, std::fabs(hv)));
    }
    rep.inequality_margins[name] = m;
    rep.h_margins[name] = hm;
  };
  scan(0.0, a, +1, +1, "void_left");
  if (is_saturated(sh)) scan(b, 1.0, -1, +1, "saturated");
  else scan(d, 1.0, +1, -1, "void_right");

  // principal-value relation at 20 band points
  for (int i = 1; i <= 20; ++i) {
    double x = a + w * i / 21.0;
    PvResult pr = pv_residual_detail(x, lambda, c);
    rep.pv_max = std::max(rep.pv_max, std::fabs(pr.residual));
    rep.pv_richardson = std::max(rep.pv_richardson, pr.richardson);
  }

  rep.system = system_residuals(lambda, c);

  // energy and perturbations
  DensityProfile mu = make_profile(lambda, c);
  rep.energy = energy_functional(mu, lambda, c);
  rep.min_energy_gap = std::numeric_limits<double>::infinity();
  const std::vector<double> eps_strict{0.02, 0.05, 0.1};
  const std::vector<double> eps_quad{0.02, 0.04, 0.08};
  double qvar = 0.0;
  bool have_q = false;
  for (const Bump& bump : default_bumps(sh)) {
    DensityProfile nu = bump_profile(mu, bump);
    bool ok = true;
    for (double e : eps_strict)
      if (!admissible(mix(mu, nu, e))) ok = false;
    if (!ok) {
      rep.rejected_bumps.push_back(bump.name);
      continue;
    }
    for (double e : eps_strict) {
      double dI = energy_functional(mix(mu, nu, e), lambda, c) - rep.energy;
      rep.perturbations.push_back({bump.name, e, dI});
      rep.min_energy_gap = std::min(rep.min_energy_gap, dI);
    }
    if (bump.in_band && !is_saturated(sh)) {
      std::vector<double> ratios;
      for (double e : eps_quad) ratios.push_back((energy_functional(mix(mu, nu, e), lambda, c) - rep.energy) / (e * e));
      auto [rmin, rmax] = std::minmax_element(ratios.begin(), ratios.end());
      qvar = std::max(qvar, (*rmax - *rmin) / std::fabs(*rmax));
      have_q = true;
    }
  }
  if (have_q) rep.quadratic_variation = qvar;
  return rep;
}

std::vector<EnergyReport> verify_panels(const std::vector<std::pair<double, double>>& panels) {
  std::vector<EnergyReport> out(panels.size());
  parallel_for(panels.size(), [&](std::size_t i) { out[i] = verify_panel(panels[i].first, panels[i].second); });
  return out;
}

}  // namespace qmp
