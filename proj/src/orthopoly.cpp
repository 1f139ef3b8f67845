#include "qmp/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "qmp/errors.hpp"
#include "qmp/numeric.hpp"
#include "qmp/qcore.hpp"
#include "qmp/simd/kernels.hpp"
#include "qmp/tridiag.hpp"

namespace qmp {

namespace {

double log_h0(const ModelParams& params) {
  const double al = params.alpha();
  if (params.classical()) return std::lgamma(al + 1.0);
  const double q = params.q(), lq = params.log_q();
  return std::log(-std::expm1(lq)) + log_q_pochhammer_inf(q, q) -
         log_q_pochhammer_inf(std::exp((al + 1.0) * lq), q);
}

}  // namespace

RecurrenceTable build_recurrence(LaguerreKind kind, long n_max, const ModelParams& params) {
  params.validate();
  if (!(params.alpha() > -1.0)) throw DomainError("build_recurrence: alpha <= -1");
  if (n_max < 0) throw DomainError("build_recurrence: n_max < 0");
  if (kind == LaguerreKind::q_normalized && params.classical())
    throw DomainError("build_recurrence: normalized kind needs q < 1");
  RecurrenceTable t;
  t.kind = kind;
  t.n_max = n_max;
  t.params = params;
  t.b.resize(n_max + 1);
  t.off.resize(n_max + 1);
  t.log_h.resize(n_max + 1);
  for (long n = 0; n <= n_max; ++n) {
    RecurrenceCoeffs rc = laguerre_coeffs(kind, n, params);
    t.b[n] = rc.b;
    t.off[n] = n == 0 ? 0.0 : rc.off;
  }
  const double h0 = log_h0(params);
  t.log_h[0] = h0;
  if (kind != LaguerreKind::q_normalized) {
    for (long n = 1; n <= n_max; ++n) t.log_h[n] = t.log_h[n - 1] + std::log(t.off[n]);
    return t;
  }
  const double al = params.alpha(), lq = params.log_q();
  const double om1 = -std::expm1(lq);
  for (long n = 1; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    // h_n / h_{n-1} = q^{alpha+1} (1-q^n) / (1-q^{alpha+n})
    t.log_h[n] = t.log_h[n - 1] + (al + 1.0) * lq + log_one_minus_qpow(dn, lq) -
                 log_one_minus_qpow(al + dn, lq);
    double lam = laguerre_coeffs(LaguerreKind::q_monic, n, params).off * om1 * om1;
    double a2 = t.off[n] * t.off[n];
    if (std::fabs(a2 - lam) > 1e-12 * lam)
      throw Error("build_recurrence: normalized and monic coefficients disagree");
  }
  return t;
}

double eval_poly(long n, double x, const RecurrenceTable& t) {
  if (n < 0 || n > t.n_max) throw DomainError("eval_poly: degree outside table");
  if (n == 0) return 1.0;
  if (t.kind != LaguerreKind::q_normalized) {
    double pm1 = 0.0, p0 = 1.0;
    for (long k = 0; k < n; ++k) {
      double p1 = (x - t.b[k]) * p0 - t.off[k] * pm1;
      pm1 = p0;
      p0 = p1;
    }
    return p0;
  }
  const double al = t.params.alpha(), lq = t.params.log_q();
  double pm1 = 0.0, p0 = 1.0;
  for (long k = 0; k < n; ++k) {
    const double dk = static_cast<double>(k);
    double A = std::exp(dk * lq) * one_minus_qpow(dk + al + 1.0, lq);
    double C = std::exp((dk + al) * lq) * one_minus_qpow(dk, lq);
    double p1 = ((A + C - x) * p0 - C * pm1) / A;
    pm1 = p0;
    p0 = p1;
  }
  return p0;
}

ZeroSet zeros(long n, const ModelParams& params) {
  if (n < 1) throw DomainError("zeros: n < 1");
  if (params.classical()) throw DomainError("zeros: q must be < 1");
  RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, n, params);
  std::vector<double> diag(t.b.begin(), t.b.begin() + n);
  std::vector<double> off(t.off.begin() + 1, t.off.begin() + n);
  ZeroSet zs;
  zs.n = n;
  zs.params = params;
  zs.zeros = tridiag_eigenvalues(diag, off);

  std::vector<double> offsq(n, 0.0);
  for (long k = 1; k < n; ++k) offsq[k] = t.off[k] * t.off[k];
  std::vector<double> ratio(n);
  simd::newton_ratio(diag.data(), offsq.data(), n, zs.zeros.data(), n, ratio.data());
  for (long k = 0; k < n; ++k) {
    double gap = 1.0;
    if (k > 0) gap = std::min(gap, zs.zeros[k] - zs.zeros[k - 1]);
    if (k + 1 < n) gap = std::min(gap, zs.zeros[k + 1] - zs.zeros[k]);
    double r = std::fabs(ratio[k]) / gap;
    if (!std::isfinite(r)) r = 0.0;  // p_n' and p_n both vanish only at exact double roots
    zs.max_residual = std::max(zs.max_residual, r);
  }
  return zs;
}

bool strictly_interlace(const std::vector<double>& lower, const std::vector<double>& upper) {
  if (upper.size() != lower.size() + 1) return false;
  for (std::size_t k = 0; k < lower.size(); ++k)
    if (!(upper[k] < lower[k] && lower[k] < upper[k + 1])) return false;
  return true;
}

double jackson_integral(const std::function<double(double)>& f, double A, double q, double tol,
                        long j_cap) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("jackson_integral: q must be in (0,1)");
  constexpr int window = 8;
  const double lq = std::log(q);
  KahanSum s;
  std::deque<double> ratios;
  double prev = 0.0;
  for (long j = 0; j <= j_cap; ++j) {
    const double x = A * std::exp(static_cast<double>(j) * lq);
    const double t = x * f(x);
    s.add(t);
    const double at = std::fabs(t);
    if (j > 0) {
      double r = prev > 0.0 ? at / prev : (at == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      ratios.push_back(r);
      if (ratios.size() > window) ratios.pop_front();
    }
    prev = at;
    if (ratios.size() == window) {
      double rmax = *std::max_element(ratios.begin(), ratios.end());
      if (rmax < 1.0) {
        double tail = at * rmax / (1.0 - rmax);
        if (2.0 * (1.0 - q) * tail < tol) return (1.0 - q) * s.value();
      }
    }
    if (x == 0.0) return (1.0 - q) * s.value();
  }
  throw NonConvergent("jackson_integral: no geometric tail bound within the j cap");
}

double log_weight(double x, const ModelParams& params) {
  const double al = params.alpha();
  const double q = params.q();
  double lx = al == 0.0 ? 0.0 : al * std::log(x);
  return lx + log_q_pochhammer_inf(q * x, q);
}

double weight(double x, const ModelParams& params) { return std::exp(log_weight(x, params)); }

double moment_via_jackson(long p, long j, const ModelParams& params) {
  RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, j, params);
  const double lhj = t.log_h[j];
  auto f = [&](double x) {
    double pj = eval_poly(j, x, t);
    return std::pow(x, static_cast<double>(p)) * pj * pj * std::exp(log_weight(x, params) - lhj);
  };
  return jackson_integral(f, 1.0, params.q(), 1e-16);
}

double jackson_moment_closed(long p, long j, long alpha, double q) {
  const double qa1 = std::pow(q, static_cast<double>(alpha + 1));
  double pref = std::pow(1.0 - q, static_cast<double>(p + 1)) *
                std::pow(q, static_cast<double>((p + alpha + 1) * j)) *
                q_pochhammer(q, q, j) / q_pochhammer(qa1, q, j) *
                q_pochhammer(q, q, kInfinity) / q_pochhammer(qa1, q, kInfinity) *
                q_factorial(p, q);
  double sum = 0.0;
  for (long i = 0; i <= p; ++i)
    sum += std::pow(q, static_cast<double>((p - i) * (alpha - i))) * q_binomial(p, i, q) *
           q_binomial(alpha + j, i, q) * q_binomial(p - i + j, j, q);
  return pref * sum;
}

namespace {

struct OnePoint {
  RecurrenceTable t;
  std::vector<double> diag, off;

  explicit OnePoint(const ModelParams& params)
      : t(build_recurrence(LaguerreKind::q_normalized, params.N, params)) {
    diag.assign(t.b.begin(), t.b.begin() + params.N);
    off.assign(t.off.begin(), t.off.begin() + params.N);
  }

  // log of sum_{j<N} p_j^2/h_j at each x
  void log_kernel(const double* xs, std::size_t m, double* out) const {
    simd::log_christoffel_sum(diag.data(), off.data(), diag.size(), xs, m, out);
    for (std::size_t i = 0; i < m; ++i) out[i] -= t.log_h[0];
  }
};

}  // namespace

std::vector<double> one_point_function(const std::vector<double>& xs, const ModelParams& params) {
  params.validate();
  if (params.classical()) throw DomainError("one_point_function: q must be < 1");
  for (double x : xs)
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("one_point_function: x outside (0,1]");
  OnePoint op(params);
  std::vector<double> lk(xs.size());
  op.log_kernel(xs.data(), xs.size(), lk.data());
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::exp(lk[i] + log_weight(xs[i], params));
  return out;
}

double one_point_function(double x, const ModelParams& params) {
  return one_point_function(std::vector<double>{x}, params)[0];
}

double one_point_jackson_moment(long p, const ModelParams& params, double tol) {
  params.validate();
  if (params.classical()) throw DomainError("one_point_jackson_moment: q must be < 1");
  OnePoint op(params);
  const double lq = params.log_q(), q = params.q();
  const double al = params.alpha();
  // log w(q^m) = alpha m log q + log (q;q)_inf - log (q;q)_m
  const double linf = log_q_pochhammer_inf(q, q);
  constexpr std::size_t block = 64;
  constexpr int window = 8;
  KahanSum s;
  double log_qq_m = 0.0;
  std::vector<double> xs(block), lk(block), terms;
  for (long m0 = 0; m0 < 100'000'000; m0 += static_cast<long>(block)) {
    for (std::size_t i = 0; i < block; ++i) xs[i] = std::exp(static_cast<double>(m0 + i) * lq);
    op.log_kernel(xs.data(), block, lk.data());
    for (std::size_t i = 0; i < block; ++i) {
      const double m = static_cast<double>(m0 + static_cast<long>(i));
      if (m > 0) log_qq_m += log_one_minus_qpow(m, lq);
      double lw = al * m * lq + linf - log_qq_m;
      double t = std::exp(static_cast<double>(p + 1) * m * lq + lk[i] + lw);
      s.add(t);
      terms.push_back(t);
    }
    const std::size_t n = terms.size();
    double rmax = 0.0;
    for (std::size_t k = n - window; k < n; ++k)
      rmax = std::max(rmax, terms[k - 1] > 0.0 ? terms[k] / terms[k - 1] : 0.0);
    if (rmax < 1.0 && 2.0 * (1.0 - q) * terms.back() * rmax / (1.0 - rmax) < tol)
      return (1.0 - q) * s.value();
  }
  throw NonConvergent("one_point_jackson_moment: tail bound not reached");
}

double EmpiricalZeroMeasure::moment(long p) const {
  if (atoms.empty()) return 0.0;
  KahanSum s;
  for (double z : atoms) s.add(std::pow(z, static_cast<double>(p)));
  return s.value() / static_cast<double>(atoms.size());
}

double EmpiricalZeroMeasure::cdf(double x) const {
  if (atoms.empty()) return 0.0;
  auto it = std::upper_bound(atoms.begin(), atoms.end(), x);
  return static_cast<double>(it - atoms.begin()) / static_cast<double>(atoms.size());
}

EmpiricalZeroMeasure empirical_zero_measure(long n, const ModelParams& params) {
  return EmpiricalZeroMeasure{zeros(n, params).zeros};
}

GaussRule gauss_rule(long n, const ModelParams& params) {
  if (n < 1) throw DomainError("gauss_rule: n < 1");
  RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, n, params);
  std::vector<double> diag(t.b.begin(), t.b.begin() + n);
  std::vector<double> off(t.off.begin() + 1, t.off.begin() + n);
  TridiagEigen e = tridiag_eigen_first(diag, off);
  GaussRule g;
  g.nodes = e.values;
  for (double z : e.first_components) g.weights.push_back(z * z);
  return g;
}

}  // namespace qmp
