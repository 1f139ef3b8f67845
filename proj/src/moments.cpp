#include "qmp/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmp/errors.hpp"
#include "qmp/numeric.hpp"
#include "qmp/parallel.hpp"
#include "qmp/qcore.hpp"
#include "qmp/quad.hpp"

namespace qmp {

ModelParams ModelParams::from_q(double q, long alpha, long N) {
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("ModelParams::from_q: q outside (0,1]");
  ModelParams m;
  m.lambda = -static_cast<double>(N) * std::log(q);
  m.c = 0.0;
  m.d = alpha;
  m.N = N;
  return m;
}

double ModelParams::q() const { return std::exp(log_q()); }

double ModelParams::s() const { return std::exp(-lambda); }

long ModelParams::alpha_int() const {
  double a = alpha();
  double r = std::round(a);
  if (std::fabs(a - r) > 1e-9 * std::fmax(1.0, std::fabs(a)))
    throw DomainError("alpha = cN + d is not an integer");
  return static_cast<long>(r);
}

void ModelParams::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 0");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("c must be >= 0");
  if (d < 0) throw DomainError("d must be >= 0");
  if (N < 1) throw DomainError("N must be positive");
}

mpz_class lue_moment(long N, long p, long alpha) {
  if (N < 1 || p < 0 || alpha < 0) throw DomainError("lue_moment: invalid arguments");
  mpz_class sum = 0;
  for (long j = 0; j < N; ++j)
    for (long i = 0; i <= p; ++i)
      sum += binomial(p, i) * binomial(alpha + j, i) * binomial(p - i + j, j);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(p));
  return fact * sum;
}

namespace {

mpz_class falling(long x, long k) {
  mpz_class r = 1;
  for (long t = 0; t < k; ++t) r *= (x - t);
  return r;
}

mpz_class factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

mpz_class as_integer(const mpq_class& v, const char* who) {
  if (v.get_den() != 1) throw Error(std::string(who) + ": non-integral result");
  return v.get_num();
}

}  // namespace

mpz_class lue_moment_alt(long N, long p, long alpha) {
  if (p == 0) return N;
  mpq_class sum = 0;
  for (long i = 1; i <= p; ++i) {
    mpq_class t(falling(N + alpha + p - i, p) * falling(N + p - i, p),
                factorial(p - i) * factorial(i - 1));
    t.canonicalize();
    if ((i - 1) % 2 == 0)
      sum += t;
    else
      sum -= t;
  }
  sum /= p;
  return as_integer(sum, "lue_moment_alt");
}

mpz_class lue_moment_alt2(long N, long p, long alpha) {
  if (p == 0) return N;
  mpq_class sum = 0;
  for (long j = 0; j <= (p - 1) / 2; ++j) {
    mpq_class t(binomial(N - 1, j) * binomial(N + alpha - 1, j) *
                    binomial(2 * N + alpha + p - 2 * j - 2, p - 2 * j - 1),
                j + 1);
    t.canonicalize();
    sum += t;
  }
  sum *= mpz_class(N) * (N + alpha) * factorial(p - 1);
  return as_integer(sum, "lue_moment_alt2");
}

QPolynomial qlue_moment_rescaled_poly(long N, long p, long alpha) {
  if (N < 1 || p < 0 || alpha < 0) throw DomainError("qlue_moment_poly: invalid arguments");
  QPolynomial sum;
  for (long j = 0; j < N; ++j)
    for (long i = 0; i <= std::min(p, alpha + j); ++i) {
      long e = (p - i) * (alpha - i) + p * j;
      sum += (q_binomial_poly(p, i) * q_binomial_poly(alpha + j, i) *
              q_binomial_poly(p - i + j, j))
                 .shifted(static_cast<unsigned>(e));
    }
  return q_factorial_poly(p) * sum;
}

QPolynomial qlue_moment_poly(long N, long p, long alpha) {
  QPolynomial pref(1);
  for (long m = 1; m <= p; ++m) pref *= QPolynomial(std::vector<mpz_class>{1, -1});
  return pref * qlue_moment_rescaled_poly(N, p, alpha);
}

mpq_class qlue_moment_exact(long N, long p, long alpha, const mpq_class& q) {
  if (N < 1 || p < 0 || alpha < 0) throw DomainError("qlue_moment_exact: invalid arguments");
  if (q == 1) return mpq_class(lue_moment(N, p, alpha));
  if (!(q > 0 && q < 1)) throw DomainError("qlue_moment_exact: q outside (0,1]");
  mpq_class sum = 0;
  for (long j = 0; j < N; ++j)
    for (long i = 0; i <= std::min(p, alpha + j); ++i) {
      long e = (p - i) * (alpha - i) + p * j;
      mpq_class qe;
      mpz_pow_ui(qe.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(qe.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(e));
      qe.canonicalize();
      sum += qe * q_binomial(p, i, q) * q_binomial(alpha + j, i, q) * q_binomial(p - i + j, j, q);
    }
  mpq_class pref = 1, qm = 1;
  for (long m = 1; m <= p; ++m) {
    qm *= q;
    pref *= 1 - qm;
  }
  return pref * sum;
}

double qlue_moment(const ModelParams& params, long p) {
  params.validate();
  if (p < 0) throw DomainError("qlue_moment: p < 0");
  long alpha = params.alpha_int();
  if (alpha < 0) throw DomainError("qlue_moment: alpha must be nonnegative");
  const long N = params.N;
  if (params.classical()) return lue_moment(N, p, alpha).get_d();
  if (p == 0) return static_cast<double>(N);
  const double lq = params.log_q();

  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(N * (p + 1)));
  std::vector<double> log_p_choose(p + 1);
  for (long i = 0; i <= p; ++i) log_p_choose[i] = log_q_binomial(p, i, lq);
  double lmax = -std::numeric_limits<double>::infinity();
  for (long j = 0; j < N; ++j)
    for (long i = 0; i <= std::min(p, alpha + j); ++i) {
      double e = static_cast<double>((p - i) * (alpha - i) + p * j);
      double l = e * lq + log_p_choose[i] + log_q_binomial(alpha + j, i, lq) +
                 log_q_binomial(p - i + j, j, lq);
      logs.push_back(l);
      lmax = std::max(lmax, l);
    }
  KahanSum acc;
  for (double l : logs) acc.add(std::exp(l - lmax));
  double pref = 0.0;
  for (long m = 1; m <= p; ++m) pref += log_one_minus_qpow(static_cast<double>(m), lq);
  return std::exp(pref + lmax) * acc.value();
}

double limit_moment(long p, double lambda, double c) {
  if (lambda < 0.0) throw DomainError("limit_moment: lambda < 0");
  if (c < 0.0) throw DomainError("limit_moment: c < 0");
  if (p < 0) throw DomainError("limit_moment: p < 0");
  if (p == 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  const double one_minus_s = -std::expm1(-lambda);
  const double sc = std::exp(-c * lambda);
  const double one_minus_sc = -std::expm1(-c * lambda);
  KahanSum acc;
  for (long m = 0; m <= p; ++m) {
    double w = binomial(p, m).get_d() * std::pow(sc, static_cast<double>(m)) *
               std::pow(one_minus_sc, static_cast<double>(p - m));
    if (w == 0.0) continue;
    acc.add(w * incomplete_beta_reg(one_minus_s, static_cast<double>(m + 1),
                                    static_cast<double>(p)));
  }
  return acc.value() / (lambda * static_cast<double>(p));
}

double limit_moment_integral(long p, double lambda, double c) {
  if (!(lambda > 0.0)) throw DomainError("limit_moment_integral: lambda must be > 0");
  if (p == 0) return 1.0;
  std::vector<double> c2(p + 1);
  for (long i = 0; i <= p; ++i) {
    double b = binomial(p, i).get_d();
    c2[i] = b * b;
  }
  const double sc = std::exp(-c * lambda);
  auto f = [&](double t) {
    double spt = std::exp(-lambda * static_cast<double>(p) * t);
    double u = -std::expm1(-(c + t) * lambda);  // 1 - s^{c+t}
    double v = sc * -std::expm1(-t * lambda);   // s^c (1 - s^t)
    double sum = 0.0;
    for (long i = 0; i <= p; ++i)
      sum += c2[i] * std::pow(u, static_cast<double>(i)) * std::pow(v, static_cast<double>(p - i));
    return spt * sum;
  };
  return quad::kronrod(f, 0.0, 1.0, 1e-14, 1e-11);
}

double scaled_limit_moment(long p, double lambda, double c) {
  if (lambda == 0.0) return classical_mp_moment(p, c);
  return limit_moment(p, lambda, c) / std::pow(lambda, static_cast<double>(p));
}

double subleading_moment_c0(long p, long d, double lambda) {
  if (p < 1) throw DomainError("subleading_moment_c0: p must be >= 1");
  if (!(lambda > 0.0)) throw DomainError("subleading_moment_c0: lambda must be > 0");
  if (d < 0) throw DomainError("subleading_moment_c0: d must be >= 0");
  const double s = std::exp(-lambda);
  const double one_minus_s = -std::expm1(-lambda);
  double ib = incomplete_beta_reg(one_minus_s, static_cast<double>(p + 1), static_cast<double>(p));
  double sp = std::pow(s * one_minus_s, static_cast<double>(p));
  return 0.5 * ib + 0.5 * static_cast<double>(d) * binomial(2 * p, p).get_d() * sp;
}

mpz_class narayana(long p, long j) {
  if (p == 0) return j == 0 ? 1 : 0;
  if (j < 1 || j > p) return 0;
  return binomial(p, j) * binomial(p, j - 1) / p;
}

double classical_mp_moment(long p, double c) {
  if (p < 0) throw DomainError("classical_mp_moment: p < 0");
  if (p == 0) return 1.0;
  double sum = 0.0;
  for (long j = 1; j <= p; ++j)
    sum += narayana(p, j).get_d() * std::pow(1.0 + c, static_cast<double>(j));
  return sum;
}

std::vector<MomentReport> convergence_probe(long p, double lambda, double c, long d,
                                            const std::vector<long>& N_list) {
  for (std::size_t k = 1; k < N_list.size(); ++k)
    if (N_list[k] <= N_list[k - 1]) throw DomainError("convergence_probe: N_list not increasing");
  const double M = limit_moment(p, lambda, c);
  const bool with_sub = (c == 0.0 && p >= 1 && lambda > 0.0);
  const double sub = with_sub ? subleading_moment_c0(p, d, lambda) : 0.0;

  std::vector<MomentReport> out(N_list.size());
  parallel_for(N_list.size(), [&](std::size_t k) {
    ModelParams mp{lambda, c, d, N_list[k]};
    MomentReport r;
    r.N = N_list[k];
    r.p = p;
    r.exact = qlue_moment(mp, p);
    r.leading = static_cast<double>(r.N) * M;
    r.e_N = std::fabs(r.exact / static_cast<double>(r.N) - M);
    if (with_sub) {
      r.subleading = sub;
      r.f_N = std::fabs(r.exact - r.leading - sub);
    }
    r.residuals["leading_order"] = r.e_N;
    if (r.f_N) r.residuals["half_order"] = *r.f_N;
    out[k] = std::move(r);
  });
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t l = k + 1; l < out.size(); ++l) {
      if (out[l].N != 2 * out[k].N) continue;
      if (out[k].e_N > 0.0 && out[l].e_N > 0.0) out[k].rate_e = std::log2(out[k].e_N / out[l].e_N);
      if (out[k].f_N && out[l].f_N && *out[k].f_N > 0.0 && *out[l].f_N > 0.0)
        out[k].rate_f = std::log2(*out[k].f_N / *out[l].f_N);
    }
  return out;
}

}  // namespace qmp
