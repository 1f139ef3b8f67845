#include "qmp/qcore.hpp"

#include <cmath>

#include "qmp/numeric.hpp"

namespace qmp {

double QValue::value() const {
  if (is_exact()) return exact().get_d();
  return std::get<double>(v_);
}

bool QValue::is_one() const {
  if (is_exact()) return exact() == 1;
  return std::get<double>(v_) == 1.0;
}

mpz_class binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

namespace {

mpq_class pow_q(const mpq_class& q, long k) {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<unsigned long>(k));
  r.canonicalize();
  return r;
}

}  // namespace

mpq_class q_int(long n, const mpq_class& q) {
  if (n < 0) throw DomainError("q_int: negative n");
  if (q == 1) return n;
  return (1 - pow_q(q, n)) / (1 - q);
}

double q_int(long n, double q) {
  if (n < 0) throw DomainError("q_int: negative n");
  if (q == 1.0) return static_cast<double>(n);
  if (n == 0) return 0.0;
  double lq = std::log(q);
  return std::expm1(n * lq) / std::expm1(lq);
}

QPolynomial q_int_poly(long n) {
  if (n < 0) throw DomainError("q_int: negative n");
  return QPolynomial(std::vector<mpz_class>(static_cast<std::size_t>(n), 1));
}

QValue q_int(long n, const QValue& q) {
  if (q.is_exact()) return QValue::rational(q_int(n, q.exact()));
  return QValue::real(q_int(n, q.value()));
}

QPolynomial q_factorial_poly(long n) {
  QPolynomial r(1);
  for (long k = 2; k <= n; ++k) r *= q_int_poly(k);
  return r;
}

mpq_class q_factorial(long n, const mpq_class& q) {
  mpq_class r = 1;
  for (long k = 2; k <= n; ++k) r *= q_int(k, q);
  return r;
}

double q_factorial(long n, double q) {
  double r = 1.0;
  for (long k = 2; k <= n; ++k) r *= q_int(k, q);
  return r;
}

QPolynomial q_binomial_poly(long n, long m) {
  if (n < 0 || m < 0 || m > n) return {};
  if (m > n - m) m = n - m;
  // row[k] holds [r k]_q while r runs up to n
  std::vector<QPolynomial> row(static_cast<std::size_t>(m) + 1);
  row[0] = QPolynomial(1);
  for (long r = 1; r <= n; ++r) {
    long top = std::min(r, m);
    for (long k = top; k >= 1; --k)
      row[k] = row[k - 1] + row[k].shifted(static_cast<unsigned>(k));
  }
  return row[m];
}

mpq_class q_binomial(long n, long m, const mpq_class& q) {
  if (n < 0 || m < 0 || m > n) return 0;
  if (q == 1) return mpq_class(binomial(n, m));
  mpq_class r = 1;
  for (long k = 1; k <= m; ++k) r *= (1 - pow_q(q, n - m + k)) / (1 - pow_q(q, k));
  return r;
}

double q_binomial(long n, long m, double q) {
  if (n < 0 || m < 0 || m > n) return 0.0;
  if (m > n - m) m = n - m;
  if (q == 1.0) return binomial(n, m).get_d();
  double lq = std::log(q);
  double r = 1.0;
  for (long k = 1; k <= m; ++k) r *= std::expm1((n - m + k) * lq) / std::expm1(k * lq);
  return r;
}

QValue q_binomial(long n, long m, const QValue& q) {
  if (q.is_exact()) return QValue::rational(q_binomial(n, m, q.exact()));
  return QValue::real(q_binomial(n, m, q.value()));
}

double log_q_binomial(long n, long m, double logq) {
  if (m < 0 || m > n) return -std::numeric_limits<double>::infinity();
  if (m > n - m) m = n - m;
  double r = 0.0;
  for (long k = 1; k <= m; ++k)
    r += log_one_minus_qpow(static_cast<double>(n - m + k), logq) -
         log_one_minus_qpow(static_cast<double>(k), logq);
  return r;
}

long q_pochhammer_truncation(double x, double q, double tol) {
  if (!(q < 1.0)) throw NonConvergent("q_pochhammer: infinite product needs q < 1");
  double ax = std::fabs(x);
  if (ax == 0.0) return 0;
  double lim = tol * (1.0 - q);
  // smallest J with |x| q^J < lim
  double j = std::ceil((std::log(lim) - std::log(ax)) / std::log(q));
  if (j < 0) j = 0;
  long J = static_cast<long>(j);
  while (J > 0 && ax * std::pow(q, J - 1) < lim) --J;
  while (!(ax * std::pow(q, J) < lim)) ++J;
  return J;
}

double q_pochhammer(double x, double q, long n, double tol) {
  if (n < 0) throw DomainError("q_pochhammer: negative n");
  if (n == kInfinity) n = q_pochhammer_truncation(x, q, tol);
  double r = 1.0;
  double xq = x;
  for (long j = 0; j < n; ++j) {
    r *= 1.0 - xq;
    xq *= q;
  }
  return r;
}

mpq_class q_pochhammer(const mpq_class& x, const mpq_class& q, long n) {
  if (n < 0 || n == kInfinity) throw DomainError("q_pochhammer: exact path needs finite n");
  mpq_class r = 1;
  mpq_class xq = x;
  for (long j = 0; j < n; ++j) {
    r *= 1 - xq;
    xq *= q;
  }
  return r;
}

double log_q_pochhammer_inf(double x, double q, double tol) {
  if (!(x < 1.0)) {
    if (x == 1.0) return -std::numeric_limits<double>::infinity();
    throw DomainError("log_q_pochhammer_inf: x must be < 1");
  }
  long J = q_pochhammer_truncation(x, q, tol);
  double lq = std::log(q);
  KahanSum s;
  for (long j = 0; j < J; ++j) s.add(std::log1p(-x * std::exp(j * lq)));
  return s.value();
}

}  // namespace qmp
