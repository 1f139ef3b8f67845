#pragma once

#include <gmpxx.h>

#include <limits>
#include <variant>

#include "qmp/errors.hpp"
#include "qmp/qpoly.hpp"

namespace qmp {

// The quantisation parameter, or any value derived from it: exact rational or double.
class QValue {
 public:
  static QValue rational(long num, long den) { return QValue(mpq_class(num, den)); }
  static QValue rational(const mpq_class& q) { return QValue(q); }
  static QValue real(double q) { return QValue(q); }

  bool is_exact() const { return std::holds_alternative<mpq_class>(v_); }
  const mpq_class& exact() const { return std::get<mpq_class>(v_); }
  double value() const;
  bool is_one() const;

 private:
  explicit QValue(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
  explicit QValue(double q) : v_(q) {}
  std::variant<mpq_class, double> v_;
};

inline constexpr long kInfinity = std::numeric_limits<long>::max();

// [n]_q
mpq_class q_int(long n, const mpq_class& q);
double q_int(long n, double q);
QPolynomial q_int_poly(long n);
QValue q_int(long n, const QValue& q);

// [n]_q!
QPolynomial q_factorial_poly(long n);
mpq_class q_factorial(long n, const mpq_class& q);
double q_factorial(long n, double q);

// Gaussian binomial; zero when m < 0 or m > n.
QPolynomial q_binomial_poly(long n, long m);
mpq_class q_binomial(long n, long m, const mpq_class& q);
double q_binomial(long n, long m, double q);
QValue q_binomial(long n, long m, const QValue& q);
// log [n m]_q for q = exp(logq) < 1, valid when 0 <= m <= n
double log_q_binomial(long n, long m, double logq);

// (x;q)_n; n = kInfinity truncates at the first J with |x| q^J < tol (1-q).
// Then |log trunc - log exact| <= tol/(1-tol).
double q_pochhammer(double x, double q, long n, double tol = 1e-17);
mpq_class q_pochhammer(const mpq_class& x, const mpq_class& q, long n);
// log (x;q)_inf for x < 1, same truncation rule
double log_q_pochhammer_inf(double x, double q, double tol = 1e-17);
// index J at which the infinite product is truncated
long q_pochhammer_truncation(double x, double q, double tol);

// regularised incomplete beta I_x(a,b)
double incomplete_beta_reg(double x, double a, double b);

// Li_2(x) for x <= 1
double dilog(double x);

// exact binomial, zero outside 0 <= k <= n
mpz_class binomial(long n, long k);

}  // namespace qmp
