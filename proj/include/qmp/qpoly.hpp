#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qmp {

// Polynomial in q with exact integer coefficients; coeffs()[k] multiplies q^k.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<mpz_class> coeffs);
  QPolynomial(long constant);  // NOLINT(runtime/explicit)

  static QPolynomial monomial(unsigned k, const mpz_class& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(std::size_t k) const { return k < c_.size() ? c_[k] : mpz_class(0); }

  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator-=(const QPolynomial& o);
  QPolynomial& operator*=(const QPolynomial& o);
  QPolynomial& operator*=(const mpz_class& k);

  // q^k * this
  QPolynomial shifted(unsigned k) const;

  mpq_class operator()(const mpq_class& q) const;
  double operator()(double q) const;
  // value at q = 1, i.e. the coefficient sum
  mpz_class at_one() const;
  bool nonnegative() const;

  std::string str() const;

  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator*(QPolynomial a, const QPolynomial& b) { return a *= b; }

 private:
  void trim();
  std::vector<mpz_class> c_;
};

}  // namespace qmp
