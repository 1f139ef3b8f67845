#include "qmp/qpoly.hpp"

#include <sstream>

namespace qmp {

QPolynomial::QPolynomial(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

QPolynomial::QPolynomial(long constant) {
  if (constant != 0) c_.emplace_back(constant);
}

QPolynomial QPolynomial::monomial(unsigned k, const mpz_class& c) {
  std::vector<mpz_class> v(k + 1, 0);
  v[k] = c;
  return QPolynomial(std::move(v));
}

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator-=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator*=(const QPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<mpz_class> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

QPolynomial& QPolynomial::operator*=(const mpz_class& k) {
  for (auto& v : c_) v *= k;
  trim();
  return *this;
}

QPolynomial QPolynomial::shifted(unsigned k) const {
  if (is_zero()) return {};
  std::vector<mpz_class> r(k, 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return QPolynomial(std::move(r));
}

mpq_class QPolynomial::operator()(const mpq_class& q) const {
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + *it;
  return r;
}

double QPolynomial::operator()(double q) const {
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + it->get_d();
  return r;
}

mpz_class QPolynomial::at_one() const {
  mpz_class r = 0;
  for (const auto& v : c_) r += v;
  return r;
}

bool QPolynomial::nonnegative() const {
  for (const auto& v : c_)
    if (v < 0) return false;
  return true;
}

std::string QPolynomial::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    mpz_class v = c_[k];
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    mpz_class av = abs(v);
    if (k == 0 || av != 1) os << av;
    if (k >= 1) os << "q";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

}  // namespace qmp
