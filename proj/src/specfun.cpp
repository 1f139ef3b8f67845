#include <cmath>
#include <numbers>

#include "qmp/qcore.hpp"

namespace qmp {

namespace {

// Continued fraction for I_x(a,b), modified Lentz.
double beta_cf(double x, double a, double b) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw NonConvergent("incomplete_beta_reg: continued fraction did not converge");
}

double beta_front(double x, double a, double b) {
  return std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                  b * std::log1p(-x));
}

double dilog_series(double x) {
  // |x| <= 1/2
  double sum = 0.0, xk = x;
  for (int k = 1; k < 200; ++k) {
    double t = xk / (static_cast<double>(k) * k);
    sum += t;
    if (std::fabs(t) < 1e-18 * std::fabs(sum)) break;
    xk *= x;
  }
  return sum;
}

}  // namespace

double incomplete_beta_reg(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("incomplete_beta_reg: x outside [0,1]");
  if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete_beta_reg: a, b must be positive");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0)) return beta_front(x, a, b) * beta_cf(x, a, b) / a;
  return 1.0 - beta_front(1.0 - x, b, a) * beta_cf(1.0 - x, b, a) / b;
}

double dilog(double x) {
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  if (x > 1.0) throw DomainError("dilog: x > 1");
  if (x == 1.0) return pi2_6;
  if (x < -1.0) {
    double l = std::log(-x);
    return -pi2_6 - 0.5 * l * l - dilog(1.0 / x);
  }
  if (x < -0.5) return 0.5 * dilog(x * x) - dilog(-x);
  if (x <= 0.5) return dilog_series(x);
  return pi2_6 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
}

}  // namespace qmp
