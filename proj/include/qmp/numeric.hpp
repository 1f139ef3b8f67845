#pragma once

#include <cmath>

namespace qmp {

// Neumaier variant of Kahan summation.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  KahanSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// 1 - q^k for q = exp(logq), accurate when q is close to 1.
inline double one_minus_qpow(double k, double logq) { return -std::expm1(k * logq); }

inline double log_one_minus_qpow(double k, double logq) {
  return std::log(-std::expm1(k * logq));
}

}  // namespace qmp
