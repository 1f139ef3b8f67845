#pragma once

#include <initializer_list>
#include <vector>

#include "qmp/qpoly.hpp"

namespace qmp::test {

inline QPolynomial poly(std::initializer_list<long> c) {
  std::vector<mpz_class> v;
  for (long x : c) v.emplace_back(x);
  return QPolynomial(std::move(v));
}

}  // namespace qmp::test
