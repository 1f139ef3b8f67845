#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "qmp/errors.hpp"

// Thin wrappers over Boost.Math quadrature that turn a missed tolerance into
// QuadratureFailure. `accept` is the largest tolerated error relative to the L1 norm.
namespace qmp::quad {

namespace detail {
boost::math::quadrature::tanh_sinh<double>& tanh_sinh_instance();
boost::math::quadrature::exp_sinh<double>& exp_sinh_instance();

inline void check(const char* who, double value, double err, double l1, double accept, double abs_floor = 0.0) {
  if (!std::isfinite(value) || err > std::fmax(accept * std::fmax(l1, 1e-300), abs_floor)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: error estimate %.3e exceeds tolerance (L1 norm %.3e)", who, err, l1);
    throw QuadratureFailure(buf);
  }
}
}  // namespace detail

// The map to [-1,1] is done here so abscissas near an endpoint are formed from the
// complement; any that still round onto an endpoint are moved one ulp inside.
template <class F>
double tanh_sinh(F f, double a, double b, double tol = 1e-13, double accept = 1e-9) {
  if (a == b) return 0.0;
  const double half = 0.5 * (b - a);
  double err = 0.0, l1 = 0.0;
  auto g = [&](double t, double tc) {
    double x = t < 0.0 ? a - half * tc : b - half * tc;
    if (!(x > a)) x = std::nextafter(a, b);
    if (!(x < b)) x = std::nextafter(b, a);
    return f(x);
  };
  double v = half * detail::tanh_sinh_instance().integrate(g, -1.0, 1.0, tol, &err, &l1);
  err *= std::fabs(half);
  l1 *= std::fabs(half);
  detail::check("tanh_sinh", v, err, l1, accept);
  return v;
}

namespace detail {

struct GkPanel {
  double a, b, value, err, l1;
};

// 31-point Kronrod rule on [a,b] with the QUADPACK error heuristic
template <class F>
GkPanel gk31(F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  using G = boost::math::quadrature::gauss<double, 15>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double fv[31];
  fv[0] = f(mid);
  for (std::size_t i = 1; i < x.size(); ++i) {
    fv[2 * i - 1] = f(mid - half * x[i]);
    fv[2 * i] = f(mid + half * x[i]);
  }
  double rk = fv[0] * wk[0], rg = fv[0] * wg[0], rabs = std::fabs(rk);
  for (std::size_t i = 1; i < x.size(); ++i) {
    double s = fv[2 * i - 1] + fv[2 * i];
    rk += s * wk[i];
    rabs += (std::fabs(fv[2 * i - 1]) + std::fabs(fv[2 * i])) * wk[i];
    if (i % 2 == 0) rg += s * wg[i / 2];
  }
  const double mean = 0.5 * rk;
  double rasc = wk[0] * std::fabs(fv[0] - mean);
  for (std::size_t i = 1; i < x.size(); ++i)
    rasc += wk[i] * (std::fabs(fv[2 * i - 1] - mean) + std::fabs(fv[2 * i] - mean));
  const double h = std::fabs(half);
  double err = std::fabs((rk - rg) * half);
  rasc *= h;
  rabs *= h;
  if (rasc != 0.0 && err != 0.0) err = rasc * std::fmin(1.0, std::pow(200.0 * err / rasc, 1.5));
  err = std::fmax(err, 50.0 * std::numeric_limits<double>::epsilon() * rabs);
  return {a, b, rk * half, err, rabs};
}

}  // namespace detail

// Globally adaptive: the panel with the largest error estimate is bisected until the
// total error is below tol * |value|, a panel would fall under (b-a) 2^-depth, or
// 4000 panels are in use. abs_floor: errors below it are accepted whatever the L1 norm.
template <class F>
double kronrod(F f, double a, double b, double tol = 1e-13, double accept = 1e-9,
               unsigned depth = 20, double abs_floor = 0.0) {
  if (a == b) return 0.0;
  auto by_err = [](const detail::GkPanel& p, const detail::GkPanel& q) { return p.err < q.err; };
  std::vector<detail::GkPanel> heap{detail::gk31(f, a, b)};
  const double min_width = std::fabs(b - a) * std::ldexp(1.0, -static_cast<int>(depth));
  double value = heap[0].value, err = heap[0].err;
  while (heap.size() < 4000 && err > std::fmax(tol * std::fabs(value), abs_floor)) {
    std::pop_heap(heap.begin(), heap.end(), by_err);
    detail::GkPanel worst = heap.back();
    const double m = 0.5 * (worst.a + worst.b);
    if (std::fabs(worst.b - worst.a) < min_width || m == worst.a || m == worst.b) {
      std::push_heap(heap.begin(), heap.end(), by_err);
      break;
    }
    heap.pop_back();
    detail::GkPanel left = detail::gk31(f, worst.a, m), right = detail::gk31(f, m, worst.b);
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_err);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_err);
  }
  // final totals in a fixed order, independent of the running updates
  std::sort(heap.begin(), heap.end(), [](const detail::GkPanel& p, const detail::GkPanel& q) { return p.a < q.a; });
  value = 0.0;
  err = 0.0;
  double l1 = 0.0;
  for (const auto& p : heap) {
    value += p.value;
    err += p.err;
    l1 += p.l1;
  }
  detail::check("gauss_kronrod", value, err, std::fabs(l1), accept, abs_floor);
  return value;
}

// integral over [a, inf)
template <class F>
double exp_sinh(F f, double a, double tol = 1e-13, double accept = 1e-9) {
  double err = 0.0, l1 = 0.0;
  double v = detail::exp_sinh_instance().integrate([&](double t) { return f(a + t); }, 0.0,
                                                   std::numeric_limits<double>::infinity(), tol,
                                                   &err, &l1);
  detail::check("exp_sinh", v, err, l1, accept);
  return v;
}

}  // namespace qmp::quad
