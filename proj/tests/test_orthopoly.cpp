#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qmp/combin.hpp"
#include "qmp/orthopoly.hpp"
#include "qmp/qcore.hpp"
#include "qmp/tridiag.hpp"

using namespace qmp;

namespace {

ModelParams params(double lambda, double c, long d, long N) {
  ModelParams m;
  m.lambda = lambda;
  m.c = c;
  m.d = d;
  m.N = N;
  return m;
}

// (q^{alpha+1};q)_m, the normalised Jackson moments of the weight
double weight_moment(long m, long alpha, double q) {
  double v = 1.0;
  for (long k = 1; k <= m; ++k) v *= 1.0 - std::pow(q, static_cast<double>(alpha + k));
  return v;
}

}  // namespace

TEST_CASE("recurrence tables") {
  ModelParams m = ModelParams::from_q(0.5, 0, 10);
  RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, 6, m);
  CHECK(std::exp(t.log_h[0]) == doctest::Approx(0.5).epsilon(1e-14));

  RecurrenceTable t2 = build_recurrence(LaguerreKind::q_normalized, 6, ModelParams::from_q(0.5, 2, 10));
  CHECK(t2.off[1] > 0.0);

  ModelParams cl = params(0.0, 0.0, 3, 10);
  RecurrenceTable tc = build_recurrence(LaguerreKind::classical, 5, cl);
  for (long n = 0; n <= 5; ++n) {
    CHECK(tc.b[n] == 2 * n + 4);
    CHECK(tc.off[n] == n * (n + 3));
  }
  RecurrenceTable tq = build_recurrence(LaguerreKind::q_monic, 5, cl);
  for (long n = 0; n <= 5; ++n) {
    CHECK(tq.b[n] == doctest::Approx(tc.b[n]));
    CHECK(tq.off[n] == doctest::Approx(tc.off[n]));
  }

  ModelParams bad = params(0.5, 0.0, 0, 10);
  bad.c = -2.0;
  CHECK_THROWS_AS(build_recurrence(LaguerreKind::q_monic, 3, bad), DomainError);
}

TEST_CASE("polynomial evaluation") {
  for (long alpha : {0L, 2L}) {
    const double q = 0.6;
    ModelParams m = ModelParams::from_q(q, alpha, 10);
    RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, 4, m);
    for (double x : {0.0, 0.2, 0.9}) {
      CHECK(eval_poly(0, x, t) == 1.0);
      CHECK(eval_poly(1, x, t) == doctest::Approx(1 - x / (1 - std::pow(q, alpha + 1))).epsilon(1e-14));
      CHECK(eval_poly(4, 0.0, t) == doctest::Approx(1.0));
    }
  }

  SUBCASE("q -> 1 recovers the Laguerre polynomial") {
    const double q = 1 - 1e-5;
    for (long alpha : {0L, 1L, 3L}) {
      ModelParams m = ModelParams::from_q(q, alpha, 1);
      RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, 2, m);
      const double a = static_cast<double>(alpha);
      for (double x : {0.3, 1.0, 2.5, 6.0}) {
        double lag = (a + 1) * (a + 2) / 2 - (a + 2) * x + x * x / 2;
        double expect = 2.0 / ((a + 1) * (a + 2)) * lag;
        CHECK(std::fabs(eval_poly(2, x * (1 - q), t) - expect) <= 1e-4 * std::max(1.0, std::fabs(expect)));
      }
    }
  }
}

TEST_CASE("zeros") {
  for (long alpha : {0L, 3L}) {
    const double q = 0.3;
    ZeroSet z = zeros(1, ModelParams::from_q(q, alpha, 5));
    REQUIRE(z.zeros.size() == 1);
    CHECK(z.zeros[0] == doctest::Approx(1 - std::pow(q, alpha + 1)).epsilon(1e-14));
  }

  // monic recurrence in y = x/(1-q): y^2 - (b0+b1) y + b0 b1 - lambda1 with b0 = 1, b1 = 5/4, lambda1 = 1/2
  ZeroSet z2 = zeros(2, ModelParams::from_q(0.5, 0, 5));
  double disc = std::sqrt(2.25 * 2.25 - 3.0);
  CHECK(z2.zeros[0] == doctest::Approx((2.25 - disc) / 4).epsilon(1e-14));
  CHECK(z2.zeros[1] == doctest::Approx((2.25 + disc) / 4).epsilon(1e-14));

  ZeroSet big = zeros(200, params(1.0, 1.0, 0, 200));
  CHECK(std::is_sorted(big.zeros.begin(), big.zeros.end()));
  CHECK(big.zeros.front() > 0.0);
  CHECK(big.zeros.back() < 1.0);
  CHECK(big.max_residual < 1e-8);

  SUBCASE("interlacing") {
    for (auto [lam, c, d] : {std::tuple{0.3, 2.0, 0L}, {std::log(4.0 / 3), 0.0, 1L}, {0.4, 1.0, 2L},
                             {std::log(3.0), 0.0, 1L}}) {
      ModelParams m = params(lam, c, d, 100);
      std::vector<double> prev = zeros(1, m).zeros;
      for (long n = 2; n <= 100; ++n) {
        std::vector<double> cur = zeros(n, m).zeros;
        CHECK(strictly_interlace(prev, cur));
        prev = std::move(cur);
      }
    }
    CHECK_FALSE(strictly_interlace({0.5}, {0.6, 0.7}));
  }

  // deep in the saturated region zeros of consecutive degrees sit within an ulp of the
  // same lattice point q^k, so only the weak form is observable in double precision
  SUBCASE("interlacing up to rounding when saturated") {
    ModelParams m = params(1.0, 1.0, 0, 100);
    std::vector<double> prev = zeros(1, m).zeros;
    for (long n = 2; n <= 100; ++n) {
      std::vector<double> cur = zeros(n, m).zeros;
      for (std::size_t k = 0; k < prev.size(); ++k) {
        CHECK(cur[k] < prev[k] + 1e-14);
        CHECK(prev[k] < cur[k + 1] + 1e-14);
      }
      prev = std::move(cur);
    }
  }

  SUBCASE("empirical measure") {
    EmpiricalZeroMeasure em = empirical_zero_measure(50, params(1.0, 1.0, 0, 50));
    CHECK(em.mass() == 1.0);
    CHECK(em.cdf(0.0) == 0.0);
    CHECK(em.cdf(1.0) == 1.0);
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
      double v = em.cdf(i / 100.0);
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(em.moment(0) == doctest::Approx(1.0));
  }
}

TEST_CASE("Jackson integrals") {
  for (double q : {0.3, 0.5, 0.9}) {
    CHECK(jackson_integral([](double) { return 1.0; }, 1.0, q) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(jackson_integral([](double x) { return x; }, 1.0, q) == doctest::Approx(1 / (1 + q)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(jackson_integral([](double x) { return 1.0 / (x * x); }, 1.0, 0.5, 1e-15, 1000), NonConvergent);

  SUBCASE("orthogonality") {
    ModelParams m = ModelParams::from_q(0.5, 1, 10);
    RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, 6, m);
    for (long n = 0; n <= 6; ++n)
      for (long k = 0; k <= 6; ++k) {
        double v = jackson_integral(
            [&](double x) { return eval_poly(n, x, t) * eval_poly(k, x, t) * weight(x, m); }, 1.0, 0.5, 1e-17);
        double h = std::exp(t.log_h[n]);
        CHECK(std::fabs(v - (n == k ? h : 0.0)) <= 1e-10 * std::exp(t.log_h[0]));
      }
  }

  SUBCASE("moments against the closed sum and the crossing polynomial") {
    for (double q : {1.0 / 3, 0.5, 2.0 / 3})
      for (long p = 0; p <= 5; ++p)
        for (long j = 0; j <= 4; ++j)
          for (long a = 0; a <= 4; ++a) {
            ModelParams m = ModelParams::from_q(q, a, 1);
            double v = moment_via_jackson(p, j, m);
            double gf = std::pow(1 - q, p) * crossing_gf_closed(p, j, a)(q);
            CHECK(std::fabs(v - gf) <= 1e-10 * std::max(1.0, gf));
            RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, j, m);
            double closed = jackson_moment_closed(p, j, a, q) / std::exp(t.log_h[j]);
            CHECK(std::fabs(closed - gf) <= 1e-10 * std::max(1.0, gf));
          }
    CHECK(moment_via_jackson(0, 3, ModelParams::from_q(0.5, 2, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(moment_via_jackson(1, 0, ModelParams::from_q(0.5, 0, 1)) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("weight") {
  ModelParams m = params(1.0, 1.0, 2, 50);
  const double q = m.q();
  for (double x : {0.1, 0.5, 0.95}) {
    double direct = std::pow(x, 52.0) * q_pochhammer(q * x, q, 100000);
    CHECK(weight(x, m) == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("one-point function") {
  ModelParams m = params(1.0, 0.0, 1, 50);
  CHECK(one_point_jackson_moment(0, m) == doctest::Approx(50.0).epsilon(1e-8));
  for (long p = 1; p <= 4; ++p)
    CHECK(one_point_jackson_moment(p, m) == doctest::Approx(qlue_moment(m, p)).epsilon(1e-8));

  ModelParams m2 = params(1.0, 1.0, 0, 20);
  for (long p = 0; p <= 3; ++p)
    CHECK(one_point_jackson_moment(p, m2) == doctest::Approx(qlue_moment(m2, p)).epsilon(1e-8));

  const double q = m.q();
  std::vector<double> lattice;
  for (int k = 0; k < 400; ++k) lattice.push_back(std::pow(q, k));
  std::vector<double> rho = one_point_function(lattice, m);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    CHECK(rho[i] >= 0.0);
    CHECK(rho[i] == doctest::Approx(one_point_function(lattice[i], m)).epsilon(1e-13));
  }
}

TEST_CASE("Gauss rule") {
  for (long alpha : {0L, 2L})
    for (long n : {1L, 4L, 8L}) {
      const double q = 0.6;
      GaussRule g = gauss_rule(n, ModelParams::from_q(q, alpha, 10));
      REQUIRE(g.nodes.size() == static_cast<std::size_t>(n));
      for (long p = 0; p <= 2 * n - 1; ++p) {
        double s = 0.0;
        for (long i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], static_cast<double>(p));
        CHECK(std::fabs(s - weight_moment(p, alpha, q)) <= 1e-10);
      }
    }
}

TEST_CASE("tridiagonal eigenvalues") {
  // Toeplitz: 2 - 2 cos(k pi/(n+1))
  const long n = 40;
  std::vector<double> diag(n, 2.0), off(n - 1, -1.0);
  auto ql = tridiag_eigenvalues_ql(diag, off);
  auto bis = tridiag_eigenvalues_bisection(diag, off);
  for (long k = 0; k < n; ++k) {
    double exact = 2 - 2 * std::cos((k + 1) * 3.14159265358979323846 / (n + 1));
    CHECK(ql[k] == doctest::Approx(exact).epsilon(1e-13));
    CHECK(bis[k] == doctest::Approx(exact).epsilon(1e-13));
  }
  TridiagEigen e = tridiag_eigen_first({2.0, 2.0}, {1.0});
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(3.0));
  CHECK(e.first_components[0] * e.first_components[0] == doctest::Approx(0.5));
  CHECK(tridiag_eigenvalues({5.0}, {}) == std::vector<double>{5.0});
}
