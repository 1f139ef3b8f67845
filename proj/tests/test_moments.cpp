#include <doctest.h>

#include <cmath>

#include "qmp/combin.hpp"
#include "qmp/limitlaw.hpp"
#include "qmp/moments.hpp"
#include "qmp/qcore.hpp"

using namespace qmp;

namespace {
const double kLog2 = std::log(2.0);

ModelParams params(double lambda, double c, long d, long N) {
  ModelParams m;
  m.lambda = lambda;
  m.c = c;
  m.d = d;
  m.N = N;
  return m;
}
}  // namespace

TEST_CASE("LUE moments") {
  for (long N = 1; N <= 6; ++N) CHECK(lue_moment(N, 0, 3) == N);
  CHECK(lue_moment(1, 1, 0) == 1);
  // Hankel orthogonalisation of Gamma moments (tests/oracle/derive.py)
  CHECK(lue_moment(3, 3, 1) == 744);
  CHECK(lue_moment(4, 4, 2) == 42480);
  CHECK(lue_moment(5, 6, 3) == 62899200);
  for (long N = 1; N <= 6; ++N)
    for (long p = 0; p <= 6; ++p)
      for (long a = 0; a <= 4; ++a) {
        CHECK(lue_moment(N, p, a) == lue_moment_alt(N, p, a));
        CHECK(lue_moment(N, p, a) == lue_moment_alt2(N, p, a));
      }
}

TEST_CASE("finite-N q-moments") {
  const mpq_class half(1, 2);
  CHECK(qlue_moment_exact(2, 2, 1, half) == mpq_class(567, 512));
  CHECK(qlue_moment_exact(3, 3, 2, half) == mpq_class(19018965, 16777216));
  CHECK(qlue_moment_exact(4, 2, 0, mpq_class(2, 3)) == mpq_class(21147815, 14348907));
  for (long N = 1; N <= 5; ++N) CHECK(qlue_moment_exact(N, 0, 2, mpq_class(1, 3)) == N);

  SUBCASE("matches the Motzkin oracle") {
    const mpq_class q(1, 2);
    std::vector<mpq_class> b, lam;
    for (long n = 0; n <= 6; ++n) {
      auto [bp, lp] = q_monic_coeffs_poly(n, 1);
      b.push_back(bp(q));
      lam.push_back(lp(q));
    }
    mpq_class sum = 0;
    for (long j = 0; j < 2; ++j) sum += motzkin_weight_sum(2, j, b, lam);
    CHECK(sum * (1 - q) * (1 - q) == qlue_moment_exact(2, 2, 1, q));
  }

  SUBCASE("q = 1 gives the LUE") {
    for (long N = 1; N <= 5; ++N)
      for (long p = 0; p <= 5; ++p)
        for (long a = 0; a <= 3; ++a) CHECK(qlue_moment_rescaled_poly(N, p, a).at_one() == lue_moment(N, p, a));
    CHECK(qlue_moment(params(0.0, 0.0, 2, 4), 3) == doctest::Approx(lue_moment(4, 3, 2).get_d()));
  }

  // m_{N,p} itself carries (1-q)^p; the rescaled moment is the increasing one
  SUBCASE("rescaled moment nondecreasing in q") {
    for (long N = 1; N <= 4; ++N)
      for (long p = 0; p <= 5; ++p)
        for (long a = 0; a <= 4; ++a) {
          QPolynomial poly = qlue_moment_rescaled_poly(N, p, a);
          CHECK(poly.nonnegative());
          const QPolynomial& m = poly;
          CHECK(m(mpq_class(1, 3)) <= m(mpq_class(1, 2)));
          CHECK(m(mpq_class(1, 2)) <= m(mpq_class(2, 3)));
        }
  }

  SUBCASE("double path agrees with the exact path") {
    for (long N : {1L, 3L, 6L})
      for (long p : {1L, 3L, 5L}) {
        ModelParams m = ModelParams::from_q(0.5, 2, N);
        double exact = qlue_moment_exact(N, p, 2, mpq_class(1, 2)).get_d();
        CHECK(qlue_moment(m, p) == doctest::Approx(exact).epsilon(1e-12));
      }
  }

  SUBCASE("large N stays finite") {
    double v = qlue_moment(params(1.0, 1.0, 0, 2000), 3);
    CHECK(std::isfinite(v));
    CHECK(v / 2000 == doctest::Approx(limit_moment(3, 1.0, 1.0)).epsilon(1e-2));
  }
}

TEST_CASE("limiting moments") {
  CHECK(limit_moment(1, kLog2, 0) == doctest::Approx(1 / (4 * kLog2)).epsilon(1e-14));
  CHECK(limit_moment(2, kLog2, 0) == doctest::Approx(5 / (32 * kLog2)).epsilon(1e-14));
  // quadrature of the t-integral density at 20 digits (tests/oracle/derive.py)
  CHECK(limit_moment(1, 1.0, 1.0) == doctest::Approx(0.54657234395980892949).epsilon(1e-13));
  CHECK(limit_moment(2, 1.0, 1.0) == doctest::Approx(0.36998944571223843509).epsilon(1e-13));
  CHECK(limit_moment(3, 1.0, 1.0) == doctest::Approx(0.2789361904251615633).epsilon(1e-13));

  for (double lam : {0.2, kLog2, 1.5})
    for (long p = 1; p <= 4; ++p) {
      double s = std::exp(-lam);
      CHECK(limit_moment(p, lam, 0) ==
            doctest::Approx(incomplete_beta_reg(1 - s, p + 1, p) / (lam * p)).epsilon(1e-13));
    }

  SUBCASE("two representations and the density") {
    for (auto [lam, c] : {std::pair{0.3, 0.0}, {1.0, 1.0}, {std::log(3.0), 0.0}, {0.7, 2.5}})
      for (long p = 1; p <= 4; ++p) {
        double m = limit_moment(p, lam, c);
        CHECK(std::fabs(limit_moment_integral(p, lam, c) - m) <= 1e-10);
        CHECK(std::fabs(density_moment(p, lam, c) - m) <= 1e-8);
      }
  }

  SUBCASE("classical rescaling") {
    for (double c : {0.0, 1.0, 2.0})
      for (long p = 1; p <= 4; ++p) {
        double lam = 1e-4;
        CHECK(limit_moment(p, lam, c) / std::pow(lam, p) ==
              doctest::Approx(classical_mp_moment(p, c)).epsilon(1e-3));
        CHECK(scaled_limit_moment(p, 0.0, c) == classical_mp_moment(p, c));
      }
  }

  CHECK_THROWS_AS(limit_moment(1, -0.5, 0), DomainError);
}

TEST_CASE("subleading term at c = 0") {
  CHECK(subleading_moment_c0(1, 0, kLog2) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(subleading_moment_c0(1, 1, kLog2) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK_THROWS_AS(subleading_moment_c0(0, 0, kLog2), DomainError);
  for (long p = 1; p <= 3; ++p)
    for (long d = 0; d <= 2; ++d) {
      double lam = 1e-5;
      double expect = 0.5 * d * binomial(2 * p, p).get_d();
      CHECK(subleading_moment_c0(p, d, lam) / std::pow(lam, p) == doctest::Approx(expect).epsilon(1e-3));
    }
}

TEST_CASE("Narayana and classical moments") {
  const long catalan[] = {1, 1, 2, 5, 14, 42, 132};
  for (long p = 0; p <= 6; ++p) CHECK(classical_mp_moment(p, 0.0) == doctest::Approx(catalan[p]));
  CHECK(classical_mp_moment(1, 2.5) == doctest::Approx(3.5));
  CHECK(classical_mp_moment(2, 0.0) == doctest::Approx(2.0));
  CHECK(narayana(1, 0) == 0);
  CHECK(narayana(4, 2) == 6);
  for (long p = 1; p <= 8; ++p) {
    mpz_class sum = 0;
    for (long j = 0; j <= p; ++j) sum += narayana(p, j);
    CHECK(sum == binomial(2 * p, p) / (p + 1));
  }
}

TEST_CASE("convergence probe") {
  for (const auto& r : convergence_probe(0, 1.0, 1.0, 0, {50, 100})) CHECK(r.e_N == doctest::Approx(0.0));

  auto rep = convergence_probe(2, 1.0, 1.0, 0, {50, 100, 200});
  REQUIRE(rep.size() == 3);
  for (std::size_t i = 0; i + 1 < rep.size(); ++i) {
    REQUIRE(rep[i].rate_e.has_value());
    CHECK(*rep[i].rate_e >= 0.7);
    CHECK(*rep[i].rate_e <= 1.3);
  }

  auto rep0 = convergence_probe(2, 1.0, 0.0, 1, {50, 100, 200});
  for (std::size_t i = 0; i + 1 < rep0.size(); ++i) {
    REQUIRE(rep0[i].f_N.has_value());
    CHECK(*rep0[i + 1].f_N < *rep0[i].f_N);
    REQUIRE(rep0[i].rate_f.has_value());
    CHECK(*rep0[i].rate_f == doctest::Approx(1.0).epsilon(0.3));
  }
}
