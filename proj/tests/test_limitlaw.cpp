#include <doctest.h>

#include <cmath>
#include <complex>

#include "qmp/errors.hpp"
#include "qmp/limitlaw.hpp"
#include "qmp/moments.hpp"
#include "qmp/quad.hpp"

using namespace qmp;

namespace {

const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);
const double kLog43 = std::log(4.0 / 3.0);
constexpr double kPi = 3.14159265358979323846;

struct Case {
  double lambda, c;
};

// band and saturated regimes, hard and soft left edge, and both sides of critical
const Case kCases[] = {{0.3, 0.0},  {kLog43, 0.0},        {kLog3, 0.0},         {1.0, 1.0},
                       {kLog43, 2.0}, {kLog2, 2.0},       {0.2, 0.5},           {2.5, 3.0},
                       {kLog2 - 1e-3, 0.0}, {kLog2 + 1e-3, 0.0}};

}  // namespace

TEST_CASE("critical lambda") {
  CHECK(std::fabs(lambda_crit(0.0) - kLog2) <= 1e-14);
  CHECK(std::fabs(lambda_crit(1.0) - std::log((1 + std::sqrt(5.0)) / 2)) <= 1e-14);
  // mpmath findroot (tests/oracle/derive.py)
  CHECK(lambda_crit(2.0) == doctest::Approx(0.38224508584003564133).epsilon(1e-13));
  CHECK(lambda_crit(0.5) == doctest::Approx(0.56239914864592369302).epsilon(1e-13));
  CHECK(std::exp(-lambda_crit(2.0)) == doctest::Approx(0.6823).epsilon(1e-3));
  double prev = lambda_crit(0.0);
  for (int i = 1; i <= 50; ++i) {
    double v = lambda_crit(0.1 * i);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("support endpoints") {
  LimitShape s11 = shape(1.0, 1.0);
  CHECK(s11.a == doctest::Approx(0.073717962460228925713).epsilon(1e-14));
  CHECK(s11.b == doctest::Approx(0.73356321288442532935).epsilon(1e-14));
  CHECK(s11.saturated());
  CHECK(s11.sat_end == 1.0);
  LimitShape s2 = shape(kLog43, 2.0);
  CHECK(s2.a == doctest::Approx(0.11136825958840642812).epsilon(1e-13));
  CHECK(s2.b == doctest::Approx(0.96675674041159357188).epsilon(1e-14));
  CHECK(s2.regime == Regime::Band);
  CHECK(s2.sat_end == s2.b);

  for (double lam : {0.1, kLog2, 1.7}) {
    LimitShape sh = shape(lam, 0.0);
    double s = std::exp(-lam);
    CHECK(sh.a == 0.0);
    CHECK(sh.b == doctest::Approx(4 * s * (1 - s)).epsilon(1e-14));
  }
  for (const auto& k : kCases) {
    LimitShape sh = shape(k.lambda, k.c);
    double s = std::exp(-k.lambda), sc1 = std::pow(s, k.c + 1);
    CHECK(sh.a >= 0.0);
    CHECK(sh.a < sh.b);
    CHECK(sh.b <= 1.0);
    CHECK((sh.a == 0.0) == (k.c == 0.0));
    CHECK(std::fabs(sh.a * sh.b - (s - sc1) * (s - sc1)) <= 1e-12);
    CHECK(std::fabs(std::sqrt((1 - sh.a) * (1 - sh.b)) - std::fabs(1 - s - sc1)) <= 1e-12);
    CHECK(sh.saturated() == (k.lambda > lambda_crit(k.c)));
  }
  for (double c : {0.0, 1.0, 2.0, 4.0}) {
    LimitShape sh = shape(lambda_crit(c), c);
    CHECK(std::fabs(sh.b - 1.0) <= 1e-10);
    CHECK(sh.regime == Regime::Critical);
  }
  CHECK_THROWS_AS(shape(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(shape(-1.0, 1.0), DomainError);
  CHECK(regime_name(Regime::Saturated) == "saturated");
}

TEST_CASE("density values") {
  // t-integral quadrature at 40 digits (tests/oracle/derive.py)
  CHECK(density(0.3, 1.0, 1.0) == doctest::Approx(1.0560168478977114685).epsilon(1e-13));
  CHECK(density(0.5, kLog43, 2.0) == doctest::Approx(1.2502582851999373873).epsilon(1e-13));
  CHECK(density(0.2, kLog3, 0.0) == doctest::Approx(0.97341389768724424376).epsilon(1e-13));

  LimitShape sh = shape(kLog3, 0.0);
  for (double x : {sh.b + 1e-6, 0.9, 0.95, 0.999}) CHECK(density(x, kLog3, 0.0) == doctest::Approx(1 / (x * kLog3)));
  CHECK(density(1.2, 1.0, 1.0) == 0.0);
  CHECK(density(0.05, 1.0, 1.0) == 0.0);
  CHECK(density(-0.1, kLog3, 0.0) == 0.0);
}

TEST_CASE("density routes agree") {
  for (const auto& k : kCases) {
    LimitShape sh = shape(k.lambda, k.c);
    for (int i = 1; i <= 40; ++i) {
      double x = sh.a + (sh.b - sh.a) * i / 41.0;
      double r = density(x, sh);
      CAPTURE(k.lambda);
      CAPTURE(k.c);
      CAPTURE(x);
      CHECK(std::fabs(density_v0(x, k.lambda, k.c) - r) <= 1e-10 * std::max(1.0, r));
      CHECK(std::fabs(density_integral_rep(x, k.lambda, k.c) - r) <= 1e-8);
      CHECK(r <= 1 / (k.lambda * x) * (1 + 1e-12));
    }
  }
}

TEST_CASE("normalization, moments and edges") {
  for (const auto& k : kCases) {
    CAPTURE(k.lambda);
    CAPTURE(k.c);
    CHECK(std::fabs(density_moment(0, k.lambda, k.c) - 1.0) <= 1e-8);
    for (long p = 1; p <= 4; ++p)
      CHECK(std::fabs(density_moment(p, k.lambda, k.c) - limit_moment(p, k.lambda, k.c)) <= 1e-8);
  }

  SUBCASE("soft edges vanish, saturated edge is continuous") {
    LimitShape sh = shape(kLog43, 2.0);
    CHECK(density(sh.a + 1e-10, sh) < 1e-3);
    CHECK(density(sh.b - 1e-10, sh) < 1e-3);
    LimitShape st = shape(kLog3, 0.0);
    CHECK(std::fabs(density(st.b - 1e-12, st) - 1 / (kLog3 * st.b)) <= 1e-5);
    CHECK(std::fabs(density(st.b + 1e-12, st) - 1 / (kLog3 * st.b)) <= 1e-8);
    // hard edge: integrable growth at 0
    LimitShape h = shape(kLog43, 0.0);
    CHECK(density(1e-8, h) > density(1e-4, h));
    CHECK(density(1e-8, h) * 1e-8 < 1e-3);
  }
}

TEST_CASE("x0 and x1") {
  for (double x : {0.1, 0.5, 0.9}) {
    auto [x0, x1] = x0_x1(x, 0.7, 0.0);
    CHECK(x0 == doctest::Approx(0.5));
    CHECK(x1 == doctest::Approx(std::sqrt(1 - x) / 2));
  }
  CHECK(x0_x1(1 - 1e-14, 0.7, 1.0).second < 1e-6);
  for (const auto& k : kCases)
    for (double x : {0.05, 0.4, 0.8}) {
      auto [x0, x1] = x0_x1(x, k.lambda, k.c);
      double sc = std::exp(-k.c * k.lambda);
      auto quad_form = [&](double t) { return x * x - 2 * (t + sc * t - 2 * sc * t * t) * x + t * t * (1 - sc) * (1 - sc); };
      CHECK(std::fabs(quad_form(x0 - x1)) < 1e-12);
      CHECK(std::fabs(quad_form(x0 + x1)) < 1e-12);
      CHECK(quad_form(x0) < 0.0);
      CHECK(quad_form(x0 + 2 * x1 + 1e-3) > 0.0);
    }
  CHECK_THROWS_AS(x0_x1(1.5, 1.0, 1.0), DomainError);
}

TEST_CASE("distribution function") {
  // mpmath quadrature of the t-integral density
  CHECK(cdf(0.3, 1.0, 1.0) == doctest::Approx(0.24022801075655237669).epsilon(1e-10));
  for (const auto& k : kCases) {
    LimitShape sh = shape(k.lambda, k.c);
    CHECK(cdf(sh.a, k.lambda, k.c) == 0.0);
    CHECK(cdf(1.0, k.lambda, k.c) == 1.0);
    if (sh.saturated())
      CHECK(cdf(sh.b, k.lambda, k.c) == doctest::Approx(1 - std::log(1 / sh.b) / k.lambda).epsilon(1e-10));
    std::vector<double> xs;
    for (int i = 0; i < 100; ++i) xs.push_back((i + 0.5) / 100);
    auto F = cdf_grid(xs, k.lambda, k.c);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(F[i] == doctest::Approx(cdf(xs[i], k.lambda, k.c)).epsilon(1e-12));
      if (i) CHECK(F[i] >= F[i - 1]);
    }
  }
}

TEST_CASE("Cauchy transform") {
  for (const Case& k : {Case{1.0, 1.0}, Case{kLog43, 0.0}, Case{kLog43, 2.0}}) {
    std::complex<double> z(10.0, 0.0);
    std::complex<double> g = cauchy_transform(z, k.lambda, k.c);
    std::complex<double> series = 1.0 / z + limit_moment(1, k.lambda, k.c) / (z * z) +
                                  limit_moment(2, k.lambda, k.c) / (z * z * z);
    CHECK(std::abs(g - series) <= 2 * std::pow(10.0, -4));

    std::complex<double> w(0.4, 0.7);
    CHECK(std::abs(cauchy_transform(std::conj(w), k.lambda, k.c) - std::conj(cauchy_transform(w, k.lambda, k.c))) <= 1e-14);

    LimitShape sh = shape(k.lambda, k.c);
    for (double t : {0.3, 0.5, 0.7}) {
      double x = sh.a + t * (sh.b - sh.a);
      std::complex<double> gx = cauchy_transform({x, 1e-6}, k.lambda, k.c);
      CHECK(std::fabs(gx.imag() + kPi * density(x, sh)) <= 1e-3);
    }
  }
  CHECK_THROWS_AS(cauchy_transform({0.5, 0.0}, 1.0, 1.0), DomainError);
}

TEST_CASE("classical law") {
  for (double c : {0.0, 1.0, 3.0}) {
    double xp = std::pow(std::sqrt(c + 1) + 1, 2), xm = std::pow(std::sqrt(c + 1) - 1, 2);
    auto f = [&](double x) { return mp_density(x, c); };
    CHECK(quad::tanh_sinh(f, xm, xp, 1e-14, 1e-9) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(quad::tanh_sinh([&](double x) { return x * f(x); }, xm, xp, 1e-14, 1e-9) ==
          doctest::Approx(1 + c).epsilon(1e-9));
    CHECK(mp_density(xp + 0.1, c) == 0.0);

    // compact interior grid: the rescaled law converges like O(lambda) away from the edges
    double lo = xm + 0.05 * (xp - xm), hi = xp - 0.05 * (xp - xm), worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      double x = lo + (hi - lo) * i / 200.0;
      worst = std::max(worst, std::fabs(scaled_density(x, 1e-3, c) - mp_density(x, c)));
    }
    CHECK(worst <= 5e-3);
    CHECK(scaled_density(1.0, 0.0, c) == mp_density(1.0, c));
  }
}

TEST_CASE("arcsine mixture") {
  for (const Case& k : {Case{kLog43, 0.0}, Case{kLog3, 0.0}, Case{kLog2, 2.0}}) {
    LimitShape sh = shape(k.lambda, k.c);
    for (int i = 1; i <= 20; ++i) {
      double x = sh.a + (sh.b - sh.a) * i / 21.0;
      CHECK(std::fabs(arcsine_mixture_density(x, k.lambda, k.c) - density(x, sh)) <= 1e-6);
    }
    CHECK(arcsine_mixture_density(1.5, k.lambda, k.c) == 0.0);
  }
  for (double s : {1e-4, 1e-6}) {
    CHECK(std::fabs(recurrence_B(s, 0.8, 0.0) + 2 * recurrence_A(s, 0.8, 0.0)) < 1e-3);
    CHECK(std::fabs(recurrence_B(s, 0.8, 0.0) - 2 * recurrence_A(s, 0.8, 0.0)) < 1e-3);
  }
}
