#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "qmp/errors.hpp"
#include "qmp/orthopoly.hpp"
#include "qmp/parallel.hpp"
#include "qmp/quad.hpp"
#include "qmp/simd/kernels.hpp"
#include "qmp/tridiag.hpp"

using namespace qmp;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// recurrence data of a realistic size, from the normalized table
struct Data {
  std::vector<double> diag, off, offsq, xs;
};

Data make_data(std::size_t n, std::size_t m, unsigned seed) {
  ModelParams p{1.0, 1.0, 0, static_cast<long>(n)};
  RecurrenceTable t = build_recurrence(LaguerreKind::q_normalized, static_cast<long>(n), p);
  Data d;
  d.diag.assign(t.b.begin(), t.b.begin() + n);
  d.off.assign(t.off.begin(), t.off.begin() + n);
  d.offsq.resize(n);
  for (std::size_t k = 0; k < n; ++k) d.offsq[k] = d.off[k] * d.off[k];
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < m; ++i) d.xs.push_back(u(rng));
  d.xs.push_back(0.0);
  d.xs.push_back(1.0);
  return d;
}

}  // namespace

TEST_CASE("simd kernels match the scalar reference bit for bit") {
  if (!simd::backend_available(simd::Backend::avx2)) {
    MESSAGE("AVX2 not available; only the scalar backend is exercised");
    return;
  }
  // odd lengths exercise the remainder lanes
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{1, 1}, {7, 5}, {64, 33}, {2000, 257}}) {
    Data d = make_data(n, m, static_cast<unsigned>(n));
    const std::size_t M = d.xs.size();

    std::vector<double> s(M), v(M);
    simd::scalar::log_christoffel_sum(d.diag.data(), d.off.data(), n, d.xs.data(), M, s.data());
    simd::avx2::log_christoffel_sum(d.diag.data(), d.off.data(), n, d.xs.data(), M, v.data());
    for (std::size_t i = 0; i < M; ++i) CHECK(same_bits(s[i], v[i]));

    simd::scalar::newton_ratio(d.diag.data(), d.offsq.data(), n, d.xs.data(), M, s.data());
    simd::avx2::newton_ratio(d.diag.data(), d.offsq.data(), n, d.xs.data(), M, v.data());
    for (std::size_t i = 0; i < M; ++i) CHECK(same_bits(s[i], v[i]));

    std::vector<std::int64_t> cs(M), cv(M);
    simd::scalar::sturm_count(d.diag.data(), d.offsq.data(), n, d.xs.data(), M, cs.data());
    simd::avx2::sturm_count(d.diag.data(), d.offsq.data(), n, d.xs.data(), M, cv.data());
    CHECK(cs == cv);

    double ds = simd::scalar::compensated_dot(d.diag.data(), d.off.data(), n);
    double dv = simd::avx2::compensated_dot(d.diag.data(), d.off.data(), n);
    CHECK(dv == doctest::Approx(ds).epsilon(1e-14));
  }
}

TEST_CASE("backend selection") {
  CHECK(simd::backend_available(simd::Backend::scalar));
  simd::force_backend(simd::Backend::scalar);
  CHECK(simd::active_backend() == simd::Backend::scalar);
  ModelParams p{1.0, 1.0, 0, 300};
  auto zs = zeros(300, p).zeros;
  auto rho = one_point_function(zs, p);
  simd::reset_backend();
  auto rho2 = one_point_function(zs, p);
  for (std::size_t i = 0; i < rho.size(); ++i) CHECK(same_bits(rho[i], rho2[i]));
  CHECK(std::string(simd::backend_name(simd::Backend::avx2)) == "avx2");
}

TEST_CASE("sturm counts bracket the eigenvalues") {
  Data d = make_data(50, 0, 1);
  std::vector<double> off1(d.off.begin() + 1, d.off.end());
  auto ev = tridiag_eigenvalues(d.diag, off1);
  std::vector<double> shifts;
  for (double e : ev) shifts.push_back(e + 1e-9);
  std::vector<std::int64_t> counts(shifts.size());
  simd::sturm_count(d.diag.data(), d.offsq.data(), d.diag.size(), shifts.data(), shifts.size(), counts.data());
  for (std::size_t k = 0; k < counts.size(); ++k) CHECK(counts[k] == static_cast<std::int64_t>(k + 1));
}

TEST_CASE("compensated dot") {
  std::vector<double> x{1e16, 1.0, -1e16, 1.0}, y{1.0, 1.0, 1.0, 1.0};
  CHECK(simd::compensated_dot(x.data(), y.data(), x.size()) == 2.0);
  CHECK(simd::scalar::compensated_dot(x.data(), y.data(), x.size()) == 2.0);
}

TEST_CASE("adaptive Gauss-Kronrod") {
  CHECK(quad::kronrod([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - 1).epsilon(1e-14));
  // a tiny interval must converge at once, not exhaust the depth
  double w = 1e-12;
  CHECK(quad::kronrod([](double x) { return std::sqrt(x); }, 0.25, 0.25 + w) ==
        doctest::Approx(0.5 * w).epsilon(1e-10));
  // sharp peak forces refinement
  auto peak = [](double x) { return 1e-3 / (1e-6 + (x - 0.3) * (x - 0.3)); };
  double exact = (std::atan(0.7 / 1e-3) + std::atan(0.3 / 1e-3));
  CHECK(quad::kronrod(peak, 0.0, 1.0, 1e-12, 1e-9) == doctest::Approx(exact).epsilon(1e-10));
  CHECK_THROWS_AS(quad::kronrod([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-13, 1e-9, 8), QuadratureFailure);
}

TEST_CASE("tanh-sinh and exp-sinh") {
  CHECK(quad::tanh_sinh([](double x) { return 1.0 / std::sqrt(x * (1 - x)); }, 0.0, 1.0, 1e-14, 1e-8) ==
        doctest::Approx(3.14159265358979323846).epsilon(1e-8));
  CHECK(quad::exp_sinh([](double x) { return std::exp(-x); }, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(quad::tanh_sinh([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("parallel loop") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) { if (i == 7) throw DomainError("x"); }), DomainError);
  CHECK(thread_count() >= 1);
}
