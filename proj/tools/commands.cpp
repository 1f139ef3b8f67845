#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "qmp/combin.hpp"
#include "qmp/equilibrium.hpp"
#include "qmp/limitlaw.hpp"
#include "qmp/moments.hpp"
#include "qmp/orthopoly.hpp"
#include "qmp/parallel.hpp"
#include "qmp/qcore.hpp"

namespace qmp::cli {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

void require_lambda_c(double lambda, double c, bool allow_zero) {
  require(std::isfinite(lambda) && (allow_zero ? lambda >= 0.0 : lambda > 0.0),
          allow_zero ? "--lambda must be >= 0" : "--lambda must be > 0");
  require(std::isfinite(c) && c >= 0.0, "--c must be >= 0");
}

void add_shape_meta(Table& t, double lambda, double c) {
  LimitShape sh = shape(lambda, c);
  t.add_meta("lambda_c", sh.lambda_c);
  t.add_meta("a", sh.a);
  t.add_meta("b", sh.b);
  t.add_meta("sat_end", sh.sat_end);
  t.add_meta("regime", regime_name(sh.regime));
}

std::int64_t i64(long v) { return static_cast<std::int64_t>(v); }

std::string region_tag(double x, const LimitShape& sh) {
  if (x <= sh.a) return "void";
  if (x < sh.b) return "band";
  if (x < sh.sat_end) return "saturated";
  return "void";
}

}  // namespace

CommandResult cmd_moments(const MomentsArgs& args) {
  require(args.N >= 1, "--N must be positive");
  require(args.p_max >= 0, "--p-max must be >= 0");
  require(args.d >= 0, "--d must be >= 0");
  require_lambda_c(args.lambda, args.c, true);
  ModelParams params{args.lambda, args.c, args.d, args.N};
  long alpha = 0;
  try {
    alpha = params.alpha_int();
  } catch (const DomainError&) {
    throw UsageError("alpha = cN + d must be an integer");
  }

  CommandResult res;
  Table& t = res.table;
  t.add_meta("command", std::string("moments"));
  t.add_meta("N", i64(args.N));
  t.add_meta("p_max", i64(args.p_max));
  t.add_meta("lambda", args.lambda);
  t.add_meta("c", args.c);
  t.add_meta("d", i64(args.d));
  t.add_meta("alpha", i64(alpha));
  t.add_meta("q", params.q());

  const double N = static_cast<double>(args.N);
  if (params.classical()) {
    // q = 1: exact LUE moments against the N^{p+1} MP scaling
    t.columns = {"p", "exact", "leading", "residual"};
    for (long p = 0; p <= args.p_max; ++p) {
      mpz_class m = lue_moment(args.N, p, alpha);
      double lead = std::pow(N, static_cast<double>(p + 1)) * classical_mp_moment(p, args.c);
      double ex = m.get_d();
      t.rows.push_back({i64(p), BigInt{m.get_str()}, lead, std::fabs(ex - lead) / std::fabs(ex)});
    }
    return res;
  }

  add_shape_meta(t, args.lambda, args.c);
  const bool c0 = args.c == 0.0;
  if (c0)
    t.columns = {"p", "exact", "leading", "subleading", "residual"};
  else
    t.columns = {"p", "exact", "leading", "residual"};
  for (long p = 0; p <= args.p_max; ++p) {
    double ex = qlue_moment(params, p);
    double lead = p == 0 ? N : N * limit_moment(p, args.lambda, args.c);
    if (c0) {
      double sub = p == 0 ? 0.0 : subleading_moment_c0(p, args.d, args.lambda);
      t.rows.push_back({i64(p), ex, lead, sub, std::fabs(ex - lead - sub) / std::fabs(ex)});
    } else {
      t.rows.push_back({i64(p), ex, lead, std::fabs(ex - lead) / std::fabs(ex)});
    }
  }
  return res;
}

CommandResult cmd_density(const DensityArgs& args) {
  require_lambda_c(args.lambda, args.c, true);
  require(args.grid >= 1 && args.grid <= 10'000'000, "--grid must lie in [1, 1e7]");
  CommandResult res;
  Table& t = res.table;
  t.add_meta("command", std::string("density"));
  t.add_meta("lambda", args.lambda);
  t.add_meta("c", args.c);
  t.add_meta("grid", i64(args.grid));
  const std::size_t G = static_cast<std::size_t>(args.grid);

  if (args.lambda == 0.0) {
    // classical MP law on its own support
    double xp = std::pow(std::sqrt(args.c + 1.0) + 1.0, 2);
    double xm = std::pow(std::sqrt(args.c + 1.0) - 1.0, 2);
    t.add_meta("a", xm);
    t.add_meta("b", xp);
    t.add_meta("regime", std::string("classical"));
    t.columns = {"x", "density", "constraint", "region"};
    for (std::size_t i = 0; i < G; ++i) {
      double x = xp * (static_cast<double>(i) + 0.5) / static_cast<double>(G);
      double v = mp_density(x, args.c);
      t.rows.push_back({x, v, std::numeric_limits<double>::infinity(), std::string(v > 0.0 ? "band" : "void")});
    }
    return res;
  }

  LimitShape sh = shape(args.lambda, args.c);
  add_shape_meta(t, args.lambda, args.c);
  t.columns = {"x", "density", "constraint", "region"};
  std::vector<double> xs(G), vals(G);
  for (std::size_t i = 0; i < G; ++i) xs[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(G);
  parallel_for(G, [&](std::size_t i) { vals[i] = density(xs[i], sh); });
  for (std::size_t i = 0; i < G; ++i)
    t.rows.push_back({xs[i], vals[i], 1.0 / (args.lambda * xs[i]), region_tag(xs[i], sh)});
  return res;
}

CommandResult cmd_zeros(const ZerosArgs& args) {
  require(args.N >= 1, "--N must be positive");
  long n = args.n == 0 ? args.N : args.n;
  require(n >= 1, "--n must be positive");
  require(n <= 100'000, "--n is capped at 100000");
  require(args.d >= 0, "--d must be >= 0");
  require(args.bins >= 0, "--bins must be >= 0");
  require_lambda_c(args.lambda, args.c, false);
  ModelParams params{args.lambda, args.c, args.d, args.N};

  ZeroSet zs = zeros(n, params);
  CommandResult res;
  Table& t = res.table;
  t.add_meta("command", std::string("zeros"));
  t.add_meta("n", i64(n));
  t.add_meta("N", i64(args.N));
  t.add_meta("lambda", args.lambda);
  t.add_meta("c", args.c);
  t.add_meta("d", i64(args.d));
  t.add_meta("alpha", params.alpha());
  t.add_meta("q", params.q());
  LimitShape sh = shape(args.lambda, args.c);
  add_shape_meta(t, args.lambda, args.c);
  t.add_meta("max_residual", zs.max_residual);

  const auto& z = zs.zeros;
  const double nd = static_cast<double>(n);
  // the limiting law describes n = N; other ratios get no overlay statistics
  const bool overlay = n == args.N;
  if (overlay) {
    std::vector<double> F = cdf_grid(z, args.lambda, args.c);
    double ks = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / nd - F[i]));
      ks = std::max(ks, std::fabs(static_cast<double>(i) / nd - F[i]));
    }
    t.add_meta("kolmogorov_distance", ks);
    for (long p = 1; p <= 3; ++p) {
      double m = 0.0;
      for (double x : z) m += std::pow(x, static_cast<double>(p));
      t.add_meta("sample_moment_" + std::to_string(p), m / nd);
      t.add_meta("limit_moment_" + std::to_string(p), limit_moment(p, args.lambda, args.c));
    }
  }

  if (args.bins == 0) {
    t.columns = overlay ? std::vector<std::string>{"index", "zero", "limit_density"}
                        : std::vector<std::string>{"index", "zero"};
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (overlay)
        t.rows.push_back({static_cast<std::int64_t>(i), z[i], density(z[i], sh)});
      else
        t.rows.push_back({static_cast<std::int64_t>(i), z[i]});
    }
    return res;
  }

  const std::size_t B = static_cast<std::size_t>(args.bins);
  std::vector<double> edges(B + 1);
  for (std::size_t k = 0; k <= B; ++k) edges[k] = static_cast<double>(k) / static_cast<double>(B);
  std::vector<long> count(B, 0);
  for (double x : z) {
    std::size_t k = std::min(B - 1, static_cast<std::size_t>(std::max(0.0, x) * static_cast<double>(B)));
    ++count[k];
  }
  t.columns = overlay ? std::vector<std::string>{"lo", "hi", "count", "empirical_density", "limit_density"}
                      : std::vector<std::string>{"lo", "hi", "count", "empirical_density"};
  std::vector<double> F;
  if (overlay) F = cdf_grid(edges, args.lambda, args.c);
  for (std::size_t k = 0; k < B; ++k) {
    double w = edges[k + 1] - edges[k];
    double emp = static_cast<double>(count[k]) / (nd * w);
    if (overlay)
      t.rows.push_back({edges[k], edges[k + 1], i64(count[k]), emp, (F[k + 1] - F[k]) / w});
    else
      t.rows.push_back({edges[k], edges[k + 1], i64(count[k]), emp});
  }
  return res;
}

namespace {

struct CheckRow {
  std::string check;
  long p = 0, j = 0, alpha = 0, N = 0;
  std::string q;
  bool passed = false;
  double residual = 0.0;
};

double rel_gap(const mpq_class& x, const mpq_class& y) {
  if (x == y) return 0.0;
  mpq_class diff = abs(x - y);
  mpq_class ax = abs(x);
  mpq_class scale = ax > 1 ? ax : mpq_class(1);
  return mpq_class(diff / scale).get_d();
}

}  // namespace

CommandResult cmd_verify(const VerifyArgs& args) {
  require(args.max_p >= 0 && args.max_p <= 8, "--max-p must lie in [0, 8]");
  require(args.max_j >= 0 && args.max_j <= 8, "--max-j must lie in [0, 8]");
  require(args.max_alpha >= 0 && args.max_alpha <= 8, "--max-alpha must lie in [0, 8]");

  const std::vector<std::pair<long, long>> qs{{1, 3}, {1, 2}, {2, 3}};
  struct Triple {
    long p, j, alpha;
  };
  std::vector<Triple> triples;
  for (long p = 0; p <= args.max_p; ++p)
    for (long j = 0; j <= args.max_j; ++j)
      for (long a = 0; a <= args.max_alpha; ++a) triples.push_back({p, j, a});

  // one slot per triple so the row order is independent of scheduling
  std::vector<std::vector<CheckRow>> slots(triples.size());
  parallel_for(triples.size(), [&](std::size_t idx) {
    const auto [p, j, alpha] = triples[idx];
    auto& out = slots[idx];
    QPolynomial enumerated = crossing_gf(p, j, alpha, p);
    QPolynomial closed = crossing_gf_closed(p, j, alpha);
    mpz_class count = enumerated.at_one();
    out.push_back({"matching_count", p, j, alpha, 0, "1", count == matching_count_closed(p, j, alpha),
                   mpq_class(count - matching_count_closed(p, j, alpha)).get_d()});

    std::vector<QPolynomial> bpoly, lpoly;
    for (long h = 0; h <= j + p; ++h) {
      auto [bn, ln] = q_monic_coeffs_poly(h, alpha);
      bpoly.push_back(bn);
      lpoly.push_back(ln);
    }
    for (auto [num, den] : qs) {
      mpq_class q(num, den);
      std::string qs_name = std::to_string(num) + "/" + std::to_string(den);
      mpq_class cl = closed(q);
      mpq_class en = enumerated(q);
      out.push_back({"enumeration_vs_closed", p, j, alpha, 0, qs_name, en == cl, rel_gap(en, cl)});

      std::vector<mpq_class> b, l;
      for (long h = 0; h <= j + p; ++h) {
        b.push_back(bpoly[h](q));
        l.push_back(lpoly[h](q));
      }
      if (args.inject_fault) b[0] += mpq_class(1, 1000);
      mpq_class mz = motzkin_weight_sum<mpq_class>(p, j, b, l);
      out.push_back({"motzkin_vs_closed", p, j, alpha, 0, qs_name, mz == cl, rel_gap(mz, cl)});

      double qd = q.get_d();
      double want = std::pow(1.0 - qd, static_cast<double>(p)) * cl.get_d();
      double got = moment_via_jackson(p, j, ModelParams::from_q(qd, alpha, 1));
      double r = std::fabs(got - want) / std::max(1.0, std::fabs(want));
      out.push_back({"jackson_vs_closed", p, j, alpha, 0, qs_name, r <= 1e-10, r});
    }
  });

  std::vector<CheckRow> rows;
  for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());

  // summed over j < N: the q-moment against the Motzkin oracle, and its q = 1 value against the LUE
  const long n_max = std::max(1L, std::min(args.max_j, 4L));
  for (long N = 1; N <= n_max; ++N)
    for (long p = 0; p <= args.max_p; ++p)
      for (long alpha = 0; alpha <= args.max_alpha; ++alpha) {
        mpz_class lue = lue_moment(N, p, alpha);
        mpz_class q1 = qlue_moment_rescaled_poly(N, p, alpha).at_one();
        rows.push_back({"qlue_at_q1_vs_lue", p, 0, alpha, N, "1", q1 == lue, mpq_class(q1 - lue).get_d()});
        bool alt = lue == lue_moment_alt(N, p, alpha) && lue == lue_moment_alt2(N, p, alpha);
        rows.push_back({"lue_alternative_forms", p, 0, alpha, N, "1", alt, alt ? 0.0 : 1.0});
        for (auto [num, den] : qs) {
          mpq_class q(num, den);
          mpq_class sum = 0;
          for (long j = 0; j < N; ++j) {
            std::vector<mpq_class> b, l;
            for (long h = 0; h <= j + p; ++h) {
              auto [bn, ln] = q_monic_coeffs_poly(h, alpha);
              b.push_back(bn(q));
              l.push_back(ln(q));
            }
            if (args.inject_fault) b[0] += mpq_class(1, 1000);
            sum += motzkin_weight_sum<mpq_class>(p, j, b, l);
          }
          mpq_class one_minus_q_p = 1;
          for (long k = 0; k < p; ++k) one_minus_q_p *= 1 - q;
          sum *= one_minus_q_p;
          mpq_class ex = qlue_moment_exact(N, p, alpha, q);
          rows.push_back({"qlue_vs_motzkin", p, 0, alpha, N, std::to_string(num) + "/" + std::to_string(den),
                          sum == ex, rel_gap(sum, ex)});
        }
      }

  CommandResult res;
  Table& t = res.table;
  long failures = 0;
  for (const auto& r : rows)
    if (!r.passed) ++failures;
  t.add_meta("command", std::string("verify"));
  t.add_meta("max_p", i64(args.max_p));
  t.add_meta("max_j", i64(args.max_j));
  t.add_meta("max_alpha", i64(args.max_alpha));
  t.add_meta("checks", static_cast<std::int64_t>(rows.size()));
  t.add_meta("failures", i64(failures));
  t.columns = {"check", "p", "j", "alpha", "N", "q", "passed", "residual"};
  for (const auto& r : rows)
    t.rows.push_back({r.check, i64(r.p), i64(r.j), i64(r.alpha), i64(r.N), r.q, r.passed, r.residual});
  res.status = failures == 0 ? 0 : 1;
  return res;
}

CommandResult cmd_equilibrium(const EquilibriumArgs& args) {
  require_lambda_c(args.lambda, args.c, false);
  EnergyReport rep = verify_panel(args.lambda, args.c);
  const LimitShape& sh = rep.shape;

  CommandResult res;
  Table& t = res.table;
  t.add_meta("command", std::string("equilibrium"));
  t.add_meta("lambda", args.lambda);
  t.add_meta("c", args.c);
  add_shape_meta(t, args.lambda, args.c);
  t.columns = {"quantity", "region", "value"};
  auto row = [&](const std::string& q, const std::string& region, double v) { t.rows.push_back({q, region, v}); };
  row("energy", "", rep.energy);
  row("potential_level", "band", rep.potential_level);
  row("el_equality_spread", "band", rep.el_equality_spread);
  for (const auto& [k, v] : rep.inequality_margins) row("inequality_margin", k, v);
  for (const auto& [k, v] : rep.h_margins) row("h_margin", k, v);
  row("h_closed_residual", "", rep.h_closed_residual);
  row("pv_max", "band", rep.pv_max);
  row("pv_richardson", "band", rep.pv_richardson);
  row("system_r1", "", rep.system.r1);
  row("system_r2", "", rep.system.r2);
  row("system_r3", "", rep.system.r3);
  for (const auto& pr : rep.perturbations) row("energy_gap", pr.bump + "@" + format_double(pr.eps), pr.delta);
  row("min_energy_gap", "", rep.min_energy_gap);
  if (rep.quadratic_variation) row("quadratic_variation", "band", *rep.quadratic_variation);
  for (const auto& b : rep.rejected_bumps) row("rejected_bump", b, std::numeric_limits<double>::quiet_NaN());

  if (sh.a > 0.0) {
    const double d = d_sat(sh);
    auto m = appendix_prop_integrals(sh.a, sh.b, d, {-0.5, 0.25});
    for (const auto& [k, v] : m) row("appendix_residual", k, v);
    double jr = 0.0, ir = 0.0;
    for (double x : {0.25 * sh.a, 0.75 * sh.a, sh.b + 0.25 * (1.0 - sh.b), sh.b + 0.75 * (1.0 - sh.b)}) {
      jr = std::max(jr, std::fabs(appendix_J(x, sh.a, sh.b) - appendix_J_quad(x, sh.a, sh.b)));
      ir = std::max(ir, std::fabs(appendix_I(x, sh.a, sh.b) - appendix_I_quad(x, sh.a, sh.b)));
    }
    row("appendix_residual", "J", jr);
    row("appendix_residual", "I", ir);
  }
  return res;
}

}  // namespace qmp::cli
