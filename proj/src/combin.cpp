#include "qmp/combin.hpp"

#include <algorithm>
#include <cmath>

#include "qmp/qcore.hpp"

namespace qmp {

long MotzkinPath::end_height() const {
  long h = start_height;
  for (Step s : steps) h += (s == Step::NorthEast) ? 1 : (s == Step::SouthEast ? -1 : 0);
  return h;
}

bool MotzkinPath::valid() const {
  long h = start_height;
  if (h < 0) return false;
  for (Step s : steps) {
    h += (s == Step::NorthEast) ? 1 : (s == Step::SouthEast ? -1 : 0);
    if (h < 0) return false;
  }
  return true;
}

std::vector<MotzkinPath> motzkin_paths(long p, long j_start, long j_end, EnumerationLimits lim) {
  std::vector<MotzkinPath> out;
  MotzkinPath cur{j_start, {}};
  std::uint64_t nodes = 0;
  std::function<void(long, long)> rec = [&](long left, long h) {
    if (++nodes > lim.node_cap) throw ResourceLimit("motzkin_paths: node cap exceeded");
    if (left == 0) {
      if (h == j_end) out.push_back(cur);
      return;
    }
    if (std::labs(h - j_end) > left) return;
    for (Step s : {Step::East, Step::NorthEast, Step::SouthEast}) {
      long nh = h + (s == Step::NorthEast ? 1 : (s == Step::SouthEast ? -1 : 0));
      if (nh < 0) continue;
      cur.steps.push_back(s);
      rec(left - 1, nh);
      cur.steps.pop_back();
    }
  };
  if (j_start >= 0 && j_end >= 0) rec(p, j_start);
  return out;
}

RecurrenceCoeffs laguerre_coeffs(LaguerreKind kind, long n, const ModelParams& params) {
  if (n < 0) throw DomainError("laguerre_coeffs: n < 0");
  const double al = params.alpha();
  const double dn = static_cast<double>(n);
  if (kind == LaguerreKind::classical || params.classical()) {
    if (kind == LaguerreKind::q_normalized && params.classical())
      throw DomainError("laguerre_coeffs: normalized kind needs q < 1");
    return {2.0 * dn + al + 1.0, dn * (dn + al)};
  }
  const double lq = params.log_q();
  auto qp = [&](double e) { return std::exp(e * lq); };
  auto om = [&](double e) { return -std::expm1(e * lq); };  // 1 - q^e
  if (kind == LaguerreKind::q_monic) {
    const double om1 = om(1.0);
    double b = qp(dn) * om(dn + al + 1.0) / om1 + qp(dn + al) * om(dn) / om1;
    double lam = qp(2.0 * dn + al - 1.0) * (om(dn) / om1) * (om(dn + al) / om1);
    return {b, lam};
  }
  double b = qp(dn) * om(dn + al + 1.0) + qp(dn + al) * om(dn);
  double a = qp(dn) * std::sqrt(qp(al - 1.0) * om(dn) * om(dn + al));
  return {b, a};
}

std::pair<QPolynomial, QPolynomial> q_monic_coeffs_poly(long n, long alpha) {
  if (n < 0 || alpha < 0) throw DomainError("q_monic_coeffs_poly: negative argument");
  QPolynomial b = q_int_poly(n + alpha + 1).shifted(static_cast<unsigned>(n)) +
                  q_int_poly(n).shifted(static_cast<unsigned>(n + alpha));
  QPolynomial lam;
  if (n >= 1)
    lam = (q_int_poly(n) * q_int_poly(n + alpha)).shifted(static_cast<unsigned>(2 * n + alpha - 1));
  return {b, lam};
}

std::pair<mpz_class, mpz_class> classical_coeffs(long n, long alpha) {
  return {mpz_class(2 * n + alpha + 1), mpz_class(n) * (n + alpha)};
}

bool BipartiteMatching::valid() const {
  std::vector<long> tops, bots;
  for (auto [a, b] : edges) {
    if (a == 0 || a < -alpha - j || a > p) return false;
    if (b == 0 || b < -j || b > p) return false;
    if (a < 0 && b < 0) return false;
    tops.push_back(a);
    bots.push_back(b);
  }
  std::sort(tops.begin(), tops.end());
  std::sort(bots.begin(), bots.end());
  return std::adjacent_find(tops.begin(), tops.end()) == tops.end() &&
         std::adjacent_find(bots.begin(), bots.end()) == bots.end();
}

CrossingBreakdown crossing_breakdown(const BipartiteMatching& m) {
  CrossingBreakdown cb;
  const auto& e = m.edges;
  for (std::size_t x = 0; x < e.size(); ++x)
    for (std::size_t y = 0; y < e.size(); ++y)
      if (e[x].first < e[y].first && e[y].second < e[x].second) ++cb.edge_edge;
  auto top_used = [&](long v) {
    return std::any_of(e.begin(), e.end(), [v](const auto& ed) { return ed.first == v; });
  };
  auto bot_used = [&](long v) {
    return std::any_of(e.begin(), e.end(), [v](const auto& ed) { return ed.second == v; });
  };
  for (const auto& [a, b] : e) {
    for (long c = -m.alpha - m.j; c <= m.p; ++c)
      if (c != 0 && c < a && !top_used(c)) ++cb.isolated_top;
    for (long d = -m.j; d <= m.p; ++d)
      if (d != 0 && d < b && !bot_used(d)) ++cb.isolated_bottom;
  }
  return cb;
}

long crossing_number(const BipartiteMatching& m) { return crossing_breakdown(m).total(); }

namespace {

// Shared depth-first enumerator. Tops are visited left to right; leaf(edges, cr) receives
// the crossing number, built incrementally for (C1),(C2) and finished at the leaf for (C3).
struct MatchingWalker {
  long p, j, alpha, t;
  EnumerationLimits lim;
  std::vector<long> tops, bots;
  std::vector<char> bot_used;
  std::vector<std::pair<long, long>> edges;
  std::uint64_t nodes = 0;

  MatchingWalker(long p_, long j_, long a_, long t_, EnumerationLimits l)
      : p(p_), j(j_), alpha(a_), t(t_), lim(l) {
    for (long v = -alpha - j; v <= p; ++v)
      if (v != 0) tops.push_back(v);
    for (long v = -j; v <= p; ++v)
      if (v != 0) bots.push_back(v);
    bot_used.assign(bots.size(), 0);
  }

  template <class Leaf>
  void run(Leaf&& leaf) {
    if (t < 0) return;
    rec(0, 0, 0, leaf);
  }

  template <class Leaf>
  void rec(std::size_t ti, long iso_tops, long partial, Leaf& leaf) {
    if (++nodes > lim.node_cap) throw ResourceLimit("enumerate_matchings: node cap exceeded");
    long need = t - static_cast<long>(edges.size());
    if (need > static_cast<long>(tops.size() - ti)) return;
    if (ti == tops.size()) {
      long c3 = 0;
      for (const auto& [a, b] : edges)
        for (std::size_t k = 0; k < bots.size() && bots[k] < b; ++k)
          if (!bot_used[k]) ++c3;
      leaf(edges, partial + c3);
      return;
    }
    const long a = tops[ti];
    rec(ti + 1, iso_tops + 1, partial, leaf);
    if (need == 0) return;
    for (std::size_t k = 0; k < bots.size(); ++k) {
      if (bot_used[k]) continue;
      const long b = bots[k];
      if (a < 0 && b < 0) continue;
      long c1 = 0;
      for (const auto& ed : edges)
        if (ed.second > b) ++c1;
      bot_used[k] = 1;
      edges.emplace_back(a, b);
      rec(ti + 1, iso_tops, partial + c1 + iso_tops, leaf);
      edges.pop_back();
      bot_used[k] = 0;
    }
  }
};

}  // namespace

void for_each_matching(long p, long j, long alpha, long t,
                       const std::function<void(const BipartiteMatching&)>& visit,
                       EnumerationLimits lim) {
  if (p < 0 || j < 0 || alpha < 0) throw DomainError("for_each_matching: negative argument");
  MatchingWalker w(p, j, alpha, t, lim);
  BipartiteMatching m{p, j, alpha, {}};
  w.run([&](const std::vector<std::pair<long, long>>& edges, long) {
    m.edges = edges;
    visit(m);
  });
}

std::vector<BipartiteMatching> enumerate_matchings(long p, long j, long alpha, long t,
                                                   EnumerationLimits lim) {
  std::vector<BipartiteMatching> out;
  for_each_matching(p, j, alpha, t, [&](const BipartiteMatching& m) { out.push_back(m); }, lim);
  return out;
}

QPolynomial crossing_gf(long p, long j, long alpha, long t, EnumerationLimits lim) {
  if (p < 0 || j < 0 || alpha < 0) throw DomainError("crossing_gf: negative argument");
  MatchingWalker w(p, j, alpha, t, lim);
  std::vector<mpz_class> hist;
  std::vector<unsigned long> counts;
  w.run([&](const std::vector<std::pair<long, long>>&, long cr) {
    if (static_cast<std::size_t>(cr) >= counts.size()) counts.resize(cr + 1, 0);
    ++counts[cr];
  });
  for (unsigned long c : counts) hist.emplace_back(c);
  return QPolynomial(std::move(hist));
}

mpq_class crossing_gf(long p, long j, long alpha, long t, const mpq_class& q,
                      EnumerationLimits lim) {
  return crossing_gf(p, j, alpha, t, lim)(q);
}

QPolynomial crossing_gf_closed(long p, long j, long alpha) {
  if (p < 0 || j < 0 || alpha < 0) throw DomainError("crossing_gf_closed: negative argument");
  QPolynomial sum;
  for (long i = 0; i <= std::min(p, alpha + j); ++i) {
    long e = (p - i) * (alpha - i) + p * j;
    sum += (q_binomial_poly(p, i) * q_binomial_poly(alpha + j, i) * q_binomial_poly(p - i + j, j))
               .shifted(static_cast<unsigned>(e));
  }
  return q_factorial_poly(p) * sum;
}

mpq_class crossing_gf_closed(long p, long j, long alpha, const mpq_class& q) {
  return crossing_gf_closed(p, j, alpha)(q);
}

QPolynomial crossing_gf_j0_closed(long p, long alpha, long t) {
  return q_binomial_poly(p + alpha, t) * q_binomial_poly(p, t) * q_factorial_poly(t);
}

mpz_class matching_count_closed(long p, long j, long alpha) {
  if (p < 0 || j < 0 || alpha < 0) throw DomainError("matching_count_closed: negative argument");
  mpz_class sum = 0;
  for (long i = 0; i <= p; ++i)
    sum += binomial(p, i) * binomial(alpha + j, i) * binomial(p - i + j, j);
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(p));
  return f * sum;
}

}  // namespace qmp
