#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qmp/errors.hpp"
#include "qmp/moments.hpp"
#include "qmp/qpoly.hpp"

namespace qmp {

struct EnumerationLimits {
  std::uint64_t node_cap = 100'000'000;
};

enum class Step { East, NorthEast, SouthEast };

struct MotzkinPath {
  long start_height = 0;
  std::vector<Step> steps;

  long end_height() const;
  bool valid() const;  // never below height 0
};

// All paths of length p from height j_start to height j_end, in lexicographic order E < NE < SE.
std::vector<MotzkinPath> motzkin_paths(long p, long j_start, long j_end,
                                       EnumerationLimits lim = {});

// Sum over Mot_{p,j,j} of the step-weight products: East at height k -> b[k],
// SouthEast from height k -> lam[k], NorthEast -> 1.
template <class W>
W motzkin_weight_sum(long p, long j, const std::vector<W>& b, const std::vector<W>& lam,
                     EnumerationLimits lim = {}) {
  if (static_cast<long>(b.size()) < j + p + 1 || static_cast<long>(lam.size()) < j + p + 1)
    throw DomainError("motzkin_weight_sum: coefficient sequences too short");
  W total(0);
  std::uint64_t nodes = 0;
  std::function<void(long, long, const W&)> rec = [&](long left, long h, const W& w) {
    if (++nodes > lim.node_cap) throw ResourceLimit("motzkin_weight_sum: node cap exceeded");
    if (left == 0) {
      if (h == j) total += w;
      return;
    }
    long gap = h > j ? h - j : j - h;
    if (gap > left) return;
    rec(left - 1, h, w * b[h]);
    rec(left - 1, h + 1, w);
    if (h > 0) rec(left - 1, h - 1, w * lam[h]);
  };
  rec(p, j, W(1));
  return total;
}

enum class LaguerreKind { classical, q_monic, q_normalized };

struct RecurrenceCoeffs {
  double b = 0.0;
  double off = 0.0;  // lambda_n for the monic kinds, a_n for the normalized kind
};

RecurrenceCoeffs laguerre_coeffs(LaguerreKind kind, long n, const ModelParams& params);
// symbolic q-monic coefficients (b_n, lambda_n) for integer alpha
std::pair<QPolynomial, QPolynomial> q_monic_coeffs_poly(long n, long alpha);
std::pair<mpz_class, mpz_class> classical_coeffs(long n, long alpha);

// Two-row matching on S^alpha(p,j). Top labels: -alpha-j..-1 and 1..p; bottom labels:
// -j..-1 and 1..p (the tilde is implicit). Edges are (top, bottom), sorted by top.
struct BipartiteMatching {
  long p = 0, j = 0, alpha = 0;
  std::vector<std::pair<long, long>> edges;

  bool valid() const;
  long edge_count() const { return static_cast<long>(edges.size()); }
};

struct CrossingBreakdown {
  long edge_edge = 0;         // (C1)
  long isolated_top = 0;      // (C2)
  long isolated_bottom = 0;   // (C3)
  long total() const { return edge_edge + isolated_top + isolated_bottom; }
};

CrossingBreakdown crossing_breakdown(const BipartiteMatching& m);
long crossing_number(const BipartiteMatching& m);

// Visits every matching with t edges exactly once, lexicographically (isolated before
// matched, bottoms ascending, tops processed left to right).
void for_each_matching(long p, long j, long alpha, long t,
                       const std::function<void(const BipartiteMatching&)>& visit,
                       EnumerationLimits lim = {});
std::vector<BipartiteMatching> enumerate_matchings(long p, long j, long alpha, long t,
                                                   EnumerationLimits lim = {});

// sum of q^cr(M) over M_{p,j}^{alpha}(t), by enumeration
QPolynomial crossing_gf(long p, long j, long alpha, long t, EnumerationLimits lim = {});
mpq_class crossing_gf(long p, long j, long alpha, long t, const mpq_class& q,
                      EnumerationLimits lim = {});

QPolynomial crossing_gf_closed(long p, long j, long alpha);
mpq_class crossing_gf_closed(long p, long j, long alpha, const mpq_class& q);
// j = 0 case at general t: [p+alpha t][p t][t]!
QPolynomial crossing_gf_j0_closed(long p, long alpha, long t);

mpz_class matching_count_closed(long p, long j, long alpha);

}  // namespace qmp
