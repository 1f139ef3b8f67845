#pragma once

#include <functional>
#include <vector>

#include "qmp/combin.hpp"
#include "qmp/moments.hpp"

namespace qmp {

// Recurrence data for n = 0..n_max. Monic kinds: off[n] = lambda_n and log_h[n] is the
// log of the monic norm. Normalized kind: b[n] = b_{n,N}, off[n] = a_{n,N} and log_h[n]
// is log h_n, the Jackson norm of p_n(x; q^alpha | q) (normalised by p_n(0) = 1).
struct RecurrenceTable {
  LaguerreKind kind = LaguerreKind::q_normalized;
  long n_max = 0;
  ModelParams params;
  std::vector<double> b;
  std::vector<double> off;
  std::vector<double> log_h;
};

RecurrenceTable build_recurrence(LaguerreKind kind, long n_max, const ModelParams& params);

// Classical and q-monic kinds: the monic polynomial. Normalized kind: p_n(x; q^alpha | q).
double eval_poly(long n, double x, const RecurrenceTable& table);

struct ZeroSet {
  long n = 0;
  std::vector<double> zeros;
  ModelParams params;
  // max over zeros of |p_n / p_n'| divided by the distance to the nearest other zero
  double max_residual = 0.0;
};

ZeroSet zeros(long n, const ModelParams& params);
bool strictly_interlace(const std::vector<double>& lower, const std::vector<double>& upper);

// (1-q) sum_j A q^j f(A q^j), stopped once a geometric majorant bounds the tail below tol.
double jackson_integral(const std::function<double(double)>& f, double A, double q,
                        double tol = 1e-15, long j_cap = 10'000'000);

// log of x^alpha (qx;q)_inf
double log_weight(double x, const ModelParams& params);
double weight(double x, const ModelParams& params);

// (1/h_j) int_0^1 x^p p_j^2 w d_q x
double moment_via_jackson(long p, long j, const ModelParams& params);
// int_0^1 x^p p_j^2 w d_q x in closed form (extended orthogonality identity)
double jackson_moment_closed(long p, long j, long alpha, double q);

double one_point_function(double x, const ModelParams& params);
std::vector<double> one_point_function(const std::vector<double>& xs, const ModelParams& params);
// int_0^1 x^p rho_N(x) d_q x over the lattice, using the batched kernel
double one_point_jackson_moment(long p, const ModelParams& params, double tol = 1e-15);

struct EmpiricalZeroMeasure {
  std::vector<double> atoms;  // sorted; each carries mass 1/n
  double mass() const { return atoms.empty() ? 0.0 : 1.0; }
  double moment(long p) const;
  double cdf(double x) const;
};

EmpiricalZeroMeasure empirical_zero_measure(long n, const ModelParams& params);

// n-point Gauss rule for the normalized Jackson weight (weights sum to 1), by Golub-Welsch.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_rule(long n, const ModelParams& params);

}  // namespace qmp
