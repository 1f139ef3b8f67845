#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmp/limitlaw.hpp"

namespace qmp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(hi > lo); }
};

struct SupportDecomposition {
  Interval void_left;
  Interval band;
  Interval saturated;  // empty unless lambda > lambda_c
  Interval void_right;
};

// right end of the support: b, or 1 when saturated
double d_sat(const LimitShape& sh);
SupportDecomposition support_decomposition(double lambda, double c);

// Piecewise-constant measure on [0,1]. grid holds the n+1 cell edges, weights the
// cell widths, values the cell-average densities.
struct DensityProfile {
  double lambda = 0.0;
  double c = 0.0;
  std::vector<double> grid;
  std::vector<double> weights;
  std::vector<double> values;

  std::size_t cells() const { return values.size(); }
  double cell_mass(std::size_t i) const { return values[i] * weights[i]; }
  double mass() const;
  // cell average of 1/(lambda x)
  double constraint(std::size_t i) const;
};

// the q-MP law on a grid refined toward 0, a, b and 1
DensityProfile make_profile(double lambda, double c, std::size_t cells = 2000);
// the q-MP law with parameters (lambda2, c2) on the grid of `base`
DensityProfile law_on_grid(const DensityProfile& base, double lambda2, double c2);
// (1 - eps) mu + eps nu, cellwise
DensityProfile mix(const DensityProfile& mu, const DensityProfile& nu, double eps);
bool admissible(const DensityProfile& p, double rel_tol = 1e-9);

double energy_functional(const DensityProfile& profile, double lambda, double c);

struct Bump {
  enum class Kind { Smooth, Packed, Law };
  std::string name;
  Kind kind = Kind::Smooth;
  double x1 = 0.0;
  double x2 = 0.0;
  double lambda2 = 0.0;  // Law only
  bool in_band = false;
};

// sin^2 bump of unit mass on [x1,x2]; Packed is 1/(lambda x) on [x1,x2] rescaled to unit mass
DensityProfile bump_profile(const DensityProfile& base, const Bump& bump);
std::vector<Bump> default_bumps(const LimitShape& sh);

double effective_potential(double x, double lambda, double c);

struct PvResult {
  double residual = 0.0;
  double richardson = 0.0;  // |r(h) - r(h/2)|
};
PvResult pv_residual_detail(double x, double lambda, double c);
double pv_residual(double x, double lambda, double c);

// g_+ + g_- + c/x + log(1-x)/(lambda x) off the band, by quadrature
double h_function(double x, double lambda, double c);
// the same through J and I; NaN when a = 0
double h_function_closed(double x, double lambda, double c);

double appendix_J(double x, double a, double b);
double appendix_J_quad(double x, double a, double b);
double appendix_I(double x, double a, double b);
double appendix_I_quad(double x, double a, double b);

struct SystemResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};
SystemResiduals system_residuals(double lambda, double c, std::optional<double> M1 = std::nullopt);

// |closed form - quadrature| for each identity, keyed by name. "A1_j1_paper" is the
// distance to the printed value and is informational.
std::map<std::string, double> appendix_prop_integrals(double a, double b, double d,
                                                      std::complex<double> z);

struct WeightCheck {
  std::vector<long> N;
  std::vector<double> r;
  double limit = 0.0;  // |d log x - log(1-x)/2|
  double ratio = 0.0;  // max r / min r
};
WeightCheck weight_asymptotics_check(double x, double lambda, double c, long d,
                                     const std::vector<long>& N_list);

struct PerturbationResult {
  std::string bump;
  double eps = 0.0;
  double delta = 0.0;  // I[mu_eps] - I[mu*]
};

struct EnergyReport {
  double lambda = 0.0;
  double c = 0.0;
  LimitShape shape;
  double energy = 0.0;
  double potential_level = 0.0;  // band average of the effective potential, i.e. -Omega
  double el_equality_spread = 0.0;
  std::map<std::string, double> inequality_margins;
  SystemResiduals system{};
  double pv_max = 0.0;
  double pv_richardson = 0.0;
  std::map<std::string, double> h_margins;  // min of h times its required sign, per off-band region
  double h_closed_residual = 0.0;
  std::vector<PerturbationResult> perturbations;
  std::vector<std::string> rejected_bumps;
  double min_energy_gap = 0.0;
  std::optional<double> quadratic_variation;  // max relative spread of delta/eps^2
};

EnergyReport verify_panel(double lambda, double c);
std::vector<EnergyReport> verify_panels(const std::vector<std::pair<double, double>>& panels);

}  // namespace qmp
