#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace qmp {

enum class Regime { Band, Saturated, Critical };

struct LimitShape {
  double lambda = 0.0;
  double c = 0.0;
  double s = 1.0;
  double lambda_c = 0.0;
  double a = 0.0;
  double b = 0.0;
  double sat_end = 0.0;  // 1 when saturated, b otherwise
  Regime regime = Regime::Band;

  bool saturated() const { return regime == Regime::Saturated; }
};

double lambda_crit(double c);
LimitShape shape(double lambda, double c);
std::string regime_name(Regime r);

double density(double x, double lambda, double c);
double density(double x, const LimitShape& sh);
// the form with the raw ratio under the square root (cancels badly near the edges)
double density_v0(double x, double lambda, double c);
// by quadrature of the t-integral, after t = x0 + x1 cos(theta)
double density_integral_rep(double x, double lambda, double c);

std::pair<double, double> x0_x1(double x, double lambda, double c);

double cdf(double x, double lambda, double c);
std::vector<double> cdf_grid(const std::vector<double>& xs, double lambda, double c);
double density_moment(long p, double lambda, double c);

std::complex<double> cauchy_transform(std::complex<double> z, double lambda, double c);

double mp_density(double x, double c);
// lambda * rho(lambda x); the MP law at lambda = 0
double scaled_density(double x, double lambda, double c);

// limits of the normalized recurrence coefficients at n/N -> t
double recurrence_A(double t, double lambda, double c);
double recurrence_B(double t, double lambda, double c);
double arcsine_mixture_density(double x, double lambda, double c);

}  // namespace qmp
