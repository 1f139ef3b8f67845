#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmp/qpoly.hpp"

namespace qmp {

struct ModelParams {
  double lambda = 1.0;
  double c = 0.0;
  long d = 0;
  long N = 1;

  // q given directly; sets lambda = -N log q, c = 0, d = alpha
  static ModelParams from_q(double q, long alpha, long N);

  double log_q() const { return -lambda / static_cast<double>(N); }
  double q() const;
  double alpha() const { return c * static_cast<double>(N) + static_cast<double>(d); }
  // alpha as an integer; DomainError when cN + d is not integral
  long alpha_int() const;
  double s() const;
  bool classical() const { return lambda == 0.0; }
  void validate() const;
};

struct MomentReport {
  long N = 0;
  long p = 0;
  double exact = 0.0;
  double leading = 0.0;  // N * M_p
  std::optional<double> subleading;
  double e_N = 0.0;
  std::optional<double> f_N;
  // log2(e_N / e_{2N}) and the same for f, when 2N is also in the list
  std::optional<double> rate_e;
  std::optional<double> rate_f;
  std::map<std::string, double> residuals;
};

mpz_class lue_moment(long N, long p, long alpha);
// the two alternative LUE forms (falling factorials, and the Narayana-type sum)
mpz_class lue_moment_alt(long N, long p, long alpha);
mpz_class lue_moment_alt2(long N, long p, long alpha);

// m_{N,p} as a polynomial in q
QPolynomial qlue_moment_poly(long N, long p, long alpha);
// m_{N,p} / (1-q)^p, the moment in the rescaled variable x/(1-q); equals the LUE moment at q = 1
QPolynomial qlue_moment_rescaled_poly(long N, long p, long alpha);
mpq_class qlue_moment_exact(long N, long p, long alpha, const mpq_class& q);
double qlue_moment(const ModelParams& params, long p);

double limit_moment(long p, double lambda, double c);
double limit_moment_integral(long p, double lambda, double c);
// lambda^{-p} M_p, continuous at lambda = 0 where it is the MP moment
double scaled_limit_moment(long p, double lambda, double c);
double subleading_moment_c0(long p, long d, double lambda);

mpz_class narayana(long p, long j);
double classical_mp_moment(long p, double c);

std::vector<MomentReport> convergence_probe(long p, double lambda, double c, long d,
                                            const std::vector<long>& N_list);

}  // namespace qmp
