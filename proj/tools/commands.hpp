#pragma once

#include <stdexcept>

#include "output.hpp"

namespace qmp::cli {

// Bad flag values or combinations; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  Table table;
  int status = 0;  // 0 ok, 1 verification failure
};

struct MomentsArgs {
  long N = 30;
  long p_max = 3;
  double lambda = 1.0;
  double c = 0.0;
  long d = 0;
};

struct DensityArgs {
  double lambda = 1.0;
  double c = 0.0;
  long grid = 400;
};

struct ZerosArgs {
  long n = 0;  // 0 means n = N
  long N = 200;
  double lambda = 1.0;
  double c = 0.0;
  long d = 0;
  long bins = 0;
};

struct VerifyArgs {
  long max_p = 5;
  long max_j = 4;
  long max_alpha = 4;
  bool inject_fault = false;  // test-only: perturbs one recurrence coefficient
};

struct EquilibriumArgs {
  double lambda = 1.0;
  double c = 0.0;
};

CommandResult cmd_moments(const MomentsArgs& args);
CommandResult cmd_density(const DensityArgs& args);
CommandResult cmd_zeros(const ZerosArgs& args);
CommandResult cmd_verify(const VerifyArgs& args);
CommandResult cmd_equilibrium(const EquilibriumArgs& args);

}  // namespace qmp::cli
