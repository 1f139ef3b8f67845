#pragma once

#include <stdexcept>
#include <string>

namespace qmp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct NonConvergent : Error { using Error::Error; };
struct ResourceLimit : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct EigensolveFailure : Error { using Error::Error; };
struct ConstraintViolation : Error { using Error::Error; };
struct RootBracketFailure : Error { using Error::Error; };

}  // namespace qmp
