#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uavtraj {

enum class ErrorKind {
  InvalidArgument,
  SumZero,
  DegenerateGradient,
  NoRealInterface,
  ConjugatePoint,
  HorizonOverflow,
  OutOfWindow,
  StalledOnInterface,
  SingleCrossingViolated,
  NotHyperbolic,
  NonDecreasingCost,
  ParseError,
  ValidationError,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above; the CLI
// maps kinds onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace uavtraj
