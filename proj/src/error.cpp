#include "uavtraj/error.hpp"

namespace uavtraj {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SumZero: return "SumZero";
    case ErrorKind::DegenerateGradient: return "DegenerateGradient";
    case ErrorKind::NoRealInterface: return "NoRealInterface";
    case ErrorKind::ConjugatePoint: return "ConjugatePoint";
    case ErrorKind::HorizonOverflow: return "HorizonOverflow";
    case ErrorKind::OutOfWindow: return "OutOfWindow";
    case ErrorKind::StalledOnInterface: return "StalledOnInterface";
    case ErrorKind::SingleCrossingViolated: return "SingleCrossingViolated";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::NonDecreasingCost: return "NonDecreasingCost";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace uavtraj
