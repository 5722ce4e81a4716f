#include "evt/errors.hpp"

namespace evt {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::UnsupportedParameter: return "unsupported parameter";
    case ErrorCode::AbsentProfile: return "absent auxiliary profile";
    case ErrorCode::Degenerate: return "degenerate second order condition";
    case ErrorCode::Differentiation: return "differentiation failure";
    case ErrorCode::Quadrature: return "quadrature failure";
    case ErrorCode::InsufficientPoints: return "insufficient points";
    case ErrorCode::SignChange: return "sign change";
    case ErrorCode::Index: return "index error";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Syntax: return "syntax error";
    case ErrorCode::UnknownIdentifier: return "unknown identifier";
    case ErrorCode::UnboundParameter: return "unbound parameter";
    case ErrorCode::DomainViolation: return "domain violation";
    case ErrorCode::DuplicateName: return "duplicate name";
    case ErrorCode::NonMonotone: return "non-monotone quantile";
    case ErrorCode::Config: return "configuration error";
    case ErrorCode::Io: return "i/o error";
  }
  return "error";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace evt
