#include "orbitcensus/errors.hpp"

namespace orbitcensus {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Model: return "model";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Ingestion: return "ingestion";
    case ErrorKind::UndefinedStatistic: return "undefined-statistic";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

}  // namespace orbitcensus
