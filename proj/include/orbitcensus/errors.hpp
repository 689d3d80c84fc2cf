#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitcensus {

enum class ErrorKind {
  Structural,
  Domain,
  Model,
  OutOfRange,
  Resource,
  Numeric,
  Ingestion,
  UndefinedStatistic,
  Usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind drives the CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& message) : Error(K, message) {}
};

using StructuralError = KindedError<ErrorKind::Structural>;
using DomainError = KindedError<ErrorKind::Domain>;
using ModelError = KindedError<ErrorKind::Model>;
using OutOfRangeError = KindedError<ErrorKind::OutOfRange>;
using ResourceError = KindedError<ErrorKind::Resource>;
using NumericError = KindedError<ErrorKind::Numeric>;
using IngestionError = KindedError<ErrorKind::Ingestion>;
using UndefinedStatisticError = KindedError<ErrorKind::UndefinedStatistic>;
using UsageError = KindedError<ErrorKind::Usage>;

}  // namespace orbitcensus
