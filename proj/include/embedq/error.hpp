#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace embedq {

enum class ErrorKind {
  EmptyInput,
  NonFinite,
  EmptySubset,
  DimensionMismatch,
  RowCountMismatch,
  InconsistentSummary,
  InvalidAssignment,
  TooFewSamples,
  InvalidClusterCount,
  ClusteringTooLarge,
  TooLargeForRankMetrics,
  InvalidNeighborhoodSize,
  InvalidCount,
  WrongInputDimension,
  InvalidTargetDim,
  SvdNonConvergence,
  ParseError,
  MissingLabelColumn,
  IoError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RowCountMismatch: return "RowCountMismatch";
    case ErrorKind::InconsistentSummary: return "InconsistentSummary";
    case ErrorKind::InvalidAssignment: return "InvalidAssignment";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::InvalidClusterCount: return "InvalidClusterCount";
    case ErrorKind::ClusteringTooLarge: return "ClusteringTooLarge";
    case ErrorKind::TooLargeForRankMetrics: return "TooLargeForRankMetrics";
    case ErrorKind::InvalidNeighborhoodSize: return "InvalidNeighborhoodSize";
    case ErrorKind::InvalidCount: return "InvalidCount";
    case ErrorKind::WrongInputDimension: return "WrongInputDimension";
    case ErrorKind::InvalidTargetDim: return "InvalidTargetDim";
    case ErrorKind::SvdNonConvergence: return "SvdNonConvergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingLabelColumn: return "MissingLabelColumn";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Exception type thrown by every embedq routine. The kind is stable and is
/// what callers (and the CLI exit-code mapping) should switch on; the message
/// is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// NonFinite carries the offending cell so callers can point at it.
class NonFiniteError : public Error {
 public:
  NonFiniteError(std::size_t row, std::size_t col)
      : Error(ErrorKind::NonFinite, "non-finite value at (" + std::to_string(row) +
                                        ", " + std::to_string(col) + ")"),
        row_(row),
        col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// ParseError carries the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace embedq
