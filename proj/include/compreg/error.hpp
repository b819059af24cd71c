#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace compreg {

enum class ErrorCode {
  NonPositivePart,
  DimensionTooSmall,
  DimensionMismatch,
  InvalidComposition,
  NonFinite,
  OverflowGuard,
  RankDeficientDesign,
  TooFewObservations,
  InvalidLevel,
  DegenerateScale,
  BTooSmall,
  InvalidConfig,
  ImprobableDegeneracy,
  ParseError,
  ValidationError,
  DuplicateId,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed CSV input; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A well-formed record that violates a domain invariant.
class ValidationError : public Error {
 public:
  ValidationError(long match_id, const std::string& invariant, ErrorCode code = ErrorCode::ValidationError)
      : Error(code, "match " + std::to_string(match_id) + ": " + invariant),
        match_id_(match_id),
        invariant_(invariant) {}

  long match_id() const noexcept { return match_id_; }
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  long match_id_;
  std::string invariant_;
};

}  // namespace compreg
