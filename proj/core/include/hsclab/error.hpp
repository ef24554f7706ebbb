#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "hsclab/types.hpp"

namespace hsclab {

enum class ErrorCode {
  InvalidArgument,
  IndexOutOfRange,
  Singular,
  Syntax,
  UnknownIdentifier,
  VariableIndex,
  HermitianDefect,
  NotPositiveDefinite,
  UnknownName,
  OutsideBox,
  IllConditioned,
  ZeroVector,
  ImaginaryResidue,
  HypothesisViolation,
  NotReached,
  Io,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax errors carry the byte offset into the source string.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t offset, const std::string& what)
      : Error(code, what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A failed pointwise check together with the point that witnessed it.
class WitnessError : public Error {
 public:
  WitnessError(ErrorCode code, const std::string& what, CVec point, double value)
      : Error(code, what), point_(std::move(point)), value_(value) {}

  [[nodiscard]] const CVec& point() const noexcept { return point_; }
  [[nodiscard]] double value() const noexcept { return value_; }

 private:
  CVec point_;
  double value_;
};

}  // namespace hsclab
