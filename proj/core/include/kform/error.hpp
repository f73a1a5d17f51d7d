#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kform {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different ambient dimensions, or an axis index is out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed operator / polynomial / solution text. `position` is a byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message,
             std::vector<std::string> expected = {});

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
  std::string detail_;
};

/// A decomposition plan does not fit the operator it is applied to.
class PlanError : public Error {
 public:
  using Error::Error;
};

/// An algebraic identity that must hold exactly did not. Signals an engine bug.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// Enumeration refused because the plan count exceeds the ceiling.
class EnumerationLimitError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument that is not a parse error (bad box, bad quadrature spec, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace kform
