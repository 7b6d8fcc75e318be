#ifndef DICKSON_ERRORS_HPP
#define DICKSON_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dickson {

/// Invalid argument: mismatched rings, bad indices, unsupported prime.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by exact_div when the divisor does not divide the dividend.
class InexactDivision : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Syntax error in expression text; offset is a byte position in the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// An internal identity check failed (two constructions disagree).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dickson

#endif
