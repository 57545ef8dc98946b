#pragma once

#include <stdexcept>
#include <string>

namespace platoon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance or schedule text.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Input violates a domain invariant (duplicate id, overlapping lane
/// occupancy, undeclared lane, bad parameter, wrong topology).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// A decision procedure or a post-condition broke its contract.
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Brute-force enumeration refused because it would exceed its cap.
class CapExceeded : public Error {
public:
  CapExceeded(const std::string& what, unsigned long long required)
      : Error(what), required_(required) {}
  unsigned long long required() const noexcept { return required_; }

private:
  unsigned long long required_;
};

} // namespace platoon
