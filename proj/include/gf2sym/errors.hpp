#pragma once

#include <stdexcept>
#include <string>

namespace gf2sym {

/// Shape or index errors: operands that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition failed (non-symplectic input, group
/// membership, malformed distribution). `invariant()` names the property.
class DomainError : public std::domain_error {
 public:
  DomainError(std::string invariant, const std::string& what)
      : std::domain_error(what), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Unparseable text or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gf2sym
