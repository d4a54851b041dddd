#pragma once

#include <stdexcept>
#include <string>

namespace superdual {

/// Base class for mathematically meaningful rejections: the input is
/// well-formed but lies outside the domain of the requested operation.
/// The CLI maps these to a dedicated exit code, distinct from usage errors.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A partition failed the (n|m)-hook condition lambda_{n+1} <= m.
class NonHookError : public DomainError {
 public:
  explicit NonHookError(const std::string& what) : DomainError(what) {}
};

/// A weight's linkage class is singular (lambda + rho has a vanishing or
/// repeated coordinate), which the character pipeline does not cover.
class SingularBlockError : public DomainError {
 public:
  explicit SingularBlockError(const std::string& what) : DomainError(what) {}
};

/// The combination of options is valid input but names a variant the
/// library deliberately does not implement.
class UncoveredVariantError : public DomainError {
 public:
  explicit UncoveredVariantError(const std::string& what) : DomainError(what) {}
};

}  // namespace superdual
