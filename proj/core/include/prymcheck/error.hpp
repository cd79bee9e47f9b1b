#pragma once

#include <stdexcept>
#include <string>

namespace prymcheck {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied data outside the documented domain (bad datum, bad
/// subgroup parameters, formula evaluated outside its regime).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A formula or claim was requested outside the (n, r, m) regime it is
/// stated for.
class RegimeError : public InputError {
 public:
  using InputError::InputError;
};

/// An internal consistency check failed. Never expected on valid input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class LatticeError : public Error {
 public:
  enum class Kind { dimension_mismatch, not_subgroup, infinite_index, dependent };

  LatticeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace prymcheck
