#pragma once

#include <stdexcept>
#include <string>

namespace parastat {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument (bad counts, zero seed, out-of-range slot, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Incompatible matrix shapes.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A requested object exceeds a configured size bound.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Input to a Hermitian routine is not Hermitian.
class HermiticityError : public Error {
 public:
  HermiticityError(const std::string& what, double violation)
      : Error(what), violation_(violation) {}
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

/// A constructed object lacks an expected structure (non-integer number
/// spectrum, broken ladder, ...).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Model parameters are inconsistent; names the offending coefficient.
class ParameterError : public Error {
 public:
  ParameterError(const std::string& what, std::string coefficient)
      : Error(what), coefficient_(std::move(coefficient)) {}
  const std::string& coefficient() const noexcept { return coefficient_; }

 private:
  std::string coefficient_;
};

}  // namespace parastat
