#pragma once

#include <stdexcept>
#include <string>

namespace bayesfuse {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A prior of exactly 0 or 1 was passed where the fusion rules divide by it.
class DegeneratePrior : public Error {
 public:
  using Error::Error;
};

/// Numerator and denominator of a fusion rule are both zero (e.g. one
/// classifier reports certainty 1 while the other reports certainty 0).
class IndeterminateFusion : public Error {
 public:
  using Error::Error;
};

class UnknownCombiner : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure hit its sweep limit before reaching tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidRectangle : public Error {
 public:
  using Error::Error;
};

class EmptyEnsemble : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bayesfuse
