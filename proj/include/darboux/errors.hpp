#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Iterative solver exceeded its iteration cap; carries the final residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A scalar function was evaluated outside its domain (or returned a non-finite value).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter values (zero spectral parameter, lambda == mu, bad config, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Matrix failed a structural check (non-Hermitian, non-finite, defective).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// <chi|phi> vanishes, so the projector cannot be formed.
class DegenerateProjector : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not (dual dressing forms, Lemma check, Lax branch).
class InconsistencyError : public Error {
 public:
  InconsistencyError(const std::string& what, double mismatch)
      : Error(what), mismatch_(mismatch) {}
  double mismatch() const noexcept { return mismatch_; }

 private:
  double mismatch_;
};

/// F_a(t) of the self-scattering solution fell below threshold.
class PoleError : public Error {
 public:
  using Error::Error;
};

}  // namespace darboux
