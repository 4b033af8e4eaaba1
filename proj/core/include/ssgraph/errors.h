#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssgraph {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two signals in a binary operation do not share dt, start and length.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Invalid numeric parameter (input family, tau, epsilon, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Gain or phase requested for a pair with a zero-norm member.
class DegeneratePairError : public Error {
 public:
  using Error::Error;
};

/// A model violates a construction invariant (improper, not Hurwitz, H(0) != 0).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Frequency response requested for a model containing nonlinear blocks.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

class CatalogError : public Error {
 public:
  using Error::Error;
};

class EmptyRegionError : public Error {
 public:
  using Error::Error;
};

class NonInvertiblePointError : public Error {
 public:
  using Error::Error;
};

/// The theorem-level NI verdict was called with a model that fails check_ssg_ni.
class NotNegativeImaginaryError : public Error {
 public:
  using Error::Error;
};

/// A per-step algebraic loop solve failed to converge.
class LoopDivergenceError : public Error {
 public:
  LoopDivergenceError(const std::string& what, std::size_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace ssgraph
