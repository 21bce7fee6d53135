#pragma once

#include <stdexcept>
#include <string>

namespace fockida {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// The weight cannot be handled (e.g. it is not radial).
class UnsupportedWeight : public Error {
 public:
  using Error::Error;
};

// A quadrature did not converge; `residual` is the last refinement change.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// The grid does not capture the effective support of the integrand.
class InsufficientGrid : public Error {
 public:
  InsufficientGrid(const std::string& what, double tail)
      : Error(what + " (tail " + std::to_string(tail) + ")"), tail_(tail) {}
  double tail() const noexcept { return tail_; }

 private:
  double tail_;
};

// Finite-section truncation is too small for the requested quantity.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double magnitude)
      : Error(what + " (magnitude " + std::to_string(magnitude) + ")"), magnitude_(magnitude) {}
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

// Symbol does not belong to a class the operator can be assembled for.
class SymbolClassError : public Error {
 public:
  using Error::Error;
};

// A field is not effectively supported inside a periodic grid.
class PeriodizationError : public Error {
 public:
  PeriodizationError(const std::string& what, double boundary)
      : Error(what + " (boundary magnitude " + std::to_string(boundary) + ")"), boundary_(boundary) {}
  double boundary() const noexcept { return boundary_; }

 private:
  double boundary_;
};

}  // namespace fockida
