#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpgmm {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Not enough residues left in GF(q) for the requested distinct values.
class InsufficientField : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An evaluation point coincides with a pole, or points are not distinct.
class PointCollision : public Error {
 public:
  using Error::Error;
};

class InsufficientResponses : public Error {
 public:
  InsufficientResponses(std::size_t required, std::size_t got)
      : Error("insufficient responses: need " + std::to_string(required) +
              ", got " + std::to_string(got)),
        required_(required),
        got_(got) {}

  std::size_t required() const { return required_; }
  std::size_t got() const { return got_; }

 private:
  std::size_t required_;
  std::size_t got_;
};

// Exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant (e.g. a singular interpolation system).
class InternalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fpgmm
