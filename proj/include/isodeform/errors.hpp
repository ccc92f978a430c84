#pragma once

#include <stdexcept>
#include <string>

namespace isodeform {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched component counts, orders or base points.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class SeedError : public Error {
 public:
  using Error::Error;
};

// Evaluation point outside the validity disc of a chart.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Raised when a Gram-Schmidt step falls below the rank threshold.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, int index) : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

// An operation that requires a 1-isotropic chart was handed something else.
class ModelViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ProjectionError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace isodeform
