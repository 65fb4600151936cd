#pragma once

#include <stdexcept>
#include <string>

namespace ensnc {

/// Thrown when a structurally valid mesh fails a topological check
/// (e.g. a boundary edge that lies on none of the cavity walls).
class InconsistentMeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, long pivot)
      : std::runtime_error(what), pivot_(pivot) {}
  /// Column (in factorization order) at which a zero pivot was met.
  long pivot() const noexcept { return pivot_; }

 private:
  long pivot_;
};

/// Raised by the stepper when a linear solve fails; carries the step index.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& what, long step) : std::runtime_error(what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class StartupFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimestepUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateBreedingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UndefinedRateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ensnc
