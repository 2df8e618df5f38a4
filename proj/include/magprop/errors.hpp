#pragma once

#include <stdexcept>
#include <string>

namespace magprop {

/// Argument outside the mathematical domain of an operation (τ = 0, B = 0 where a field is needed, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Query sits on (or within tolerance of) a caustic, |sin| below the caustic tolerance.
class CausticError : public std::runtime_error {
 public:
  CausticError(const std::string& what, double abs_sin)
      : std::runtime_error(what), abs_sin_(abs_sin) {}
  double abs_sin() const { return abs_sin_; }

 private:
  double abs_sin_;
};

class DegenerateTraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LinearSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative eigensolver gave up; carries the last iteration count and worst residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double worst_residual)
      : std::runtime_error(what), iterations_(iterations), worst_residual_(worst_residual) {}
  int iterations() const { return iterations_; }
  double worst_residual() const { return worst_residual_; }

 private:
  int iterations_;
  double worst_residual_;
};

}  // namespace magprop
