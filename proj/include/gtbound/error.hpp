#pragma once

#include <stdexcept>
#include <string>

namespace gtbound {

/// Input outside an operation's domain (bad shapes, parameters, lengths).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Series with zero linear coefficient cannot be reverted.
class NonInvertibleSeries : public DomainError {
public:
  using DomainError::DomainError;
};

/// A concept whose outputs are almost surely constant (|E b| ~ 1).
class DegenerateConcept : public DomainError {
public:
  using DomainError::DomainError;
};

/// f(1) < 1 for a non-negative majorant, so f(r) = 1 has no root in (0, 1].
class NoRootError : public DomainError {
public:
  NoRootError(const std::string& what, double value_at_one)
      : DomainError(what), value_at_one_(value_at_one) {}
  double value_at_one() const noexcept { return value_at_one_; }

private:
  double value_at_one_;
};

/// An iterative computation hit its cap before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace gtbound
