#pragma once

#include "gtbound/bell_poly.hpp"
#include "gtbound/error.hpp"
#include "gtbound/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gtbound {

enum class Parity { none, odd, even };

/// c_0 + c_1 x + ... + c_N x^N over exact rationals or doubles.
template <typename Scalar>
class TruncatedSeries {
public:
  using value_type = Scalar;

  TruncatedSeries() : coeffs_(1, Scalar(0)) {}

  explicit TruncatedSeries(std::vector<Scalar> coeffs, Parity parity = Parity::none)
      : coeffs_(std::move(coeffs)), parity_(parity) {
    if (coeffs_.empty()) throw DomainError("a truncated series needs at least c0");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      bool must_vanish = (parity_ == Parity::odd && i % 2 == 0) ||
                         (parity_ == Parity::even && i % 2 == 1);
      if (must_vanish && coeffs_[i] != Scalar(0)) {
        throw DomainError("coefficient " + std::to_string(i) + " violates the parity hint");
      }
    }
  }

  static TruncatedSeries zero(std::size_t order) {
    return TruncatedSeries(std::vector<Scalar>(order + 1, Scalar(0)));
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  Parity parity() const noexcept { return parity_; }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  const Scalar& operator[](std::size_t i) const { return coeffs_.at(i); }

  /// Leading N+1 coefficients (zero padded when N exceeds the order).
  TruncatedSeries truncated(std::size_t order) const {
    std::vector<Scalar> c(order + 1, Scalar(0));
    for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) c[i] = coeffs_[i];
    return TruncatedSeries(std::move(c), parity_);
  }

private:
  std::vector<Scalar> coeffs_;
  Parity parity_ = Parity::none;
};

using RationalSeries = TruncatedSeries<Rational>;
using FloatSeries = TruncatedSeries<double>;

/// Exact symbolic mode stays below this order by default.
inline constexpr std::size_t kMaxExactSymbolicOrder = 40;
/// Numeric inversion stays below this order by default.
inline constexpr std::size_t kMaxNumericInversionOrder = 200;

/// Coefficients of g = h^{-1} through order N, from the Bell-polynomial
/// reversion formula
///   beta_1 = 1/alpha_1,
///   beta_n = (1/n) sum_{k=1}^{n-1} (-1)^k C(n-1+k, k) B°_{n-1,k}(alpha_2, ...) / alpha_1^{n+k}.
/// Requires c0 = 0 and c1 != 0. Exact for rationals.
RationalSeries invert_series(const RationalSeries& alpha, std::size_t order);
FloatSeries invert_series(const FloatSeries& alpha, std::size_t order,
                          std::size_t max_order = kMaxNumericInversionOrder);

/// Inverse of the series scale * q, returned in floating point. The rational
/// part q is reverted exactly; only beta_n = beta_n(q) / scale^n is rounded.
FloatSeries invert_scaled(const RationalSeries& q, double scale, std::size_t order);

/// beta_n * alpha_1^{2n-1} as a polynomial in alpha_1..alpha_n, for n = 1..order
/// (element n-1 of the result). Built from bell_symbolic enumeration.
std::vector<SymbolicPolynomial> invert_series_symbolic(
    std::size_t order, std::size_t max_order = kMaxExactSymbolicOrder);

template <typename Scalar>
TruncatedSeries<Scalar> abs_series(const TruncatedSeries<Scalar>& s) {
  std::vector<Scalar> c = s.coeffs();
  for (auto& v : c) {
    if (v < 0) v = -v;
  }
  return TruncatedSeries<Scalar>(std::move(c), s.parity());
}

FloatSeries to_float(const RationalSeries& s);

/// Compensated Horner evaluation on [-1, 1].
double eval(const FloatSeries& s, double x);
Rational eval(const RationalSeries& s, const Rational& x);

/// s'(x) by termwise differentiation of the truncation.
double eval_derivative(const FloatSeries& s, double x);

struct RootResult {
  double r = 0.0;
  double residual = 0.0;  // f(r) - 1
  bool degenerate = false;  // the level is only reached at r = 1
  int iterations = 0;
};

/// Root of f(r) = 1 on (0, 1] for a series with non-negative coefficients and
/// f(0) < 1. Bisection to machine resolution; |f(r) - 1| <= tol is checked.
/// Throws NoRootError when f(1) < 1.
RootResult solve_unit_level(const FloatSeries& f, double tol);

}  // namespace gtbound
