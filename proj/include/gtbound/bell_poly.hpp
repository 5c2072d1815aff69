#pragma once

#include "gtbound/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace gtbound {

/// Multiplicities nu_1..nu_{n+1-k} of a partition of n into exactly k parts:
/// sum nu_i = k and sum i * nu_i = n.
struct MultiIndex {
  std::vector<unsigned> nu;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// Sparse polynomial with exact rational coefficients over variables
/// x_1..x_arity. Zero coefficients are never stored.
class SymbolicPolynomial {
public:
  using Exponents = std::vector<unsigned>;

  explicit SymbolicPolynomial(std::size_t arity = 0) : arity_(arity) {}

  std::size_t arity() const noexcept { return arity_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  /// Adds c * x^e; drops the monomial if the sum cancels.
  void add_term(const Exponents& e, const Rational& c);

  /// Coefficient of x^e (zero when absent).
  Rational coefficient(const Exponents& e) const;

  Rational evaluate(std::span<const Rational> x) const;

  /// Same polynomial viewed over a larger variable set, with variable i
  /// renamed to variable i + shift.
  SymbolicPolynomial shifted(std::size_t shift, std::size_t new_arity) const;

  SymbolicPolynomial& operator+=(const SymbolicPolynomial& rhs);
  SymbolicPolynomial& operator*=(const Rational& c);
  /// Multiplies every monomial by x_var^power (var is 1-based).
  SymbolicPolynomial& multiply_monomial(std::size_t var, unsigned power);

  /// Canonical text: terms sorted by descending exponent vector, e.g.
  /// "2*x1*x3 + x2^2". `var` is the variable prefix.
  std::string to_string(const std::string& var = "x") const;

  friend bool operator==(const SymbolicPolynomial&, const SymbolicPolynomial&) = default;

private:
  void check_arity(const Exponents& e) const;

  std::size_t arity_;
  std::map<Exponents, Rational> terms_;
};

/// Default cap on n for the enumeration-based routines.
inline constexpr unsigned kDefaultMaxBellOrder = 64;

/// P(n, k) in descending lexicographic order of nu (nu_1 largest first).
std::vector<MultiIndex> partitions(unsigned n, unsigned k,
                                   unsigned max_n = kDefaultMaxBellOrder);

/// k! / prod nu_i!
Rational multinomial_weight(const MultiIndex& m);

/// Ordinary partial Bell polynomial B°_{n,k}(x_1..x_{n+1-k}) by direct
/// summation over P(n, k).
Rational bell_ordinary(unsigned n, unsigned k, std::span<const Rational> x,
                       unsigned max_n = kDefaultMaxBellOrder);

/// B°_{n,k} as a polynomial in x_1..x_{n+1-k}.
SymbolicPolynomial bell_symbolic(unsigned n, unsigned k,
                                 unsigned max_n = kDefaultMaxBellOrder);

/// Table T[k][n] = B°_{n,k}(x_1, x_2, ...) for 0 <= k, n <= max_order,
/// computed as coefficients of (sum_j x_j t^j)^k. Polynomial-time
/// alternative to partition enumeration; usable for doubles and rationals.
template <typename Scalar>
std::vector<std::vector<Scalar>> bell_power_table(std::span<const Scalar> x,
                                                  std::size_t max_order) {
  std::vector<std::vector<Scalar>> table(max_order + 1,
                                         std::vector<Scalar>(max_order + 1, Scalar(0)));
  table[0][0] = Scalar(1);
  for (std::size_t k = 1; k <= max_order; ++k) {
    // (X^k)_n = sum_j x_j (X^{k-1})_{n-j}; X^{k-1} starts at t^{k-1}.
    for (std::size_t n = k; n <= max_order; ++n) {
      Scalar acc(0);
      for (std::size_t j = 1; j + (k - 1) <= n && j <= x.size(); ++j) {
        acc += x[j - 1] * table[k - 1][n - j];
      }
      table[k][n] = acc;
    }
  }
  return table;
}

}  // namespace gtbound
