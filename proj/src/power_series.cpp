#include "gtbound/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace gtbound {

namespace {

template <typename Scalar>
void check_invertible(const TruncatedSeries<Scalar>& alpha, std::size_t order) {
  if (order < 1) throw DomainError("inversion order must be at least 1");
  if (alpha[0] != Scalar(0)) throw DomainError("inversion requires c0 = 0");
  if (alpha.order() < 1 || alpha[1] == Scalar(0)) {
    throw NonInvertibleSeries("linear coefficient vanishes; series is not invertible at 0");
  }
}

// Bell-formula reversion with all coefficients normalised by alpha_1:
// a_j = alpha_{j+1} / alpha_1 and beta_n = S_n / (n alpha_1^n) with
// S_n = sum_k (-1)^k C(n-1+k, k) B°_{n-1,k}(a_1, a_2, ...). Algebraically the
// same as dividing B°(alpha_2, ...) by alpha_1^{n+k}.
template <typename Scalar>
std::vector<Scalar> revert(const std::vector<Scalar>& alpha, std::size_t order) {
  const Scalar a1 = alpha[1];
  std::vector<Scalar> a;
  for (std::size_t j = 2; j <= order && j < alpha.size(); ++j) a.push_back(alpha[j] / a1);
  while (a.size() + 1 < order) a.push_back(Scalar(0));

  auto table = bell_power_table<Scalar>(std::span<const Scalar>(a), order == 0 ? 0 : order - 1);

  std::vector<Scalar> beta(order + 1, Scalar(0));
  Scalar inv_a1 = Scalar(1) / a1;
  beta[1] = inv_a1;
  Scalar inv_pow = inv_a1;  // alpha_1^{-n}
  for (std::size_t n = 2; n <= order; ++n) {
    inv_pow *= inv_a1;
    Scalar sum(0);
    Scalar binom(1);  // C(n-1+k, k), built up incrementally in k
    for (std::size_t k = 1; k <= n - 1; ++k) {
      binom *= Scalar(static_cast<long>(n - 1 + k));
      binom /= Scalar(static_cast<long>(k));
      const Scalar& bell = table[k][n - 1];
      if (bell == Scalar(0)) continue;
      Scalar term = binom * bell;
      if (k % 2 == 1) {
        sum -= term;
      } else {
        sum += term;
      }
    }
    beta[n] = sum * inv_pow / Scalar(static_cast<long>(n));
  }
  return beta;
}

// Largest log2 |C(n-1+k, k) B°_{n-1,k}(a)| over the reversion sum, bounded
// through |a_j| so it also covers cancellation inside B° itself.
double max_term_log2(const std::vector<double>& alpha, std::size_t order) {
  std::vector<long double> a;
  const long double a1 = std::abs(static_cast<long double>(alpha[1]));
  for (std::size_t j = 2; j <= order && j < alpha.size(); ++j) {
    a.push_back(std::abs(static_cast<long double>(alpha[j])) / a1);
  }
  while (a.size() + 1 < order) a.push_back(0.0L);
  auto table = bell_power_table<long double>(std::span<const long double>(a), order - 1);
  double worst = 0.0;
  for (std::size_t n = 2; n <= order; ++n) {
    for (std::size_t k = 1; k <= n - 1; ++k) {
      const long double bell = table[k][n - 1];
      if (!(bell > 0.0L)) continue;
      const double log_binom = (std::lgamma(double(n + k)) - std::lgamma(double(k + 1)) -
                                std::lgamma(double(n))) / std::log(2.0);
      worst = std::max(worst, log_binom + static_cast<double>(std::log2(bell)));
    }
  }
  return worst;
}

// The alternating Bell sum cancels catastrophically in double precision
// (terms reach 2^{3n} while beta_n may be tiny), so the sum runs in GMP floats
// wide enough that rounding stays ~2^-128 below the largest term.
std::vector<double> revert_wide(const std::vector<double>& alpha, std::size_t order) {
  if (order < 2) return revert(alpha, order);
  const double spread = max_term_log2(alpha, order);
  if (!std::isfinite(spread)) throw DomainError("series coefficients overflow the reversion");
  const auto bits = static_cast<mp_bitcnt_t>(192 + std::ceil(std::max(0.0, spread)));

  // mpf temporaries take the process-wide default precision.
  static std::mutex precision_mutex;
  std::lock_guard lock(precision_mutex);
  const mp_bitcnt_t saved = mpf_get_default_prec();
  mpf_set_default_prec(bits);
  std::vector<double> beta(order + 1, 0.0);
  try {
    std::vector<mpf_class> wide;
    wide.reserve(alpha.size());
    for (double c : alpha) wide.emplace_back(c, bits);
    auto out = revert(wide, order);
    for (std::size_t i = 0; i <= order; ++i) beta[i] = out[i].get_d();
  } catch (...) {
    mpf_set_default_prec(saved);
    throw;
  }
  mpf_set_default_prec(saved);
  return beta;
}

Parity inverse_parity(Parity p) { return p == Parity::odd ? Parity::odd : Parity::none; }

}  // namespace

RationalSeries invert_series(const RationalSeries& alpha, std::size_t order) {
  check_invertible(alpha, order);
  return RationalSeries(revert(alpha.coeffs(), order), inverse_parity(alpha.parity()));
}

FloatSeries invert_series(const FloatSeries& alpha, std::size_t order, std::size_t max_order) {
  check_invertible(alpha, order);
  if (order > max_order) {
    throw DomainError("numeric inversion order " + std::to_string(order) + " exceeds cap " +
                      std::to_string(max_order));
  }
  std::vector<double> beta = revert_wide(alpha.coeffs(), order);
  if (alpha.parity() == Parity::odd) {
    for (std::size_t i = 0; i < beta.size(); i += 2) beta[i] = 0.0;
  }
  return FloatSeries(std::move(beta), inverse_parity(alpha.parity()));
}

FloatSeries invert_scaled(const RationalSeries& q, double scale, std::size_t order) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("scale must be positive");
  RationalSeries exact = invert_series(q, order);
  std::vector<double> beta(order + 1, 0.0);
  for (std::size_t n = 1; n <= order; ++n) {
    beta[n] = exact[n].get_d() / std::pow(scale, static_cast<double>(n));
  }
  return FloatSeries(std::move(beta), exact.parity());
}

std::vector<SymbolicPolynomial> invert_series_symbolic(std::size_t order, std::size_t max_order) {
  if (order < 1) throw DomainError("inversion order must be at least 1");
  if (order > max_order) {
    throw DomainError("symbolic inversion order " + std::to_string(order) + " exceeds cap " +
                      std::to_string(max_order));
  }
  std::vector<SymbolicPolynomial> out;
  out.reserve(order);

  // n = 1: beta_1 alpha_1 = 1.
  SymbolicPolynomial one(order);
  one.add_term(SymbolicPolynomial::Exponents(order, 0), 1);
  out.push_back(one);

  for (std::size_t n = 2; n <= order; ++n) {
    // n beta_n alpha_1^{2n-1} = sum_k (-1)^k C(n-1+k,k) alpha_1^{n-1-k} B°_{n-1,k}(alpha_2, ...)
    SymbolicPolynomial acc(order);
    for (std::size_t k = 1; k <= n - 1; ++k) {
      auto bell = bell_symbolic(static_cast<unsigned>(n - 1), static_cast<unsigned>(k),
                                static_cast<unsigned>(max_order));
      // x_i -> alpha_{i+1}
      auto term = bell.shifted(1, order);
      Rational c = binomial(static_cast<unsigned>(n - 1 + k), static_cast<unsigned>(k)) /
                   Rational(static_cast<long>(n));
      if (k % 2 == 1) c = -c;
      term *= c;
      if (n - 1 - k > 0) term.multiply_monomial(1, static_cast<unsigned>(n - 1 - k));
      acc += term;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

FloatSeries to_float(const RationalSeries& s) {
  std::vector<double> c;
  c.reserve(s.order() + 1);
  for (const auto& v : s.coeffs()) c.push_back(v.get_d());
  return FloatSeries(std::move(c), s.parity());
}

double eval(const FloatSeries& s, double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("series evaluation requires |x| <= 1");
  const auto& c = s.coeffs();
  double sum = c.back();
  double comp = 0.0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    double prod = sum * x;
    double prod_err = std::fma(sum, x, -prod);
    double next = prod + c[i];
    double z = next - prod;
    double sum_err = (prod - (next - z)) + (c[i] - z);
    comp = comp * x + (prod_err + sum_err);
    sum = next;
  }
  return sum + comp;
}

Rational eval(const RationalSeries& s, const Rational& x) {
  if (abs(x) > 1) throw DomainError("series evaluation requires |x| <= 1");
  const auto& c = s.coeffs();
  Rational sum = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) sum = sum * x + c[i];
  return sum;
}

double eval_derivative(const FloatSeries& s, double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("series evaluation requires |x| <= 1");
  const auto& c = s.coeffs();
  if (c.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = c.size() - 1; i >= 1; --i) sum = sum * x + static_cast<double>(i) * c[i];
  return sum;
}

RootResult solve_unit_level(const FloatSeries& f, double tol) {
  for (double c : f.coeffs()) {
    if (c < 0.0) throw DomainError("unit-level solve needs non-negative coefficients");
  }
  const double at_zero = f[0];
  if (at_zero >= 1.0) throw DomainError("unit-level solve needs f(0) < 1");
  const double at_one = eval(f, 1.0);
  if (at_one < 1.0 - tol) {
    throw NoRootError("f(1) = " + std::to_string(at_one) + " < 1: no root of f(r) = 1 in (0, 1]",
                      at_one);
  }
  RootResult res;
  if (at_one - 1.0 <= tol) {
    res.r = 1.0;
    res.residual = at_one - 1.0;
    res.degenerate = true;
    return res;
  }
  double lo = 0.0, hi = 1.0;
  while (res.iterations < 200) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++res.iterations;
    if (eval(f, mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double flo = eval(f, lo) - 1.0, fhi = eval(f, hi) - 1.0;
  res.r = std::abs(flo) <= std::abs(fhi) ? lo : hi;
  res.residual = std::abs(flo) <= std::abs(fhi) ? flo : fhi;
  if (std::abs(res.residual) > tol) {
    throw ConvergenceError("bisection stalled with |f(r) - 1| = " +
                               std::to_string(std::abs(res.residual)),
                           std::abs(res.residual));
  }
  return res;
}

}  // namespace gtbound
