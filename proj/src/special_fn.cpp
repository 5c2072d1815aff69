#include "gtbound/special_fn.hpp"

#include "gtbound/error.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace gtbound {

namespace {

constexpr double kPi = std::numbers::pi;

bool non_positive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

// sum_n prod(upper)_n / prod(lower)_n z^n / n!
template <std::size_t P, std::size_t Q>
double hypergeometric_series(const double (&upper)[P], const double (&lower)[Q], double z,
                             const char* name) {
  for (double c : lower) {
    if (non_positive_integer(c)) {
      throw DomainError(std::string(name) + ": lower parameter is a non-positive integer");
    }
  }
  double term = 1.0;
  double sum = 1.0;
  int small_streak = 0;
  for (long n = 0; n < kHypergeometricMaxTerms; ++n) {
    double ratio = z / static_cast<double>(n + 1);
    for (double a : upper) ratio *= a + static_cast<double>(n);
    for (double c : lower) ratio /= c + static_cast<double>(n);
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) < 1e-16 * std::abs(sum)) {
      // two consecutive tiny terms guards against a transient dip
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw ConvergenceError(std::string(name) + ": no convergence after " +
                             std::to_string(kHypergeometricMaxTerms) +
                             " terms (partial sum " + std::to_string(sum) + ")",
                         std::abs(term));
}

}  // namespace

double reference::sinh_half_pi() { return std::sinh(kPi / 2.0); }
double reference::krivine() { return kPi / (2.0 * std::log(1.0 + std::sqrt(2.0))); }

double gamma_fn(double x) {
  if (non_positive_integer(x)) throw DomainError("Gamma has a pole at non-positive integers");
  return std::tgamma(x);
}

double hyp2f1(double a, double b, double c, double z) {
  if (non_positive_integer(c)) throw DomainError("2F1: c is a non-positive integer");
  if (!(std::abs(z) <= 1.0)) throw DomainError("2F1: |z| must not exceed 1");
  if (z == 0.0) return 1.0;
  if (z == 1.0) {
    if (!(c - a - b > 0.0)) throw DomainError("2F1 diverges at z = 1 unless c - a - b > 0");
    if (non_positive_integer(c - a) || non_positive_integer(c - b)) return 0.0;
    return gamma_fn(c) * gamma_fn(c - a - b) / (gamma_fn(c - a) * gamma_fn(c - b));
  }
  if (z == -1.0 && !(c - a - b > -1.0)) {
    throw DomainError("2F1 diverges at z = -1 unless c - a - b > -1");
  }
  if (z < -0.5) {
    // Pfaff: (1 - z)^{-a} 2F1(a, c - b; c; z / (z - 1))
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hyp2f1(a, c - b, c, w);
  }
  const double upper[2] = {a, b};
  const double lower[1] = {c};
  return hypergeometric_series(upper, lower, z, "2F1");
}

double hyp3f2(double a1, double a2, double a3, double b1, double b2, double z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("3F2: requires |z| < 1");
  const double upper[3] = {a1, a2, a3};
  const double lower[2] = {b1, b2};
  return hypergeometric_series(upper, lower, z, "3F2");
}

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_cdf_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal quantile needs 0 < p < 1");
  if (p == 0.5) return 0.0;
  double x = -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
  // One Newton step; use the smaller tail to keep the residual accurate.
  const double resid =
      x < 0.0 ? norm_cdf(x) - p : (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
  double pdf = norm_pdf(x);
  if (pdf > 0.0) x -= resid / pdf;
  return x;
}

double hermite_orthonormal(unsigned n, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (unsigned k = 1; k < n; ++k) {
    double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                  std::sqrt(static_cast<double>(k + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_orthonormal_all(unsigned n, double x) {
  std::vector<double> h(n + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = x;
  for (unsigned k = 1; k < n; ++k) {
    h[k + 1] = (x * h[k] - std::sqrt(static_cast<double>(k)) * h[k - 1]) /
               std::sqrt(static_cast<double>(k + 1));
  }
  return h;
}

double double_factorial(int n) {
  if (n < -1) throw DomainError("double factorial defined for n >= -1");
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

double grothendieck_h(double rho) {
  if (!(std::abs(rho) <= 1.0)) throw DomainError("grothendieck_h needs |rho| <= 1");
  return 2.0 / kPi * std::asin(rho);
}

double grothendieck_h_hypergeometric(double rho) {
  if (!(std::abs(rho) <= 1.0)) throw DomainError("grothendieck_h needs |rho| <= 1");
  return 2.0 / kPi * rho * hyp2f1(0.5, 0.5, 1.5, rho * rho);
}

double haagerup_h(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("haagerup_h needs 0 <= t <= 1");
  return kPi / 4.0 * t * hyp2f1(0.5, 0.5, 2.0, t * t);
}

std::complex<double> haagerup_h(std::complex<double> z) {
  const double t = std::abs(z);
  if (t > 1.0 + 1e-15) throw DomainError("haagerup_h needs |z| <= 1");
  return kPi / 4.0 * z * hyp2f1(0.5, 0.5, 2.0, std::min(1.0, t * t));
}

double moment_c_minus(int d, int m) {
  return 2.0 / std::sqrt(kPi) * std::pow(std::tgamma((d + 1) / 2.0), 2) *
         std::tgamma((m + 2) / 2.0) / (std::tgamma(d / 2.0) * std::tgamma((m + d + 1) / 2.0));
}

double moment_c_plus(int d, int m) {
  return std::tgamma(d / 2.0) * std::tgamma((m + 1) / 2.0) /
         (std::sqrt(kPi) * std::tgamma((m + d) / 2.0));
}

double moment_c_d(int d) {
  return 2.0 / d * std::pow(std::tgamma((d + 1) / 2.0) / std::tgamma(d / 2.0), 2);
}

double moment_closed_form(int d, int m, double rho) {
  if (d < 1 || m < 1) throw DomainError("moment_closed_form needs d >= 1 and m >= 1");
  if (!(std::abs(rho) < 1.0)) throw DomainError("moment_closed_form needs |rho| < 1");
  const double z = rho * rho;
  const double damp = std::pow(1.0 - z, d / 2.0);
  double value;
  if (m % 2 == 1) {
    value = moment_c_minus(d, m) * damp * rho *
            hyp3f2((d + 1) / 2.0, (d + 1) / 2.0, (m + 2) / 2.0, 1.5, (m + d + 1) / 2.0, z);
  } else {
    value = moment_c_plus(d, m) * damp *
            hyp3f2(d / 2.0, d / 2.0, (m + 1) / 2.0, 0.5, (m + d) / 2.0, z);
  }
  if (std::abs(value) > 1.0 + 1e-10) {
    throw ConvergenceError("moment closed form left [-1, 1]: " + std::to_string(value),
                           std::abs(value) - 1.0);
  }
  return std::clamp(value, -1.0, 1.0);
}

}  // namespace gtbound
