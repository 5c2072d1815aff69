#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace gtbound {

/// Literature values kept for comparison and bracketing.
namespace reference {
inline constexpr double little_gt_real = std::numbers::pi / 2.0;     // k_G^R
inline constexpr double little_gt_complex = 4.0 / std::numbers::pi;  // k_G^C
inline constexpr double complex_lower_shift = 8.0 / std::numbers::pi - 1.0;
double sinh_half_pi();  // sinh(pi/2), upper end of the K* bracket
double krivine();       // pi / (2 ln(1 + sqrt 2))
}  // namespace reference

inline constexpr long kHypergeometricMaxTerms = 10'000'000;

/// Gauss hypergeometric 2F1(a, b; c; z) for real |z| <= 1. At z = 1 uses
/// Gauss summation (requires c - a - b > 0); for z < -1/2 uses the Pfaff
/// transformation onto z / (z - 1).
double hyp2f1(double a, double b, double c, double z);

/// 3F2(a1, a2, a3; b1, b2; z) by direct summation, |z| < 1.
double hyp3f2(double a1, double a2, double a3, double b1, double b2, double z);

double gamma_fn(double x);

double norm_pdf(double x);
double norm_cdf(double x);
/// Standard normal quantile, 0 < p < 1.
double norm_cdf_inv(double p);

/// Orthonormal probabilists' Hermite polynomial He_n(x) / sqrt(n!).
double hermite_orthonormal(unsigned n, double x);
/// H_0(x) .. H_n(x) in one recurrence sweep.
std::vector<double> hermite_orthonormal_all(unsigned n, double x);

/// (2n-1)!! for n >= 0 as a double ((-1)!! = 1).
double double_factorial(int n);

/// E[sign(X) sign(Y)] for rho-correlated standard normals: (2/pi) arcsin(rho).
double grothendieck_h(double rho);
/// Same identity evaluated through (2/pi) rho 2F1(1/2, 1/2; 3/2; rho^2).
double grothendieck_h_hypergeometric(double rho);
/// (pi/4) t 2F1(1/2, 1/2; 2; t^2) for 0 <= t <= 1.
double haagerup_h(double t);
/// Complex form: (pi/4) z 2F1(1/2, 1/2; 2; |z|^2).
std::complex<double> haagerup_h(std::complex<double> z);

double moment_c_minus(int d, int m);
double moment_c_plus(int d, int m);
/// (2/d) Gamma((d+1)/2)^2 / Gamma(d/2)^2.
double moment_c_d(int d);

/// E[<X/|X|, Y/|Y|>^m] for X, Y in R^d with coordinatewise correlation rho,
/// rho in (-1, 1).
double moment_closed_form(int d, int m, double rho);

}  // namespace gtbound
