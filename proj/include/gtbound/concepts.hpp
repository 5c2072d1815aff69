#pragma once

#include "gtbound/power_series.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gtbound {

struct SignConcept {};

/// b_p = 2 * 1[x >= Phi^{-1}(p)] - 1.
struct ThresholdConcept {
  double p = 0.5;
};

/// Step function taking values[i] on (breakpoints[i-1], breakpoints[i]);
/// values has one more entry than breakpoints, each +1 or -1.
struct TabulatedConcept {
  std::vector<double> breakpoints;
  std::vector<int> values;
};

enum class CoefficientSource { closed_form, quadrature };

struct ConceptSpec {
  std::variant<SignConcept, ThresholdConcept, TabulatedConcept> kind;
  CoefficientSource source = CoefficientSource::closed_form;

  /// "sign", "threshold:0.7" or "tabulated:<k breakpoints>".
  std::string label() const;
  /// b(x), with sign(0) = 1.
  int operator()(double x) const;
};

/// Parses "sign" or "threshold:p".
ConceptSpec parse_concept(const std::string& text);

/// Squared Hermite-Fourier coefficients alpha_n = <b, H_n>^2 for n = 0..N.
struct AlphaSequence {
  std::vector<double> alpha;  // alpha[0] is the squared mean term
  ConceptSpec spec;
  /// For concepts whose coefficients are (2/pi) times a rational sequence,
  /// that rational sequence and the scale, so inversion can run exactly.
  std::optional<RationalSeries> exact_unit;
  double exact_scale = 1.0;
  /// Largest change seen at the final quadrature refinement (0 for closed forms).
  double quadrature_residual = 0.0;

  std::size_t order() const noexcept { return alpha.size() - 1; }
  double alpha0() const noexcept { return alpha.front(); }
  double parseval_sum() const;
};

AlphaSequence alpha_coeffs(const ConceptSpec& spec, std::size_t order);

/// <b, H_n> for n = 0..N (signed, before squaring).
std::vector<double> hermite_coefficients(const ConceptSpec& spec, std::size_t order);

/// Series fed to the bound workflow: sum_{n>=1} alpha_n rho^n when alpha_0 = 0,
/// otherwise the Pearson-normalised (h - alpha_0) / (1 - alpha_0).
FloatSeries h_series(const AlphaSequence& alpha);
FloatSeries h_series(const ConceptSpec& spec, std::size_t order);
/// True when h_series divides out a non-zero mean term.
bool is_pearson_normalized(const AlphaSequence& alpha);

/// c(p) = 2 pi p (1 - p) exp(Phi^{-1}(p)^2).
double c_of_p(double p);
/// sum_{n=0}^{N} H_n(Phi^{-1}(p))^2 / (n + 1), the slowly converging series for c(p).
double c_of_p_partial(double p, std::size_t terms);

/// psi(p, p; rho) = (1/c(p)) sum_{n=1}^{N} H_{n-1}(Phi^{-1}(p))^2 rho^n / n.
double psi_eval(double p, double rho, std::size_t terms);
/// E[b_p(X) b_p(Y)] = (2p - 1)^2 + 4p(1 - p) psi(p, p; rho).
double h_p_eval(double p, double rho, std::size_t terms);

}  // namespace gtbound
