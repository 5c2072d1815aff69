#pragma once

#include "gtbound/concepts.hpp"
#include "gtbound/power_series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gtbound {

/// K_G^R <= pi / (2 ln(1 + sqrt 2)), the sign-concept bound.
double krivine_reference();

struct ConditionFlags {
  bool h_zero_at_0 = false;
  bool h_monotone_numeric = false;
  bool ra_beta_real = true;  // always true for real concepts
  bool invertible = false;   // alpha_1 != 0
  bool pi1_satisfied = false;
};

struct WorkflowCheck {
  ConditionFlags flags;
  double min_derivative = 0.0;  // smallest h'(x) on the sampling grid
  double l1_partial = 0.0;      // sum_{n<=N} |beta_n|, when invertible
  std::string inverted_object;  // "h" or "psi" (Pearson-normalised)
  std::vector<std::string> diagnostics;
};

/// Diagnostics for the workflow preconditions at truncation order N >= 3.
/// Never throws for failed conditions; they are reported in the flags.
WorkflowCheck check_workflow_conditions(const ConceptSpec& spec, std::size_t order);

struct RootPoint {
  std::size_t order = 0;
  double r = 0.0;
};

struct BoundReport {
  ConceptSpec spec;
  std::size_t order = 0;
  double tol = 0.0;
  AlphaSequence alpha;
  FloatSeries h;     // the series that was inverted
  FloatSeries beta;  // g = h^{-1}
  double l1_partial = 0.0;
  std::vector<RootPoint> roots;  // r_n for every order n whose majorant reaches 1
  bool roots_monotone = true;
  std::optional<double> r_star;
  std::optional<double> bound;  // 1 / r_star
  ConditionFlags flags;
  std::string inverted_object;
  bool exact_inversion = false;  // beta from exact rational reversion
  std::vector<std::string> diagnostics;
  std::string tail_note;
};

/// Runs concept -> alpha -> h -> beta = h^{-1} -> f = |beta| -> f(r) = 1 -> 1/r.
/// Requires N >= 5. A failed (PI(1)) or (H) condition yields a report without
/// a bound rather than an exception; degenerate concepts throw.
BoundReport compute_upper_bound(const ConceptSpec& spec, std::size_t order, double tol = 1e-10);

}  // namespace gtbound
