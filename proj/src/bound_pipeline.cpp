#include "gtbound/bound_pipeline.hpp"

#include "gtbound/error.hpp"
#include "gtbound/special_fn.hpp"

#include <cmath>
#include <sstream>

namespace gtbound {

namespace {

constexpr int kMonotoneGrid = 100;

double min_derivative_on_grid(const FloatSeries& h) {
  double lo = INFINITY;
  for (int i = 0; i < kMonotoneGrid; ++i) {
    const double x = -1.0 + 2.0 * (i + 0.5) / kMonotoneGrid;
    lo = std::min(lo, eval_derivative(h, x));
  }
  return lo;
}

FloatSeries inverse_of(const AlphaSequence& alpha, const FloatSeries& h, std::size_t order,
                       bool* exact) {
  if (alpha.exact_unit && !is_pearson_normalized(alpha)) {
    *exact = true;
    return invert_scaled(alpha.exact_unit->truncated(order), alpha.exact_scale, order);
  }
  *exact = false;
  return invert_series(h, order);
}

double l1(const FloatSeries& s) {
  double sum = 0.0;
  for (double c : s.coeffs()) sum += std::abs(c);
  return sum;
}

}  // namespace

double krivine_reference() { return reference::krivine(); }

WorkflowCheck check_workflow_conditions(const ConceptSpec& spec, std::size_t order) {
  if (order < 3) throw DomainError("workflow check needs N >= 3");
  WorkflowCheck out;
  auto alpha = alpha_coeffs(spec, order);
  auto h = h_series(alpha);
  out.inverted_object = is_pearson_normalized(alpha) ? "psi" : "h";

  out.flags.h_zero_at_0 = std::abs(h[0]) <= 1e-15;
  out.min_derivative = min_derivative_on_grid(h);
  out.flags.h_monotone_numeric = out.min_derivative > 0.0;
  out.flags.ra_beta_real = true;
  out.flags.invertible = h[1] != 0.0;

  if (!out.flags.h_zero_at_0) out.diagnostics.push_back("(H) fails: h(0) != 0");
  if (!out.flags.h_monotone_numeric) {
    out.diagnostics.push_back("(H) fails numerically: h'(x) <= 0 somewhere on the grid");
  }
  if (!out.flags.invertible) {
    out.diagnostics.push_back("inversion impossible: alpha_1 = h'(0) = 0");
    return out;
  }
  bool exact = false;
  auto beta = inverse_of(alpha, h, order, &exact);
  out.l1_partial = l1(beta);
  out.flags.pi1_satisfied = out.l1_partial > 1.0;
  if (!out.flags.pi1_satisfied) {
    out.diagnostics.push_back("(PI(1)) fails at this order: sum |beta_n| <= 1");
  }
  out.diagnostics.push_back(
      "homeomorphism checked only as h' > 0 on a grid; l1 summability of beta is not certified");
  return out;
}

BoundReport compute_upper_bound(const ConceptSpec& spec, std::size_t order, double tol) {
  if (order < 5) throw DomainError("compute_upper_bound needs N >= 5");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  BoundReport rep;
  rep.spec = spec;
  rep.order = order;
  rep.tol = tol;
  rep.alpha = alpha_coeffs(spec, order);
  rep.h = h_series(rep.alpha);  // throws DegenerateConcept
  rep.inverted_object = is_pearson_normalized(rep.alpha) ? "psi" : "h";

  auto check = check_workflow_conditions(spec, order);
  rep.flags = check.flags;
  rep.diagnostics = check.diagnostics;
  rep.tail_note =
      "The truncated majorant lies below the full one, so r_N >= r* and 1/r_N under-reports the "
      "bound; the value is certified only in the limit N -> infinity or with a tail majorant.";

  if (!rep.flags.invertible || !rep.flags.h_zero_at_0) return rep;

  rep.beta = inverse_of(rep.alpha, rep.h, order, &rep.exact_inversion);
  rep.l1_partial = l1(rep.beta);
  const FloatSeries f = abs_series(rep.beta);

  for (std::size_t n = 1; n <= order; ++n) {
    auto fn = f.truncated(n);
    try {
      auto root = solve_unit_level(fn, tol);
      if (!root.degenerate) rep.roots.push_back({n, root.r});
    } catch (const NoRootError&) {
    }
  }
  for (std::size_t i = 1; i < rep.roots.size(); ++i) {
    if (rep.roots[i].r > rep.roots[i - 1].r) rep.roots_monotone = false;
  }

  try {
    auto root = solve_unit_level(f, tol);
    if (root.degenerate) {
      rep.flags.pi1_satisfied = false;
      rep.diagnostics.push_back("(PI(1)) degenerate: f(r) = 1 only at r = 1");
      return rep;
    }
    rep.flags.pi1_satisfied = true;
    rep.r_star = root.r;
    rep.bound = 1.0 / root.r;
  } catch (const NoRootError& e) {
    rep.flags.pi1_satisfied = false;
    std::ostringstream msg;
    msg << "(PI(1)) fails: f(1) = " << e.value_at_one() << " < 1 at order " << order;
    rep.diagnostics.push_back(msg.str());
  }
  return rep;
}

}  // namespace gtbound
