#include "gtbound/concepts.hpp"

#include "gtbound/error.hpp"
#include "gtbound/special_fn.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gtbound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTail = 12.0;  // phi(12) ~ 1e-32; Hermite functions are negligible beyond
constexpr double kQuadratureTol = 1e-10;
constexpr std::size_t kMaxPanels = 1u << 16;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("threshold level p must lie in (0, 1)");
}

TabulatedConcept as_steps(const ConceptSpec& spec) {
  return std::visit(
      overloaded{[](const SignConcept&) { return TabulatedConcept{{0.0}, {-1, 1}}; },
                 [](const ThresholdConcept& t) {
                   check_p(t.p);
                   return TabulatedConcept{{norm_cdf_inv(t.p)}, {-1, 1}};
                 },
                 [](const TabulatedConcept& t) { return t; }},
      spec.kind);
}

void validate(const TabulatedConcept& t) {
  if (t.values.size() != t.breakpoints.size() + 1) {
    throw DomainError("tabulated concept needs one more value than breakpoints");
  }
  for (int v : t.values) {
    if (v != 1 && v != -1) throw DomainError("tabulated concept values must be +1 or -1");
  }
  for (std::size_t i = 0; i < t.breakpoints.size(); ++i) {
    if (!std::isfinite(t.breakpoints[i])) throw DomainError("breakpoints must be finite");
    if (i > 0 && !(t.breakpoints[i] > t.breakpoints[i - 1])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }
}

// <b, H_n> via the antiderivative of H_n phi: for n >= 1 the integral over
// (a, b) is (H_{n-1}(a) phi(a) - H_{n-1}(b) phi(b)) / sqrt(n), so only the
// jumps of b contribute.
std::vector<double> closed_form_coefficients(const TabulatedConcept& t, std::size_t order) {
  std::vector<double> c(order + 1, 0.0);
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    double lo = i == 0 ? 0.0 : norm_cdf(t.breakpoints[i - 1]);
    double hi = i == t.breakpoints.size() ? 1.0 : norm_cdf(t.breakpoints[i]);
    c[0] += t.values[i] * (hi - lo);
  }
  for (std::size_t j = 0; j < t.breakpoints.size(); ++j) {
    const double x = t.breakpoints[j];
    const double jump = t.values[j + 1] - t.values[j];
    if (jump == 0.0 || order == 0) continue;
    auto h = hermite_orthonormal_all(static_cast<unsigned>(order - 1), x);
    const double w = jump * norm_pdf(x);
    for (std::size_t n = 1; n <= order; ++n) {
      c[n] += w * h[n - 1] / std::sqrt(static_cast<double>(n));
    }
  }
  return c;
}

// Composite 20-point Gauss-Legendre over every constant piece of b, truncated
// to [-kTail, kTail], with all H_n evaluated in one sweep per node.
std::vector<double> composite_quadrature(const TabulatedConcept& t, std::size_t order,
                                         std::size_t panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();

  std::vector<double> c(order + 1, 0.0);
  const double span = 2.0 * kTail;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    double lo = i == 0 ? -kTail : std::max(-kTail, t.breakpoints[i - 1]);
    double hi = i == t.breakpoints.size() ? kTail : std::min(kTail, t.breakpoints[i]);
    if (!(hi > lo)) continue;
    auto piece_panels =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(panels * (hi - lo) / span)));
    const double width = (hi - lo) / static_cast<double>(piece_panels);
    for (std::size_t k = 0; k < piece_panels; ++k) {
      const double mid = lo + (k + 0.5) * width;
      const double half = 0.5 * width;
      for (std::size_t q = 0; q < nodes.size(); ++q) {
        for (double sgn : {-1.0, 1.0}) {
          const double x = mid + sgn * half * nodes[q];
          const double w = t.values[i] * half * weights[q] * norm_pdf(x);
          auto h = hermite_orthonormal_all(static_cast<unsigned>(order), x);
          for (std::size_t n = 0; n <= order; ++n) c[n] += w * h[n];
        }
      }
    }
  }
  return c;
}

std::vector<double> quadrature_coefficients(const TabulatedConcept& t, std::size_t order,
                                            double* residual) {
  std::size_t panels = 26;  // ~512 nodes to start
  auto prev = composite_quadrature(t, order, panels);
  double change = 0.0;
  while (panels < kMaxPanels) {
    panels *= 2;
    auto next = composite_quadrature(t, order, panels);
    change = 0.0;
    for (std::size_t n = 0; n <= order; ++n) change = std::max(change, std::abs(next[n] - prev[n]));
    prev = std::move(next);
    if (change <= kQuadratureTol) {
      if (residual) *residual = change;
      return prev;
    }
  }
  throw ConvergenceError("Hermite coefficient quadrature did not stabilise (last change " +
                             std::to_string(change) + ")",
                         change);
}

RationalSeries sign_unit_coefficients(std::size_t order) {
  // alpha_{2m+1} = (2/pi) ((2m-1)!!)^2 / (2m+1)!; here without the 2/pi.
  std::vector<Rational> q(order + 1, Rational(0));
  Rational odd_df = 1;  // (2m-1)!!
  for (std::size_t m = 0; 2 * m + 1 <= order; ++m) {
    if (m > 0) odd_df *= static_cast<long>(2 * m - 1);
    q[2 * m + 1] = odd_df * odd_df / factorial(static_cast<unsigned>(2 * m + 1));
  }
  return RationalSeries(std::move(q), Parity::odd);
}

}  // namespace

std::string ConceptSpec::label() const {
  return std::visit(overloaded{[](const SignConcept&) { return std::string("sign"); },
                               [](const ThresholdConcept& t) {
                                 std::ostringstream s;
                                 s << "threshold:" << t.p;
                                 return s.str();
                               },
                               [](const TabulatedConcept& t) {
                                 return "tabulated:" + std::to_string(t.breakpoints.size());
                               }},
                    kind);
}

int ConceptSpec::operator()(double x) const {
  auto steps = as_steps(*this);
  auto it = std::upper_bound(steps.breakpoints.begin(), steps.breakpoints.end(), x);
  return steps.values[static_cast<std::size_t>(it - steps.breakpoints.begin())];
}

ConceptSpec parse_concept(const std::string& text) {
  if (text == "sign") return ConceptSpec{SignConcept{}};
  const std::string prefix = "threshold:";
  if (text.rfind(prefix, 0) == 0) {
    double p;
    try {
      std::size_t used = 0;
      p = std::stod(text.substr(prefix.size()), &used);
      if (used != text.size() - prefix.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DomainError("bad threshold level in '" + text + "'");
    }
    check_p(p);
    return ConceptSpec{ThresholdConcept{p}};
  }
  throw DomainError("unknown concept '" + text + "' (expected sign or threshold:p)");
}

double AlphaSequence::parseval_sum() const {
  double s = 0.0;
  for (double a : alpha) s += a;
  return s;
}

std::vector<double> hermite_coefficients(const ConceptSpec& spec, std::size_t order) {
  auto steps = as_steps(spec);
  validate(steps);
  if (spec.source == CoefficientSource::quadrature) {
    return quadrature_coefficients(steps, order, nullptr);
  }
  return closed_form_coefficients(steps, order);
}

AlphaSequence alpha_coeffs(const ConceptSpec& spec, std::size_t order) {
  if (order < 1) throw DomainError("alpha_coeffs needs N >= 1");
  AlphaSequence out;
  out.spec = spec;

  if (spec.source == CoefficientSource::closed_form) {
    if (std::holds_alternative<SignConcept>(spec.kind)) {
      auto unit = sign_unit_coefficients(order);
      out.alpha.resize(order + 1, 0.0);
      for (std::size_t n = 1; n <= order; ++n) out.alpha[n] = 2.0 / kPi * unit[n].get_d();
      out.exact_unit = std::move(unit);
      out.exact_scale = 2.0 / kPi;
      return out;
    }
    if (const auto* t = std::get_if<ThresholdConcept>(&spec.kind)) {
      check_p(t->p);
      const double z = norm_cdf_inv(t->p);
      const double scale = 2.0 / kPi * std::exp(-z * z);
      auto h = hermite_orthonormal_all(static_cast<unsigned>(order - 1), z);
      out.alpha.resize(order + 1, 0.0);
      out.alpha[0] = (2.0 * t->p - 1.0) * (2.0 * t->p - 1.0);
      for (std::size_t n = 1; n <= order; ++n) {
        out.alpha[n] = scale * h[n - 1] * h[n - 1] / static_cast<double>(n);
      }
      return out;
    }
  }

  auto steps = as_steps(spec);
  validate(steps);
  std::vector<double> c;
  if (spec.source == CoefficientSource::quadrature) {
    c = quadrature_coefficients(steps, order, &out.quadrature_residual);
  } else {
    c = closed_form_coefficients(steps, order);
  }
  out.alpha.resize(order + 1);
  for (std::size_t n = 0; n <= order; ++n) out.alpha[n] = c[n] * c[n];
  return out;
}

bool is_pearson_normalized(const AlphaSequence& alpha) { return alpha.alpha0() > 1e-15; }

FloatSeries h_series(const AlphaSequence& alpha) {
  const double a0 = alpha.alpha0();
  std::vector<double> c(alpha.alpha.begin(), alpha.alpha.end());
  c[0] = 0.0;
  if (is_pearson_normalized(alpha)) {
    const double denom = 1.0 - a0;
    if (denom <= 1e-12) {
      throw DegenerateConcept("concept " + alpha.spec.label() +
                              " has |E b| ~ 1; its correlation series is degenerate");
    }
    for (std::size_t n = 1; n < c.size(); ++n) c[n] /= denom;
  }
  bool odd = true;
  for (std::size_t n = 0; n < c.size(); n += 2) odd = odd && c[n] == 0.0;
  return FloatSeries(std::move(c), odd ? Parity::odd : Parity::none);
}

FloatSeries h_series(const ConceptSpec& spec, std::size_t order) {
  return h_series(alpha_coeffs(spec, order));
}

double c_of_p(double p) {
  check_p(p);
  const double z = norm_cdf_inv(p);
  return 2.0 * kPi * p * (1.0 - p) * std::exp(z * z);
}

double c_of_p_partial(double p, std::size_t terms) {
  check_p(p);
  const double z = norm_cdf_inv(p);
  double sum = 1.0;  // n = 0
  double prev = 1.0, cur = z;
  for (std::size_t n = 1; n < terms; ++n) {
    sum += cur * cur / static_cast<double>(n + 1);
    double next = (z * cur - std::sqrt(static_cast<double>(n)) * prev) /
                  std::sqrt(static_cast<double>(n + 1));
    prev = cur;
    cur = next;
  }
  return sum;
}

double psi_eval(double p, double rho, std::size_t terms) {
  check_p(p);
  if (!(std::abs(rho) <= 1.0)) throw DomainError("psi needs |rho| <= 1");
  const double z = norm_cdf_inv(p);
  double sum = 0.0;
  double prev = 0.0, cur = 1.0;  // H_{n-1} with H_{-1} := 0
  double power = 1.0;
  for (std::size_t n = 1; n <= terms; ++n) {
    power *= rho;
    sum += cur * cur * power / static_cast<double>(n);
    if (power == 0.0) break;
    double next = (z * cur - std::sqrt(static_cast<double>(n - 1)) * prev) /
                  std::sqrt(static_cast<double>(n));
    prev = cur;
    cur = next;
  }
  return sum / c_of_p(p);
}

double h_p_eval(double p, double rho, std::size_t terms) {
  check_p(p);
  return (2.0 * p - 1.0) * (2.0 * p - 1.0) + 4.0 * p * (1.0 - p) * psi_eval(p, rho, terms);
}

}  // namespace gtbound
