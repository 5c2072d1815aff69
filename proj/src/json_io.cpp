#include "gtbound/json_io.hpp"

#include "gtbound/error.hpp"

#include <cmath>
#include <sstream>

namespace gtbound {

namespace {

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::odd: return "odd";
    case Parity::even: return "even";
    default: return "none";
  }
}

Parity parity_from(const nlohmann::json& j) {
  if (!j.contains("parity")) return Parity::none;
  auto s = j.at("parity").get<std::string>();
  if (s == "odd") return Parity::odd;
  if (s == "even") return Parity::even;
  if (s == "none") return Parity::none;
  throw DomainError("unknown parity '" + s + "'");
}

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json series_to_json(const RationalSeries& s) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& q : s.coeffs()) c.push_back(to_string(q));
  return {{"order", s.order()}, {"kind", "rational"}, {"parity", parity_name(s.parity())},
          {"coeffs", c}};
}

nlohmann::json series_to_json(const FloatSeries& s) {
  return {{"order", s.order()}, {"kind", "float"}, {"parity", parity_name(s.parity())},
          {"coeffs", s.coeffs()}};
}

AnySeries series_from_json(const nlohmann::json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.empty()) throw DomainError("coeffs must be a non-empty array");
    const auto order = j.contains("order") ? j.at("order").get<std::size_t>() : coeffs.size() - 1;
    if (order + 1 != coeffs.size()) {
      throw DomainError("order " + std::to_string(order) + " does not match " +
                        std::to_string(coeffs.size()) + " coefficients");
    }
    const Parity parity = parity_from(j);
    if (kind == "rational") {
      std::vector<Rational> c;
      for (const auto& v : coeffs) {
        c.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                  : parse_rational(std::to_string(v.get<long long>())));
      }
      return RationalSeries(std::move(c), parity);
    }
    if (kind == "float") {
      return FloatSeries(coeffs.get<std::vector<double>>(), parity);
    }
    throw DomainError("series kind must be 'rational' or 'float'");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed series JSON: ") + e.what());
  }
}

nlohmann::json alpha_to_json(const AlphaSequence& a) {
  nlohmann::json j = {
      {"concept", a.spec.label()},
      {"coefficient_source",
       a.spec.source == CoefficientSource::closed_form ? "closed_form" : "quadrature"},
      {"order", a.order()},
      {"alpha0", a.alpha0()},
      {"alpha", a.alpha},
      {"parseval_sum", a.parseval_sum()},
      {"quadrature_residual", a.quadrature_residual},
  };
  if (a.exact_unit) {
    j["exact"] = {{"scale", a.exact_scale},
                  {"scale_symbol", "2/pi"},
                  {"unit", series_to_json(*a.exact_unit)}};
  }
  return j;
}

nlohmann::json report_to_json(const BoundReport& r) {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& p : r.roots) {
    roots.push_back({{"order", p.order}, {"r", p.r}, {"bound", 1.0 / p.r}});
  }
  return {
      {"schema", kBoundReportSchema},
      {"concept", r.spec.label()},
      {"order", r.order},
      {"tol", r.tol},
      {"inverted_object", r.inverted_object},
      {"exact_inversion", r.exact_inversion},
      {"alpha", alpha_to_json(r.alpha)},
      {"h", series_to_json(r.h)},
      {"beta", series_to_json(r.beta)},
      {"l1_partial", r.l1_partial},
      {"roots", roots},
      {"roots_monotone", r.roots_monotone},
      {"r_star", r.r_star ? nlohmann::json(*r.r_star) : nlohmann::json(nullptr)},
      {"bound", r.bound ? nlohmann::json(*r.bound) : nlohmann::json(nullptr)},
      {"krivine_reference", krivine_reference()},
      {"outcome", r.bound ? "bound" : "no_bound"},
      {"condition_flags",
       {{"H_zero_at_0", r.flags.h_zero_at_0},
        {"H_monotone_numeric", r.flags.h_monotone_numeric},
        {"RA_beta_real", r.flags.ra_beta_real},
        {"invertible", r.flags.invertible},
        {"PI1_satisfied", r.flags.pi1_satisfied}}},
      {"diagnostics", r.diagnostics},
      {"tail_note", r.tail_note},
  };
}

std::string roots_to_csv(const BoundReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "order,r,bound\n";
  for (const auto& p : r.roots) out << p.order << "," << p.r << "," << 1.0 / p.r << "\n";
  return out.str();
}

nlohmann::json estimate_to_json(const McEstimate& e, double closed_form) {
  return {{"mean", e.mean},
          {"std_error", e.std_error},
          {"n", e.n_samples},
          {"seed", e.seed},
          {"closed_form", closed_form},
          {"z_score", number_or_null(e.z_score(closed_form))}};
}

nlohmann::json estimate_to_json(const ComplexMcEstimate& e, std::complex<double> closed_form) {
  return {{"mean", {e.re.mean, e.im.mean}},
          {"std_error", {e.re.std_error, e.im.std_error}},
          {"n", e.re.n_samples},
          {"seed", e.re.seed},
          {"closed_form", {closed_form.real(), closed_form.imag()}},
          {"z_score",
           {number_or_null(e.re.z_score(closed_form.real())),
            number_or_null(e.im.z_score(closed_form.imag()))}}};
}

std::string validate_report_json(const nlohmann::json& j) {
  if (!j.is_object()) return "report must be an object";
  if (j.value("schema", "") != kBoundReportSchema) return "schema tag missing or wrong";
  for (const char* key : {"concept", "inverted_object", "outcome", "tail_note"}) {
    if (!j.contains(key) || !j[key].is_string()) return std::string(key) + " must be a string";
  }
  for (const char* key : {"order", "tol", "l1_partial", "krivine_reference"}) {
    if (!j.contains(key) || !j[key].is_number()) return std::string(key) + " must be a number";
  }
  for (const char* key : {"r_star", "bound"}) {
    if (!j.contains(key) || !(j[key].is_number() || j[key].is_null())) {
      return std::string(key) + " must be a number or null";
    }
  }
  if (!j.contains("roots") || !j["roots"].is_array()) return "roots must be an array";
  for (const auto& p : j["roots"]) {
    if (!p.contains("order") || !p.contains("r") || !p.contains("bound")) {
      return "root entries need order, r and bound";
    }
  }
  if (!j.contains("condition_flags") || !j["condition_flags"].is_object()) {
    return "condition_flags must be an object";
  }
  for (const char* key : {"H_zero_at_0", "H_monotone_numeric", "RA_beta_real", "PI1_satisfied"}) {
    if (!j["condition_flags"].contains(key) || !j["condition_flags"][key].is_boolean()) {
      return std::string("condition flag ") + key + " must be boolean";
    }
  }
  for (const char* key : {"alpha", "h", "beta"}) {
    if (!j.contains(key) || !j[key].is_object()) return std::string(key) + " must be an object";
  }
  const bool has_bound = j["bound"].is_number();
  if (has_bound != (j["outcome"] == "bound")) return "outcome disagrees with bound";
  if (has_bound) {
    const double b = j["bound"].get<double>();
    const double r = j["r_star"].get<double>();
    if (!(r > 0.0 && r < 1.0)) return "r_star must lie in (0, 1)";
    if (std::abs(b * r - 1.0) > 1e-12) return "bound must equal 1 / r_star";
  }
  return {};
}

}  // namespace gtbound
