#pragma once

#include "gtbound/bound_pipeline.hpp"
#include "gtbound/concepts.hpp"
#include "gtbound/gaussian_oracle.hpp"
#include "gtbound/power_series.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace gtbound {

inline constexpr const char* kBoundReportSchema = "gtbound.bound_report/1";

using AnySeries = std::variant<RationalSeries, FloatSeries>;

/// {"order": N, "kind": "rational" | "float", "coeffs": [...]}, rationals as "p/q".
nlohmann::json series_to_json(const RationalSeries& s);
nlohmann::json series_to_json(const FloatSeries& s);
AnySeries series_from_json(const nlohmann::json& j);

nlohmann::json alpha_to_json(const AlphaSequence& a);
nlohmann::json report_to_json(const BoundReport& r);
/// (N, r_N, 1/r_N) rows with a header line.
std::string roots_to_csv(const BoundReport& r);

nlohmann::json estimate_to_json(const McEstimate& e, double closed_form);
nlohmann::json estimate_to_json(const ComplexMcEstimate& e, std::complex<double> closed_form);

/// Structural check of a bound report document; returns an empty string
/// when valid, otherwise the first problem found.
std::string validate_report_json(const nlohmann::json& j);

}  // namespace gtbound
