#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "asymkit/error.hpp"
#include "asymkit/puiseux.hpp"

namespace asymkit {

/// {"variable", "theta_squared", "trunc", "terms": [{"exp", "a", "b"}...]},
/// every number an exact "p/q" string; trunc is "inf" for exact series.
nlohmann::json series_to_json(const PuiseuxSeries& s);
/// Inverse of series_to_json; malformed input raises Errc::configuration.
PuiseuxSeries series_from_json(const nlohmann::json& j);

/// {"error": code, "message": text} on one line.
std::string error_json(Errc code, const std::string& message);

}  // namespace asymkit
