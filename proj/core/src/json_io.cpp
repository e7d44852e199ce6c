#include "asymkit/json_io.hpp"

namespace asymkit {

nlohmann::json series_to_json(const PuiseuxSeries& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : s.terms()) {
    terms.push_back({{"exp", e.to_string()}, {"a", format_rational(c.a())}, {"b", format_rational(c.b())}});
  }
  return {{"variable", s.variable()},
          {"theta_squared", format_rational(s.theta_squared())},
          {"trunc", s.trunc().to_string()},
          {"terms", terms}};
}

PuiseuxSeries series_from_json(const nlohmann::json& j) {
  try {
    const Rational d = parse_rational(j.at("theta_squared").get<std::string>());
    const std::string trunc_text = j.at("trunc").get<std::string>();
    const Exponent trunc = trunc_text == "inf" ? Exponent::infinity()
                                               : Exponent::from_rational(parse_rational(trunc_text));
    PuiseuxSeries s(j.at("variable").get<std::string>(), d, trunc);
    for (const auto& t : j.at("terms")) {
      const Exponent e = Exponent::from_rational(parse_rational(t.at("exp").get<std::string>()));
      const Scalar c(parse_rational(t.at("a").get<std::string>()),
                     parse_rational(t.at("b").get<std::string>()), d);
      if (c.is_zero()) throw Error(Errc::configuration, "series JSON stores a zero coefficient");
      s.set_coefficient(e, c);
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::configuration, std::string("malformed series JSON: ") + e.what());
  }
}

std::string error_json(Errc code, const std::string& message) {
  return nlohmann::json{{"error", std::string(to_string(code))}, {"message", message}}.dump();
}

}  // namespace asymkit
