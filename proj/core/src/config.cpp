#include "asymkit/config.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "asymkit/error.hpp"

namespace asymkit {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::configuration: return "configuration";
    case Errc::unsupported_scalar: return "unsupported_scalar";
    case Errc::division: return "division";
    case Errc::truncation: return "truncation";
    case Errc::iteration_depth: return "iteration_depth";
    case Errc::degeneracy: return "degeneracy";
    case Errc::divergence: return "divergence";
    case Errc::contour: return "contour";
    case Errc::no_contraction: return "no_contraction";
    case Errc::budget: return "budget";
    case Errc::out_of_regime: return "out_of_regime";
    case Errc::singularity_proximity: return "singularity_proximity";
    case Errc::matching: return "matching";
    case Errc::no_convergence: return "no_convergence";
    case Errc::branch_collision: return "branch_collision";
    case Errc::sampling: return "sampling";
    case Errc::indeterminate_constant: return "indeterminate_constant";
    case Errc::ill_conditioned: return "ill_conditioned";
  }
  return "unknown";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::configuration,
                "setting " + std::string(key) + ": not a number: '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::configuration,
                "setting " + std::string(key) + ": not an integer: '" + std::string(text) + "'");
  }
  return value;
}

int parse_sign(std::string_view key, std::string_view text) {
  const int v = parse_int(key, text);
  if (v != 1 && v != -1) {
    throw Error(Errc::configuration, "setting " + std::string(key) + " must be +1 or -1");
  }
  return v;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  text = trim(text);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return {parse_double("complex", text), 0.0};
  return {parse_double("complex", text.substr(0, comma)),
          parse_double("complex", text.substr(comma + 1))};
}

void SolverConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(Errc::configuration, what);
  };
  require(newton_tol > 0 && quad_tol > 0 && ode_rel_tol > 0 && ode_abs_tol > 0,
          "tolerances must be positive");
  require(grid_m >= 16, "grid_m must be at least 16");
  require(p_max > 0, "p_max must be positive");
  require(eta_max > eta_min && eta_min > 0, "need eta_max > eta_min > 0");
  require(eta_step > 0 && eta_step <= eta_max - eta_min, "need 0 < eta_step <= eta_max - eta_min");
  require(weight_alpha >= 0, "weight_alpha must be non-negative");
  require(max_newton_iterations > 0, "max_newton_iterations must be positive");
  require(wedge_half_width > 0, "wedge_half_width must be positive");
  require(quad_max_subdivisions > 0, "quad_max_subdivisions must be positive");
  require(output_format == "json" || output_format == "csv",
          "output_format must be json or csv");
  if (stokes) require(*stokes != std::complex<double>(0.0), "stokes constant must be nonzero");
}

void apply_setting(SolverConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "newton_tol") cfg.newton_tol = parse_double(key, value);
  else if (key == "quad_tol") cfg.quad_tol = parse_double(key, value);
  else if (key == "ode_rel_tol") cfg.ode_rel_tol = parse_double(key, value);
  else if (key == "ode_abs_tol") cfg.ode_abs_tol = parse_double(key, value);
  else if (key == "p_max") cfg.p_max = parse_double(key, value);
  else if (key == "grid_m") cfg.grid_m = parse_int(key, value);
  else if (key == "weight_alpha") cfg.weight_alpha = parse_double(key, value);
  else if (key == "eta_max") cfg.eta_max = parse_double(key, value);
  else if (key == "eta_min") cfg.eta_min = parse_double(key, value);
  else if (key == "ray_deg") cfg.ray_deg = parse_double(key, value);
  else if (key == "eta_step") cfg.eta_step = parse_double(key, value);
  else if (key == "sqrt_branch") cfg.sqrt_branch = parse_sign(key, value);
  else if (key == "orientation") cfg.orientation = parse_sign(key, value);
  else if (key == "stokes") cfg.stokes = parse_complex(value);
  else if (key == "n_min") cfg.n_min = parse_int(key, value);
  else if (key == "max_newton_iterations") cfg.max_newton_iterations = parse_int(key, value);
  else if (key == "wedge_half_width") cfg.wedge_half_width = parse_double(key, value);
  else if (key == "quad_max_subdivisions") cfg.quad_max_subdivisions = parse_int(key, value);
  else if (key == "output_format") cfg.output_format = std::string(value);
  else throw Error(Errc::configuration, "unknown setting '" + std::string(key) + "'");
}

SolverConfig load_config_file(const std::filesystem::path& path, SolverConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::configuration, "cannot open config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::configuration,
                  path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
  }
  base.validate();
  return base;
}

}  // namespace asymkit
