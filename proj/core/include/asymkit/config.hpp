#pragma once

#include <complex>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace asymkit {

/// Environment variable naming a default configuration file for the CLI.
inline constexpr const char* kConfigEnvVar = "ASYMKIT_CONFIG";

struct SolverConfig {
  // Tolerances.
  double newton_tol = 1e-12;
  double quad_tol = 1e-12;
  double ode_rel_tol = 1e-10;
  double ode_abs_tol = 1e-13;

  // Borel-plane grid for the convolution solver.
  double p_max = 8.0;
  int grid_m = 256;
  double weight_alpha = 1.0;  // norm sup_p |F(p)| e^{-alpha p}

  // Inner-region ray.
  double eta_max = 50.0;
  double eta_min = 2.0;
  double ray_deg = 0.0;
  double eta_step = 0.05;  // node spacing in |eta| along the ray

  // Branches.
  int sqrt_branch = 1;   // +1 principal, -1 negative
  int orientation = 1;   // sign in front of (2n-1) i pi

  std::optional<std::complex<double>> stokes;

  // Singularity search.
  int n_min = 1;
  int max_newton_iterations = 100;
  double wedge_half_width = std::numbers::pi / 9.0 - 0.05;

  int quad_max_subdivisions = 4000;
  std::string output_format = "csv";  // tabular subcommands: csv or json

  /// Throws Errc::configuration if an invariant is violated.
  void validate() const;
};

/// Applies one key = value assignment; unknown keys and malformed values
/// raise Errc::configuration.
void apply_setting(SolverConfig& cfg, std::string_view key, std::string_view value);

/// Reads a flat "key = value" file ('#' starts a comment) on top of `base`.
SolverConfig load_config_file(const std::filesystem::path& path, SolverConfig base = {});

/// Parses "re,im" or "re".
std::complex<double> parse_complex(std::string_view text);

}  // namespace asymkit
