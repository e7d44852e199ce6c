#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asymkit {

/// Machine-readable failure categories. The CLI maps these onto the
/// "error" field of its JSON error object.
enum class Errc {
  configuration,
  unsupported_scalar,
  division,
  truncation,
  iteration_depth,
  degeneracy,
  divergence,
  contour,
  no_contraction,
  budget,
  out_of_regime,
  singularity_proximity,
  matching,
  no_convergence,
  branch_collision,
  sampling,
  indeterminate_constant,
  ill_conditioned,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised by quadrature when the integrand is non-finite on the contour.
class ContourError : public Error {
 public:
  ContourError(std::complex<double> p, const std::string& message)
      : Error(Errc::contour, message), p_(p) {}
  std::complex<double> offending_point() const noexcept { return p_; }

 private:
  std::complex<double> p_;
};

/// Raised by the G_0 integrators when step control collapses; carries the
/// last point where the solution was still trusted.
class SingularityProximity : public Error {
 public:
  SingularityProximity(std::complex<double> last_reliable, const std::string& message)
      : Error(Errc::singularity_proximity, message), last_reliable_(last_reliable) {}
  std::complex<double> last_reliable() const noexcept { return last_reliable_; }

 private:
  std::complex<double> last_reliable_;
};

/// Raised when a fixed-point or Newton iteration fails; `history` holds the
/// residual (or contraction-ratio) trajectory for diagnostics.
class ConvergenceError : public Error {
 public:
  ConvergenceError(Errc code, const std::string& message, std::vector<double> history)
      : Error(code, message), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

}  // namespace asymkit
