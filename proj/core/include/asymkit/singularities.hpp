#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "asymkit/config.hpp"
#include "asymkit/error.hpp"
#include "asymkit/harry_dym_inner.hpp"

namespace asymkit::hd {

/// S = 4 sqrt(2) / 27, the rate in exp(-i S eta^{9/4}).
double stokes_rate();

/// F(U) = e^{zeta+2} / 4 - e^{-2 sqrt U} (sqrt U + 1) / (sqrt U - 1), principal sqrt.
Complex u_equation(Complex zeta, Complex u);
/// zeta(U) = -2 + ln 4 - 2 sqrt U + Log((sqrt U + 1) / (sqrt U - 1)).
Complex zeta_of_u(Complex u);

/// Damped Newton for F(U) = 0 to |F| < cfg.newton_tol. Raises
/// Errc::branch_collision when sqrt U approaches 1 and a ConvergenceError
/// (Errc::no_convergence) with the |F| trajectory after cfg.max_newton_iterations.
Complex solve_U(Complex zeta, Complex seed, const SolverConfig& cfg = {});

struct ZetaSingularity {
  int n = 0;
  Complex displayed;  // 2 - ln 4 - i pi + 2 pi i n
  Complex derived;    // ln 4 - 2 - i pi + 2 pi i n, from d zeta / dU = 0 at U = 0
  Complex numeric;    // d zeta / dU = 0 located numerically, moved onto the same lattice
  bool matches_displayed = false;
  bool matches_derived = false;
};

/// Both candidate singular values of U(zeta) for n in [n_lo, n_hi], each
/// checked against a numerically located zero of d zeta / dU.
std::vector<ZetaSingularity> zeta_singularities(int n_lo, int n_hi);

struct StokesConstant {
  enum class Provenance { user, fitted };
  Complex value;
  Provenance provenance = Provenance::user;
  double fit_residual = 0.0;  // relative rms misfit (fitted only)
  Complex correction;         // D of the fitted model (fitted only)
};

struct SingularityRecord {
  int n = 0;
  Complex eta_s;
  Complex seed;
  double newton_residual = 0.0;
  int iterations = 0;
  std::optional<double> fitted_exponent;
  Complex stokes;
  bool in_wedge = false;
};

/// i S eta^{9/4} + (9/8) Log eta - [-2 + ln 4 - o (2n - 1) i pi + Log C], o = orientation.
Complex singularity_equation(Complex eta, int n, Complex c, int orientation = 1);
/// Leading-order inversion [(rhs) / (i S)]^{4/9}, on the branch nearest the
/// wedge centre arg eta = -4 pi / 9.
Complex singularity_seed(int n, Complex c, int orientation = 1);

/// Damped Newton solve of singularity_equation from singularity_seed.
SingularityRecord eta_singularity(int n, const StokesConstant& c, const SolverConfig& cfg = {});
/// Records for n_lo..n_hi computed on a worker pool, ordered by n.
std::vector<SingularityRecord> eta_singularities(int n_lo, int n_hi, const StokesConstant& c,
                                                 const SolverConfig& cfg = {});

using Sample = std::pair<Complex, Complex>;  // (eta, G_0(eta))

/// Least-squares slope of log|G| against log|eta - eta_s| (G vanishes at
/// eta_s). Needs at least 8 samples with strictly monotone distances spanning
/// a decade; otherwise Errc::sampling.
double fit_singularity_exponent(const std::vector<Sample>& samples, Complex eta_s);

/// 16 e^{-4} eta^{-13/8} exp(-i S eta^{9/4}); G_0 minus its algebraic series is
/// C times this on rays below the real axis.
Complex stokes_template(Complex eta);
/// Optimally truncated algebraic (power-law) series of G_0.
Complex g0_algebraic(Complex eta);

/// Fits G_0 - g0_algebraic = (C + D eta^{-9/4}) stokes_template over the
/// samples. A correction below the noise floor, or a fit that explains less
/// than 90% of it, raises Errc::indeterminate_constant.
StokesConstant estimate_stokes_constant(const std::vector<Sample>& samples,
                                        const SolverConfig& cfg = {});

/// G_0 at `count` equally spaced radii in [r_from, r_to] on the ray
/// arg eta = phi (radians, below the real axis), reached from the real axis
/// by an arc at radius `arc_radius`.
std::vector<Sample> g0_ray_samples(double phi, double r_from, double r_to, int count,
                                   const SolverConfig& cfg = {}, double arc_radius = 3.0);

/// estimate_stokes_constant on 31 samples of G_0 along arg eta = -70 degrees,
/// |eta| in [6, 9].
StokesConstant calibrate_stokes_constant(const SolverConfig& cfg = {});

struct LocatedSingularity {
  int n = 0;
  Complex predicted;         // from eta_singularity
  Complex located;           // where the local estimators converge
  double local_exponent = 0.0;  // estimator p = 1 / (1 - G G'' / G'^2) at the end
  double fitted_exponent = 0.0;
  std::vector<Sample> samples;  // approach samples used for the fit
};

/// Continues G_0 from the real axis to the predicted eta_s of branch n and
/// refines the location with local power-law estimators. The path runs in
/// along the real axis to |eta| = 3, around an arc to arg eta = approach_deg,
/// out along that ray and straight toward the prediction.
LocatedSingularity locate_singularity(int n, const StokesConstant& c, const SolverConfig& cfg = {},
                                      double approach_deg = -79.0);

}  // namespace asymkit::hd
