#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "asymkit/config.hpp"
#include "asymkit/harry_dym_outer.hpp"
#include "asymkit/ode.hpp"

namespace asymkit::hd {

/// Inner variables: eta = (x - t) / t^{2/9}, tau = t^{7/9}, H = t^{-1/9} G.
struct InnerPoint {
  Complex eta;
  Complex tau;
};
InnerPoint to_inner(Complex x, Complex t);

/// Values and eta-derivatives of one G_k at the nodes of an InnerSolution.
struct EtaGridFunction {
  std::vector<Complex> g, g1, g2, g3;
};

/// G_0..G_K on the nodes eta_i = r_i * ray, r_0 = eta_max > r_1 > ... >= eta_min
/// with uniform spacing.
struct InnerSolution {
  Complex ray = 1.0;
  std::vector<double> radii;
  std::vector<EtaGridFunction> orders;

  std::size_t size() const noexcept { return radii.size(); }
  Complex eta(std::size_t i) const { return radii[i] * ray; }
  std::size_t max_order() const noexcept { return orders.empty() ? 0 : orders.size() - 1; }
};

/// Large-eta data for G_0..G_K built from the outer series.
class FarField {
 public:
  /// Uses c_0..c_{K + extra_terms} of the outer series.
  explicit FarField(std::size_t max_k, std::size_t extra_terms = 7);

  /// G_k and its first three derivatives at eta, summed to the smallest term.
  std::array<Complex, 4> evaluate(std::size_t k, Complex eta) const;
  /// Leading coefficient A_k of G_k ~ A_k eta^{-(k+1/2)}.
  double leading(std::size_t k) const;
  const std::vector<FarFieldTerm>& terms(std::size_t k) const { return terms_.at(k); }
  std::size_t max_k() const noexcept { return terms_.size() - 1; }

 private:
  std::vector<std::vector<FarFieldTerm>> terms_;
};

/// A_k from balancing the large-eta equation at leading order,
/// A_k = -(leading coefficient of (1/2)[G^3]_{k-1}) / k, A_0 = 1.
std::vector<double> balanced_leading_coefficients(std::size_t max_k);

/// Third derivative of G_0 from G_0 + 2 eta G_0' + 9 G_0^3 G_0''' = 0.
Complex g0_third(Complex eta, Complex g, Complex g1);

/// (1/2) sum_{k1+k2+k3=k-1} G_{k1}G_{k2}G_{k3} at one node.
Complex cubic_sum(std::size_t k, const std::vector<Complex>& g);
/// sum over k1..k4 < k with k1+..+k4 = k of G_{k1}G_{k2}G_{k3}G_{k4}''' at one node.
Complex quartic_sum(std::size_t k, const std::vector<Complex>& g, const std::vector<Complex>& g3);

/// cubic_sum + quartic_sum per node: the tuple enumeration R_k over the grid.
/// Needs orders 0..k-1 with third derivatives.
std::vector<Complex> assemble_Rk(std::size_t k, const std::vector<EtaGridFunction>& lower);

/// Right-hand side of G_0^3 L_k G_k = F_k that the inner equation produces,
/// F_k = cubic_sum - quartic_sum, with
/// L_k u = u''' + (2 eta / (9 G_0^3)) u' + (3 G_0'''/G_0 - (7k-1)/(9 G_0^3)) u.
std::vector<Complex> hierarchy_forcing(std::size_t k, const std::vector<EtaGridFunction>& lower);

/// u''' from G_0^3 L_k u = forcing.
Complex gk_third(std::size_t k, Complex eta, Complex g0, Complex g0_third_value, Complex u,
                 Complex u1, Complex forcing);

/// G_0..G_K integrated jointly from eta_max inward along the ray
/// arg eta = cfg.ray_deg. Rays outside (-2pi/9, 2pi/9) raise Errc::configuration;
/// rays where inward integration amplifies the exponentially small modes by
/// more than 1e6 raise Errc::ill_conditioned (use G0Continuation instead).
/// A collapsing step raises SingularityProximity.
InnerSolution solve_hierarchy(std::size_t max_k, const SolverConfig& cfg);
inline InnerSolution solve_G0(const SolverConfig& cfg) { return solve_hierarchy(0, cfg); }

/// G_k alone on the grid of `base` (which must hold G_0), with the forcing
/// sampled at the same nodes and interpolated between them.
/// A vanishing G_0 raises SingularityProximity; a far-field balance that
/// disagrees with the outer series raises Errc::matching.
EtaGridFunction solve_Gk(std::size_t k, const InnerSolution& base, const std::vector<Complex>& forcing,
                         const SolverConfig& cfg);

/// Per-node ODE residual of order k, third derivative taken by sixth-order
/// central differences of the stored second-derivative channel. The first and
/// last three nodes are returned as 0.
std::vector<double> node_residuals(const InnerSolution& sol, std::size_t k);

struct InnerValue {
  Complex value;
  Complex first_neglected;  // tau^{K+1} G_{K+1}, zero if that order is not stored
  double error_proxy = 0.0;
  bool decreasing = true;   // false: terms grow, eta is beyond the convergence radius
};

/// sum_{k <= order} tau^k G_k(eta) with quintic Hermite interpolation along
/// the ray. eta must lie on the ray within [eta_min, eta_max].
InnerValue inner_eval(const InnerSolution& sol, Complex eta, Complex tau,
                      std::optional<std::size_t> order = std::nullopt);

using InnerFunction = std::function<Complex(Complex eta, Complex tau)>;

/// -G/9 - (2/9) eta G_eta + (7/9) tau G_tau + (tau/2) G^3 - G^3 G_etaetaeta
/// with derivatives from central differences.
Complex inner_residual(const InnerFunction& g, Complex eta, Complex tau);
/// Same at node i of a solution, using the stored derivative channels.
Complex inner_residual(const InnerSolution& sol, std::size_t node, Complex tau);

/// State of G_0 (value and two derivatives) at a point of the complex plane.
struct G0State {
  Complex eta;
  Complex g, g1, g2;
};

/// Analytic continuation of G_0 along polygonal paths. Starts from the
/// far-field series on the positive real axis, where inward integration is
/// neutral, and follows caller-supplied paths from there.
class G0Continuation {
 public:
  explicit G0Continuation(const SolverConfig& cfg, double start_radius = 50.0);

  /// G_0 at `start_radius` on the real axis from the far-field series.
  G0State start() const;
  /// Straight segment from `from` to `to`.
  G0State advance(const G0State& from, Complex to) const;
  /// Successive straight segments through `points`.
  G0State march(G0State from, const std::vector<Complex>& points) const;

  const FarField& far_field() const noexcept { return far_; }

 private:
  FarField far_;
  OdeOptions options_;
  double start_radius_;
};

/// Points on the arc |eta| = r from angle phi_from to phi_to (radians).
std::vector<Complex> arc_points(double r, double phi_from, double phi_to, int pieces);

}  // namespace asymkit::hd
