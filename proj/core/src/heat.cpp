#include "asymkit/heat.hpp"

#include <cmath>
#include <numbers>

#include "asymkit/error.hpp"
#include "asymkit/quadrature.hpp"

namespace asymkit {

namespace {

// Gaussian weight e^{-z^2} is below 1e-35 beyond |z| = 9.
constexpr double kGaussianCutoff = 9.0;

void require_time(double t) {
  if (!(t > 0.0)) throw Error(Errc::configuration, "heat solution needs t > 0");
}

void require_decay(const InitialDatum& u) {
  if (!u.u0) throw Error(Errc::configuration, "initial datum has no evaluator");
  if (u.decay == DecayClass::none) {
    throw Error(Errc::divergence, "initial datum is not known to be integrable against the kernel");
  }
}

double run(const RealToComplex& f, double a, double b, const SolverConfig& cfg) {
  QuadratureOptions opts;
  opts.abs_tol = cfg.quad_tol;
  opts.rel_tol = cfg.quad_tol;
  opts.max_subdivisions = cfg.quad_max_subdivisions;
  try {
    return integrate(f, a, b, opts).value.real();
  } catch (const ContourError& e) {
    throw Error(Errc::divergence, "heat integrand overflows at s = " +
                                      std::to_string(e.offending_point().real()));
  }
}

}  // namespace

InitialDatum InitialDatum::constant(double value) {
  return {[value](double) { return value; }, DecayClass::bounded};
}

InitialDatum InitialDatum::linear() {
  return {[](double s) { return s; }, DecayClass::polynomial};
}

InitialDatum InitialDatum::gaussian() {
  return {[](double s) { return std::exp(-s * s); }, DecayClass::gaussian};
}

InitialDatum InitialDatum::polynomial_gaussian() {
  return {[](double s) { return s * s * std::exp(-s * s); }, DecayClass::polynomial_gaussian};
}

InitialDatum InitialDatum::by_name(const std::string& name) {
  if (name == "const") return constant();
  if (name == "linear") return linear();
  if (name == "gaussian") return gaussian();
  if (name == "poly-gaussian") return polynomial_gaussian();
  throw Error(Errc::configuration, "unknown initial datum '" + name + "'");
}

std::vector<double> heat_series(const std::vector<double>& even_derivatives, std::size_t order) {
  if (even_derivatives.size() < order + 1) {
    throw Error(Errc::configuration, "heat_series needs " + std::to_string(order + 1) +
                                         " even derivatives, got " +
                                         std::to_string(even_derivatives.size()));
  }
  std::vector<double> f(order + 1);
  double factorial = 1.0;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    f[k] = even_derivatives[k] / factorial;
  }
  return f;
}

double heat_kernel_solution(const InitialDatum& u, double t, double x, const SolverConfig& cfg) {
  require_time(t);
  require_decay(u);
  const double half_width = 2.0 * std::sqrt(t) * kGaussianCutoff;
  const double scale = 1.0 / std::sqrt(t);
  const RealToComplex f = [&](double s) {
    const double d = x - s;
    return scale * u.u0(s) * std::exp(-d * d / (4.0 * t));
  };
  return run(f, x - half_width, x, cfg) + run(f, x, x + half_width, cfg);
}

double heat_borel_solution(const InitialDatum& u, double t, double x, const SolverConfig& cfg) {
  require_time(t);
  require_decay(u);
  // y = w^2: y^{-1/2} dy = 2 dw.
  const double w_max = std::sqrt(t) * kGaussianCutoff;
  const double scale = 2.0 / std::sqrt(t);
  const RealToComplex f = [&](double w) {
    return scale * (u.u0(x + 2.0 * w) + u.u0(x - 2.0 * w)) * std::exp(-w * w / t);
  };
  return run(f, 0.0, w_max, cfg);
}

double gaussian_heat_exact(double t, double x) {
  const double a = 1.0 + 4.0 * t;
  return std::sqrt(4.0 * std::numbers::pi / a) * std::exp(-x * x / a);
}

}  // namespace asymkit
