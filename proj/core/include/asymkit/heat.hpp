#pragma once

#include <functional>
#include <string>
#include <vector>

#include "asymkit/config.hpp"

namespace asymkit {

enum class DecayClass { bounded, gaussian, polynomial_gaussian, polynomial, none };

struct InitialDatum {
  std::function<double(double)> u0;
  DecayClass decay = DecayClass::bounded;

  static InitialDatum constant(double value = 1.0);
  static InitialDatum linear();                 // u0(s) = s
  static InitialDatum gaussian();               // u0(s) = e^{-s^2}
  static InitialDatum polynomial_gaussian();    // u0(s) = s^2 e^{-s^2}
  /// By name: "const", "linear", "gaussian", "poly-gaussian".
  static InitialDatum by_name(const std::string& name);
};

/// F_k = F_0^{(2k)} / k! for k = 0..order, from the even derivatives
/// even_derivatives[k] = F_0^{(2k)}(x). Needs order + 1 entries.
std::vector<double> heat_series(const std::vector<double>& even_derivatives, std::size_t order);

/// t^{-1/2} int_R u0(s) exp(-(x-s)^2/(4t)) ds. This is 2 sqrt(pi) times the
/// unit-mass heat evolution.
double heat_kernel_solution(const InitialDatum& u, double t, double x, const SolverConfig& cfg = {});

/// t^{-1/2} int_0^inf y^{-1/2} [u0(x + 2 sqrt y) + u0(x - 2 sqrt y)] e^{-y/t} dy,
/// integrated in w = sqrt(y) so the endpoint singularity disappears.
double heat_borel_solution(const InitialDatum& u, double t, double x, const SolverConfig& cfg = {});

/// Closed form of heat_kernel_solution for u0 = e^{-s^2}.
double gaussian_heat_exact(double t, double x);

}  // namespace asymkit
