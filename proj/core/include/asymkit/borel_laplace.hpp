#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "asymkit/config.hpp"

namespace asymkit {

using Complex = std::complex<double>;

/// Coefficients b_j of sum_j b_j p^j in the Borel plane.
struct BorelSeries {
  std::vector<Complex> coeffs;
  /// Reciprocal of the root-test limit over the available coefficients;
  /// +infinity when the coefficients vanish or decay super-geometrically.
  double radius_estimate = 0.0;

  Complex evaluate(Complex p) const;
};

/// numerator(p) / denominator(p), denominator[0] == 1.
struct PadeApproximant {
  std::vector<Complex> numerator;
  std::vector<Complex> denominator;

  Complex evaluate(Complex p) const;
  /// Roots of the denominator (Eigen companion-matrix eigenvalues).
  std::vector<Complex> poles() const;
  /// First `count` Taylor coefficients of the ratio.
  std::vector<Complex> taylor(std::size_t count) const;
};

/// b_{k-1} = a_k / (k-1)! for the t-coefficients a_1, a_2, ... (a[0] is a_1).
BorelSeries borel_transform(const std::vector<Complex>& a);

/// [m/n] Pade approximant. A singular matching system is retried with n-1;
/// Errc::degeneracy when even n = 1 is singular (n = 0 never is).
PadeApproximant pade_approximant(const BorelSeries& b, int m, int n);

struct LaplaceResult {
  Complex value;
  double error_estimate = 0.0;
};

using BorelFunction = std::function<Complex(Complex)>;

/// int_0^inf e^{-p/t} B(p) dp along the ray arg p = arg t. The ray is
/// integrated in chunks until the chunk contribution falls below the
/// tolerance; contributions that grow across chunks raise Errc::divergence,
/// a non-finite B raises ContourError with the offending p.
LaplaceResult laplace_sum(const BorelFunction& b, Complex t, const SolverConfig& cfg = {});

/// Same, for a Pade continuation; a denominator root within 1e-8 of the ray
/// raises ContourError before any quadrature is attempted.
LaplaceResult laplace_sum(const PadeApproximant& b, Complex t, const SolverConfig& cfg = {});

}  // namespace asymkit
