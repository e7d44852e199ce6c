#pragma once

#include <complex>
#include <functional>

namespace asymkit {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;  // sum of |Kronrod - Gauss| over the final partition
  int evaluations = 0;
};

using RealToComplex = std::function<std::complex<double>(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of a complex-valued
/// function over [a, b]. Stops once error <= max(abs_tol, rel_tol |value|).
///
/// A non-finite integrand value raises ContourError carrying the abscissa
/// (as a real number); callers translate it into their own coordinates.
/// Exhausting max_subdivisions raises Errc::no_convergence.
QuadratureResult integrate(const RealToComplex& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace asymkit
