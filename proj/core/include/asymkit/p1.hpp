#pragma once

#include <cstddef>

#include "asymkit/puiseux.hpp"

namespace asymkit::p1 {

/// Name of the expansion variable w = 1/x. The formal solution of
/// y'' = 6y^2 + x is a large-x expansion, so it is stored as an ascending
/// series in w: y = (theta/6) w^(-1/2) - (1/48) w^2 + ...
inline constexpr const char* kVariable = "1/x";
/// theta^2 = -6, so theta = i sqrt(6) and theta/6 = 6^(-1/2) i.
inline const Rational kThetaSquared = -6;

struct P1Series {
  PuiseuxSeries series;  // in w = 1/x
  std::size_t n_terms = 0;
  Branch branch = Branch::principal;
  std::size_t iterations = 0;

  /// Coefficient of x^e (e on the half-integer lattice).
  Scalar coefficient_of_x_power(const Rational& e) const {
    return series.coefficient(-Exponent::from_rational(e));
  }
};

/// y'' expressed through w = 1/x: y_xx = w^4 y_ww + 2 w^3 y_w.
PuiseuxSeries second_x_derivative(const PuiseuxSeries& y);

/// Iterates y_{n+1} = +-(theta/6) sqrt(x - y_n'') from y_0 = 0 until two
/// consecutive iterates agree exactly on the first n_terms coefficients.
/// Throws Errc::iteration_depth when max_iterations is exhausted first.
P1Series p1_formal_series(std::size_t n_terms, Branch branch = Branch::principal,
                          std::size_t max_iterations = 0);

/// y'' - 6 y^2 - x in exact arithmetic.
PuiseuxSeries p1_residual(const PuiseuxSeries& y);
inline PuiseuxSeries p1_residual(const P1Series& s) { return p1_residual(s.series); }

}  // namespace asymkit::p1
