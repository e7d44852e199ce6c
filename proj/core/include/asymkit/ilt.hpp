#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "asymkit/config.hpp"

namespace asymkit {

using Complex = std::complex<double>;

/// Samples on the uniform grid p_i = i * p_max / M, i = 0..M.
struct GridFunction {
  double p_max = 0.0;
  std::vector<Complex> values;

  GridFunction() = default;
  GridFunction(double p_max, std::vector<Complex> values);

  static GridFunction sample(const std::function<Complex(double)>& f, double p_max, int m);
  static GridFunction constant(Complex value, double p_max, int m);

  int intervals() const noexcept { return static_cast<int>(values.size()) - 1; }
  double spacing() const noexcept { return p_max / intervals(); }
  double node(int i) const noexcept { return i * spacing(); }
  bool same_grid(const GridFunction& other) const noexcept;
};

/// Trapezoid-rule Laplace convolution (f*g)(p) = int_0^p f(s) g(p-s) ds.
///
/// Nodes i >= 1 carry the plain trapezoid value. Node 0 carries h f_0 g_0 / 2
/// instead of 0: with that value the discrete product is exactly associative
/// and commutative (it is h * F~ G~ for the generating functions with the
/// first coefficient halved), and the O(h) node-0 entry only ever meets an
/// h/2 endpoint weight downstream, so the scheme stays second order.
GridFunction laplace_convolve(const GridFunction& f, const GridFunction& g);

struct NonlinearTerm {
  int j = 0;  // power of p multiplying F
  int k = 0;  // number of extra convolution factors of F
  GridFunction kernel;
};

struct NonlinearitySpec {
  std::vector<NonlinearTerm> terms;
  /// Forcing R(p, t_n) per output time node (empty means R = 0).
  std::vector<GridFunction> forcing;
};

struct PicardResult {
  std::vector<double> times;
  std::vector<GridFunction> solution;  // F(., t_n)
  std::vector<double> differences;     // weighted sup norm of successive iterates
  std::vector<double> ratios;          // differences[i] / differences[i-1]
  int iterations = 0;
};

/// The affine part F_0(p, t) = e^{-p^3 t} F_I(p) + int_0^t e^{-p^3 (t-s)} R(p, s) ds
/// on times n * t_final / steps.
std::vector<GridFunction> picard_affine_part(const GridFunction& initial, const NonlinearitySpec& spec,
                                             double t_final, int steps);

/// One application of the integrating-factor map
/// F -> F_0 + sum_{j,k} int_0^t (-1)^j e^{-p^3 (t-s)} [(p^j F) * B_{j,k} * F^{*k}](p, s) ds,
/// time integral by the trapezoid rule on the same time nodes.
std::vector<GridFunction> picard_map(const std::vector<GridFunction>& affine,
                                     const NonlinearitySpec& spec,
                                     const std::vector<GridFunction>& current, double t_final);

/// sup over time nodes of sup_p |F(p)| e^{-alpha p}.
double weighted_sup_norm(const std::vector<GridFunction>& f, double alpha);

/// Picard iteration to a fixed point of picard_map. Raises Errc::no_contraction
/// after three consecutive ratios >= 1 and Errc::no_convergence after
/// max_iterations, both carrying the difference history.
PicardResult picard_solve(const GridFunction& initial, const NonlinearitySpec& spec, double t_final,
                          int steps, double tol, double alpha = 1.0, int max_iterations = 200);

struct LaplaceEvaluation {
  Complex value;
  double tail_bound = 0.0;  // |F(p_max)| e^{-p_max Re y} / Re y
};

/// int_0^{p_max} F(p) e^{-p y} dp for the piecewise-linear interpolant of F,
/// integrated exactly. Raises Errc::truncation naming the p_max required
/// when the tail bound exceeds tol.
LaplaceEvaluation laplace_evaluate(const GridFunction& f, Complex y, double tol = 1e-10);

}  // namespace asymkit
