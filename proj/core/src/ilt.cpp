#include "asymkit/ilt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "asymkit/error.hpp"

namespace asymkit {

GridFunction::GridFunction(double p_max_, std::vector<Complex> values_)
    : p_max(p_max_), values(std::move(values_)) {
  if (!(p_max > 0.0) || values.size() < 2) {
    throw Error(Errc::configuration, "grid function needs p_max > 0 and at least two nodes");
  }
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(Errc::configuration, "grid function values must be finite");
    }
  }
}

GridFunction GridFunction::sample(const std::function<Complex(double)>& f, double p_max, int m) {
  if (m < 1) throw Error(Errc::configuration, "grid needs at least one interval");
  std::vector<Complex> v(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) v[static_cast<std::size_t>(i)] = f(i * p_max / m);
  return {p_max, std::move(v)};
}

GridFunction GridFunction::constant(Complex value, double p_max, int m) {
  return sample([value](double) { return value; }, p_max, m);
}

bool GridFunction::same_grid(const GridFunction& other) const noexcept {
  return p_max == other.p_max && values.size() == other.values.size();
}

GridFunction laplace_convolve(const GridFunction& f, const GridFunction& g) {
  if (!f.same_grid(g)) throw Error(Errc::configuration, "convolution operands are on different grids");
  const std::size_t n = f.values.size();
  const double h = f.spacing();
  std::vector<Complex> c(n);
  const Complex f0 = f.values[0];
  const Complex g0 = g.values[0];
  c[0] = 0.5 * h * f0 * g0;
  for (std::size_t i = 1; i < n; ++i) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j <= i; ++j) sum += f.values[j] * g.values[i - j];
    c[i] = h * (sum - 0.5 * (f0 * g.values[i] + f.values[i] * g0));
  }
  GridFunction out;
  out.p_max = f.p_max;
  out.values = std::move(c);
  return out;
}

namespace {

void require_spec(const NonlinearitySpec& spec, const GridFunction& grid, std::size_t time_nodes) {
  for (const auto& term : spec.terms) {
    if (term.j < 0 || term.j > 3 || term.k < 0) {
      throw Error(Errc::configuration, "nonlinear term needs 0 <= j <= 3 and k >= 0");
    }
    if (!term.kernel.same_grid(grid)) {
      throw Error(Errc::configuration, "nonlinear kernel is on a different grid");
    }
  }
  if (!spec.forcing.empty()) {
    if (spec.forcing.size() != time_nodes) {
      throw Error(Errc::configuration, "forcing needs one grid function per time node (" +
                                           std::to_string(time_nodes) + ")");
    }
    for (const auto& r : spec.forcing) {
      if (!r.same_grid(grid)) throw Error(Errc::configuration, "forcing is on a different grid");
    }
  }
}

// dt-trapezoid of int_0^{t_n} e^{-p^3 (t_n - s)} N(p, s) ds for every n.
std::vector<GridFunction> integrating_factor_quadrature(const std::vector<GridFunction>& integrand,
                                                        double dt) {
  const std::size_t steps = integrand.size();
  const GridFunction& grid = integrand.front();
  const std::size_t m = grid.values.size();
  std::vector<GridFunction> out(steps, grid);
  for (std::size_t n = 0; n < steps; ++n) {
    for (std::size_t i = 0; i < m; ++i) {
      const double p = grid.node(static_cast<int>(i));
      const double p3 = p * p * p;
      Complex acc = 0.0;
      for (std::size_t s = 0; s <= n; ++s) {
        const double w = (s == 0 || s == n) ? 0.5 : 1.0;
        acc += w * std::exp(-p3 * dt * static_cast<double>(n - s)) * integrand[s].values[i];
      }
      out[n].values[i] = n == 0 ? Complex(0.0) : dt * acc;
    }
  }
  return out;
}

}  // namespace

std::vector<GridFunction> picard_affine_part(const GridFunction& initial, const NonlinearitySpec& spec,
                                             double t_final, int steps) {
  if (steps < 1 || !(t_final > 0.0)) {
    throw Error(Errc::configuration, "picard solve needs steps >= 1 and t_final > 0");
  }
  const std::size_t nodes = static_cast<std::size_t>(steps) + 1;
  require_spec(spec, initial, nodes);
  const double dt = t_final / steps;
  std::vector<GridFunction> affine(nodes, initial);
  for (std::size_t n = 0; n < nodes; ++n) {
    const double t = dt * static_cast<double>(n);
    for (std::size_t i = 0; i < initial.values.size(); ++i) {
      const double p = initial.node(static_cast<int>(i));
      affine[n].values[i] = std::exp(-p * p * p * t) * initial.values[i];
    }
  }
  if (!spec.forcing.empty()) {
    const auto forced = integrating_factor_quadrature(spec.forcing, dt);
    for (std::size_t n = 0; n < nodes; ++n) {
      for (std::size_t i = 0; i < initial.values.size(); ++i) {
        affine[n].values[i] += forced[n].values[i];
      }
    }
  }
  return affine;
}

std::vector<GridFunction> picard_map(const std::vector<GridFunction>& affine,
                                     const NonlinearitySpec& spec,
                                     const std::vector<GridFunction>& current, double t_final) {
  if (affine.size() != current.size() || affine.size() < 2) {
    throw Error(Errc::configuration, "picard_map needs matching time grids");
  }
  if (spec.terms.empty()) return affine;
  const double dt = t_final / static_cast<double>(affine.size() - 1);
  int max_k = 0;
  for (const auto& term : spec.terms) max_k = std::max(max_k, term.k);

  std::vector<GridFunction> nonlinear(current.size());
  for (std::size_t n = 0; n < current.size(); ++n) {
    const GridFunction& f = current[n];
    // Memoized F^{*k}, k = 1..max_k.
    std::vector<GridFunction> powers;
    powers.push_back(f);
    for (int k = 2; k <= max_k; ++k) powers.push_back(laplace_convolve(powers.back(), f));

    GridFunction sum = f;
    std::fill(sum.values.begin(), sum.values.end(), Complex(0.0));
    for (const auto& term : spec.terms) {
      GridFunction pj = f;
      for (std::size_t i = 0; i < pj.values.size(); ++i) {
        pj.values[i] *= std::pow(f.node(static_cast<int>(i)), term.j);
      }
      GridFunction product = laplace_convolve(pj, term.kernel);
      if (term.k > 0) product = laplace_convolve(product, powers[static_cast<std::size_t>(term.k - 1)]);
      const double sign = (term.j % 2 == 0) ? 1.0 : -1.0;
      for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += sign * product.values[i];
    }
    nonlinear[n] = std::move(sum);
  }
  auto integrated = integrating_factor_quadrature(nonlinear, dt);
  for (std::size_t n = 0; n < integrated.size(); ++n) {
    for (std::size_t i = 0; i < integrated[n].values.size(); ++i) {
      integrated[n].values[i] += affine[n].values[i];
    }
  }
  return integrated;
}

double weighted_sup_norm(const std::vector<GridFunction>& f, double alpha) {
  double norm = 0.0;
  for (const auto& g : f) {
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      norm = std::max(norm, std::abs(g.values[i]) * std::exp(-alpha * g.node(static_cast<int>(i))));
    }
  }
  return norm;
}

PicardResult picard_solve(const GridFunction& initial, const NonlinearitySpec& spec, double t_final,
                          int steps, double tol, double alpha, int max_iterations) {
  if (!(tol > 0.0)) throw Error(Errc::configuration, "picard_solve needs tol > 0");
  PicardResult result;
  const auto affine = picard_affine_part(initial, spec, t_final, steps);
  for (int n = 0; n <= steps; ++n) result.times.push_back(t_final * n / steps);

  std::vector<GridFunction> current = affine;
  int non_contracting = 0;
  for (int it = 1; it <= max_iterations; ++it) {
    auto next = picard_map(affine, spec, current, t_final);
    std::vector<GridFunction> diff = next;
    for (std::size_t n = 0; n < diff.size(); ++n) {
      for (std::size_t i = 0; i < diff[n].values.size(); ++i) {
        diff[n].values[i] -= current[n].values[i];
      }
    }
    const double d = weighted_sup_norm(diff, alpha);
    if (!std::isfinite(d)) {
      throw ConvergenceError(Errc::no_contraction, "Picard iterates overflow", result.differences);
    }
    if (!result.differences.empty() && result.differences.back() > 0.0) {
      const double ratio = d / result.differences.back();
      result.ratios.push_back(ratio);
      non_contracting = ratio >= 1.0 ? non_contracting + 1 : 0;
    }
    result.differences.push_back(d);
    current = std::move(next);
    result.iterations = it;
    if (d < tol) {
      result.solution = std::move(current);
      return result;
    }
    if (non_contracting >= 3) {
      throw ConvergenceError(Errc::no_contraction,
                             "Picard map does not contract (three ratios >= 1); reduce t_final "
                             "or p_max",
                             result.differences);
    }
  }
  throw ConvergenceError(Errc::no_convergence,
                         "Picard iteration did not reach tolerance in " +
                             std::to_string(max_iterations) + " iterations",
                         result.differences);
}

namespace {

// phi1(z) = (1 - e^{-z}) / z, phi2(z) = (1 - e^{-z}(1 + z)) / z^2.
Complex phi1(Complex z) {
  if (std::abs(z) < 0.1) {
    Complex term = 1.0, sum = 0.0;
    for (int k = 0; k < 12; ++k) {
      sum += term / static_cast<double>(k + 1);
      term *= -z / static_cast<double>(k + 1);
    }
    return sum;
  }
  return (1.0 - std::exp(-z)) / z;
}

Complex phi2(Complex z) {
  if (std::abs(z) < 0.1) {
    Complex term = 1.0, sum = 0.0;
    for (int k = 0; k < 12; ++k) {
      sum += term / static_cast<double>(k + 2);
      term *= -z / static_cast<double>(k + 1);
    }
    return sum;
  }
  return (1.0 - std::exp(-z) * (1.0 + z)) / (z * z);
}

}  // namespace

LaplaceEvaluation laplace_evaluate(const GridFunction& f, Complex y, double tol) {
  if (!(y.real() > 0.0)) throw Error(Errc::configuration, "laplace_evaluate needs Re y > 0");
  const double h = f.spacing();
  const Complex z = y * h;
  const Complex w0 = h * phi1(z);
  const Complex w1 = h * phi2(z);
  Complex sum = 0.0;
  for (int i = 0; i < f.intervals(); ++i) {
    const Complex a = f.values[static_cast<std::size_t>(i)];
    const Complex b = f.values[static_cast<std::size_t>(i) + 1];
    sum += std::exp(-f.node(i) * y) * (a * w0 + (b - a) * w1);
  }
  const double end = std::abs(f.values.back());
  const double tail = end * std::exp(-f.p_max * y.real()) / y.real();
  if (tail > tol) {
    const double needed = std::log(end / (tol * y.real())) / y.real();
    std::ostringstream msg;
    msg << "Laplace tail bound " << tail << " exceeds tolerance " << tol << "; need p_max >= " << needed;
    throw Error(Errc::truncation, msg.str());
  }
  return {sum, tail};
}

}  // namespace asymkit
