#include "asymkit/harry_dym_inner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "asymkit/error.hpp"

namespace asymkit::hd {

namespace {

constexpr double kPi = std::numbers::pi;
// S in the exponentials exp(+-i S eta^{9/4}) of the linearized G_0 equation.
const double kWkbRate = 4.0 * std::sqrt(2.0) / 27.0;
constexpr double kBlowUp = 1e10;

OdeOptions ode_options(const SolverConfig& cfg) {
  OdeOptions o;
  o.rel_tol = cfg.ode_rel_tol;
  o.abs_tol = cfg.ode_abs_tol;
  return o;
}

Complex cpow(Complex z, double e) { return std::exp(e * std::log(z)); }

// Quintic Hermite on [0, 1] from value, first and second derivative at both ends.
Complex quintic(double t, Complex p0, Complex v0, Complex a0, Complex p1, Complex v1, Complex a1) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double h0 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
  const double h1 = t - 6 * t3 + 8 * t4 - 3 * t5;
  const double h2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
  const double h3 = 0.5 * t3 - t4 + 0.5 * t5;
  const double h4 = -4 * t3 + 7 * t4 - 3 * t5;
  const double h5 = 10 * t3 - 15 * t4 + 6 * t5;
  return p0 * h0 + v0 * h1 + a0 * h2 + a1 * h3 + v1 * h4 + p1 * h5;
}

// Six-point Lagrange interpolation of uniform samples at fractional index x.
Complex lagrange6(const std::vector<Complex>& f, double x) {
  const int n = static_cast<int>(f.size());
  if (n < 6) throw Error(Errc::configuration, "interpolation needs at least six nodes");
  const int start = std::clamp(static_cast<int>(std::floor(x)) - 2, 0, n - 6);
  Complex sum = 0.0;
  for (int j = 0; j < 6; ++j) {
    double w = 1.0;
    for (int m = 0; m < 6; ++m) {
      if (m != j) w *= (x - (start + m)) / static_cast<double>(j - m);
    }
    sum += w * f[static_cast<std::size_t>(start + j)];
  }
  return sum;
}

void check_blow_up(Complex eta, Complex g1) {
  if (!(std::abs(g1) < kBlowUp)) {
    throw SingularityProximity(eta, "|G_0'| exceeds the blow-up threshold near eta = (" +
                                        std::to_string(eta.real()) + ", " +
                                        std::to_string(eta.imag()) + ")");
  }
}

}  // namespace

InnerPoint to_inner(Complex x, Complex t) {
  return {(x - t) / cpow(t, 2.0 / 9.0), cpow(t, 7.0 / 9.0)};
}

FarField::FarField(std::size_t max_k, std::size_t extra_terms)
    : terms_(inner_far_field(hd_outer_coeffs(max_k + extra_terms), max_k)) {}

std::array<Complex, 4> FarField::evaluate(std::size_t k, Complex eta) const {
  const auto& terms = terms_.at(k);
  std::vector<std::array<Complex, 4>> values;
  std::size_t smallest = 0;
  double smallest_mag = std::numeric_limits<double>::infinity();
  const Complex log_eta = std::log(eta);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double e = terms[i].exponent;
    std::array<Complex, 4> v;
    double factor = terms[i].coefficient;
    for (int m = 0; m < 4; ++m) {
      v[static_cast<std::size_t>(m)] = factor * std::exp((e - m) * log_eta);
      factor *= (e - m);
    }
    const double mag = std::abs(v[0]);
    if (mag < smallest_mag) {
      smallest_mag = mag;
      smallest = i;
    }
    values.push_back(v);
  }
  // Optimal truncation: drop the smallest term and everything after it,
  // unless the terms decrease all the way.
  const std::size_t count = smallest + 1 == values.size() ? values.size() : smallest;
  std::array<Complex, 4> sum{};
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t m = 0; m < 4; ++m) sum[m] += values[i][m];
  }
  return sum;
}

double FarField::leading(std::size_t k) const {
  const auto& terms = terms_.at(k);
  if (terms.empty()) throw Error(Errc::matching, "no far-field data for G_" + std::to_string(k));
  return terms.front().coefficient;
}

std::vector<double> balanced_leading_coefficients(std::size_t max_k) {
  std::vector<double> a(max_k + 1, 0.0);
  a[0] = 1.0;
  for (std::size_t k = 1; k <= max_k; ++k) {
    double cubic = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; i + j < k; ++j) cubic += a[i] * a[j] * a[k - 1 - i - j];
    }
    a[k] = -0.5 * cubic / static_cast<double>(k);
  }
  return a;
}

Complex g0_third(Complex eta, Complex g, Complex g1) {
  return -(g + 2.0 * eta * g1) / (9.0 * g * g * g);
}

Complex cubic_sum(std::size_t k, const std::vector<Complex>& g) {
  if (k == 0) return 0.0;
  Complex sum = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; a + b < k; ++b) sum += g[a] * g[b] * g[k - 1 - a - b];
  }
  return 0.5 * sum;
}

Complex quartic_sum(std::size_t k, const std::vector<Complex>& g, const std::vector<Complex>& g3) {
  Complex sum = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k && a + b <= k; ++b) {
      for (std::size_t c = 0; c < k && a + b + c <= k; ++c) {
        const std::size_t d = k - a - b - c;
        if (d < k) sum += g[a] * g[b] * g[c] * g3[d];
      }
    }
  }
  return sum;
}

namespace {

void require_lower(std::size_t k, const std::vector<EtaGridFunction>& lower) {
  if (k == 0 || lower.size() < k) {
    throw Error(Errc::configuration, "R_" + std::to_string(k) + " needs G_0..G_" +
                                         std::to_string(k == 0 ? 0 : k - 1));
  }
  const std::size_t n = lower[0].g.size();
  for (std::size_t j = 0; j < k; ++j) {
    if (lower[j].g.size() != n || lower[j].g3.size() != n) {
      throw Error(Errc::configuration,
                  "G_" + std::to_string(j) + " lacks values or third derivatives on the grid");
    }
  }
}

template <typename Combine>
std::vector<Complex> nodewise(std::size_t k, const std::vector<EtaGridFunction>& lower,
                              Combine combine) {
  require_lower(k, lower);
  const std::size_t n = lower[0].g.size();
  std::vector<Complex> out(n);
  std::vector<Complex> g(k), g3(k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      g[j] = lower[j].g[i];
      g3[j] = lower[j].g3[i];
    }
    out[i] = combine(cubic_sum(k, g), quartic_sum(k, g, g3));
  }
  return out;
}

}  // namespace

std::vector<Complex> assemble_Rk(std::size_t k, const std::vector<EtaGridFunction>& lower) {
  return nodewise(k, lower, [](Complex c, Complex q) { return c + q; });
}

std::vector<Complex> hierarchy_forcing(std::size_t k, const std::vector<EtaGridFunction>& lower) {
  return nodewise(k, lower, [](Complex c, Complex q) { return c - q; });
}

Complex gk_third(std::size_t k, Complex eta, Complex g0, Complex g0_third_value, Complex u,
                 Complex u1, Complex forcing) {
  const double kk = static_cast<double>(k);
  const Complex g0_cubed = g0 * g0 * g0;
  return (forcing - (2.0 / 9.0) * eta * u1 - 3.0 * g0 * g0 * g0_third_value * u +
          (7.0 * kk - 1.0) / 9.0 * u) /
         g0_cubed;
}

namespace {

// dy/deta for the stacked state (G_k, G_k', G_k''), k = 0..K.
void hierarchy_rhs(std::size_t max_k, Complex eta, const OdeState& y, OdeState& dy,
                   std::vector<Complex>& g, std::vector<Complex>& g3) {
  for (std::size_t k = 0; k <= max_k; ++k) g[k] = y[3 * k];
  g3[0] = g0_third(eta, y[0], y[1]);
  for (std::size_t k = 1; k <= max_k; ++k) {
    const Complex forcing = cubic_sum(k, g) - quartic_sum(k, g, g3);
    g3[k] = gk_third(k, eta, y[0], g3[0], y[3 * k], y[3 * k + 1], forcing);
  }
  for (std::size_t k = 0; k <= max_k; ++k) {
    dy[3 * k] = y[3 * k + 1];
    dy[3 * k + 1] = y[3 * k + 2];
    dy[3 * k + 2] = g3[k];
  }
}

std::vector<double> radii_for(const SolverConfig& cfg) {
  const auto count =
      static_cast<std::size_t>(std::floor((cfg.eta_max - cfg.eta_min) / cfg.eta_step + 1e-9)) + 1;
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = cfg.eta_max - static_cast<double>(i) * cfg.eta_step;
  return r;
}

void check_matching(const FarField& far, std::size_t max_k) {
  const auto balanced = balanced_leading_coefficients(max_k);
  for (std::size_t k = 0; k <= max_k; ++k) {
    const double a = far.leading(k);
    if (std::abs(a - balanced[k]) > 1e-12 * std::max(1.0, std::abs(a))) {
      throw Error(Errc::matching, "far-field balance gives A_" + std::to_string(k) + " = " +
                                      std::to_string(balanced[k]) + " but the outer series gives " +
                                      std::to_string(a));
    }
  }
}

}  // namespace

InnerSolution solve_hierarchy(std::size_t max_k, const SolverConfig& cfg) {
  cfg.validate();
  const double phi = cfg.ray_deg * kPi / 180.0;
  if (std::abs(phi) >= 2.0 * kPi / 9.0) {
    throw Error(Errc::configuration, "ray angle must lie in (-40, 40) degrees");
  }
  const double growth = kWkbRate * std::pow(cfg.eta_max, 2.25) * std::abs(std::sin(2.25 * phi));
  if (growth > std::log(1e6)) {
    throw Error(Errc::ill_conditioned,
                "inward integration along this ray amplifies exponentially small modes by e^" +
                    std::to_string(growth) + "; continue from the real axis instead");
  }
  const FarField far(max_k);
  check_matching(far, max_k);

  InnerSolution sol;
  sol.ray = std::polar(1.0, phi);
  sol.radii = radii_for(cfg);
  sol.orders.assign(max_k + 1, {});
  for (auto& o : sol.orders) {
    o.g.resize(sol.size());
    o.g1.resize(sol.size());
    o.g2.resize(sol.size());
    o.g3.resize(sol.size());
  }

  OdeState y(3 * (max_k + 1));
  for (std::size_t k = 0; k <= max_k; ++k) {
    const auto v = far.evaluate(k, sol.eta(0));
    y[3 * k] = v[0];
    y[3 * k + 1] = v[1];
    y[3 * k + 2] = v[2];
  }
  std::vector<Complex> g(max_k + 1), g3(max_k + 1);
  const OdeRhs rhs = [&](Complex eta, const OdeState& state, OdeState& dy) {
    hierarchy_rhs(max_k, eta, state, dy, g, g3);
  };
  const OdeOptions options = ode_options(cfg);
  OdeState dy(y.size());
  for (std::size_t i = 0; i < sol.size(); ++i) {
    if (i > 0) y = integrate_segment(rhs, sol.eta(i - 1), sol.eta(i), y, options);
    check_blow_up(sol.eta(i), y[1]);
    rhs(sol.eta(i), y, dy);
    for (std::size_t k = 0; k <= max_k; ++k) {
      sol.orders[k].g[i] = y[3 * k];
      sol.orders[k].g1[i] = y[3 * k + 1];
      sol.orders[k].g2[i] = y[3 * k + 2];
      sol.orders[k].g3[i] = dy[3 * k + 2];
    }
  }
  return sol;
}

EtaGridFunction solve_Gk(std::size_t k, const InnerSolution& base, const std::vector<Complex>& forcing,
                         const SolverConfig& cfg) {
  if (k == 0 || base.orders.empty() || base.size() < 6) {
    throw Error(Errc::configuration, "solve_Gk needs k >= 1 and G_0 on at least six nodes");
  }
  if (forcing.size() != base.size()) {
    throw Error(Errc::configuration, "forcing must be sampled on the solution grid");
  }
  const FarField far(k);
  check_matching(far, k);
  const auto& g0 = base.orders[0];
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (std::abs(g0.g[i]) < 1e-12) {
      throw SingularityProximity(base.eta(i), "G_0 vanishes on the grid");
    }
  }
  const double r0 = base.radii.front();
  const double h = base.radii.size() > 1 ? base.radii[0] - base.radii[1] : 1.0;

  // G_0 is carried along with u rather than interpolated.
  const OdeRhs rhs = [&](Complex eta, const OdeState& y, OdeState& dy) {
    const double x = (r0 - std::real(eta * std::conj(base.ray))) / h;
    const Complex f = lagrange6(forcing, x);
    const Complex t0 = g0_third(eta, y[0], y[1]);
    dy[0] = y[1];
    dy[1] = y[2];
    dy[2] = t0;
    dy[3] = y[4];
    dy[4] = y[5];
    dy[5] = gk_third(k, eta, y[0], t0, y[3], y[4], f);
  };
  const auto v = far.evaluate(k, base.eta(0));
  OdeState y{g0.g[0], g0.g1[0], g0.g2[0], v[0], v[1], v[2]};
  EtaGridFunction out;
  const OdeOptions options = ode_options(cfg);
  OdeState dy(6);
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i > 0) y = integrate_segment(rhs, base.eta(i - 1), base.eta(i), y, options);
    rhs(base.eta(i), y, dy);
    out.g.push_back(y[3]);
    out.g1.push_back(y[4]);
    out.g2.push_back(y[5]);
    out.g3.push_back(gk_third(k, base.eta(i), g0.g[i], g0.g3[i], y[3], y[4], forcing[i]));
  }
  return out;
}

std::vector<double> node_residuals(const InnerSolution& sol, std::size_t k) {
  if (k > sol.max_order()) throw Error(Errc::configuration, "order not present in the solution");
  const std::size_t n = sol.size();
  std::vector<double> res(n, 0.0);
  if (n < 7) return res;
  const double h = sol.radii[0] - sol.radii[1];
  const auto& u = sol.orders[k];
  const auto& g0 = sol.orders[0];
  std::vector<Complex> forcing;
  if (k > 0) {
    const std::vector<EtaGridFunction> lower(sol.orders.begin(), sol.orders.begin() + static_cast<long>(k));
    forcing = hierarchy_forcing(k, lower);
  }
  for (std::size_t i = 3; i + 3 < n; ++i) {
    // Index increases as r decreases, so d/dr = -d/di / h.
    const Complex di = (-u.g2[i - 3] + 9.0 * u.g2[i - 2] - 45.0 * u.g2[i - 1] + 45.0 * u.g2[i + 1] -
                        9.0 * u.g2[i + 2] + u.g2[i + 3]) /
                       60.0;
    const Complex third = -di / h / sol.ray;
    const Complex eta = sol.eta(i);
    Complex r;
    if (k == 0) {
      r = u.g[i] + 2.0 * eta * u.g1[i] + 9.0 * u.g[i] * u.g[i] * u.g[i] * third;
    } else {
      const Complex c = g0.g[i] * g0.g[i] * g0.g[i];
      r = c * third + (2.0 / 9.0) * eta * u.g1[i] + 3.0 * g0.g[i] * g0.g[i] * g0.g3[i] * u.g[i] -
          (7.0 * static_cast<double>(k) - 1.0) / 9.0 * u.g[i] - forcing[i];
    }
    res[i] = std::abs(r);
  }
  return res;
}

InnerValue inner_eval(const InnerSolution& sol, Complex eta, Complex tau,
                      std::optional<std::size_t> order) {
  if (sol.orders.empty() || sol.size() < 2) throw Error(Errc::configuration, "empty inner solution");
  const std::size_t k_max = order.value_or(sol.max_order());
  if (k_max > sol.max_order()) throw Error(Errc::configuration, "order not present in the solution");
  const Complex along = eta * std::conj(sol.ray);
  const double r = along.real();
  const double r0 = sol.radii.front();
  const double r_end = sol.radii.back();
  if (std::abs(along.imag()) > 1e-9 * std::max(1.0, r) || r > r0 * (1 + 1e-12) ||
      r < r_end * (1 - 1e-12)) {
    throw Error(Errc::configuration, "eta is not on the stored part of the ray");
  }
  const double h = sol.radii[0] - sol.radii[1];
  double x = (r0 - r) / h;
  if (std::abs(x - std::round(x)) < 1e-9) x = std::round(x);  // on a node
  const std::size_t i = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(x))), sol.size() - 2);
  const double t = x - static_cast<double>(i);
  // d/dt = (dr/dt) d/dr = -h ray d/deta.
  const Complex s = -h * sol.ray;
  auto value = [&](std::size_t k) {
    const auto& o = sol.orders[k];
    return quintic(t, o.g[i], s * o.g1[i], s * s * o.g2[i], o.g[i + 1], s * o.g1[i + 1],
                   s * s * o.g2[i + 1]);
  };
  InnerValue out;
  Complex tk = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  Complex last = 0.0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    last = tk * value(k);
    out.value += last;
    if (k > 0 && std::abs(last) >= previous) out.decreasing = false;
    previous = std::abs(last);
    tk *= tau;
  }
  if (k_max < sol.max_order()) {
    out.first_neglected = tk * value(k_max + 1);
    if (std::abs(out.first_neglected) >= previous) out.decreasing = false;
    out.error_proxy = std::abs(out.first_neglected);
  } else {
    out.error_proxy = std::abs(last);
  }
  return out;
}

Complex inner_residual(const InnerFunction& g, Complex eta, Complex tau) {
  const double h = 0.01 * std::max(1.0, std::abs(eta));
  auto at = [&](int j) { return g(eta + static_cast<double>(j) * h, tau); };
  const Complex f0 = at(0);
  const Complex d1 = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
  const Complex d3 = (-at(3) + 8.0 * at(2) - 13.0 * at(1) + 13.0 * at(-1) - 8.0 * at(-2) + at(-3)) /
                     (8.0 * h * h * h);
  const double ht = 1e-3 * std::max(1.0, std::abs(tau));
  const Complex dt = (-g(eta, tau + 2.0 * ht) + 8.0 * g(eta, tau + ht) - 8.0 * g(eta, tau - ht) +
                      g(eta, tau - 2.0 * ht)) /
                     (12.0 * ht);
  const Complex cube = f0 * f0 * f0;
  return -f0 / 9.0 - (2.0 / 9.0) * eta * d1 + (7.0 / 9.0) * tau * dt + 0.5 * tau * cube - cube * d3;
}

Complex inner_residual(const InnerSolution& sol, std::size_t node, Complex tau) {
  Complex g = 0.0, g1 = 0.0, g3 = 0.0, gt = 0.0, tk = 1.0, tkm1 = 0.0;
  for (std::size_t k = 0; k <= sol.max_order(); ++k) {
    const auto& o = sol.orders[k];
    g += tk * o.g[node];
    g1 += tk * o.g1[node];
    g3 += tk * o.g3[node];
    gt += static_cast<double>(k) * tkm1 * o.g[node];
    tkm1 = tk;
    tk *= tau;
  }
  const Complex eta = sol.eta(node);
  const Complex cube = g * g * g;
  return -g / 9.0 - (2.0 / 9.0) * eta * g1 + (7.0 / 9.0) * tau * gt + 0.5 * tau * cube - cube * g3;
}

G0Continuation::G0Continuation(const SolverConfig& cfg, double start_radius)
    : far_(0, 8), options_(ode_options(cfg)), start_radius_(start_radius) {}

G0State G0Continuation::start() const {
  const Complex eta = start_radius_;
  const auto v = far_.evaluate(0, eta);
  return {eta, v[0], v[1], v[2]};
}

G0State G0Continuation::advance(const G0State& from, Complex to) const {
  const OdeRhs rhs = [](Complex eta, const OdeState& y, OdeState& dy) {
    dy[0] = y[1];
    dy[1] = y[2];
    dy[2] = g0_third(eta, y[0], y[1]);
  };
  const OdeState y = integrate_segment(rhs, from.eta, to, {from.g, from.g1, from.g2}, options_);
  check_blow_up(to, y[1]);
  return {to, y[0], y[1], y[2]};
}

G0State G0Continuation::march(G0State from, const std::vector<Complex>& points) const {
  for (const Complex& p : points) from = advance(from, p);
  return from;
}

std::vector<Complex> arc_points(double r, double phi_from, double phi_to, int pieces) {
  std::vector<Complex> pts;
  for (int j = 1; j <= pieces; ++j) {
    pts.push_back(std::polar(r, phi_from + (phi_to - phi_from) * j / pieces));
  }
  return pts;
}

}  // namespace asymkit::hd
