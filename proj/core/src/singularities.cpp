#include "asymkit/singularities.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <string>

#include "asymkit/error.hpp"

namespace asymkit::hd {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLn4 = std::log(4.0);
const Complex kI(0.0, 1.0);

Complex cpow(Complex z, double e) { return std::exp(e * std::log(z)); }

// Same value modulo 2 pi i.
bool same_on_lattice(Complex a, Complex b, double tol) {
  const Complex d = a - b;
  const double k = std::round(d.imag() / (2.0 * kPi));
  return std::abs(d.real()) < tol && std::abs(d.imag() - 2.0 * kPi * k) < tol;
}

}  // namespace

double stokes_rate() { return 4.0 * std::sqrt(2.0) / 27.0; }

Complex u_equation(Complex zeta, Complex u) {
  const Complex s = std::sqrt(u);
  return 0.25 * std::exp(zeta + 2.0) - std::exp(-2.0 * s) * (s + 1.0) / (s - 1.0);
}

Complex zeta_of_u(Complex u) {
  const Complex s = std::sqrt(u);
  return -2.0 + kLn4 - 2.0 * s + std::log((s + 1.0) / (s - 1.0));
}

Complex solve_U(Complex zeta, Complex seed, const SolverConfig& cfg) {
  constexpr double kCollision = 1e-8;
  Complex u = seed;
  if (std::abs(std::sqrt(u) - 1.0) < kCollision) {
    throw Error(Errc::branch_collision, "seed lies on the branch locus sqrt U = 1");
  }
  std::vector<double> history;
  double f_abs = std::abs(u_equation(zeta, u));
  history.push_back(f_abs);
  for (int it = 0; it < cfg.max_newton_iterations; ++it) {
    if (f_abs < cfg.newton_tol) return u;
    const Complex s = std::sqrt(u);
    const Complex f = u_equation(zeta, u);
    const Complex df = std::exp(-2.0 * s) * s / ((s - 1.0) * (s - 1.0));
    if (df == Complex(0.0)) {
      throw ConvergenceError(Errc::no_convergence, "Newton derivative vanishes at U = 0", history);
    }
    Complex step = f / df;
    // Halve the step while the residual grows.
    Complex next = u - step;
    double next_abs = std::abs(u_equation(zeta, next));
    for (int halving = 0; halving < 30 && !(next_abs < f_abs); ++halving) {
      step *= 0.5;
      next = u - step;
      next_abs = std::abs(u_equation(zeta, next));
    }
    if (std::abs(std::sqrt(next) - 1.0) < kCollision) {
      throw Error(Errc::branch_collision, "Newton iterate reached the branch locus sqrt U = 1");
    }
    u = next;
    f_abs = next_abs;
    history.push_back(f_abs);
  }
  if (f_abs < cfg.newton_tol) return u;
  throw ConvergenceError(Errc::no_convergence,
                         "solve_U: Newton did not converge in " +
                             std::to_string(cfg.max_newton_iterations) + " iterations",
                         history);
}

std::vector<ZetaSingularity> zeta_singularities(int n_lo, int n_hi) {
  if (n_hi < n_lo) throw Error(Errc::configuration, "empty branch range");
  // d zeta / dU by central differences; its square is analytic near the root.
  auto dzeta = [](Complex u) {
    const double h = 1e-4 * std::max(std::abs(u), 1e-7);
    const Complex d = (zeta_of_u(u + h) - zeta_of_u(u - h)) / (2.0 * h);
    return d * d;
  };
  Complex u0 = Complex(0.2, 0.1), u1 = Complex(0.1, 0.05);
  Complex d0 = dzeta(u0), d1 = dzeta(u1);
  for (int it = 0; it < 200 && std::abs(u1) > 1e-12; ++it) {
    if (d1 == d0) break;
    const Complex u2 = u1 - d1 * (u1 - u0) / (d1 - d0);
    u0 = u1;
    d0 = d1;
    u1 = u2;
    d1 = dzeta(u1);
  }
  const Complex numeric_base = zeta_of_u(u1);

  std::vector<ZetaSingularity> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    ZetaSingularity z;
    z.n = n;
    const Complex shift = 2.0 * kPi * n * kI;
    z.displayed = 2.0 - kLn4 - kPi * kI + shift;
    z.derived = kLn4 - 2.0 - kPi * kI + shift;
    const double k = std::round((z.derived - numeric_base).imag() / (2.0 * kPi));
    z.numeric = numeric_base + 2.0 * kPi * k * kI;
    z.matches_displayed = same_on_lattice(z.numeric, z.displayed, 1e-6);
    z.matches_derived = same_on_lattice(z.numeric, z.derived, 1e-6);
    out.push_back(z);
  }
  return out;
}

namespace {

Complex equation_rhs(int n, Complex c, int orientation) {
  return -2.0 + kLn4 - static_cast<double>(orientation) * (2.0 * n - 1.0) * kPi * kI + std::log(c);
}

double wedge_distance(Complex eta) { return std::abs(std::arg(eta) + 4.0 * kPi / 9.0); }

}  // namespace

Complex singularity_equation(Complex eta, int n, Complex c, int orientation) {
  const double s = stokes_rate();
  return kI * s * cpow(eta, 2.25) + 1.125 * std::log(eta) - equation_rhs(n, c, orientation);
}

Complex singularity_seed(int n, Complex c, int orientation) {
  const Complex w = equation_rhs(n, c, orientation) / (kI * stokes_rate());
  Complex best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int m = -2; m <= 2; ++m) {
    const Complex candidate = std::exp((4.0 / 9.0) * (std::log(w) + 2.0 * kPi * m * kI));
    const double d = wedge_distance(candidate);
    if (d < best_distance) {
      best_distance = d;
      best = candidate;
    }
  }
  return best;
}

SingularityRecord eta_singularity(int n, const StokesConstant& c, const SolverConfig& cfg) {
  if (n < cfg.n_min) {
    throw Error(Errc::configuration,
                "branch index " + std::to_string(n) + " is below n_min = " + std::to_string(cfg.n_min));
  }
  if (c.value == Complex(0.0)) throw Error(Errc::configuration, "Stokes constant must be nonzero");
  const int o = cfg.orientation;
  const double s = stokes_rate();
  SingularityRecord rec;
  rec.n = n;
  rec.stokes = c.value;
  rec.seed = singularity_seed(n, c.value, o);
  const double scale = std::max(1.0, std::abs(equation_rhs(n, c.value, o)));

  Complex eta = rec.seed;
  double residual = std::abs(singularity_equation(eta, n, c.value, o));
  std::vector<double> history{residual};
  int polish = 0;
  int it = 0;
  for (; it < cfg.max_newton_iterations; ++it) {
    if (residual <= cfg.newton_tol * scale && ++polish > 2) break;
    const Complex e = singularity_equation(eta, n, c.value, o);
    const Complex de = 2.25 * kI * s * cpow(eta, 1.25) + 1.125 / eta;
    Complex step = e / de;
    Complex next = eta - step;
    double next_res = std::abs(singularity_equation(next, n, c.value, o));
    for (int halving = 0; halving < 30 && !(next_res < residual); ++halving) {
      step *= 0.5;
      next = eta - step;
      next_res = std::abs(singularity_equation(next, n, c.value, o));
    }
    if (!(next_res < residual)) break;  // no further progress at machine precision
    eta = next;
    residual = next_res;
    history.push_back(residual);
  }
  if (!(residual <= cfg.newton_tol * scale)) {
    throw ConvergenceError(Errc::no_convergence,
                           "eta_singularity: Newton did not converge for n = " + std::to_string(n),
                           history);
  }
  rec.eta_s = eta;
  rec.newton_residual = residual;
  rec.iterations = it;
  rec.in_wedge = wedge_distance(eta) <= cfg.wedge_half_width;
  return rec;
}

std::vector<SingularityRecord> eta_singularities(int n_lo, int n_hi, const StokesConstant& c,
                                                 const SolverConfig& cfg) {
  if (n_hi < n_lo) throw Error(Errc::configuration, "empty branch range");
  std::vector<std::future<SingularityRecord>> jobs;
  for (int n = n_lo; n <= n_hi; ++n) {
    jobs.push_back(std::async(std::launch::async, [n, &c, &cfg] { return eta_singularity(n, c, cfg); }));
  }
  std::vector<SingularityRecord> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

double fit_singularity_exponent(const std::vector<Sample>& samples, Complex eta_s) {
  if (samples.size() < 8) throw Error(Errc::sampling, "exponent fit needs at least 8 samples");
  std::vector<double> x, y;
  for (const auto& [eta, g] : samples) {
    const double d = std::abs(eta - eta_s);
    const double m = std::abs(g);
    if (!(d > 0.0) || !(m > 0.0)) throw Error(Errc::sampling, "sample at the singularity or a zero of G");
    x.push_back(std::log(d));
    y.push_back(std::log(m));
  }
  bool increasing = true, decreasing = true;
  for (std::size_t i = 1; i < x.size(); ++i) {
    increasing = increasing && x[i] > x[i - 1];
    decreasing = decreasing && x[i] < x[i - 1];
  }
  if (!increasing && !decreasing) throw Error(Errc::sampling, "sample distances are not monotone");
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*hi - *lo < std::log(10.0) - 1e-12) throw Error(Errc::sampling, "sample distances span less than a decade");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Complex stokes_template(Complex eta) {
  return 16.0 * std::exp(-4.0) * cpow(eta, -1.625) * std::exp(-kI * stokes_rate() * cpow(eta, 2.25));
}

Complex g0_algebraic(Complex eta) {
  static const FarField far(0, 8);
  return far.evaluate(0, eta)[0];
}

StokesConstant estimate_stokes_constant(const std::vector<Sample>& samples, const SolverConfig&) {
  if (samples.size() < 4) throw Error(Errc::sampling, "Stokes fit needs at least 4 samples");
  // Normal equations for (C, D) in sum |r - (C + D eta^{-9/4}) phi|^2.
  Complex a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  double signal = 0, scale = 0;
  std::vector<Complex> r, p, q;
  for (const auto& [eta, g] : samples) {
    const Complex phi = stokes_template(eta);
    const Complex psi = phi * cpow(eta, -2.25);
    const Complex diff = g - g0_algebraic(eta);
    a11 += std::norm(phi);
    a12 += std::conj(phi) * psi;
    a22 += std::norm(psi);
    b1 += std::conj(phi) * diff;
    b2 += std::conj(psi) * diff;
    signal += std::norm(diff);
    scale += std::norm(g);
    r.push_back(diff);
    p.push_back(phi);
    q.push_back(psi);
  }
  if (signal <= 1e-26 * scale) {
    throw Error(Errc::indeterminate_constant,
                "exponentially small correction is below the noise floor; supply C");
  }
  const Complex det = a11 * a22 - a12 * std::conj(a12);
  if (std::abs(det) <= 1e-14 * std::abs(a11 * a22)) {
    throw Error(Errc::indeterminate_constant, "Stokes fit is degenerate on these samples");
  }
  const Complex c = (b1 * a22 - a12 * b2) / det;
  const Complex d = (a11 * b2 - std::conj(a12) * b1) / det;
  double misfit = 0;
  for (std::size_t i = 0; i < r.size(); ++i) misfit += std::norm(r[i] - c * p[i] - d * q[i]);
  const double rel = std::sqrt(misfit / signal);
  if (!(rel < std::sqrt(0.1))) {
    throw Error(Errc::indeterminate_constant,
                "model explains too little of the correction (relative misfit " +
                    std::to_string(rel) + ")");
  }
  StokesConstant out;
  out.value = c;
  out.provenance = StokesConstant::Provenance::fitted;
  out.fit_residual = rel;
  out.correction = d;
  return out;
}

std::vector<Sample> g0_ray_samples(double phi, double r_from, double r_to, int count,
                                   const SolverConfig& cfg, double arc_radius) {
  if (count < 2 || !(r_to > r_from) || !(r_from >= arc_radius)) {
    throw Error(Errc::configuration, "need count >= 2 and arc_radius <= r_from < r_to");
  }
  const G0Continuation cont(cfg);
  G0State st = cont.advance(cont.start(), arc_radius);
  st = cont.march(st, arc_points(arc_radius, 0.0, phi, 40));
  const Complex ray = std::polar(1.0, phi);
  st = cont.advance(st, r_from * ray);
  std::vector<Sample> out{{st.eta, st.g}};
  for (int i = 1; i < count; ++i) {
    st = cont.advance(st, (r_from + (r_to - r_from) * i / (count - 1)) * ray);
    out.emplace_back(st.eta, st.g);
  }
  return out;
}

StokesConstant calibrate_stokes_constant(const SolverConfig& cfg) {
  return estimate_stokes_constant(g0_ray_samples(-70.0 * kPi / 180.0, 6.0, 9.0, 31, cfg), cfg);
}

LocatedSingularity locate_singularity(int n, const StokesConstant& c, const SolverConfig& cfg,
                                      double approach_deg) {
  constexpr double kArcRadius = 3.0;
  LocatedSingularity out;
  out.n = n;
  out.predicted = eta_singularity(n, c, cfg).eta_s;
  const double phi = approach_deg * kPi / 180.0;
  const Complex ray = std::polar(1.0, phi);
  const double radius = std::abs(out.predicted);
  if (radius <= kArcRadius) throw Error(Errc::configuration, "predicted singularity is inside the arc");

  const G0Continuation cont(cfg);
  G0State st = cont.advance(cont.start(), kArcRadius);
  st = cont.march(st, arc_points(kArcRadius, 0.0, phi, 40));
  const int ray_pieces = std::max(1, static_cast<int>(std::ceil((radius - kArcRadius) / 0.5)));
  for (int i = 1; i <= ray_pieces; ++i) {
    st = cont.advance(st, (kArcRadius + (radius - kArcRadius) * i / ray_pieces) * ray);
  }
  // Three quarters of the way toward the prediction, in short pieces.
  const Complex off = st.eta - out.predicted;
  const Complex anchor_point = out.predicted + 0.25 * off;
  const int pieces = std::max(1, static_cast<int>(std::ceil(0.75 * std::abs(off) / 0.1)));
  const Complex from = st.eta;
  for (int i = 1; i <= pieces; ++i) st = cont.advance(st, from + (anchor_point - from) * (double(i) / pieces));
  const G0State anchor = st;

  // Local estimators for G ~ a (eta - eta_s)^p.
  Complex guess = out.predicted;
  double p = 0.0;
  for (int it = 0; it < 80; ++it) {
    const Complex ratio = st.g * st.g2 / (st.g1 * st.g1);
    const Complex pc = 1.0 / (1.0 - ratio);
    p = pc.real();
    guess = st.eta - pc * st.g / st.g1;
    const Complex delta = guess - st.eta;
    if (std::abs(delta) < 1e-9) break;
    Complex step = 0.6 * delta;
    if (std::abs(step) > 0.1) step *= 0.1 / std::abs(step);
    try {
      st = cont.advance(st, st.eta + step);
    } catch (const SingularityProximity&) {
      break;
    }
  }
  out.located = guess;
  out.local_exponent = p;

  // Approach samples from the anchor straight toward the located point,
  // distances d0 * 10^{-j/10}, two decades.
  const Complex u = (anchor.eta - out.located) / std::abs(anchor.eta - out.located);
  const double d0 = std::min(2e-3, 0.5 * std::abs(anchor.eta - out.located));
  st = anchor;
  for (int j = 0; j <= 20; ++j) {
    const Complex target = out.located + d0 * std::pow(10.0, -j / 10.0) * u;
    st = cont.advance(st, target);
    out.samples.emplace_back(st.eta, st.g);
  }
  out.fitted_exponent = fit_singularity_exponent(out.samples, out.located);
  return out;
}

}  // namespace asymkit::hd
