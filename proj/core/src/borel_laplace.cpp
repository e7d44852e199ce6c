#include "asymkit/borel_laplace.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

#include "asymkit/error.hpp"
#include "asymkit/quadrature.hpp"

namespace asymkit {

namespace {

Complex horner(const std::vector<Complex>& c, Complex p) {
  Complex v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * p + *it;
  return v;
}

}  // namespace

Complex BorelSeries::evaluate(Complex p) const { return horner(coeffs, p); }

Complex PadeApproximant::evaluate(Complex p) const {
  return horner(numerator, p) / horner(denominator, p);
}

std::vector<Complex> PadeApproximant::poles() const {
  std::size_t degree = denominator.size();
  while (degree > 0 && denominator[degree - 1] == Complex(0.0)) --degree;
  if (degree <= 1) return {};
  const std::size_t n = degree - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                      static_cast<Eigen::Index>(n));
  const Complex lead = denominator[n];
  for (std::size_t i = 0; i < n; ++i) {
    companion(0, static_cast<Eigen::Index>(i)) = -denominator[n - 1 - i] / lead;
    if (i + 1 < n) companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    roots.push_back(solver.eigenvalues()(i));
  }
  return roots;
}

std::vector<Complex> PadeApproximant::taylor(std::size_t count) const {
  std::vector<Complex> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    Complex v = k < numerator.size() ? numerator[k] : Complex(0.0);
    for (std::size_t i = 1; i <= k && i < denominator.size(); ++i) v -= denominator[i] * out[k - i];
    out[k] = v / denominator[0];
  }
  return out;
}

BorelSeries borel_transform(const std::vector<Complex>& a) {
  BorelSeries b;
  b.coeffs.resize(a.size());
  double factorial = 1.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (j > 0) factorial *= static_cast<double>(j);
    b.coeffs[j] = a[j] / factorial;
  }
  // Root test over the upper half of the available coefficients.
  double limsup = 0.0;
  for (std::size_t j = std::max<std::size_t>(1, a.size() / 2); j < a.size(); ++j) {
    const double mag = std::abs(b.coeffs[j]);
    if (mag > 0.0) limsup = std::max(limsup, std::pow(mag, 1.0 / static_cast<double>(j)));
  }
  b.radius_estimate = limsup > 0.0 ? 1.0 / limsup : std::numeric_limits<double>::infinity();
  return b;
}

PadeApproximant pade_approximant(const BorelSeries& b, int m, int n) {
  if (m < 0 || n < 0) throw Error(Errc::configuration, "Pade degrees must be non-negative");
  if (static_cast<std::size_t>(m + n + 1) > b.coeffs.size()) {
    throw Error(Errc::configuration, "[" + std::to_string(m) + "/" + std::to_string(n) +
                                         "] Pade needs " + std::to_string(m + n + 1) +
                                         " coefficients, have " +
                                         std::to_string(b.coeffs.size()));
  }
  auto coeff = [&](int k) { return k < 0 ? Complex(0.0) : b.coeffs[static_cast<std::size_t>(k)]; };
  double scale = 0.0;
  for (const auto& c : b.coeffs) scale = std::max(scale, std::abs(c));

  for (int nn = n; nn >= 0; --nn) {
    PadeApproximant pa;
    pa.denominator.assign(static_cast<std::size_t>(nn) + 1, 0.0);
    pa.denominator[0] = 1.0;
    if (nn > 0) {
      // sum_{i=1}^{nn} q_i b_{k-i} = -b_k for k = m+1 .. m+nn.
      Eigen::MatrixXcd a(nn, nn);
      Eigen::VectorXcd rhs(nn);
      for (int r = 0; r < nn; ++r) {
        const int k = m + 1 + r;
        for (int i = 1; i <= nn; ++i) a(r, i - 1) = coeff(k - i);
        rhs(r) = -coeff(k);
      }
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
      lu.setThreshold(1e-13);
      if (scale == 0.0 || lu.rank() < nn) {
        if (nn == 1) {
          throw Error(Errc::degeneracy, "Pade matching system is singular down to n = 1");
        }
        continue;
      }
      const Eigen::VectorXcd q = lu.solve(rhs);
      for (int i = 1; i <= nn; ++i) pa.denominator[static_cast<std::size_t>(i)] = q(i - 1);
    }
    pa.numerator.assign(static_cast<std::size_t>(m) + 1, 0.0);
    for (int k = 0; k <= m; ++k) {
      Complex v = 0.0;
      for (int i = 0; i <= std::min(k, nn); ++i) v += pa.denominator[static_cast<std::size_t>(i)] * coeff(k - i);
      pa.numerator[static_cast<std::size_t>(k)] = v;
    }
    return pa;
  }
  throw Error(Errc::degeneracy, "Pade construction failed");
}

LaplaceResult laplace_sum(const BorelFunction& b, Complex t, const SolverConfig& cfg) {
  if (t == Complex(0.0)) throw Error(Errc::configuration, "laplace_sum needs t != 0");
  const double mod_t = std::abs(t);
  const Complex dir = t / mod_t;
  // On the ray p = s dir the kernel is e^{-s/|t|}.
  const RealToComplex integrand = [&](double s) {
    return dir * std::exp(-s / mod_t) * b(s * dir);
  };
  QuadratureOptions opts;
  opts.abs_tol = 0.05 * cfg.quad_tol;
  opts.rel_tol = 0.05 * cfg.quad_tol;
  opts.max_subdivisions = cfg.quad_max_subdivisions;

  const double width = 8.0 * mod_t;
  constexpr int kMaxChunks = 400;
  constexpr int kGrowthLimit = 6;
  Complex total = 0.0;
  double error = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (int chunk = 0; chunk < kMaxChunks; ++chunk) {
    const double a = chunk * width;
    QuadratureResult r;
    try {
      // Tolerances relative to the running total, not the (possibly tiny) chunk.
      opts.abs_tol = 0.05 * cfg.quad_tol * std::max(std::abs(total), 1e-300);
      r = integrate(integrand, a, a + width, opts);
    } catch (const ContourError& e) {
      const Complex p = e.offending_point().real() * dir;
      throw ContourError(p, "Borel function is not finite at p = (" + std::to_string(p.real()) +
                                ", " + std::to_string(p.imag()) + ")");
    }
    total += r.value;
    error += r.error;
    const double mag = std::abs(r.value);
    if (mag <= cfg.quad_tol * std::abs(total)) {
      // The kernel shrinks by e^{-8} per chunk; what is left is below |r.value|.
      error += mag;
      return {total, error};
    }
    growth = (mag > previous) ? growth + 1 : 0;
    if (growth >= kGrowthLimit) {
      throw Error(Errc::divergence, "Laplace integrand grows along the ray up to |p| = " +
                                        std::to_string(a + width));
    }
    previous = mag;
  }
  throw Error(Errc::divergence, "Laplace integral did not settle within " +
                                    std::to_string(kMaxChunks) + " chunks");
}

LaplaceResult laplace_sum(const PadeApproximant& b, Complex t, const SolverConfig& cfg) {
  if (t == Complex(0.0)) throw Error(Errc::configuration, "laplace_sum needs t != 0");
  const Complex dir = t / std::abs(t);
  for (const Complex& pole : b.poles()) {
    const Complex along = pole * std::conj(dir);
    if (along.real() >= 0.0 && std::abs(along.imag()) < 1e-8 * std::max(1.0, std::abs(pole))) {
      throw ContourError(pole, "Pade pole on the integration ray at p = (" +
                                   std::to_string(pole.real()) + ", " +
                                   std::to_string(pole.imag()) + ")");
    }
  }
  return laplace_sum([&b](Complex p) { return b.evaluate(p); }, t, cfg);
}

}  // namespace asymkit
