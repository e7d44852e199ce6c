#include "asymkit/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asymkit/error.hpp"

namespace asymkit {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat (embedded fourth-order weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

bool finite(const OdeState& y) {
  return std::all_of(y.begin(), y.end(), [](Complex v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

}  // namespace

OdeState integrate_segment(const OdeRhs& f, Complex a, Complex b, OdeState y,
                           const OdeOptions& options, OdeStats* stats) {
  const double length = std::abs(b - a);
  if (length == 0.0) return y;
  const Complex dir = (b - a) / length;
  const std::size_t n = y.size();
  OdeState k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);

  // Parameter s in [0, length]; d/ds = dir d/deta.
  auto eval = [&](double s, const OdeState& state, OdeState& out) {
    f(a + s * dir, state, out);
    for (auto& v : out) v *= dir;
  };

  double s = 0.0;
  double h = std::min(length, 0.01 * std::max(1.0, length));
  eval(s, y, k1);
  if (!finite(k1)) throw SingularityProximity(a, "ODE right-hand side is not finite at the start");
  int steps = 0;
  OdeStats local;
  while (s < length) {
    if (++steps > options.max_steps) {
      throw SingularityProximity(a + s * dir, "ODE step budget exhausted near eta = " +
                                                  std::to_string((a + s * dir).real()) + "," +
                                                  std::to_string((a + s * dir).imag()));
    }
    bool last = false;
    if (s + h >= length) {
      h = length - s;
      last = true;
    }
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    eval(s + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    eval(s + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval(s + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    eval(s + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i) {
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    }
    eval(s + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i) {
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    eval(s + h, y5, k7);

    double err = 0.0;
    bool ok = finite(y5) && finite(k7);
    if (ok) {
      for (std::size_t i = 0; i < n; ++i) {
        const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                               e7 * k7[i]);
        const double sc =
            options.abs_tol + options.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        const double r = std::abs(e) / sc;
        err += r * r;
      }
      err = std::sqrt(err / static_cast<double>(n));
      ok = std::isfinite(err);
    }
    if (ok && err <= 1.0) {
      s = last ? length : s + h;
      y.swap(y5);
      k1.swap(k7);
      ++local.accepted;
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= factor;
    } else {
      ++local.rejected;
      h *= ok ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.25;
    }
    if (s < length && h < options.min_step) {
      const Complex at = a + s * dir;
      throw SingularityProximity(at, "ODE step underflow near eta = (" + std::to_string(at.real()) +
                                         ", " + std::to_string(at.imag()) + ")");
    }
  }
  if (stats) {
    stats->accepted += local.accepted;
    stats->rejected += local.rejected;
  }
  return y;
}

}  // namespace asymkit
