#include "asymkit/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "asymkit/error.hpp"

namespace asymkit {

namespace {

// QUADPACK abscissae and weights; xgk[1], xgk[3], xgk[5], xgk[7] are the
// 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  std::complex<double> value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

std::complex<double> checked(const RealToComplex& f, double s) {
  const std::complex<double> v = f(s);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw ContourError({s, 0.0}, "integrand is not finite at abscissa " + std::to_string(s));
  }
  return v;
}

Segment gauss_kronrod(const RealToComplex& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = checked(f, center);
  std::complex<double> kronrod = fc * kWgk[7];
  std::complex<double> gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const std::complex<double> sum = checked(f, center - dx) + checked(f, center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const RealToComplex& f, double a, double b,
                           const QuadratureOptions& options) {
  if (a == b) return {};
  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod(f, a, b);
  std::complex<double> total = first.value;
  double error = first.error;
  int evaluations = 15;
  heap.push(first);
  int subdivisions = 0;
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
    if (++subdivisions > options.max_subdivisions) {
      throw ConvergenceError(Errc::no_convergence,
                             "quadrature did not reach tolerance; error estimate " +
                                 std::to_string(error),
                             {error});
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gauss_kronrod(f, worst.a, mid);
    Segment right = gauss_kronrod(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the incremental updates.
  std::complex<double> value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {value, err, evaluations};
}

}  // namespace asymkit
