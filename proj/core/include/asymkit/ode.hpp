#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace asymkit {

using Complex = std::complex<double>;
using OdeState = std::vector<Complex>;
/// dy/deta at (eta, y), written into dydeta (pre-sized).
using OdeRhs = std::function<void(Complex eta, const OdeState& y, OdeState& dydeta)>;

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_steps = 200000;
  /// Step sizes below min_step (absolute, in |eta|) count as underflow.
  double min_step = 1e-12;
};

struct OdeStats {
  int accepted = 0;
  int rejected = 0;
};

/// Dormand-Prince 5(4) along the straight segment a -> b in the complex
/// eta-plane. Step underflow, a non-finite state or max_steps raise
/// SingularityProximity carrying the last accepted eta.
OdeState integrate_segment(const OdeRhs& f, Complex a, Complex b, OdeState y,
                           const OdeOptions& options = {}, OdeStats* stats = nullptr);

}  // namespace asymkit
