#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "asymkit/error.hpp"
#include "asymkit/harry_dym_inner.hpp"
#include "asymkit/harry_dym_outer.hpp"

using namespace asymkit;
using namespace asymkit::hd;

namespace {

const InnerSolution& hierarchy() {
  static const InnerSolution sol = solve_hierarchy(3, SolverConfig{});
  return sol;
}

std::size_t node_near(const InnerSolution& sol, double r) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < sol.size(); ++i) {
    if (std::abs(sol.radii[i] - r) < std::abs(sol.radii[best] - r)) best = i;
  }
  return best;
}

// Every ordered tuple, no symmetry shortcuts.
Complex brute_force_rk(std::size_t k, const std::vector<Complex>& g, const std::vector<Complex>& g3) {
  Complex cubic = 0, quartic = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        if (a + b + c == k - 1) cubic += g[a] * g[b] * g[c];
        for (std::size_t d = 0; d < k; ++d) {
          if (a + b + c + d == k) quartic += g[a] * g[b] * g[c] * g3[d];
        }
      }
  return 0.5 * cubic + quartic;
}

}  // namespace

TEST(InnerVariables, Scaling) {
  const auto p = to_inner(1.0 + 1e-3, 1e-3);
  EXPECT_NEAR(std::abs(p.eta - 1.0 / std::pow(1e-3, 2.0 / 9.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.tau - std::pow(1e-3, 7.0 / 9.0)), 0.0, 1e-15);
}

TEST(AssembleRk, FirstOrderIsHalfCube) {
  const auto& sol = hierarchy();
  const std::vector<EtaGridFunction> lower{sol.orders[0]};
  const auto r1 = assemble_Rk(1, lower);
  for (std::size_t i = 0; i < sol.size(); i += 37) {
    const Complex g = sol.orders[0].g[i];
    EXPECT_NEAR(std::abs(r1[i] - 0.5 * g * g * g), 0.0, 1e-15);
  }
}

TEST(AssembleRk, SecondOrderTuples) {
  const auto& sol = hierarchy();
  const std::vector<EtaGridFunction> lower{sol.orders[0], sol.orders[1]};
  const auto r2 = assemble_Rk(2, lower);
  for (std::size_t i = 0; i < sol.size(); i += 41) {
    const Complex g0 = sol.orders[0].g[i], g1 = sol.orders[1].g[i];
    const Complex g0t = sol.orders[0].g3[i], g1t = sol.orders[1].g3[i];
    const Complex expected = 1.5 * g0 * g0 * g1 + 3.0 * g0 * g0 * g1 * g1t + 3.0 * g0 * g1 * g1 * g0t;
    EXPECT_NEAR(std::abs(r2[i] - expected), 0.0, 1e-14 * std::max(1.0, std::abs(expected)));
  }
}

TEST(AssembleRk, MatchesBruteForceEnumeration) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<EtaGridFunction> lower(k);
    for (auto& f : lower) {
      for (int i = 0; i < 5; ++i) {
        f.g.emplace_back(u(rng), u(rng));
        f.g1.emplace_back(u(rng), u(rng));
        f.g2.emplace_back(u(rng), u(rng));
        f.g3.emplace_back(u(rng), u(rng));
      }
    }
    const auto r = assemble_Rk(k, lower);
    const auto forcing = hierarchy_forcing(k, lower);
    for (std::size_t i = 0; i < 5; ++i) {
      std::vector<Complex> g, g3;
      for (const auto& f : lower) {
        g.push_back(f.g[i]);
        g3.push_back(f.g3[i]);
      }
      EXPECT_NEAR(std::abs(r[i] - brute_force_rk(k, g, g3)), 0.0, 1e-12) << "k=" << k;
      EXPECT_NEAR(std::abs(r[i] - (cubic_sum(k, g) + quartic_sum(k, g, g3))), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(forcing[i] - (cubic_sum(k, g) - quartic_sum(k, g, g3))), 0.0, 1e-12);
    }
  }
}

TEST(AssembleRk, VanishingLowerOrders) {
  std::vector<EtaGridFunction> lower(3);
  for (auto& f : lower) f.g = f.g1 = f.g2 = f.g3 = std::vector<Complex>(7, 0.0);
  for (const auto& v : assemble_Rk(3, lower)) EXPECT_EQ(v, Complex(0.0));
}

TEST(AssembleRk, MissingDerivativesAreConfigurationError) {
  std::vector<EtaGridFunction> lower(1);
  lower[0].g = std::vector<Complex>(4, 1.0);
  try {
    (void)assemble_Rk(1, lower);
    FAIL() << "expected a configuration error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::configuration);
  }
}

TEST(SolveG0, FarFieldNormalisation) {
  const auto& sol = hierarchy();
  EXPECT_LT(std::abs(sol.orders[0].g[0] * std::sqrt(sol.radii[0]) - 1.0), 0.01);
}

TEST(SolveG0, RecoversSecondFarFieldCoefficient) {
  // beta(eta) = (G_0 eta^{1/2} - 1) eta^{9/2} = beta + gamma eta^{-9/2} + ...
  const auto& sol = hierarchy();
  auto beta = [&](double r) {
    const std::size_t i = node_near(sol, r);
    const double eta = sol.radii[i];
    return std::pair{eta, (sol.orders[0].g[i].real() * std::sqrt(eta) - 1.0) * std::pow(eta, 4.5)};
  };
  const auto [e1, b1] = beta(12.0);
  const auto [e2, b2] = beta(15.0);
  const double w1 = std::pow(e1, -4.5), w2 = std::pow(e2, -4.5);
  const double extrapolated = (b1 * w2 - b2 * w1) / (w2 - w1);
  EXPECT_NEAR(extrapolated / (-15.0 / 8.0), 1.0, 0.05);
}

TEST(SolveHierarchy, NodeResiduals) {
  const auto& sol = hierarchy();
  for (std::size_t k = 0; k <= 3; ++k) {
    const auto res = node_residuals(sol, k);
    for (std::size_t i = 0; i < res.size(); ++i) {
      ASSERT_LT(res[i], k == 0 && sol.radii[i] > 10 ? 1e-8 : 1e-7) << "k=" << k << " eta=" << sol.radii[i];
    }
  }
}

TEST(SolveHierarchy, FarFieldSlopes) {
  const auto& sol = hierarchy();
  const std::size_t a = node_near(sol, 30.0), b = node_near(sol, 45.0);
  for (std::size_t k = 0; k <= 3; ++k) {
    const double slope = std::log(std::abs(sol.orders[k].g[b]) / std::abs(sol.orders[k].g[a])) /
                         std::log(sol.radii[b] / sol.radii[a]);
    EXPECT_NEAR(slope / -(k + 0.5), 1.0, 0.02) << "k=" << k;
  }
}

TEST(SolveHierarchy, LeadingCoefficientsAgreeWithBalance) {
  const FarField far(3);
  const auto balanced = balanced_leading_coefficients(3);
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_NEAR(far.leading(k), balanced[k], 1e-12 * std::abs(balanced[k]));
}

TEST(SolveHierarchy, StoredDerivativesMatchFiniteDifferences) {
  const auto& sol = hierarchy();
  const double h = sol.radii[0] - sol.radii[1];
  for (std::size_t k = 0; k <= 3; ++k) {
    const auto& f = sol.orders[k];
    for (std::size_t i = 2; i + 2 < sol.size(); i += 13) {
      // radii decrease with i, so d/deta = -d/di / h
      const Complex fd = -(-f.g[i + 2] + 8.0 * f.g[i + 1] - 8.0 * f.g[i - 1] + f.g[i - 2]) / (12.0 * h);
      // floor: integrator absolute tolerance amplified by the stencil
      EXPECT_LE(std::abs(fd - f.g1[i]), 1e-6 * std::abs(f.g1[i]) + 1e-10) << "k=" << k << " i=" << i;
    }
  }
}

TEST(SolveHierarchy, RayOutsideWedgeIsConfigurationError) {
  SolverConfig cfg;
  cfg.ray_deg = 50.0;
  try {
    (void)solve_G0(cfg);
    FAIL() << "expected a configuration error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::configuration);
  }
}

TEST(SolveHierarchy, SteepOffAxisRayIsIllConditioned) {
  SolverConfig cfg;
  cfg.ray_deg = -30.0;
  try {
    (void)solve_G0(cfg);
    FAIL() << "expected an ill-conditioned error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ill_conditioned);
  }
}

TEST(SolveHierarchy, ShallowOffAxisRayAgreesWithContinuation) {
  SolverConfig cfg;
  cfg.ray_deg = -1.0;
  cfg.eta_max = 20.0;
  cfg.eta_min = 4.0;
  const auto sol = solve_G0(cfg);
  const double phi = -std::numbers::pi / 180.0;
  const G0Continuation cont(cfg);
  G0State st = cont.advance(cont.start(), 20.0);
  st = cont.march(st, arc_points(20.0, 0.0, phi, 4));
  st = cont.advance(st, std::polar(4.0, phi));
  EXPECT_NEAR(std::abs(st.g - sol.orders[0].g.back()), 0.0, 1e-7 * std::abs(st.g));
}

TEST(Continuation, MatchesRealAxisSolve) {
  const auto& sol = hierarchy();
  const G0Continuation cont(SolverConfig{});
  const std::size_t i = node_near(sol, 5.0);
  const G0State st = cont.advance(cont.start(), sol.radii[i]);
  EXPECT_NEAR(std::abs(st.g - sol.orders[0].g[i]), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(st.g1 - sol.orders[0].g1[i]), 0.0, 1e-9);
}

TEST(Continuation, ClosedLoopReturnsToStart) {
  const G0Continuation cont(SolverConfig{});
  // S r^{9/4} |sin(9 phi / 4)| stays below 5 on this loop.
  const G0State a = cont.advance(cont.start(), 3.0);
  G0State b = cont.march(a, arc_points(3.0, 0.0, -0.3, 20));
  b = cont.advance(b, std::polar(5.0, -0.3));
  b = cont.march(b, arc_points(5.0, -0.3, 0.0, 20));
  b = cont.advance(b, 3.0);
  EXPECT_NEAR(std::abs(b.g - a.g), 0.0, 1e-9);
}

TEST(InnerEval, ZeroTauIsG0) {
  const auto& sol = hierarchy();
  const std::size_t i = node_near(sol, 7.0);
  EXPECT_NEAR(std::abs(inner_eval(sol, sol.eta(i), 0.0).value - sol.orders[0].g[i]), 0.0, 1e-14);
}

TEST(InnerEval, Telescoping) {
  const auto& sol = hierarchy();
  const Complex eta = 6.123, tau = 0.05;
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto hi = inner_eval(sol, eta, tau, k), lo = inner_eval(sol, eta, tau, k - 1);
    EXPECT_NEAR(std::abs(hi.value - lo.value - lo.first_neglected), 0.0, 1e-15);
  }
}

TEST(InnerEval, InterpolatesBetweenNodes) {
  const auto& sol = hierarchy();
  const G0Continuation cont(SolverConfig{});
  const double r = 6.123;
  const G0State st = cont.advance(cont.start(), r);
  EXPECT_NEAR(std::abs(inner_eval(sol, r, 0.0).value - st.g), 0.0, 1e-9);
}

TEST(InnerEval, AgreesWithOuterSeries) {
  const auto& sol = hierarchy();
  const auto outer = hd_outer_coeffs(6);
  const double t = 1e-3, eta = 30.0;
  const double x = t + eta * std::pow(t, 2.0 / 9.0);
  const auto p = to_inner(x, t);
  const Complex inner = inner_eval(sol, p.eta, p.tau).value;
  const Complex outer_value = hd_outer_eval(outer, x, t, 4).value * std::pow(t, 1.0 / 9.0);
  EXPECT_NEAR(std::abs(inner - outer_value) / std::abs(outer_value), 0.0, 1e-3);
}

TEST(InnerResidual, LeadingPowerLaw) {
  const InnerFunction g = [](Complex eta, Complex) { return std::pow(eta, -0.5); };
  for (double eta : {2.0, 3.0, 6.0, 10.0}) {
    // The difference stencils leave a floor relative to the size of G itself.
    const Complex r = inner_residual(g, eta, 0.0);
    EXPECT_NEAR(std::abs(r - 15.0 / 8.0 * std::pow(eta, -5.0)), 0.0, 1e-7 * std::pow(eta, -0.5));
  }
}

TEST(InnerResidual, ZeroFunction) {
  const InnerFunction g = [](Complex, Complex) { return Complex(0.0); };
  EXPECT_EQ(inner_residual(g, 4.0, 0.3), Complex(0.0));
}

TEST(InnerResidual, TruncatedHierarchyLeavesNextOrder) {
  SolverConfig cfg;
  const auto sol = solve_hierarchy(2, cfg);
  const std::size_t i = node_near(sol, 5.0);
  std::vector<double> logs, taus;
  for (double tau : {0.004, 0.008, 0.016, 0.032}) {
    taus.push_back(std::log(tau));
    logs.push_back(std::log(std::abs(inner_residual(sol, i, tau))));
  }
  const double slope = (logs.back() - logs.front()) / (taus.back() - taus.front());
  EXPECT_NEAR(slope, 3.0, 0.1);
}
