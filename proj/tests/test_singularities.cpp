#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "asymkit/error.hpp"
#include "asymkit/singularities.hpp"

using namespace asymkit;
using namespace asymkit::hd;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

StokesConstant user_constant(Complex c) {
  StokesConstant s;
  s.value = c;
  return s;
}

const StokesConstant& calibrated() {
  static const StokesConstant c = calibrate_stokes_constant();
  return c;
}

std::vector<Sample> power_law(Complex eta_s, double p, Complex a) {
  std::vector<Sample> out;
  const Complex dir = std::polar(1.0, 0.3);
  for (int j = 0; j <= 20; ++j) {
    const Complex eta = eta_s + 0.05 * std::pow(10.0, -j / 10.0) * dir;
    out.emplace_back(eta, a * std::pow(eta - eta_s, p));
  }
  return out;
}

}  // namespace

TEST(SolveU, ForwardOracle) {
  const Complex zeta = std::log(12.0) - 6.0;
  const Complex u = solve_U(zeta, 3.5);
  EXPECT_NEAR(std::abs(u - 4.0), 0.0, 1e-10);
  EXPECT_LT(std::abs(u_equation(zeta, u)), 1e-12);
}

TEST(SolveU, PeriodicInZeta) {
  const Complex zeta(-1.3, 0.4);
  const Complex u1 = solve_U(zeta, Complex(2.0, 1.0));
  const Complex u2 = solve_U(zeta + 2.0 * kPi * kI, Complex(2.0, 1.0));
  EXPECT_LT(std::abs(u_equation(zeta, u1)), 1e-12);
  EXPECT_NEAR(std::abs(u1 - u2), 0.0, 1e-12 * std::abs(u1));
  const Complex probe(0.7, -1.9);
  EXPECT_NEAR(std::abs(u_equation(zeta, probe) - u_equation(zeta + 2.0 * kPi * kI, probe)), 0.0, 1e-14);
}

TEST(SolveU, BranchLocusSeed) {
  try {
    (void)solve_U(0.0, 1.0);
    FAIL() << "expected a branch-collision error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::branch_collision);
  }
}

TEST(SolveU, IterationBudgetCarriesTrajectory) {
  SolverConfig cfg;
  cfg.max_newton_iterations = 1;
  try {
    (void)solve_U(std::log(12.0) - 6.0, 30.0, cfg);
    FAIL() << "expected a no-convergence error";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.code(), Errc::no_convergence);
    EXPECT_FALSE(e.history().empty());
  }
}

TEST(ZetaSingularities, LatticeAndCrossCheck) {
  const auto z = zeta_singularities(-2, 3);
  ASSERT_EQ(z.size(), 6u);
  EXPECT_NEAR(std::abs(z[2].displayed - Complex(2.0 - std::log(4.0), -kPi)), 0.0, 1e-15);
  for (std::size_t i = 1; i < z.size(); ++i) {
    EXPECT_NEAR(std::abs(z[i].displayed - z[i - 1].displayed - 2.0 * kPi * kI), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(z[i].numeric - z[i - 1].numeric - 2.0 * kPi * kI), 0.0, 1e-13);
  }
  for (const auto& s : z) {
    // d zeta / dU = 0 sits at U = 0, which maps to ln 4 - 2 - i pi.
    EXPECT_TRUE(s.matches_derived);
    EXPECT_FALSE(s.matches_displayed);
    EXPECT_NEAR(std::abs(s.numeric - s.derived), 0.0, 1e-6);
  }
}

TEST(EtaSingularity, ResidualAndWedge) {
  const auto c = user_constant(Complex(-2.44, -2.41));
  for (int n = 1; n <= 40; ++n) {
    const auto rec = eta_singularity(n, c, SolverConfig{});
    EXPECT_LT(std::abs(singularity_equation(rec.eta_s, n, c.value)), 1e-10);
    EXPECT_LT(rec.newton_residual, 1e-10);
    EXPECT_TRUE(rec.in_wedge) << "n=" << n;
  }
}

TEST(EtaSingularity, SeedImprovesWithN) {
  const auto c = user_constant(Complex(1.0, 0.0));
  double previous = 1.0;
  for (int n = 10; n <= 100; n += 10) {
    const auto rec = eta_singularity(n, c, SolverConfig{});
    const double rel = std::abs(rec.seed - rec.eta_s) / std::abs(rec.eta_s);
    EXPECT_LT(rel, previous) << "n=" << n;
    EXPECT_LT(rel, 2.0 * std::log(n) / n);
    previous = rel;
  }
}

TEST(EtaSingularity, ModulusIncreasesWithN) {
  const auto c = user_constant(Complex(0.5, 2.0));
  double previous = 0;
  for (int n = 1; n <= 60; ++n) {
    const double r = std::abs(eta_singularity(n, c, SolverConfig{}).eta_s);
    EXPECT_GT(r, previous);
    previous = r;
  }
}

TEST(EtaSingularity, RejectsBadInput) {
  SolverConfig cfg;
  cfg.n_min = 3;
  for (auto [n, c] : {std::pair{2, Complex(1.0)}, std::pair{5, Complex(0.0)}}) {
    try {
      (void)eta_singularity(n, user_constant(c), cfg);
      FAIL() << "expected a configuration error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::configuration);
    }
  }
}

TEST(EtaSingularity, ConcurrentBatchIsOrderedAndReproducible) {
  const auto c = user_constant(Complex(-2.44, -2.41));
  const auto batch = eta_singularities(1, 40, c);
  ASSERT_EQ(batch.size(), 40u);
  for (int n = 1; n <= 40; ++n) {
    const auto single = eta_singularity(n, c);
    EXPECT_EQ(batch[n - 1].n, n);
    EXPECT_EQ(batch[n - 1].eta_s, single.eta_s);
    EXPECT_EQ(batch[n - 1].newton_residual, single.newton_residual);
  }
}

TEST(ExponentFit, SyntheticPowerLaws) {
  for (double p : {1.0 / 3.0, 2.0 / 3.0, 1.0, 1.5}) {
    const Complex eta_s(1.3, -9.2);
    EXPECT_NEAR(fit_singularity_exponent(power_law(eta_s, p, Complex(0.7, -0.2)), eta_s), p, 1e-3);
  }
}

TEST(ExponentFit, SamplingErrors) {
  const Complex eta_s(1.0, -5.0);
  auto samples = power_law(eta_s, 2.0 / 3.0, 1.0);
  std::swap(samples[3], samples[9]);
  EXPECT_THROW((void)fit_singularity_exponent(samples, eta_s), Error);
  samples = power_law(eta_s, 2.0 / 3.0, 1.0);
  samples.resize(5);
  try {
    (void)fit_singularity_exponent(samples, eta_s);
    FAIL() << "expected a sampling error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::sampling);
  }
}

TEST(StokesFit, SyntheticRoundTrip) {
  std::vector<Sample> samples;
  const Complex ray = std::polar(1.0, -70.0 * kPi / 180.0);
  for (int i = 0; i < 31; ++i) {
    const Complex eta = (6.0 + 0.1 * i) * ray;
    samples.emplace_back(eta, g0_algebraic(eta) + stokes_template(eta));
  }
  const auto c = estimate_stokes_constant(samples);
  EXPECT_LT(std::abs(c.value - 1.0), 1e-3);
  EXPECT_EQ(c.provenance, StokesConstant::Provenance::fitted);
}

TEST(StokesFit, NoCorrectionIsIndeterminate) {
  std::vector<Sample> samples;
  for (int i = 0; i < 31; ++i) {
    const Complex eta = std::polar(6.0 + 0.1 * i, -1.2);
    samples.emplace_back(eta, g0_algebraic(eta));
  }
  try {
    (void)estimate_stokes_constant(samples);
    FAIL() << "expected an indeterminate-constant error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::indeterminate_constant);
  }
}

TEST(StokesFit, StableAcrossDisjointWindows) {
  const auto samples = g0_ray_samples(-70.0 * kPi / 180.0, 6.0, 9.0, 31);
  const std::vector<Sample> near(samples.begin(), samples.begin() + 15);
  const std::vector<Sample> far(samples.end() - 15, samples.end());
  const Complex a = estimate_stokes_constant(near).value, b = estimate_stokes_constant(far).value;
  EXPECT_LT(std::abs(a - b) / std::abs(b), 0.02);
}

TEST(StokesFit, CalibrationIsNonzeroAndTight) {
  const auto& c = calibrated();
  EXPECT_GT(std::abs(c.value), 1.0);
  EXPECT_LT(c.fit_residual, 0.01);
}

TEST(LocateSingularity, NumericalG0ReachesPredictedSingularity) {
  const auto loc = locate_singularity(2, calibrated());
  EXPECT_LT(std::abs(loc.located - loc.predicted) / std::abs(loc.predicted), 0.01);
  EXPECT_NEAR(loc.local_exponent, 2.0 / 3.0, 1e-3);
  EXPECT_NEAR(loc.fitted_exponent, 0.667, 0.05);
}

TEST(LocateSingularity, PredictionsSharpenWithN) {
  double previous = 1.0;
  for (int n : {1, 3, 6, 12}) {
    const auto loc = locate_singularity(n, calibrated());
    const double rel = std::abs(loc.located - loc.predicted) / std::abs(loc.predicted);
    EXPECT_LT(rel, previous) << "n=" << n;
    previous = rel;
  }
}
