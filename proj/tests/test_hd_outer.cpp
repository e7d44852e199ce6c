#include <gtest/gtest.h>

#include <cmath>

#include "asymkit/error.hpp"
#include "asymkit/harry_dym_outer.hpp"

using namespace asymkit;
using namespace asymkit::hd;

namespace {

using Complex = std::complex<double>;

PuiseuxSeries y_power(Rational c, Rational e) {
  return PuiseuxSeries::monomial(kOuterVariable, Scalar::rational(c), Exponent::from_rational(e));
}

}  // namespace

TEST(OuterCoefficients, GoldenValues) {
  const auto s = hd_outer_coeffs(2);
  ASSERT_EQ(s.coeffs.size(), 3u);
  EXPECT_EQ(s.coeffs[0], y_power(1, Rational(-1, 2)));
  EXPECT_EQ(s.coeffs[1], y_power(Rational(-15, 8), -5) + y_power(Rational(-1, 2), Rational(-3, 2)));
  EXPECT_EQ(s.coeffs[2], y_power(Rational(25875, 128), Rational(-19, 2)) + y_power(Rational(195, 32), -6) +
                             y_power(Rational(3, 8), Rational(-5, 2)));
}

TEST(OuterCoefficients, ExponentFloor) {
  const auto s = hd_outer_coeffs(5);
  for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
    EXPECT_GE(s.coeffs[n].order().twice(), -static_cast<std::int64_t>(9 * n + 1)) << "n=" << n;
    EXPECT_TRUE(s.coeffs[n].trunc().is_infinite());
  }
}

TEST(OuterCoefficients, PdeResidualVanishesExactly) {
  const auto r = hd_outer_residual(hd_outer_coeffs(5));
  ASSERT_EQ(r.size(), 5u);
  for (std::size_t n = 0; n < r.size(); ++n) EXPECT_TRUE(r[n].empty()) << "t^" << n << ": " << r[n].to_string();
}

TEST(OuterCoefficients, InnerLimitOfLeadingTerms) {
  // c_0 + t c_1 in eta = y / t^{2/9} gives t^{-1/9} (eta^{-1/2} - (15/8) eta^{-5}) at tau^0.
  const auto far = inner_far_field(hd_outer_coeffs(2), 0);
  ASSERT_FALSE(far.empty());
  auto coefficient_at = [&far](double e) {
    for (const auto& term : far[0]) {
      if (term.exponent == e) return term.coefficient;
    }
    return 0.0;
  };
  EXPECT_DOUBLE_EQ(coefficient_at(-0.5), 1.0);
  EXPECT_DOUBLE_EQ(coefficient_at(-5.0), -15.0 / 8.0);
  EXPECT_DOUBLE_EQ(coefficient_at(-9.5), 25875.0 / 128.0);
}

TEST(OuterEval, OrderZeroIsInverseSquareRoot) {
  const Complex x(2.0, 0.5), t(0.01, 0.0);
  const auto v = hd_outer_eval(x, t, 0);
  EXPECT_NEAR(std::abs(v.value - 1.0 / std::sqrt(x - t)), 0.0, 1e-15);
}

TEST(OuterEval, Telescoping) {
  const auto series = hd_outer_coeffs(6);
  const Complex x(3.0, 0.2), t(0.02, 0.0);
  const Complex y = x - t;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto hi = hd_outer_eval(series, x, t, n), lo = hd_outer_eval(series, x, t, n - 1);
    const Complex term = std::pow(t, static_cast<double>(n)) * series.coeffs[n].evaluate(y);
    EXPECT_NEAR(std::abs(hi.value - lo.value - term), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(lo.first_neglected - term), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(lo.error_proxy, std::abs(lo.first_neglected));
  }
}

TEST(OuterEval, ZeroYIsOutOfRegime) {
  try {
    (void)hd_outer_eval(0.5, 0.5, 2);
    FAIL() << "expected an out-of-regime error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::out_of_regime);
  }
}

TEST(OuterEval, InnerRegionIsOutOfRegime) {
  // eta = y / t^{2/9} of order one: the terms grow.
  const double t = 1e-2;
  const double y = 1.5 * std::pow(t, 2.0 / 9.0);
  try {
    (void)hd_outer_eval(y + t, t, 4);
    FAIL() << "expected an out-of-regime error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::out_of_regime);
  }
}

TEST(OuterEval, NeedsEnoughCoefficients) {
  EXPECT_THROW((void)hd_outer_eval(hd_outer_coeffs(2), 2.0, 0.01, 2), Error);
}
