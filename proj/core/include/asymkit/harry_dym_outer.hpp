#pragma once

#include <complex>
#include <vector>

#include "asymkit/puiseux.hpp"

namespace asymkit::hd {

inline constexpr const char* kOuterVariable = "y";

/// H(x, t) = sum_n t^n c_n(y), y = x - t, c_0 = y^{-1/2}.
struct OuterSeries {
  std::vector<PuiseuxSeries> coeffs;
  std::size_t order() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// c_0..c_N from c_{n+1} = [t^n](H^3 H_yyy - H^3 / 2) / (n + 1), exact.
OuterSeries hd_outer_coeffs(std::size_t order);

struct OuterValue {
  std::complex<double> value;
  std::complex<double> first_neglected;  // t^{N+1} c_{N+1}(y)
  double error_proxy = 0.0;              // |first_neglected|
};

/// sum_{n<=N} t^n c_n(x - t) with principal powers. Raises Errc::out_of_regime
/// when y = 0 or when |t^n c_n(y)| fails to decrease for n = 1..N+1.
OuterValue hd_outer_eval(std::complex<double> x, std::complex<double> t, std::size_t order);
/// Same with precomputed coefficients (needs order + 2 of them).
OuterValue hd_outer_eval(const OuterSeries& series, std::complex<double> x, std::complex<double> t,
                         std::size_t order);

/// Exact t^{N+1}-free residual check: H_t + H_x - H^3 H_yyy + H^3 / 2 for the
/// truncated sum, returned as coefficients of t^0..t^{N} (all zero when the
/// recurrence is satisfied).
std::vector<PuiseuxSeries> hd_outer_residual(const OuterSeries& series);

/// Far-field coefficients of the inner functions G_k read off the outer series:
/// the term a y^e of c_n feeds G_k with k = (9n + 2e + 1) / 7, so
/// G_k(eta) ~ sum_{n>=k} a_{n,e} eta^e with e = (7k - 1 - 9n) / 2.
struct FarFieldTerm {
  double coefficient;
  double exponent;
};
std::vector<std::vector<FarFieldTerm>> inner_far_field(const OuterSeries& series, std::size_t max_k);

}  // namespace asymkit::hd
