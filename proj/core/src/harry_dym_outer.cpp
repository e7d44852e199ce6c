#include "asymkit/harry_dym_outer.hpp"

#include <cmath>
#include <string>

#include "asymkit/error.hpp"

namespace asymkit::hd {

namespace {

PuiseuxSeries zero_series() { return PuiseuxSeries(kOuterVariable, -1); }

// [t^n] of the product of two t-polynomials with series coefficients.
PuiseuxSeries cauchy_term(const std::vector<PuiseuxSeries>& a, const std::vector<PuiseuxSeries>& b,
                          std::size_t n) {
  PuiseuxSeries sum = zero_series();
  for (std::size_t i = 0; i <= n; ++i) sum = sum + a[i] * b[n - i];
  return sum;
}

}  // namespace

OuterSeries hd_outer_coeffs(std::size_t order) {
  const Scalar one = Scalar::rational(1);
  const Scalar half = Scalar::rational(Rational(1, 2));
  OuterSeries out;
  out.coeffs.push_back(PuiseuxSeries::monomial(kOuterVariable, one, Exponent::halves(-1)));

  std::vector<PuiseuxSeries> h2, h3, d3;
  for (std::size_t n = 0; n < order; ++n) {
    h2.push_back(cauchy_term(out.coeffs, out.coeffs, n));
    h3.push_back(cauchy_term(h2, out.coeffs, n));
    d3.push_back(derivative(out.coeffs[n], 3));
    const PuiseuxSeries bracket = cauchy_term(h3, d3, n) - h3[n] * half;
    out.coeffs.push_back(bracket * Scalar::rational(Rational(1, static_cast<long>(n + 1))));
  }
  return out;
}

OuterValue hd_outer_eval(std::complex<double> x, std::complex<double> t, std::size_t order) {
  return hd_outer_eval(hd_outer_coeffs(order + 1), x, t, order);
}

OuterValue hd_outer_eval(const OuterSeries& series, std::complex<double> x, std::complex<double> t,
                         std::size_t order) {
  if (series.coeffs.size() < order + 2) {
    throw Error(Errc::configuration, "outer evaluation at order N needs N + 2 coefficients");
  }
  const std::complex<double> y = x - t;
  if (std::abs(y) == 0.0) throw Error(Errc::out_of_regime, "outer series evaluated at y = 0");
  std::complex<double> sum = 0.0;
  std::complex<double> tn = 1.0;
  double previous = 0.0;
  std::complex<double> term;
  for (std::size_t n = 0; n <= order + 1; ++n) {
    term = tn * series.coeffs[n].evaluate(y);
    const double mag = std::abs(term);
    if (n > 0 && mag >= previous) {
      throw Error(Errc::out_of_regime,
                  "outer terms stop decreasing at n = " + std::to_string(n) +
                      "; y = x - t is inside the inner region");
    }
    previous = mag;
    if (n <= order) sum += term;
    tn *= t;
  }
  return {sum, term, std::abs(term)};
}

std::vector<PuiseuxSeries> hd_outer_residual(const OuterSeries& series) {
  const std::size_t n_max = series.order();
  const Scalar half = Scalar::rational(Rational(1, 2));
  std::vector<PuiseuxSeries> h2, h3, d3, out;
  for (std::size_t n = 0; n <= n_max; ++n) {
    h2.push_back(cauchy_term(series.coeffs, series.coeffs, n));
    h3.push_back(cauchy_term(h2, series.coeffs, n));
    d3.push_back(derivative(series.coeffs[n], 3));
  }
  // In y = x - t: H_t + H_x = sum_n (n+1) c_{n+1} t^n.
  for (std::size_t n = 0; n < n_max; ++n) {
    const PuiseuxSeries transport =
        series.coeffs[n + 1] * Scalar::rational(static_cast<long>(n + 1));
    out.push_back(transport - cauchy_term(h3, d3, n) + h3[n] * half);
  }
  return out;
}

std::vector<std::vector<FarFieldTerm>> inner_far_field(const OuterSeries& series, std::size_t max_k) {
  std::vector<std::vector<FarFieldTerm>> g(max_k + 1);
  for (std::size_t n = 0; n < series.coeffs.size(); ++n) {
    for (const auto& [e, c] : series.coeffs[n].terms()) {
      // 7k = 9n + 2e + 1, with 2e = e.twice().
      const std::int64_t num = 9 * static_cast<std::int64_t>(n) + e.twice() + 1;
      if (num % 7 != 0) {
        throw Error(Errc::matching, "outer term y^" + e.to_string() + " in c_" + std::to_string(n) +
                                        " does not map to an inner order");
      }
      const std::int64_t k = num / 7;
      if (k < 0) throw Error(Errc::matching, "outer term maps to a negative inner order");
      if (static_cast<std::size_t>(k) > max_k) continue;
      g[static_cast<std::size_t>(k)].push_back({c.a().get_d(), e.to_double()});
    }
  }
  return g;
}

}  // namespace asymkit::hd
