#include "asymkit/p1.hpp"

#include <string>

#include "asymkit/error.hpp"

namespace asymkit::p1 {

namespace {

PuiseuxSeries w_power(std::int64_t twice) {
  return PuiseuxSeries::monomial(kVariable, Scalar::rational(1, kThetaSquared),
                                 Exponent::halves(twice));
}

}  // namespace

PuiseuxSeries second_x_derivative(const PuiseuxSeries& y) {
  const PuiseuxSeries y_w = derivative(y);
  const PuiseuxSeries y_ww = derivative(y_w);
  const Scalar two = Scalar::rational(2, y.theta_squared());
  return w_power(8) * y_ww + w_power(6) * y_w * two;
}

P1Series p1_formal_series(std::size_t n_terms, Branch branch, std::size_t max_iterations) {
  if (n_terms == 0) throw Error(Errc::configuration, "p1_formal_series needs n_terms >= 1");
  if (max_iterations == 0) max_iterations = 2 * n_terms + 4;

  // Retained exponents (in w) are -1/2 + 5j/2, j < n_terms.
  const auto n = static_cast<std::int64_t>(n_terms);
  const Exponent target = Exponent::halves(-1 + 5 * n);
  const Exponent radicand_trunc = Exponent::halves(-2 + 5 * n);

  Scalar prefactor(0, Rational(1, 6), kThetaSquared);
  if (branch == Branch::negative) prefactor = -prefactor;

  const PuiseuxSeries x = w_power(-2);
  PuiseuxSeries y(kVariable, kThetaSquared);
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    const PuiseuxSeries radicand = (x - second_x_derivative(y)).truncated(radicand_trunc);
    PuiseuxSeries next = (sqrt_series(radicand) * prefactor).truncated(target);
    if (next == y) return P1Series{std::move(next), n_terms, branch, it};
    y = std::move(next);
  }
  throw Error(Errc::iteration_depth, "P1 recurrence did not stabilize " +
                                         std::to_string(n_terms) + " terms within " +
                                         std::to_string(max_iterations) + " iterations");
}

PuiseuxSeries p1_residual(const PuiseuxSeries& y) {
  const Scalar six = Scalar::rational(6, y.theta_squared());
  return second_x_derivative(y) - y * y * six - w_power(-2);
}

}  // namespace asymkit::p1
