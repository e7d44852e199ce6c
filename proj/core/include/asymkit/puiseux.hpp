#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "asymkit/scalar.hpp"

namespace asymkit {

/// Point of the lattice (1/2)Z, or +infinity (used for the truncation order
/// of exactly known series). Stored as twice its value.
class Exponent {
 public:
  constexpr Exponent() = default;

  static constexpr Exponent halves(std::int64_t twice) { return Exponent(twice); }
  static constexpr Exponent integer(std::int64_t n) { return Exponent(2 * n); }
  static constexpr Exponent infinity() { return Exponent(kInfinite); }
  /// Throws Errc::configuration if the denominator does not divide 2.
  static Exponent from_rational(const Rational& value);

  constexpr bool is_infinite() const noexcept { return twice_ == kInfinite; }
  constexpr std::int64_t twice() const noexcept { return twice_; }
  Rational to_rational() const;
  double to_double() const noexcept;
  std::string to_string() const;

  friend constexpr auto operator<=>(Exponent, Exponent) = default;
  friend Exponent operator+(Exponent x, Exponent y);
  friend Exponent operator-(Exponent x, Exponent y);
  friend Exponent operator-(Exponent x);

 private:
  static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();
  constexpr explicit Exponent(std::int64_t twice) : twice_(twice) {}

  std::int64_t twice_ = 0;
};

/// Truncated Laurent-Puiseux series sum_e c_e var^e with e in (1/2)Z and
/// coefficients in Q(theta).
///
/// Invariants: no stored coefficient is zero, every stored exponent is below
/// trunc(), and every coefficient lives in the series' extension. Coefficients
/// at exponents >= trunc() are unknown; asking for one is an error rather than
/// a silent zero. A series with trunc() == Exponent::infinity() is exact.
class PuiseuxSeries {
 public:
  using TermMap = std::map<Exponent, Scalar>;

  PuiseuxSeries(std::string variable, Rational theta_squared,
                Exponent trunc = Exponent::infinity());

  static PuiseuxSeries monomial(std::string variable, const Scalar& coefficient, Exponent exponent,
                                Exponent trunc = Exponent::infinity());
  static PuiseuxSeries constant(std::string variable, const Scalar& value,
                                Exponent trunc = Exponent::infinity()) {
    return monomial(std::move(variable), value, Exponent{}, trunc);
  }

  const std::string& variable() const noexcept { return variable_; }
  const Rational& theta_squared() const noexcept { return theta_squared_; }
  Exponent trunc() const noexcept { return trunc_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Lowest stored exponent; trunc() for a series with no known nonzero term.
  Exponent order() const noexcept;
  /// Coefficient at `e`, zero when absent. Throws Errc::truncation if e >= trunc().
  Scalar coefficient(Exponent e) const;

  /// Replaces the coefficient at `e` (erasing it when zero).
  void set_coefficient(Exponent e, const Scalar& value);
  /// Lowers the truncation order to min(trunc(), order), dropping terms.
  PuiseuxSeries truncated(Exponent order) const;

  Scalar zero() const { return Scalar(0, 0, theta_squared_); }
  Scalar one() const { return Scalar(1, 0, theta_squared_); }

  /// Numerical value with principal powers z^e = exp(e Log z); unknown tail ignored.
  std::complex<double> evaluate(std::complex<double> z) const;

  PuiseuxSeries operator-() const;
  friend PuiseuxSeries operator+(const PuiseuxSeries& x, const PuiseuxSeries& y);
  friend PuiseuxSeries operator-(const PuiseuxSeries& x, const PuiseuxSeries& y);
  friend PuiseuxSeries operator*(const PuiseuxSeries& x, const PuiseuxSeries& y);
  friend PuiseuxSeries operator*(const PuiseuxSeries& x, const Scalar& c);
  friend PuiseuxSeries operator*(const Scalar& c, const PuiseuxSeries& x) { return x * c; }

  friend bool operator==(const PuiseuxSeries& x, const PuiseuxSeries& y) {
    return x.variable_ == y.variable_ && x.theta_squared_ == y.theta_squared_ &&
           x.trunc_ == y.trunc_ && x.terms_ == y.terms_;
  }

  std::string to_string() const;

 private:
  void require_compatible(const PuiseuxSeries& other) const;

  std::string variable_;
  Rational theta_squared_;
  Exponent trunc_;
  TermMap terms_;
};

PuiseuxSeries mul(const PuiseuxSeries& x, const PuiseuxSeries& y);
/// Termwise e c var^(e-1); the truncation order drops by one.
PuiseuxSeries derivative(const PuiseuxSeries& x);
PuiseuxSeries derivative(const PuiseuxSeries& x, int times);
/// Multiplicative inverse. Exact input with more than one term has an
/// infinite expansion and raises Errc::budget; truncate it first.
PuiseuxSeries reciprocal(const PuiseuxSeries& x);
PuiseuxSeries pow_int(const PuiseuxSeries& x, long k);

enum class Branch { principal = 1, negative = -1 };

/// Square root s with s*s == x up to truncation. The leading exponent must be
/// an integer and the leading coefficient must have a root in Q(theta).
PuiseuxSeries sqrt_series(const PuiseuxSeries& x, Branch branch = Branch::principal);

}  // namespace asymkit
