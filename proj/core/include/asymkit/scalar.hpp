#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace asymkit {

using Rational = mpq_class;

/// Parses "p/q" or "p" (optional sign, no decimal point) into a canonical rational.
Rational parse_rational(std::string_view text);
/// Canonical "p/q" text; integers print without a denominator.
std::string format_rational(const Rational& value);
/// Exact square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& value);

/// Exact element a + b*theta of Q(theta), theta^2 = d.
///
/// The extension parameter d travels with every value; mixing values from
/// different extensions is a configuration error. With b == 0 a Scalar is a
/// plain rational, which is how the Harry Dym coefficients are carried.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Rational a, Rational b = 0, Rational theta_squared = -1);
  static Scalar rational(const Rational& a, const Rational& theta_squared = -1) {
    return Scalar(a, 0, theta_squared);
  }
  static Scalar theta(const Rational& theta_squared) { return Scalar(0, 1, theta_squared); }

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Rational& theta_squared() const noexcept { return d_; }

  bool is_zero() const noexcept { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const noexcept { return sgn(b_) == 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  Scalar& operator*=(const Rational& factor);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend Scalar operator*(Scalar x, const Rational& y) { return x *= y; }

  /// Exact equality, including the extension parameter.
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

  Scalar inverse() const;

  /// Square root inside Q(theta), if one exists. The returned root is the
  /// one whose first nonzero component (a, then b) is positive; callers flip
  /// the sign for the other branch.
  std::optional<Scalar> sqrt() const;

  /// Numerical value with theta = principal sqrt(d).
  std::complex<double> to_complex() const;

  /// Text form "a,b;d" with each part in canonical p/q form.
  std::string to_string() const;
  static Scalar from_string(std::string_view text);

 private:
  void require_same_extension(const Scalar& other) const;

  Rational a_ = 0;
  Rational b_ = 0;
  Rational d_ = -1;
};

}  // namespace asymkit
