#include "asymkit/scalar.hpp"

#include <cctype>

#include "asymkit/error.hpp"

namespace asymkit {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::configuration, "empty rational literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw Error(Errc::configuration, "malformed rational literal '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) {
    throw Error(Errc::configuration, "malformed rational literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) {
    throw Error(Errc::configuration, "malformed rational literal '" + s + "'");
  }
  if (sgn(r.get_den()) == 0) throw Error(Errc::division, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

Scalar::Scalar(Rational a, Rational b, Rational theta_squared)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(theta_squared)) {
  a_.canonicalize();
  b_.canonicalize();
  d_.canonicalize();
}

void Scalar::require_same_extension(const Scalar& other) const {
  if (d_ != other.d_) {
    throw Error(Errc::configuration, "scalars from different extensions: theta^2 = " +
                                         format_rational(d_) + " vs " + format_rational(other.d_));
  }
}

Scalar Scalar::operator-() const { return Scalar(-a_, -b_, d_); }

Scalar& Scalar::operator+=(const Scalar& other) {
  require_same_extension(other);
  a_ += other.a_;
  b_ += other.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  require_same_extension(other);
  a_ -= other.a_;
  b_ -= other.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  require_same_extension(other);
  Rational a = a_ * other.a_ + b_ * other.b_ * d_;
  Rational b = a_ * other.b_ + b_ * other.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Scalar& Scalar::operator*=(const Rational& factor) {
  a_ *= factor;
  b_ *= factor;
  return *this;
}

Scalar Scalar::inverse() const {
  Rational norm = a_ * a_ - b_ * b_ * d_;
  if (sgn(norm) == 0) {
    throw Error(Errc::division, "division by a scalar of zero norm (" + to_string() + ")");
  }
  return Scalar(a_ / norm, -b_ / norm, d_);
}

Scalar& Scalar::operator/=(const Scalar& other) {
  require_same_extension(other);
  return *this *= other.inverse();
}

std::optional<Scalar> Scalar::sqrt() const {
  auto canonical = [this](Rational x, Rational y) {
    if (sgn(x) < 0 || (sgn(x) == 0 && sgn(y) < 0)) {
      x = -x;
      y = -y;
    }
    return Scalar(std::move(x), std::move(y), d_);
  };
  if (is_zero()) return Scalar(0, 0, d_);
  if (sgn(b_) == 0) {
    if (auto r = exact_sqrt(a_)) return canonical(*r, 0);
    if (sgn(d_) != 0) {
      if (auto r = exact_sqrt(a_ / d_)) return canonical(0, *r);
    }
    return std::nullopt;
  }
  // (x + y theta)^2 = a + b theta with x, y both nonzero:
  // x^2 = (a +- sqrt(a^2 - d b^2)) / 2, y = b / (2x).
  auto disc = exact_sqrt(a_ * a_ - d_ * b_ * b_);
  if (!disc) return std::nullopt;
  for (int sign : {1, -1}) {
    Rational x2 = (a_ + sign * *disc) / 2;
    if (sgn(x2) <= 0) continue;
    if (auto x = exact_sqrt(x2)) {
      Rational y = b_ / (2 * *x);
      return canonical(*x, y);
    }
  }
  return std::nullopt;
}

std::complex<double> Scalar::to_complex() const {
  const double d = d_.get_d();
  const std::complex<double> theta = std::sqrt(std::complex<double>(d, 0.0));
  return a_.get_d() + b_.get_d() * theta;
}

std::string Scalar::to_string() const {
  return format_rational(a_) + "," + format_rational(b_) + ";" + format_rational(d_);
}

Scalar Scalar::from_string(std::string_view text) {
  const auto comma = text.find(',');
  const auto semi = text.find(';');
  if (comma == std::string_view::npos || semi == std::string_view::npos || semi < comma) {
    throw Error(Errc::configuration, "malformed scalar '" + std::string(text) + "'");
  }
  return Scalar(parse_rational(text.substr(0, comma)),
                parse_rational(text.substr(comma + 1, semi - comma - 1)),
                parse_rational(text.substr(semi + 1)));
}

}  // namespace asymkit
