#include "asymkit/puiseux.hpp"

#include <cmath>
#include <sstream>

#include "asymkit/error.hpp"

namespace asymkit {

Exponent Exponent::from_rational(const Rational& value) {
  Rational twice = value * 2;
  twice.canonicalize();
  if (twice.get_den() != 1) {
    throw Error(Errc::configuration,
                "exponent " + format_rational(value) + " is not on the half-integer lattice");
  }
  if (!twice.get_num().fits_slong_p()) {
    throw Error(Errc::configuration, "exponent " + format_rational(value) + " out of range");
  }
  return Exponent(twice.get_num().get_si());
}

Rational Exponent::to_rational() const {
  if (is_infinite()) throw Error(Errc::configuration, "infinite exponent has no rational value");
  Rational r(static_cast<long>(twice_), 2);
  r.canonicalize();
  return r;
}

double Exponent::to_double() const noexcept {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(twice_) / 2.0;
}

std::string Exponent::to_string() const {
  return is_infinite() ? std::string("inf") : format_rational(to_rational());
}

Exponent operator+(Exponent x, Exponent y) {
  if (x.is_infinite() || y.is_infinite()) return Exponent::infinity();
  return Exponent(x.twice_ + y.twice_);
}

Exponent operator-(Exponent x, Exponent y) {
  if (y.is_infinite()) throw Error(Errc::configuration, "cannot subtract an infinite exponent");
  if (x.is_infinite()) return x;
  return Exponent(x.twice_ - y.twice_);
}

Exponent operator-(Exponent x) {
  if (x.is_infinite()) throw Error(Errc::configuration, "cannot negate an infinite exponent");
  return Exponent(-x.twice_);
}

PuiseuxSeries::PuiseuxSeries(std::string variable, Rational theta_squared, Exponent trunc)
    : variable_(std::move(variable)), theta_squared_(std::move(theta_squared)), trunc_(trunc) {
  theta_squared_.canonicalize();
}

PuiseuxSeries PuiseuxSeries::monomial(std::string variable, const Scalar& coefficient,
                                      Exponent exponent, Exponent trunc) {
  PuiseuxSeries s(std::move(variable), coefficient.theta_squared(), trunc);
  if (exponent < trunc) s.set_coefficient(exponent, coefficient);
  return s;
}

Exponent PuiseuxSeries::order() const noexcept {
  return terms_.empty() ? trunc_ : terms_.begin()->first;
}

Scalar PuiseuxSeries::coefficient(Exponent e) const {
  if (e >= trunc_) {
    throw Error(Errc::truncation, "coefficient of " + variable_ + "^" + e.to_string() +
                                      " is beyond the truncation order " + trunc_.to_string());
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? zero() : it->second;
}

void PuiseuxSeries::set_coefficient(Exponent e, const Scalar& value) {
  if (e.is_infinite() || e >= trunc_) {
    throw Error(Errc::truncation, "cannot store a coefficient at " + e.to_string() +
                                      " with truncation order " + trunc_.to_string());
  }
  if (value.theta_squared() != theta_squared_) {
    throw Error(Errc::configuration, "coefficient extension does not match the series");
  }
  if (value.is_zero()) {
    terms_.erase(e);
  } else {
    terms_.insert_or_assign(e, value);
  }
}

PuiseuxSeries PuiseuxSeries::truncated(Exponent order) const {
  PuiseuxSeries out(variable_, theta_squared_, std::min(trunc_, order));
  for (const auto& [e, c] : terms_) {
    if (e >= out.trunc_) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

std::complex<double> PuiseuxSeries::evaluate(std::complex<double> z) const {
  const std::complex<double> log_z = std::log(z);
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) {
    sum += c.to_complex() * std::exp(e.to_double() * log_z);
  }
  return sum;
}

void PuiseuxSeries::require_compatible(const PuiseuxSeries& other) const {
  if (variable_ != other.variable_) {
    throw Error(Errc::configuration,
                "series in different variables: " + variable_ + " vs " + other.variable_);
  }
  if (theta_squared_ != other.theta_squared_) {
    throw Error(Errc::configuration, "series over different extensions: theta^2 = " +
                                         format_rational(theta_squared_) + " vs " +
                                         format_rational(other.theta_squared_));
  }
}

PuiseuxSeries PuiseuxSeries::operator-() const {
  PuiseuxSeries out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

PuiseuxSeries operator+(const PuiseuxSeries& x, const PuiseuxSeries& y) {
  x.require_compatible(y);
  PuiseuxSeries out(x.variable_, x.theta_squared_, std::min(x.trunc_, y.trunc_));
  for (const auto* s : {&x, &y}) {
    for (const auto& [e, c] : s->terms_) {
      if (e >= out.trunc_) break;
      auto [it, inserted] = out.terms_.try_emplace(e, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

PuiseuxSeries operator-(const PuiseuxSeries& x, const PuiseuxSeries& y) { return x + (-y); }

PuiseuxSeries operator*(const PuiseuxSeries& x, const PuiseuxSeries& y) {
  x.require_compatible(y);
  const Exponent trunc = std::min(x.trunc_ + y.order(), y.trunc_ + x.order());
  PuiseuxSeries out(x.variable_, x.theta_squared_, trunc);
  for (const auto& [ex, cx] : x.terms_) {
    for (const auto& [ey, cy] : y.terms_) {
      const Exponent e = ex + ey;
      if (e >= trunc) break;
      auto [it, inserted] = out.terms_.try_emplace(e, cx * cy);
      if (!inserted) it->second += cx * cy;
    }
  }
  std::erase_if(out.terms_, [](const auto& term) { return term.second.is_zero(); });
  return out;
}

PuiseuxSeries operator*(const PuiseuxSeries& x, const Scalar& c) {
  PuiseuxSeries out(x.variable_, x.theta_squared_, x.trunc_);
  if (c.theta_squared() != x.theta_squared_) {
    throw Error(Errc::configuration, "scalar extension does not match the series");
  }
  if (c.is_zero()) return out;
  for (const auto& [e, v] : x.terms_) out.terms_.emplace_hint(out.terms_.end(), e, v * c);
  return out;
}

std::string PuiseuxSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << format_rational(c.a());
    if (!c.is_rational()) os << " + " << format_rational(c.b()) << "*theta";
    os << ")*" << variable_ << "^" << e.to_string();
  }
  if (first) os << "0";
  if (!trunc_.is_infinite()) os << " + O(" << variable_ << "^" << trunc_.to_string() << ")";
  return os.str();
}

PuiseuxSeries mul(const PuiseuxSeries& x, const PuiseuxSeries& y) { return x * y; }

PuiseuxSeries derivative(const PuiseuxSeries& x) {
  const Exponent trunc = x.trunc().is_infinite() ? x.trunc() : x.trunc() - Exponent::integer(1);
  PuiseuxSeries out(x.variable(), x.theta_squared(), trunc);
  for (const auto& [e, c] : x.terms()) {
    if (e == Exponent{}) continue;
    out.set_coefficient(e - Exponent::integer(1), c * e.to_rational());
  }
  return out;
}

PuiseuxSeries derivative(const PuiseuxSeries& x, int times) {
  PuiseuxSeries out = x;
  for (int i = 0; i < times; ++i) out = derivative(out);
  return out;
}

namespace {

struct LeadingFactor {
  Scalar coefficient;
  Exponent exponent;
  PuiseuxSeries rest;  // x / (c0 var^e0) - 1, positive order
};

LeadingFactor factor_leading(const PuiseuxSeries& x, const char* what) {
  if (x.empty()) {
    throw Error(Errc::division, std::string(what) + " of a series with no known nonzero term");
  }
  const auto& [e0, c0] = *x.terms().begin();
  const Scalar inv = c0.inverse();
  PuiseuxSeries rest(x.variable(), x.theta_squared(), x.trunc() - e0);
  for (auto it = std::next(x.terms().begin()); it != x.terms().end(); ++it) {
    rest.set_coefficient(it->first - e0, it->second * inv);
  }
  return {c0, e0, std::move(rest)};
}

PuiseuxSeries shift(const PuiseuxSeries& x, Exponent by) {
  PuiseuxSeries out(x.variable(), x.theta_squared(), x.trunc() + by);
  for (const auto& [e, c] : x.terms()) out.set_coefficient(e + by, c);
  return out;
}

// sum_k coeff(k) u^k up to the truncation order of u; ord(u) > 0.
template <typename CoeffFn>
PuiseuxSeries compose_power_series(const PuiseuxSeries& u, CoeffFn coeff) {
  PuiseuxSeries sum = PuiseuxSeries::constant(u.variable(), u.one());
  if (u.empty()) return sum.truncated(u.trunc());
  if (u.trunc().is_infinite()) {
    throw Error(Errc::budget,
                "exact series has an infinite expansion here; truncate the input first");
  }
  PuiseuxSeries power = sum;
  for (long k = 1;; ++k) {
    power = power * u;
    if (power.order() >= u.trunc()) break;
    sum = sum + power * coeff(k);
  }
  return sum.truncated(u.trunc());
}

}  // namespace

PuiseuxSeries reciprocal(const PuiseuxSeries& x) {
  auto [c0, e0, rest] = factor_leading(x, "reciprocal");
  const Scalar one = x.one();
  PuiseuxSeries geometric = compose_power_series(
      rest, [&](long k) { return (k % 2 == 0) ? one : -one; });
  return shift(geometric * c0.inverse(), -e0);
}

PuiseuxSeries pow_int(const PuiseuxSeries& x, long k) {
  if (k < 0) return pow_int(reciprocal(x), -k);
  PuiseuxSeries result = PuiseuxSeries::constant(x.variable(), x.one());
  PuiseuxSeries base = x;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

PuiseuxSeries sqrt_series(const PuiseuxSeries& x, Branch branch) {
  auto [c0, e0, rest] = factor_leading(x, "square root");
  if (e0.twice() % 2 != 0) {
    throw Error(Errc::configuration, "square root needs an integer leading exponent, got " +
                                         e0.to_string());
  }
  auto root = c0.sqrt();
  if (!root) {
    throw Error(Errc::unsupported_scalar,
                "leading coefficient " + c0.to_string() + " has no square root in Q(theta)");
  }
  // binom(1/2, k) built incrementally: b_k = b_{k-1} (1/2 - k + 1) / k.
  Rational binom = 1;
  long last = 0;
  const Scalar one = x.one();
  PuiseuxSeries body = compose_power_series(rest, [&](long k) {
    for (; last < k; ++last) binom = binom * (Rational(1, 2) - last) / (last + 1);
    return one * binom;
  });
  Scalar lead = (branch == Branch::principal) ? *root : -*root;
  return shift(body * lead, Exponent::halves(e0.twice() / 2));
}

}  // namespace asymkit
