#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <variant>

#include "mtype/errors.hpp"

namespace mtype {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_50;

// Comparison tolerance used by default once a value has left exact mode.
inline constexpr double kRealTol = 1e-12;

inline Real to_real(const Rational& r) { return static_cast<Real>(r); }

// A number that is either an exact rational or a 50-digit float.  Arithmetic
// stays exact as long as both operands are exact; any operation touching a
// Real operand yields a Real.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int n) : v_(Rational(n)) {}
  Scalar(long n) : v_(Rational(n)) {}
  Scalar(long long n) : v_(Rational(n)) {}
  Scalar(std::size_t n) : v_(Rational(static_cast<std::uint64_t>(n))) {}
  Scalar(const Integer& n) : v_(Rational(n)) {}
  Scalar(const Rational& r) : v_(r) {}
  Scalar(Rational&& r) : v_(std::move(r)) {}
  Scalar(const Real& x) : v_(x) {}
  Scalar(Real&& x) : v_(std::move(x)) {}

  // Doubles embed exactly: every finite double is a dyadic rational.
  static Scalar from_double(double d) {
    if (!std::isfinite(d)) throw OutOfRange("non-finite double");
    return Scalar(Rational(d));
  }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }

  const Rational& rational() const {
    if (!is_rational()) throw Error("scalar is not exact");
    return std::get<Rational>(v_);
  }

  Real real() const {
    if (is_rational()) return to_real(std::get<Rational>(v_));
    return std::get<Real>(v_);
  }

  double to_double() const { return static_cast<double>(real()); }

  int sign() const {
    if (is_rational()) return std::get<Rational>(v_).sign();
    const Real& x = std::get<Real>(v_);
    return x == 0 ? 0 : (x < 0 ? -1 : 1);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
      return Scalar(std::get<Rational>(a.v_) + std::get<Rational>(b.v_));
    return Scalar(a.real() + b.real());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
      return Scalar(std::get<Rational>(a.v_) - std::get<Rational>(b.v_));
    return Scalar(a.real() - b.real());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
      return Scalar(std::get<Rational>(a.v_) * std::get<Rational>(b.v_));
    return Scalar(a.real() * b.real());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.sign() == 0) throw Error("division by zero");
    if (a.is_rational() && b.is_rational())
      return Scalar(std::get<Rational>(a.v_) / std::get<Rational>(b.v_));
    return Scalar(a.real() / b.real());
  }
  Scalar operator-() const {
    if (is_rational()) return Scalar(-std::get<Rational>(v_));
    return Scalar(-std::get<Real>(v_));
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  // Comparisons are on the represented value; rational/rational is exact.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
      return std::get<Rational>(a.v_) == std::get<Rational>(b.v_);
    return a.real() == b.real();
  }
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational())
      return std::get<Rational>(a.v_) < std::get<Rational>(b.v_);
    return a.real() < b.real();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

 private:
  std::variant<Rational, Real> v_;
};

inline bool approx_eq(const Scalar& a, const Scalar& b, double tol = kRealTol) {
  if (a.is_rational() && b.is_rational()) return a == b;
  Real d = a.real() - b.real();
  if (d < 0) d = -d;
  return d <= Real(tol);
}

inline bool approx_le(const Scalar& a, const Scalar& b, double tol = kRealTol) {
  if (a.is_rational() && b.is_rational()) return a <= b;
  return a.real() <= b.real() + Real(tol);
}

// Nonnegative integer powers keep the operand's mode.
inline Scalar pow_int(const Scalar& base, unsigned e) {
  Scalar acc(1), b = base;
  while (e > 0) {
    if (e & 1u) acc *= b;
    if (e >>= 1u) b *= b;
  }
  return acc;
}

inline Rational pow_int(const Rational& base, unsigned e) {
  Rational acc(1), b = base;
  while (e > 0) {
    if (e & 1u) acc *= b;
    if (e >>= 1u) b *= b;
  }
  return acc;
}

// x^(1/p) for x >= 0 and integer p >= 1.  p == 1 preserves exactness;
// otherwise the result is a Real.
inline Scalar root(const Scalar& x, int p) {
  if (p < 1) throw InvalidExponent("root index must be >= 1");
  if (x.sign() < 0) throw OutOfRange("root of negative value");
  if (p == 1) return x;
  return Scalar(boost::multiprecision::pow(x.real(), Real(1) / Real(p)));
}

// x^e for real exponent e.  Integer e >= 0 keeps exact mode; anything else
// goes through Real pow and requires x >= 0.
inline Scalar pow_real(const Scalar& x, double e) {
  if (std::floor(e) == e && e >= 0 && e <= 1e9)
    return pow_int(x, static_cast<unsigned>(e));
  if (x.sign() < 0) throw OutOfRange("fractional power of negative value");
  if (x.sign() == 0) {
    if (e <= 0) throw InvalidExponent("0 raised to nonpositive power");
    return Scalar(0);
  }
  return Scalar(boost::multiprecision::pow(x.real(), Real(e)));
}

inline std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string to_string(const Scalar& s) {
  if (s.is_rational()) return to_string(s.rational());
  std::ostringstream os;
  os.precision(17);
  os << static_cast<double>(s.real());
  return os.str();
}

// Accepts "n", "-n", "n/d", and plain decimal strings ("0.25" -> 1/4).
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Integer num(s.substr(0, slash));
      Integer den(s.substr(slash + 1));
      if (den == 0) throw Error("zero denominator");
      return Rational(num, den);
    }
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos) {
      const double d = std::stod(s);
      if (!std::isfinite(d)) throw Error("non-finite literal");
      return Rational(d);
    }
    return Rational(Integer(s));
  } catch (const std::exception& e) {
    throw Error("bad rational literal '" + s + "': " + e.what());
  }
}

// Best rational approximation with denominator <= max_den, by continued
// fractions.  Exactly representable inputs come back unchanged when their
// denominator already fits.
inline Rational rationalize(double x, const Integer& max_den) {
  if (!std::isfinite(x)) throw OutOfRange("non-finite double");
  if (max_den < 1) throw OutOfRange("denominator cap must be >= 1");
  const Rational target(x);
  if (boost::multiprecision::denominator(target) <= max_den) return target;

  // Convergents p/q of the continued fraction of |target|.
  Rational t = boost::multiprecision::abs(target);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational frac = t;
  Rational best(0);
  while (true) {
    const Integer a = boost::multiprecision::numerator(frac) /
                      boost::multiprecision::denominator(frac);
    Integer p2 = a * p1 + p0;
    Integer q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Best semiconvergent: largest k with q0 + k*q1 <= max_den.
      const Integer k = q1 > 0 ? (max_den - q0) / q1 : Integer(0);
      const Rational semi =
          q1 > 0 && 2 * k >= a ? Rational(k * p1 + p0, k * q1 + q0) : Rational(p1, q1);
      const Rational conv(p1, q1);
      best = boost::multiprecision::abs(semi - t) <
                     boost::multiprecision::abs(conv - t)
                 ? semi
                 : conv;
      break;
    }
    Rational rem = frac - Rational(a);
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (rem == 0) {
      best = Rational(p1, q1);
      break;
    }
    frac = Rational(1) / rem;
  }
  return x < 0 ? Rational(-best) : best;
}

inline Rational rationalize(double x, long long max_den) {
  return rationalize(x, Integer(max_den));
}

}  // namespace mtype
