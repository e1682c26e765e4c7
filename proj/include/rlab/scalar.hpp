#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace rlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Element of Q(i), kept exactly as a pair of arbitrary-precision rationals.
// Rationals are canonical by construction (gcd-reduced, positive
// denominator).  Nothing in this library ever touches floating point.
class Scalar {
public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}  // NOLINT: implicit for integer literals
  Scalar(long v) : re_(v) {}
  Scalar(long long v) : re_(v) {}
  explicit Scalar(Rational re) : re_(std::move(re)) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar of(long long num, long long den);  // num/den, den != 0

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  bool is_one() const { return im_.is_zero() && re_ == 1; }

  Scalar conj() const { return Scalar(re_, -im_); }
  // re^2 + im^2 as a rational; zero iff the scalar is zero.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // throws DefectError on zero divisor

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(int e) const;  // integer exponent, e < 0 needs nonzero base

  bool operator==(const Scalar&) const = default;

  // Canonical text form: "a/b", "c/d i", "a/b+c/d i", "a/b-c/d i"; unit
  // imaginary parts print as "i".  parse() accepts this grammar with
  // optional whitespace.
  std::string str() const;
  static Scalar parse(std::string_view text);  // throws InputError

private:
  Rational re_, im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace rlab
