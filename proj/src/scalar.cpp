#include "rlab/scalar.hpp"

#include <cctype>
#include <ostream>

#include "rlab/error.hpp"

namespace rlab {

Scalar Scalar::of(long long num, long long den) {
  if (den == 0) throw DefectError("Scalar::of: zero denominator");
  return Scalar(Rational(Int(num)) / Rational(Int(den)));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar Scalar::inverse() const {
  Rational n = norm();
  if (n.is_zero()) throw DefectError("Scalar::inverse: division by zero");
  return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(int e) const {
  Scalar base = e < 0 ? inverse() : *this;
  int n = e < 0 ? -e : e;
  Scalar acc = 1;
  for (int k = 0; k < n; ++k) acc *= base;
  return acc;
}

namespace {

std::string rational_str(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += "/";
    s += denominator(q).str();
  }
  return s;
}

}  // namespace

std::string Scalar::str() const {
  if (im_.is_zero()) return rational_str(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_str(im_) + " i";
  }
  if (re_.is_zero()) return imag;
  std::string s = rational_str(re_);
  if (im_ > 0) s += "+";
  // negative imaginary part carries its own sign
  return s + imag;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
};

Rational read_rational(Cursor& c) {
  std::size_t start = c.pos;
  while (c.pos < c.s.size() &&
         std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
    ++c.pos;
  if (c.pos == start) throw InputError("scalar: expected digits");
  Int num(std::string(c.s.substr(start, c.pos - start)));
  Int den(1);
  if (c.pos < c.s.size() && c.s[c.pos] == '/') {
    ++c.pos;
    std::size_t dstart = c.pos;
    while (c.pos < c.s.size() &&
           std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
      ++c.pos;
    if (c.pos == dstart) throw InputError("scalar: expected denominator");
    den = Int(std::string(c.s.substr(dstart, c.pos - dstart)));
    if (den.is_zero()) throw InputError("scalar: zero denominator");
  }
  return Rational(num) / Rational(den);
}

}  // namespace

Scalar Scalar::parse(std::string_view text) {
  Cursor c{text};
  Rational re, im;
  bool got_re = false, got_im = false, first = true;
  c.skip_ws();
  if (c.done()) throw InputError("scalar: empty");
  while (!c.done()) {
    int sign = 1;
    if (c.peek() == '+' || c.peek() == '-') {
      sign = c.peek() == '-' ? -1 : 1;
      ++c.pos;
      c.skip_ws();
    } else if (!first) {
      throw InputError("scalar: expected '+' or '-' between terms");
    }
    if (c.done()) throw InputError("scalar: dangling sign");
    if (c.peek() == 'i') {
      ++c.pos;
      if (got_im) throw InputError("scalar: duplicate imaginary part");
      im = Rational(sign);
      got_im = true;
    } else {
      Rational r = read_rational(c);
      // an 'i' may follow the coefficient, with optional space
      std::size_t save = c.pos;
      c.skip_ws();
      if (!c.done() && c.peek() == 'i') {
        ++c.pos;
        if (got_im) throw InputError("scalar: duplicate imaginary part");
        im = Rational(sign) * r;
        got_im = true;
      } else {
        c.pos = save;
        if (got_re) throw InputError("scalar: duplicate real part");
        re = Rational(sign) * r;
        got_re = true;
      }
    }
    first = false;
    c.skip_ws();
  }
  return Scalar(re, im);
}

}  // namespace rlab
