#include "nicolai/scalar.hpp"

#include "nicolai/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace nicolai {

namespace {

using boost::multiprecision::cpp_int;

Rational pow10(std::size_t k) {
  cpp_int p = 1;
  for (std::size_t i = 0; i < k; ++i) p *= 10;
  return Rational(p);
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw ConfigParse("empty rational literal");
  bool negative = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  s = s.substr(pos);
  if (s.empty()) throw ConfigParse("bad rational literal: " + text);

  Rational value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  try {
    if (slash != std::string::npos) {
      cpp_int num(s.substr(0, slash));
      cpp_int den(s.substr(slash + 1));
      if (den == 0) throw ConfigParse("zero denominator: " + text);
      value = Rational(num, den);
    } else if (dot != std::string::npos) {
      std::string head = s.substr(0, dot);
      std::string tail = s.substr(dot + 1);
      if (head.empty()) head = "0";
      cpp_int integral(head);
      cpp_int frac = tail.empty() ? cpp_int(0) : cpp_int(tail);
      value = Rational(integral) + Rational(frac) / pow10(tail.size());
    } else {
      value = Rational(cpp_int(s));
    }
  } catch (const std::exception&) {
    throw ConfigParse("bad rational literal: " + text);
  }
  return negative ? -value : value;
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

Scalar Scalar::from_double(std::complex<double> z) {
  Scalar s;
  s.exact_ = false;
  s.float_ = z;
  return s;
}

bool Scalar::is_zero() const {
  if (exact_) return re_ == 0 && im_ == 0;
  return std::abs(float_) <= kFloatZeroEps;
}

bool Scalar::is_real() const {
  if (exact_) return im_ == 0;
  return std::abs(float_.imag()) <= kFloatZeroEps;
}

std::complex<double> Scalar::to_complex() const {
  if (exact_) return {rational_to_double(re_), rational_to_double(im_)};
  return float_;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (r.exact_) {
    r.re_ = -r.re_;
    r.im_ = -r.im_;
  } else {
    r.float_ = -r.float_;
  }
  return r;
}

Scalar Scalar::conj() const {
  Scalar r = *this;
  if (r.exact_) {
    r.im_ = -r.im_;
  } else {
    r.float_ = std::conj(r.float_);
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("inverse of zero scalar");
  if (exact_) {
    Rational norm = re_ * re_ + im_ * im_;
    return Scalar(re_ / norm, -im_ / norm);
  }
  return from_double(1.0 / float_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (exact_ && o.exact_) {
    re_ += o.re_;
    im_ += o.im_;
  } else {
    float_ = to_complex() + o.to_complex();
    exact_ = false;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (exact_ && o.exact_) {
    re_ -= o.re_;
    im_ -= o.im_;
  } else {
    float_ = to_complex() - o.to_complex();
    exact_ = false;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (exact_ && o.exact_) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
  } else {
    float_ = to_complex() * o.to_complex();
    exact_ = false;
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
  return a.to_complex() == b.to_complex();
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  return std::abs(a.to_complex() - b.to_complex()) <= tol;
}

std::string Scalar::str() const {
  if (!exact_) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", float_.real(),
                  float_.imag());
    return buf;
  }
  if (im_ == 0) return rational_to_string(re_);
  std::string im = rational_to_string(im_);
  std::string sign = "+";
  if (im[0] == '-') {
    sign = "-";
    im = im.substr(1);
  }
  return "(" + rational_to_string(re_) + sign + im + "i)";
}

Scalar Scalar::parse(const std::string& token) {
  if (token.empty()) throw ConfigParse("empty scalar token");
  if (token.front() == '(') {
    if (token.back() != ')')
      throw ConfigParse("unbalanced scalar token: " + token);
    std::string body = token.substr(1, token.size() - 2);
    auto comma = body.find(',');
    if (comma != std::string::npos) {
      double re = std::stod(body.substr(0, comma));
      double im = std::stod(body.substr(comma + 1));
      return from_double({re, im});
    }
    if (body.empty() || body.back() != 'i')
      throw ConfigParse("bad complex token: " + token);
    body.pop_back();
    // Split at the sign separating real and imaginary parts; skip index 0
    // so a leading "-" on the real part is kept.
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < body.size(); ++i) {
      if (body[i] == '+' || body[i] == '-') split = i;
    }
    if (split == std::string::npos)
      throw ConfigParse("bad complex token: " + token);
    Rational re = rational_from_string(body.substr(0, split));
    Rational im = rational_from_string(body.substr(split + 1));
    if (body[split] == '-') im = -im;
    return Scalar(re, im);
  }
  return Scalar(rational_from_string(token));
}

}  // namespace nicolai
