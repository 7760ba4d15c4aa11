#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>

namespace nicolai {

using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", "-3" or a finite decimal like "0.125" into an exact rational.
Rational rational_from_string(const std::string& text);
std::string rational_to_string(const Rational& r);
double rational_to_double(const Rational& r);

/// Complex coefficient of a CAR polynomial.
///
/// By default a Scalar carries exact rational real and imaginary parts, so
/// cancellations in the operator algebra are literal zeros.  A Scalar can
/// also be put into float mode (complex<double>); inexactness is contagious
/// through arithmetic and is reported by exact().
class Scalar {
 public:
  // Magnitude below which a float-mode coefficient counts as zero.
  static constexpr double kFloatZeroEps = 1e-14;

  Scalar() = default;
  Scalar(int n) : re_(n) {}                 // NOLINT: implicit by design
  Scalar(long long n) : re_(n) {}           // NOLINT
  explicit Scalar(Rational re, Rational im = Rational(0))
      : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar from_double(std::complex<double> z);
  static Scalar imaginary_unit() { return Scalar(Rational(0), Rational(1)); }

  bool exact() const { return exact_; }
  bool is_zero() const;
  bool is_real() const;

  // Valid only in exact mode.
  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  std::complex<double> to_complex() const;

  Scalar operator-() const;
  Scalar conj() const;
  Scalar inverse() const;  // throws Error on zero

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

  // Exact equality when both operands are exact; comparison of the
  // double images otherwise.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Serialization token, e.g. "3/2", "(1/2-3i)", "(0.5,1.25e-3)".
  std::string str() const;
  static Scalar parse(const std::string& token);

 private:
  bool exact_ = true;
  Rational re_{0};
  Rational im_{0};
  std::complex<double> float_{0.0, 0.0};
};

bool approx_equal(const Scalar& a, const Scalar& b, double tol);

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.str();
}

}  // namespace nicolai
