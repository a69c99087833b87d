#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace pbf {

/// Exact Gaussian rational re + i*im backed by GMP rationals.
///
/// Every action formula in the Fock-like module has integer coefficients and
/// the only divisions are by p or 2, so all relation checks reduce to exact
/// equality of Scalars.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value), im_(0) {}  // NOLINT(implicit)
  Scalar(mpq_class re, mpq_class im = 0);

  static Scalar ratio(long num, long den);
  static Scalar imaginary_unit() { return Scalar(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2, always real.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const { return Scalar(-re_, -im_); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Human-readable form: "3/2", "-1/3+2/5i", "i".
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Canonical "num/den" rendering of a rational (denominator always present).
std::string rational_string(const mpq_class& q);

/// Parses "num", "num/den" or "-num/den"; throws pbf::Error(Parse).
mpq_class parse_rational(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace pbf
