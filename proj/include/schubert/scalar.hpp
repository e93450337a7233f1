#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace schubert {

using Complex = std::complex<double>;

/// Exact complex number re + i*im with arbitrary-precision rational parts.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussRat(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// Exact binary value of a double-precision complex number.
  static GaussRat from_complex(Complex z);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  GaussRat conj() const { return GaussRat(re_, -im_); }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re_, -a.im_); }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

 private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

std::string to_string(const GaussRat& z);

/// Smallest dyadic rational r with r >= sqrt(q), carrying about `bits` significant bits.
mpq_class sqrt_upper_bound(const mpq_class& q, int bits = 64);

/// Round each part to the nearest multiple of 2^-bits relative to its magnitude.
GaussRat round_to_bits(const GaussRat& z, int bits);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static double magnitude(const Complex& z) { return std::abs(z); }
  static bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
  static Complex to_complex(const Complex& z) { return z; }
};

template <>
struct ScalarTraits<GaussRat> {
  static constexpr bool exact = true;
  static double magnitude(const GaussRat& z) { return std::abs(z.to_complex()); }
  static bool is_zero(const GaussRat& z) { return z.is_zero(); }
  static Complex to_complex(const GaussRat& z) { return z.to_complex(); }
};

}  // namespace schubert
