#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace orbemb {

/// Element of Q(i): a pair of arbitrary-precision rationals.  All arithmetic
/// is exact; division by zero throws.
class GaussRat {
 public:
  GaussRat() = default;
  template <std::integral I>
  GaussRat(I re) : re_(static_cast<long>(re)) {}  // NOLINT: implicit by design of literals
  GaussRat(mpq_class re, mpq_class im = 0);

  static GaussRat rational(long num, long den);
  static GaussRat i() { return {0, 1}; }

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussRat conj() const { return {re_, -im_}; }
  /// |z|^2, always rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  /// Total bit length of numerators and denominators; used to pick small pivots.
  std::size_t height() const;

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// Canonical text form: "p/q" for reals, "p/q+r/s i" / "p/q-r/s i" otherwise.
  std::string str() const;
  /// Accepts the canonical form plus "r/s i", "i", "-i" and surrounding blanks.
  static GaussRat parse(std::string_view text);

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRat& z);

/// Exact rational square root, if q is the square of a rational.
std::optional<mpq_class> rational_sqrt(const mpq_class& q);

/// Principal square root in Q(i) (Re s > 0, or Re s = 0 and Im s >= 0), if
/// one exists.
std::optional<GaussRat> exact_sqrt(const GaussRat& z);

/// Best rational approximation of x with denominator at most max_den.
mpq_class rationalize(double x, long max_den);

}  // namespace orbemb
