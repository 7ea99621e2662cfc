#pragma once

#include <cmath>
#include <complex>
#include <string_view>

#include "orbemb/gaussian_rational.hpp"

namespace orbemb {

using Complex = std::complex<double>;

/// Arithmetic mode of a computation.  Exact mode is Q(i); approximate mode is
/// complex double.  The mode is carried by the scalar type, so mixing modes is
/// a compile-time error; Mode is the runtime tag used at I/O boundaries.
enum class Mode { Exact, Approx };

constexpr std::string_view mode_name(Mode m) { return m == Mode::Exact ? "exact" : "approx"; }

template <typename T>
struct FieldTraits;

template <>
struct FieldTraits<GaussRat> {
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::Exact;
  static double magnitude(const GaussRat& x) { return std::abs(x.to_complex()); }
  static Complex to_complex(const GaussRat& x) { return x.to_complex(); }
  static GaussRat from_rational(long num, long den) { return GaussRat::rational(num, den); }
  static GaussRat imaginary_unit() { return GaussRat::i(); }
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr Mode mode = Mode::Approx;
  static double magnitude(const Complex& x) { return std::abs(x); }
  static Complex to_complex(const Complex& x) { return x; }
  static Complex from_rational(long num, long den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static Complex imaginary_unit() { return {0.0, 1.0}; }
};

template <typename T>
concept Field = requires { FieldTraits<T>::exact; };

template <Field T>
constexpr bool is_exact_v = FieldTraits<T>::exact;

/// Zero test: structural in exact mode, |x| <= abs_tol in approximate mode.
template <Field T>
bool is_zero(const T& x, double abs_tol) {
  if constexpr (is_exact_v<T>) {
    return x.is_zero();
  } else {
    return std::abs(x) <= abs_tol;
  }
}

/// Principal square root with argument in (-pi/2, pi/2]: negative reals map
/// to i*sqrt(|x|) regardless of the sign of a zero imaginary part.
inline Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
  return std::sqrt(z);
}

}  // namespace orbemb
