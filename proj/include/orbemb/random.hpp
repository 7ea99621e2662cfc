#pragma once

#include <cstdint>
#include <random>

#include "orbemb/enhanced.hpp"
#include "orbemb/symplectic.hpp"

namespace orbemb {

/// Seeded random source.  Every randomized routine takes one explicitly, so
/// runs are reproducible from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi);
  double uniform_real(double lo, double hi);
  double normal();
  bool coin() { return uniform_int(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 mix of (master, stream, index).  Trial k of property p under
/// master seed s uses derive_seed(s, p, k), so trial order never matters.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

template <Field T>
T from_exact(const GaussRat& z) {
  if constexpr (is_exact_v<T>) {
    return z;
  } else {
    return z.to_complex();
  }
}

/// Small Gaussian rational: numerators in [-range, range], denominators in
/// [1, max_den]; the imaginary part is nonzero about half of the time.
inline GaussRat random_gauss_rat(Rng& rng, long range = 4, long max_den = 3) {
  auto part = [&] {
    mpq_class q(rng.uniform_int(-range, range), rng.uniform_int(1, max_den));
    q.canonicalize();
    return q;
  };
  mpq_class re = part();
  mpq_class im = rng.coin() ? part() : mpq_class(0);
  return {re, im};
}

template <Field T>
T random_scalar(Rng& rng, long range = 4, long max_den = 3) {
  return from_exact<T>(random_gauss_rat(rng, range, max_den));
}

template <Field T>
Matrix<T> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range = 4, long max_den = 3) {
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar<T>(rng, range, max_den);
  return m;
}

template <Field T>
Vector<T> random_vector(Rng& rng, std::size_t dim, long range = 4, long max_den = 3) {
  Vector<T> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = random_scalar<T>(rng, range, max_den);
  return v;
}

/// Random invertible matrix (resampled until the determinant is nonzero).
template <Field T>
GroupElement<T> random_invertible(Rng& rng, std::size_t n, long range = 3, long max_den = 2) {
  for (;;) {
    Matrix<GaussRat> m = random_matrix<GaussRat>(rng, n, n, range, max_den);
    if (determinant(m).is_zero()) continue;
    Matrix<GaussRat> inv = inverse(m);
    if constexpr (is_exact_v<T>) {
      return GroupElement<T>(std::move(m), std::move(inv));
    } else {
      return GroupElement<T>(to_approx(m), to_approx(inv));
    }
  }
}

template <Field T>
Matrix<T> random_symmetric(Rng& rng, std::size_t n, long range = 4, long max_den = 3) {
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = random_scalar<T>(rng, range, max_den);
  return m;
}

/// Symplectic transvection x -> x + c <w, x> w, i.e. 1 + c w w^T J, with
/// w in {-1, 0, 1}^{2n} \ {0} and c in {±1/2, ±1, ±2}.
template <Field T>
GroupElement<T> random_transvection(const SymplecticContext<T>& ctx, Rng& rng) {
  const std::size_t dim = ctx.dim();
  Vector<T> w(dim);
  bool nonzero = false;
  while (!nonzero) {
    for (std::size_t i = 0; i < dim; ++i) {
      long e = rng.uniform_int(-1, 1);
      w[i] = T(e);
      nonzero = nonzero || e != 0;
    }
  }
  static constexpr long kNum[] = {1, -1, 1, -1, 2, -2};
  static constexpr long kDen[] = {2, 2, 1, 1, 1, 1};
  const long pick = rng.uniform_int(0, 5);
  T c = FieldTraits<T>::from_rational(kNum[pick], kDen[pick]);
  Matrix<T> wwt(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) wwt(i, j) = w[i] * w[j];
  Matrix<T> n = wwt * ctx.J();
  // n^2 = w <w, w> w^T J = 0, so (1 + c n)^{-1} = 1 - c n.
  return GroupElement<T>(Matrix<T>::identity(dim) + c * n, Matrix<T>::identity(dim) - c * n);
}

/// Product of 2k transvections with k uniform in [1, k_max].
template <Field T>
GroupElement<T> random_symplectic(const SymplecticContext<T>& ctx, Rng& rng, long k_max = 10) {
  const long k = rng.uniform_int(1, k_max);
  GroupElement<T> g = GroupElement<T>::identity(ctx.dim());
  for (long i = 0; i < 2 * k; ++i) g = g * random_transvection(ctx, rng);
  return g;
}

/// Random element of sp(2n) (alpha = -1) or of the sigma-fixed part (alpha = +1).
template <Field T>
Matrix<T> random_locus_matrix(const SymplecticContext<T>& ctx, Rng& rng, AlphaSign alpha) {
  auto parts = cartan_split(ctx, random_matrix<T>(rng, ctx.dim(), ctx.dim()));
  return alpha.value() < 0 ? parts.k_part : parts.p_part;
}

template <Field T>
EnhancedElement<T> random_L_element(const SymplecticContext<T>& ctx, Rng& rng, AlphaSign alpha) {
  return embed_L(ctx, random_vector<T>(rng, ctx.dim()), random_locus_matrix(ctx, rng, alpha), alpha);
}

template <Field T>
EnhancedElement<T> random_enhanced(const SymplecticContext<T>& ctx, Rng& rng) {
  return {random_vector<T>(rng, ctx.dim()), random_vector<T>(rng, ctx.dim()),
          random_matrix<T>(rng, ctx.dim(), ctx.dim())};
}

/// diag(a, a^{-T}) for random invertible a: an element of K.
template <Field T>
GroupElement<T> random_K_element(const SymplecticContext<T>& ctx, Rng& rng) {
  const std::size_t n = ctx.n();
  GroupElement<T> a = random_invertible<T>(rng, n);
  Matrix<T> m(2 * n, 2 * n), inv(2 * n, 2 * n);
  set_block(m, 0, 0, a.matrix());
  set_block(m, n, n, a.inverse().transpose());
  set_block(inv, 0, 0, a.inverse());
  set_block(inv, n, n, a.matrix().transpose());
  return GroupElement<T>(std::move(m), std::move(inv));
}

}  // namespace orbemb
