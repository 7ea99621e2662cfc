#pragma once

#include <cstddef>
#include <utility>

#include "orbemb/group_element.hpp"
#include "orbemb/linsolve.hpp"
#include "orbemb/matrix.hpp"

namespace orbemb {

/// V = C^{2n} with the form <u, v> = u^T J v, J = [[0, 1_n], [-1_n, 0]].
template <Field T>
class SymplecticContext {
 public:
  explicit SymplecticContext(std::size_t n) : n_(n), j_(2 * n, 2 * n), j_inv_(2 * n, 2 * n) {
    if (n == 0) throw DimensionMismatch("SymplecticContext: n must be positive");
    for (std::size_t i = 0; i < n; ++i) {
      j_(i, n + i) = T(1);
      j_(n + i, i) = T(-1);
    }
    j_inv_ = -j_;  // J^2 = -1
  }

  std::size_t n() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  const Matrix<T>& J() const { return j_; }
  const Matrix<T>& J_inverse() const { return j_inv_; }

  void require_square(const Matrix<T>& a, const char* what) const {
    if (a.rows() != dim() || a.cols() != dim()) throw DimensionMismatch(std::string(what) + ": expected a 2n x 2n matrix");
  }
  void require_vector(const Vector<T>& v, const char* what) const {
    if (v.dim() != dim()) throw DimensionMismatch(std::string(what) + ": expected a vector of length 2n");
  }

 private:
  std::size_t n_;
  Matrix<T> j_;
  Matrix<T> j_inv_;
};

template <Field T>
T symplectic_form(const SymplecticContext<T>& ctx, const Vector<T>& u, const Vector<T>& v) {
  ctx.require_vector(u, "symplectic_form");
  ctx.require_vector(v, "symplectic_form");
  return dot(u, ctx.J() * v);
}

/// sigma(A) = J^{-1} A^T J, the adjoint for the symplectic form.
template <Field T>
Matrix<T> sigma_end(const SymplecticContext<T>& ctx, const Matrix<T>& a) {
  ctx.require_square(a, "sigma_end");
  return ctx.J_inverse() * a.transpose() * ctx.J();
}

/// theta(g) = sigma(g)^{-1} = sigma(g^{-1}).
template <Field T>
GroupElement<T> theta_group(const SymplecticContext<T>& ctx, const GroupElement<T>& g) {
  return GroupElement<T>(sigma_end(ctx, g.inverse()), sigma_end(ctx, g.matrix()));
}

/// ||g^T J g - J||; zero exactly for symplectic g in exact mode.
template <Field T>
double symplectic_defect(const SymplecticContext<T>& ctx, const Matrix<T>& g) {
  ctx.require_square(g, "symplectic_defect");
  return frobenius_norm(Matrix<T>(g.transpose() * ctx.J() * g - ctx.J()));
}

template <Field T>
bool is_symplectic(const SymplecticContext<T>& ctx, const Matrix<T>& g, double tol = kDefaultResidualTol) {
  ctx.require_square(g, "is_symplectic");
  Matrix<T> form = g.transpose() * ctx.J() * g;
  return agree(form, ctx.J(), tol, frobenius_norm(ctx.J()));
}

template <Field T>
bool is_symplectic(const SymplecticContext<T>& ctx, const GroupElement<T>& g, double tol = kDefaultResidualTol) {
  return is_symplectic(ctx, g.matrix(), tol);
}

/// Norm of the two off-diagonal n x n blocks.
template <Field T>
double off_block_norm(const SymplecticContext<T>& ctx, const Matrix<T>& g) {
  ctx.require_square(g, "off_block_norm");
  const std::size_t n = ctx.n();
  return std::hypot(frobenius_norm(block(g, 0, n, n, n)), frobenius_norm(block(g, n, 0, n, n)));
}

template <Field T>
bool is_block_diagonal(const SymplecticContext<T>& ctx, const Matrix<T>& g, double tol = kDefaultResidualTol) {
  const std::size_t n = ctx.n();
  if constexpr (is_exact_v<T>) {
    return is_zero_matrix(block(g, 0, n, n, n)) && is_zero_matrix(block(g, n, 0, n, n));
  } else {
    return off_block_norm(ctx, g) <= tol * std::max(1.0, frobenius_norm(g));
  }
}

template <Field T>
bool satisfies(const SymplecticContext<T>& ctx, const Matrix<T>& g, GroupConstraint c,
               double tol = kDefaultResidualTol) {
  switch (c) {
    case GroupConstraint::Full: return true;
    case GroupConstraint::Symplectic: return is_symplectic(ctx, g, tol);
    case GroupConstraint::BlockDiagonal: return is_block_diagonal(ctx, g, tol);
    case GroupConstraint::SymplecticBlock: return is_block_diagonal(ctx, g, tol) && is_symplectic(ctx, g, tol);
  }
  return false;
}

template <Field T>
struct CartanParts {
  Matrix<T> k_part;  ///< sigma(k) = -k, the sp(2n) component
  Matrix<T> p_part;  ///< sigma(p) = p
};

template <Field T>
CartanParts<T> cartan_split(const SymplecticContext<T>& ctx, const Matrix<T>& a) {
  Matrix<T> s = sigma_end(ctx, a);
  const T half = FieldTraits<T>::from_rational(1, 2);
  return {half * Matrix<T>(a - s), half * Matrix<T>(a + s)};
}

}  // namespace orbemb
