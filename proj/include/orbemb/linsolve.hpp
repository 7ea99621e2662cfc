#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "orbemb/matrix.hpp"

namespace orbemb {

inline constexpr double kDefaultResidualTol = 1e-9;

template <Field T>
struct RowEchelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form.  In approximate mode a pivot candidate whose
/// magnitude is at most tol * max|entry| counts as zero.
template <Field T>
RowEchelon<T> rref(Matrix<T> m, double tol = kDefaultResidualTol) {
  double scale = 0.0;
  if constexpr (!is_exact_v<T>) {
    for (const auto& x : m.entries()) scale = std::max(scale, std::abs(x));
  }
  const double zero_tol = tol * std::max(scale, 1e-300);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = detail::pick_pivot(m, c, row);
    if (p == m.rows() || is_zero(m(p, c), zero_tol)) continue;
    detail::swap_rows(m, p, row);
    T piv_inv = T(1) / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= piv_inv;
    m(row, c) = T(1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, c), 0.0)) continue;
      T factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= factor * m(row, j);
      m(r, c) = T(0);
    }
    pivots.push_back(c);
    ++row;
  }
  if constexpr (!is_exact_v<T>) {
    for (std::size_t r = row; r < m.rows(); ++r)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (std::abs(m(r, j)) <= zero_tol) m(r, j) = T(0);
  }
  return {std::move(m), std::move(pivots)};
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the RREF of
/// the matrix whose rows are the given vectors.
template <Field T>
std::vector<Vector<T>> echelon_basis(const std::vector<Vector<T>>& vectors, std::size_t dim,
                                     double tol = kDefaultResidualTol) {
  if (vectors.empty()) return {};
  Matrix<T> m(vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dim() != dim) throw DimensionMismatch("echelon_basis: dimension mismatch");
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vectors[i][j];
  }
  auto e = rref(std::move(m), tol);
  std::vector<Vector<T>> basis;
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    Vector<T> v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = e.reduced(r, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solution set of A x = b: empty, or particular + span(kernel).
template <Field T>
struct SolutionSpace {
  bool feasible = false;
  Vector<T> particular;
  /// Homogeneous kernel basis, rows of a reduced echelon matrix.
  std::vector<Vector<T>> kernel;
  /// ||A x_p - b|| (0 in exact mode when feasible).
  double residual = 0.0;

  std::size_t dimension() const { return kernel.size(); }
};

/// Solves A x = b.  Infeasibility is exact in exact mode; in approximate mode
/// it is declared when ||A x - b|| > tol * (1 + ||b||).
template <Field T>
SolutionSpace<T> solve_linear(const Matrix<T>& a, const Vector<T>& b, double tol = kDefaultResidualTol) {
  if (a.rows() != b.dim()) throw DimensionMismatch("solve_linear: rhs length differs from row count");
  const std::size_t n = a.cols();
  Matrix<T> aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto e = rref(std::move(aug), tol);

  SolutionSpace<T> out;
  out.particular = Vector<T>(n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    std::size_t c = e.pivot_cols[r];
    if (c == n) {
      // Row reads 0 = nonzero.  Approximate mode defers to the residual test.
      if constexpr (is_exact_v<T>) {
        out.feasible = false;
        out.residual = std::numeric_limits<double>::infinity();
        return out;
      } else {
        continue;
      }
    }
    is_pivot[c] = true;
    out.particular[c] = e.reduced(r, n);
  }

  std::vector<Vector<T>> raw;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector<T> k(n);
    k[f] = T(1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
      if (e.pivot_cols[r] < n) k[e.pivot_cols[r]] = -e.reduced(r, f);
    raw.push_back(std::move(k));
  }
  out.kernel = echelon_basis(raw, n, tol);

  Vector<T> diff = a * out.particular - b;
  out.residual = euclidean_norm(diff);
  if constexpr (is_exact_v<T>) {
    out.feasible = true;
  } else {
    out.feasible = out.residual <= tol * (1.0 + euclidean_norm(b));
  }
  return out;
}

}  // namespace orbemb
