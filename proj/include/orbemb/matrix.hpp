#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbemb/errors.hpp"
#include "orbemb/field.hpp"

namespace orbemb {

/// Dense column vector.  Whether it stands for an element of V or for the
/// representing vector of a covector is decided by the owner.
template <Field T>
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : data_(dim, T(0)) {}
  Vector(std::initializer_list<T> init) : data_(init) {}
  explicit Vector(std::vector<T> data) : data_(std::move(data)) {}

  std::size_t dim() const { return data_.size(); }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  std::span<const T> entries() const { return data_; }

  Vector& operator+=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_same(o);
    for (std::size_t i = 0; i < dim(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Vector& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const T& s, Vector a) { return a *= s; }
  friend Vector operator-(Vector a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend bool operator==(const Vector& a, const Vector& b) { return a.data_ == b.data_; }

 private:
  void check_same(const Vector& o) const {
    if (o.dim() != dim()) throw DimensionMismatch("vector dimensions differ");
  }
  std::vector<T> data_;
};

/// Dense row-major matrix over a Field.
template <Field T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix scalar(std::size_t n, const T& s) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const T> entries() const { return data_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (is_zero(b(k, j), 0.0)) continue;
          c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }

  friend Vector<T> operator*(const Matrix& a, const Vector<T>& x) {
    if (a.cols_ != x.dim()) throw DimensionMismatch("matrix-vector product: dimensions differ");
    Vector<T> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T acc(0);
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (is_zero(x[j], 0.0)) continue;
        acc += a(i, j) * x[j];
      }
      y[i] = acc;
    }
    return y;
  }

 private:
  void check_same(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Field T>
double frobenius_norm(const Matrix<T>& m) {
  double s = 0.0;
  for (const auto& x : m.entries()) {
    double a = FieldTraits<T>::magnitude(x);
    s += a * a;
  }
  return std::sqrt(s);
}

template <Field T>
double euclidean_norm(const Vector<T>& v) {
  double s = 0.0;
  for (const auto& x : v.entries()) {
    double a = FieldTraits<T>::magnitude(x);
    s += a * a;
  }
  return std::sqrt(s);
}

template <Field T>
bool is_zero_matrix(const Matrix<T>& m) {
  for (const auto& x : m.entries())
    if (!is_zero(x, 0.0)) return false;
  return true;
}

/// True iff a and b agree: exactly in exact mode, else ||a-b|| <= tol * scale.
template <Field T>
bool agree(const Matrix<T>& a, const Matrix<T>& b, double tol, double scale) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return frobenius_norm(Matrix<T>(a - b)) <= tol * scale;
  }
}

template <Field T>
bool agree(const Vector<T>& a, const Vector<T>& b, double tol, double scale) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return euclidean_norm(Vector<T>(a - b)) <= tol * scale;
  }
}

template <Field T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("dot: dimensions differ");
  T acc(0);
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

template <Field T>
T trace(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("trace of non-square matrix");
  T acc(0);
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

template <Field T>
Matrix<T> power(const Matrix<T>& m, unsigned k) {
  if (!m.is_square()) throw DimensionMismatch("power of non-square matrix");
  Matrix<T> result = Matrix<T>::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) result = result * m;
  return result;
}

namespace detail {

template <Field T>
std::size_t pick_pivot(const Matrix<T>& m, std::size_t col, std::size_t from) {
  std::size_t best = from;
  if constexpr (is_exact_v<T>) {
    // Smallest nonzero entry by bit height, which limits coefficient growth.
    std::size_t best_height = std::numeric_limits<std::size_t>::max();
    best = m.rows();
    for (std::size_t r = from; r < m.rows(); ++r) {
      if (m(r, col).is_zero()) continue;
      const std::size_t h = m(r, col).height();
      if (h < best_height) {
        best_height = h;
        best = r;
      }
    }
    return best;
  } else {
    double best_mag = -1.0;
    for (std::size_t r = from; r < m.rows(); ++r) {
      double mag = std::abs(m(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    return best_mag > 0.0 ? best : m.rows();
  }
}

template <Field T>
void swap_rows(Matrix<T>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

/// Determinant by Gaussian elimination (partial pivoting in approximate mode).
template <Field T>
T determinant(Matrix<T> m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = detail::pick_pivot(m, c, c);
    if (p == n) return T(0);
    if (p != c) {
      detail::swap_rows(m, p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c), 0.0)) continue;
      T factor = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= factor * m(c, j);
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan elimination.  Throws SingularMatrix when a pivot
/// vanishes (exactly, or below 1e-14 relative to the largest entry).
template <Field T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (!a.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n);
  double scale = 0.0;
  if constexpr (!is_exact_v<T>) {
    for (const auto& x : a.entries()) scale = std::max(scale, std::abs(x));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = detail::pick_pivot(m, c, c);
    if (p == n) throw SingularMatrix("inverse: matrix is singular");
    if constexpr (!is_exact_v<T>) {
      if (std::abs(m(p, c)) <= 1e-14 * scale) throw SingularMatrix("inverse: matrix is numerically singular");
    }
    detail::swap_rows(m, p, c);
    detail::swap_rows(inv, p, c);
    T piv_inv = T(1) / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= piv_inv;
      inv(c, j) *= piv_inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(m(r, c), 0.0)) continue;
      T factor = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= factor * m(c, j);
        inv(r, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

/// Copies the rows [r0, r0+nr) x cols [c0, c0+nc).
template <Field T>
Matrix<T> block(const Matrix<T>& m, std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
  if (r0 + nr > m.rows() || c0 + nc > m.cols()) throw DimensionMismatch("block out of range");
  Matrix<T> b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = m(r0 + i, c0 + j);
  return b;
}

template <Field T>
void set_block(Matrix<T>& m, std::size_t r0, std::size_t c0, const Matrix<T>& b) {
  if (r0 + b.rows() > m.rows() || c0 + b.cols() > m.cols()) throw DimensionMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
}

inline Matrix<Complex> to_approx(const Matrix<GaussRat>& m) {
  Matrix<Complex> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}
inline const Matrix<Complex>& to_approx(const Matrix<Complex>& m) { return m; }

inline Vector<Complex> to_approx(const Vector<GaussRat>& v) {
  Vector<Complex> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i].to_complex();
  return out;
}
inline const Vector<Complex>& to_approx(const Vector<Complex>& v) { return v; }

}  // namespace orbemb
