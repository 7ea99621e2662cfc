#pragma once

// Reference computations for the tests.  These deliberately avoid the
// library's own linear algebra: everything goes through Eigen in double
// precision, or through closed-form expressions written out by hand.

#include <Eigen/Dense>
#include <complex>
#include <unsupported/Eigen/MatrixFunctions>

#include "orbemb/gaussian_rational.hpp"
#include "orbemb/matrix.hpp"

namespace oracle {

using orbemb::Complex;
using orbemb::GaussRat;
using CM = Eigen::MatrixXcd;
using CV = Eigen::VectorXcd;

inline CM dense(const orbemb::Matrix<GaussRat>& m) {
  CM e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_complex();
  return e;
}

inline CM dense(const orbemb::Matrix<Complex>& m) {
  CM e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline CV dense(const orbemb::Vector<GaussRat>& v) {
  CV e(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) e(i) = v[i].to_complex();
  return e;
}

inline CV dense(const orbemb::Vector<Complex>& v) {
  CV e(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) e(i) = v[i];
  return e;
}

/// [[0, 1], [-1, 0]] in n x n blocks.
inline CM J(std::size_t n) {
  CM j = CM::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = CM::Identity(n, n);
  j.bottomLeftCorner(n, n) = -CM::Identity(n, n);
  return j;
}

/// sigma(A) = J^{-1} A^T J; J^{-1} = -J.
inline CM sigma(const CM& a) {
  const std::size_t n = a.rows() / 2;
  return -J(n) * a.transpose() * J(n);
}

/// Rank of an integer-valued (or nicely rational) matrix.
inline Eigen::Index rank(const CM& a) {
  Eigen::FullPivLU<CM> lu(a);
  lu.setThreshold(1e-10);
  return lu.rank();
}

/// Principal square root from Eigen's Schur-based implementation.
inline CM sqrtm(const CM& a) { return a.sqrt(); }

/// 2-norm condition number.
inline double cond(const CM& a) {
  Eigen::JacobiSVD<CM> svd(a);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

inline double dist(const CM& a, const CM& b) { return (a - b).norm(); }

}  // namespace oracle
