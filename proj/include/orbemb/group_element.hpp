#pragma once

#include <string_view>

#include "orbemb/matrix.hpp"

namespace orbemb {

/// Subgroups of GL(2n) the orbit machinery works with.
enum class GroupConstraint {
  Full,             ///< GL(2n)
  Symplectic,       ///< Sp(2n)
  BlockDiagonal,    ///< GL(n) x GL(n), diag(a, b)
  SymplecticBlock,  ///< K = Sp(2n) ∩ (GL(n) x GL(n)) = { diag(a, a^{-T}) }
};

constexpr std::string_view constraint_name(GroupConstraint c) {
  switch (c) {
    case GroupConstraint::Full: return "full";
    case GroupConstraint::Symplectic: return "symplectic";
    case GroupConstraint::BlockDiagonal: return "block-diagonal";
    case GroupConstraint::SymplecticBlock: return "symplectic-block";
  }
  return "?";
}

/// An invertible matrix together with its inverse.  Construction fails with
/// SingularMatrix for singular input.
template <Field T>
class GroupElement {
 public:
  explicit GroupElement(Matrix<T> m) : matrix_(std::move(m)), inverse_(orbemb::inverse(matrix_)) {}
  GroupElement(Matrix<T> m, Matrix<T> inv) : matrix_(std::move(m)), inverse_(std::move(inv)) {}

  static GroupElement identity(std::size_t n) {
    return GroupElement(Matrix<T>::identity(n), Matrix<T>::identity(n));
  }

  const Matrix<T>& matrix() const { return matrix_; }
  const Matrix<T>& inverse() const { return inverse_; }
  std::size_t dim() const { return matrix_.rows(); }

  GroupElement inverted() const { return GroupElement(inverse_, matrix_); }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return GroupElement(a.matrix_ * b.matrix_, b.inverse_ * a.inverse_);
  }

 private:
  Matrix<T> matrix_;
  Matrix<T> inverse_;
};

inline GroupElement<Complex> to_approx(const GroupElement<GaussRat>& g) {
  return GroupElement<Complex>(to_approx(g.matrix()), to_approx(g.inverse()));
}
inline const GroupElement<Complex>& to_approx(const GroupElement<Complex>& g) { return g; }

}  // namespace orbemb
