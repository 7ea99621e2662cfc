#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbemb/group_element.hpp"
#include "orbemb/linsolve.hpp"
#include "orbemb/matrix.hpp"

// GL_2 acting on itself by conjugation, with sigma(g) = I g^{-1} I for
// I = diag(1, -1).  X is the sigma-fixed set and K the invertible diagonals.

namespace orbemb {

template <Field T>
Matrix<T> i11() {
  return Matrix<T>{{T(1), T(0)}, {T(0), T(-1)}};
}

template <Field T>
void require_2x2(const Matrix<T>& m, const char* what) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionMismatch(std::string(what) + ": expected a 2 x 2 matrix");
}

/// sigma5(g) = I g^{-1} I = (1/det) [[d, b], [c, a]].
template <Field T>
GroupElement<T> sigma5(const GroupElement<T>& g) {
  require_2x2(g.matrix(), "sigma5");
  const Matrix<T> i = i11<T>();
  return GroupElement<T>(i * g.inverse() * i, i * g.matrix() * i);
}

template <Field T>
bool in_X5(const Matrix<T>& x, double tol = kDefaultResidualTol) {
  require_2x2(x, "in_X5");
  const T det = determinant(x);
  if (is_zero(det, tol * (1.0 + frobenius_norm(x)))) return false;
  GroupElement<T> g(x);
  return agree(sigma5(g).matrix(), x, tol, 1.0 + frobenius_norm(x));
}

/// Shapes of elements of X: [[a, b], [c, a]] with a^2 - bc = 1, split by
/// which off-diagonal entries vanish.
enum class CaseFamily { Generic, UpperUnipotent, LowerUnipotent, Diagonal };

template <Field T>
CaseFamily classify_X5(const Matrix<T>& x, double tol = kDefaultResidualTol) {
  if (!in_X5(x, tol)) throw PreconditionViolation("x is not in X (sigma5(x) != x)");
  const double zero_tol = tol * (1.0 + frobenius_norm(x));
  const bool b0 = is_zero(x(0, 1), zero_tol);
  const bool c0 = is_zero(x(1, 0), zero_tol);
  if (!b0 && !c0) return CaseFamily::Generic;
  if (!b0) return CaseFamily::UpperUnipotent;
  if (!c0) return CaseFamily::LowerUnipotent;
  return CaseFamily::Diagonal;
}

/// The listed representative of the K-orbit of x:
///   [[a, s], [s, a]] with s^2 = bc, Re s > 0 or s in i R_{>=0}   (b, c != 0)
///   [[a, 1], [0, a]]   (c = 0)      [[a, 0], [1, a]]   (b = 0)
///   x itself for diagonal x.
/// Exact mode throws NotExactlyRepresentable when bc is not a square in Q(i).
template <Field T>
Matrix<T> canonical_K_rep(const Matrix<T>& x, double tol = kDefaultResidualTol) {
  const CaseFamily family = classify_X5(x, tol);
  const T a = x(0, 0);
  switch (family) {
    case CaseFamily::Generic: {
      T s;
      if constexpr (is_exact_v<T>) {
        auto root = exact_sqrt(x(0, 1) * x(1, 0));
        if (!root) throw NotExactlyRepresentable("canonical_K_rep: bc is not a square in Q(i)");
        s = *root;
      } else {
        s = principal_sqrt(x(0, 1) * x(1, 0));
      }
      return Matrix<T>{{a, s}, {s, a}};
    }
    case CaseFamily::UpperUnipotent: return Matrix<T>{{a, T(1)}, {T(0), a}};
    case CaseFamily::LowerUnipotent: return Matrix<T>{{a, T(0)}, {T(1), a}};
    case CaseFamily::Diagonal: return x;
  }
  return x;
}

struct CollapsingPair {
  Matrix<GaussRat> first;
  Matrix<GaussRat> second;
  GroupElement<GaussRat> conjugator;  ///< conjugator * first * conjugator^{-1} = second
};

/// Pairs of distinct listed representatives that are G-conjugate, found by
/// testing every pair among the non-generic representatives with the
/// conjugator search.  Generic representatives have distinct eigenvalues
/// a ± s and never meet another representative's G-orbit.
std::vector<CollapsingPair> collapsing_pairs();

/// The listed non-generic representatives: the four unipotent shapes and
/// the four diagonal matrices diag(±1, ±1).
std::vector<Matrix<GaussRat>> special_representatives();

struct ObstructionCertificate {
  Matrix<GaussRat> x;
  Matrix<GaussRat> h;
  std::string family;  ///< "unipotent" or "diagonal"
  bool has_root = false;
  std::optional<Matrix<GaussRat>> f;
  std::string reason;
};

/// Decides whether h in G_x^sigma has a square root inside G_x^sigma, for
/// x = [[a, b], [0, a]] (b != 0) or x = diag(±1, ∓1).  Any root found is
/// verified: f^2 = h, sigma5(f) = f, f x = x f.  Throws PreconditionViolation
/// for other x or for h outside G_x^sigma.
ObstructionCertificate obstruction_check(const Matrix<GaussRat>& x, const Matrix<GaussRat>& h);

}  // namespace orbemb
