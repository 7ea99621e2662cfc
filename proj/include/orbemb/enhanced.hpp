#pragma once

#include <cmath>

#include "orbemb/symplectic.hpp"

namespace orbemb {

/// X = (u, v^T) + A in V ⊕ V* ⊕ End(V).  The covector is stored through its
/// representing vector v; no J is folded into it.
template <Field T>
struct EnhancedElement {
  Vector<T> u;
  Vector<T> v;
  Matrix<T> A;

  static EnhancedElement zero(std::size_t dim) { return {Vector<T>(dim), Vector<T>(dim), Matrix<T>(dim, dim)}; }

  std::size_t dim() const { return u.dim(); }

  friend bool operator==(const EnhancedElement& a, const EnhancedElement& b) {
    return a.u == b.u && a.v == b.v && a.A == b.A;
  }
};

inline EnhancedElement<Complex> to_approx(const EnhancedElement<GaussRat>& x) {
  return {to_approx(x.u), to_approx(x.v), to_approx(x.A)};
}
inline const EnhancedElement<Complex>& to_approx(const EnhancedElement<Complex>& x) { return x; }

/// Sign alpha in {+1, -1} of the equivariant automorphism defining L.
class AlphaSign {
 public:
  static AlphaSign plus() { return AlphaSign(1); }
  static AlphaSign minus() { return AlphaSign(-1); }
  static AlphaSign from_int(int v) {
    if (v != 1 && v != -1) throw PreconditionViolation("alpha must be +1 or -1");
    return AlphaSign(v);
  }
  int value() const { return value_; }
  friend bool operator==(AlphaSign, AlphaSign) = default;

 private:
  explicit AlphaSign(int v) : value_(v) {}
  int value_;
};

template <Field T>
void require_shape(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x, const char* what) {
  ctx.require_vector(x.u, what);
  ctx.require_vector(x.v, what);
  ctx.require_square(x.A, what);
}

template <Field T>
EnhancedElement<T> operator+(const EnhancedElement<T>& a, const EnhancedElement<T>& b) {
  return {a.u + b.u, a.v + b.v, a.A + b.A};
}

template <Field T>
EnhancedElement<T> operator-(const EnhancedElement<T>& a, const EnhancedElement<T>& b) {
  return {a.u - b.u, a.v - b.v, a.A - b.A};
}

template <Field T>
EnhancedElement<T> operator*(const T& s, const EnhancedElement<T>& a) {
  return {s * a.u, s * a.v, s * a.A};
}

/// sqrt(|u|^2 + |v|^2 + |A|_F^2).
template <Field T>
double norm(const EnhancedElement<T>& x) {
  double a = euclidean_norm(x.u), b = euclidean_norm(x.v), c = frobenius_norm(x.A);
  return std::sqrt(a * a + b * b + c * c);
}

template <Field T>
bool agree(const EnhancedElement<T>& a, const EnhancedElement<T>& b, double tol, double scale) {
  if constexpr (is_exact_v<T>) {
    return a == b;
  } else {
    return norm(EnhancedElement<T>(a - b)) <= tol * scale;
  }
}

/// g . X = (g u, (theta(g) v)^T) + g A g^{-1}.
template <Field T>
EnhancedElement<T> act(const SymplecticContext<T>& ctx, const GroupElement<T>& g, const EnhancedElement<T>& x) {
  require_shape(ctx, x, "act");
  ctx.require_square(g.matrix(), "act");
  GroupElement<T> theta = theta_group(ctx, g);
  return {g.matrix() * x.u, theta.matrix() * x.v, g.matrix() * x.A * g.inverse()};
}

/// sigma_L((u, v^T) + A) = (v, u^T) + sigma(A).
template <Field T>
EnhancedElement<T> sigma_L(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x) {
  require_shape(ctx, x, "sigma_L");
  return {x.v, x.u, sigma_end(ctx, x.A)};
}

/// ||sigma_L(X) - alpha X||.
template <Field T>
double locus_defect(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x, AlphaSign alpha) {
  return norm(EnhancedElement<T>(sigma_L(ctx, x) - T(alpha.value()) * x));
}

/// X ∈ L  <=>  sigma_L(X) = alpha X (exactly, or within tol * (1 + ||X||)).
template <Field T>
bool in_L(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x, AlphaSign alpha,
          double tol = kDefaultResidualTol) {
  if constexpr (is_exact_v<T>) {
    return sigma_L(ctx, x) == T(alpha.value()) * x;
  } else {
    return locus_defect(ctx, x, alpha) <= tol * (1.0 + norm(x));
  }
}

/// u + A  ->  (u, alpha u^T) + A, the embedding whose image is L.  The
/// matrix part must satisfy sigma(A) = alpha A.
template <Field T>
EnhancedElement<T> embed_L(const SymplecticContext<T>& ctx, const Vector<T>& u, const Matrix<T>& a,
                           AlphaSign alpha, double tol = kDefaultResidualTol) {
  ctx.require_vector(u, "embed_L");
  ctx.require_square(a, "embed_L");
  Matrix<T> alpha_a = T(alpha.value()) * a;
  if (!agree(sigma_end(ctx, a), alpha_a, tol, 1.0 + frobenius_norm(a))) {
    throw PreconditionViolation(alpha.value() < 0 ? "embed_L: A is not in sp (sigma(A) != -A)"
                                                  : "embed_L: A is not sigma-fixed");
  }
  return {u, T(alpha.value()) * u, a};
}

}  // namespace orbemb
