#pragma once

#include <optional>

#include "orbemb/enhanced.hpp"

namespace orbemb {

/// Gamma_k(X) = xi(A^k u) for X = (u, xi) + A.  The covector xi is <v, .>,
/// i.e. xi(w) = v^T J w; that is the pairing the action preserves.
template <Field T>
T gamma_big(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x, unsigned k) {
  require_shape(ctx, x, "gamma_big");
  Vector<T> w = x.u;
  for (unsigned i = 0; i < k; ++i) w = x.A * w;
  return symplectic_form(ctx, x.v, w);
}

template <Field T>
void require_sp(const SymplecticContext<T>& ctx, const Matrix<T>& a, const char* what,
                double tol = kDefaultResidualTol) {
  ctx.require_square(a, what);
  if (!agree(sigma_end(ctx, a), Matrix<T>(-a), tol, 1.0 + frobenius_norm(a))) {
    throw PreconditionViolation(std::string(what) + ": matrix is not in sp (sigma(A) != -A)");
  }
}

/// gamma_k(v + A) = <v, A^k v> for A in sp.
template <Field T>
T gamma_small(const SymplecticContext<T>& ctx, const Vector<T>& v, const Matrix<T>& a, unsigned k) {
  require_sp(ctx, a, "gamma_small");
  ctx.require_vector(v, "gamma_small");
  Vector<T> w = v;
  for (unsigned i = 0; i < k; ++i) w = a * w;
  return symplectic_form(ctx, v, w);
}

struct RestrictionCheck {
  /// Sign s with Gamma_k(embed(u, A)) = s gamma_k(u, A); empty when both sides
  /// vanish, since then either sign works.
  std::optional<int> sign;
  bool holds = false;
};

/// Compares Gamma_k on embed_L(u, A, alpha = -1) with ±gamma_k(u, A).
template <Field T>
RestrictionCheck restriction_identity_check(const SymplecticContext<T>& ctx, const Vector<T>& u,
                                            const Matrix<T>& a, unsigned k, double tol = kDefaultResidualTol) {
  const T big = gamma_big(ctx, embed_L(ctx, u, a, AlphaSign::minus()), k);
  const T small = gamma_small(ctx, u, a, k);
  auto same = [&](const T& x, const T& y) {
    if constexpr (is_exact_v<T>) {
      return x == y;
    } else {
      return std::abs(x - y) <= tol * (1.0 + std::abs(y));
    }
  };
  RestrictionCheck out;
  const bool plus = same(big, small);
  const bool minus = same(big, T(-small));
  if (plus && minus) {
    out.holds = true;
  } else if (plus || minus) {
    out.sign = plus ? 1 : -1;
    out.holds = true;
  }
  return out;
}

}  // namespace orbemb
