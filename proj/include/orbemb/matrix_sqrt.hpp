#pragma once

#include <cstddef>

#include "orbemb/poly.hpp"
#include "orbemb/spectrum.hpp"
#include "orbemb/symplectic.hpp"

namespace orbemb {

/// Certificate that a matrix S equals f(h) for f = sum coeffs[k] T^k.
template <Field T>
struct PolyCert {
  Poly<T> coeffs;
  /// ||f(h) - S||_F; exactly 0 in exact mode.
  double residual = 0.0;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

template <Field T>
struct SqrtResult {
  Matrix<T> root;
  PolyCert<T> cert;
  double square_residual = 0.0;  ///< ||S^2 - h||_F
  double sigma_residual = 0.0;   ///< ||sigma(S) - S||_F (sigma_fixed_sqrt only)
  double cluster_radius = 0.0;   ///< radius that produced the branch choice (approx only)
};

struct SqrtOptions {
  double residual_tol = 1e-9;  ///< ||S^2 - h|| <= tol ||h||, cert <= tol (1 + ||h||)
  double sigma_tol = 1e-8;     ///< ||sigma(S) - S|| <= sigma_tol ||S||
  double cluster_radius = kDefaultClusterRadius;
};

/// Primary square root with principal branch per eigenvalue cluster, plus a
/// polynomial certificate S = f(h) of degree below the minimal polynomial.
/// Throws SingularMatrix or VerificationFailure.
SqrtResult<Complex> primary_sqrt(const Matrix<Complex>& h, const SqrtOptions& opts = {});

/// Exact variant by Hermite interpolation on the exact spectrum.  Throws
/// NotExactlyRepresentable when an eigenvalue or its root leaves Q(i).
SqrtResult<GaussRat> primary_sqrt(const Matrix<GaussRat>& h, const SqrtOptions& opts = {});

/// Square root of a sigma-fixed h; the result is verified sigma-fixed.
/// Throws PreconditionViolation when sigma(h) != h.
SqrtResult<Complex> sigma_fixed_sqrt(const SymplecticContext<Complex>& ctx, const Matrix<Complex>& h,
                                     const SqrtOptions& opts = {});
SqrtResult<GaussRat> sigma_fixed_sqrt(const SymplecticContext<GaussRat>& ctx, const Matrix<GaussRat>& h,
                                      const SqrtOptions& opts = {});

}  // namespace orbemb
