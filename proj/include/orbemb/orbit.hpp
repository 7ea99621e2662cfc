#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orbemb/enhanced.hpp"
#include "orbemb/matrix_sqrt.hpp"

namespace orbemb {

struct ConjugatorOptions {
  std::size_t samples = 64;
  double tol = kDefaultResidualTol;  ///< rank decisions and action residual
  double rcond = 1e-8;               ///< approx invertibility: sigma_min / sigma_max
  std::uint64_t seed = 0;
};

/// Outcome of the search for an invertible g with g . X = Y.
template <Field T>
struct ConjugatorSearch {
  std::optional<GroupElement<T>> conjugator;
  bool feasible = false;            ///< the affine solution space is nonempty
  std::size_t solution_dim = 0;     ///< dimension of its direction space
  std::size_t samples_tried = 0;
  std::size_t coefficient_set_size = 0;
  /// No conjugator returned although the space has invertible candidates in
  /// principle: every sample was singular.
  bool probabilistic_no = false;
  double action_residual = 0.0;
};

/// The conditions g u_X = u_Y, sigma(g) v_Y = v_X, g A_X = A_Y g (and a zero
/// off-diagonal pattern for the block constraint) cut out an affine space of
/// matrices; candidates p + sum t_i k_i are sampled with t_i in
/// {j / R : |j| <= R}, 2R + 1 >= 2 (2n)^2 dim.  Throws DimensionMismatch, or
/// PreconditionViolation for a non-linear constraint.
template <Field T>
ConjugatorSearch<T> find_conjugator(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x,
                                    const EnhancedElement<T>& y, GroupConstraint constraint,
                                    const ConjugatorOptions& opts = {});

struct WitnessOptions {
  double residual_tol = kDefaultResidualTol;  ///< square root residuals
  double witness_tol = 1e-8;                  ///< action, form and block residuals
  double cluster_radius = kDefaultClusterRadius;
};

template <Field T>
struct WitnessReport {
  GroupConstraint constraint;  ///< constraint on the input conjugator
  AlphaSign alpha;
  GroupElement<T> witness;
  Matrix<T> h;
  Matrix<T> f;
  PolyCert<T> sqrt_cert;
  double cluster_radius = 0.0;
  std::vector<std::pair<std::string, double>> residuals;

  double residual(const std::string& name) const;
};

/// Turns a conjugator g (g . X = Y, X and Y in L) into g f^{-1} in Sp(2n), or
/// in K for the block-diagonal constraint, where f is the sigma-fixed primary
/// square root of h = sigma(g) g.
///
/// Throws PreconditionViolation for bad inputs, VerificationFailure when a
/// numerical check on h or f fails, NotExactlyRepresentable when the exact
/// root leaves Q(i), and TheoremViolation when the final witness is not in
/// the group or does not carry X to Y.
template <Field T>
WitnessReport<T> symplectic_witness(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x,
                                    const EnhancedElement<T>& y, const GroupElement<T>& g,
                                    GroupConstraint constraint, AlphaSign alpha, const WitnessOptions& opts = {});

/// Exact witness extraction that falls back to approximate arithmetic when
/// the square root is not representable over Q(i).
struct WitnessOutcome {
  std::variant<WitnessReport<GaussRat>, WitnessReport<Complex>> report;
  bool mode_switched = false;
  std::string switch_reason;
};

WitnessOutcome witness_with_fallback(std::size_t n, const EnhancedElement<GaussRat>& x,
                                     const EnhancedElement<GaussRat>& y, const GroupElement<GaussRat>& g,
                                     GroupConstraint constraint, AlphaSign alpha, const WitnessOptions& opts = {});

/// [[0, B], [C, 0]].
template <Field T>
Matrix<T> embed_antidiag(const Matrix<T>& b, const Matrix<T>& c) {
  const std::size_t n = b.rows();
  if (b.cols() != n || c.rows() != n || c.cols() != n) throw DimensionMismatch("embed_antidiag: B and C must be n x n");
  Matrix<T> out(2 * n, 2 * n);
  set_block(out, 0, n, b);
  set_block(out, n, 0, c);
  return out;
}

enum class ThetaLocus { L1, L2 };

/// Sign eps of the V* component in the theta-representation loci, fixed by
/// requiring (u, eps u) + 0 to lie in L for alpha = -1.  Computed once.
int theta_rep_sign();

/// L1: (u, eps u^T) + embed_antidiag(B, C), u in C^{2n}.
/// L2: the same with u in C^n placed as (u, 0).
/// Throws PreconditionViolation for non-symmetric B or C.
template <Field T>
EnhancedElement<T> embed_theta_rep(const SymplecticContext<T>& ctx, ThetaLocus locus, const Vector<T>& u,
                                   const Matrix<T>& b, const Matrix<T>& c, double tol = kDefaultResidualTol) {
  const std::size_t n = ctx.n();
  for (const Matrix<T>* m : {&b, &c}) {
    if (m->rows() != n || m->cols() != n) throw DimensionMismatch("embed_theta_rep: B and C must be n x n");
    if (!agree(*m, m->transpose(), tol, 1.0 + frobenius_norm(*m))) {
      throw PreconditionViolation("embed_theta_rep: B and C must be symmetric");
    }
  }
  Vector<T> full(2 * n);
  if (locus == ThetaLocus::L1) {
    ctx.require_vector(u, "embed_theta_rep");
    full = u;
  } else {
    if (u.dim() != n) throw DimensionMismatch("embed_theta_rep: L2 expects a vector of length n");
    for (std::size_t i = 0; i < n; ++i) full[i] = u[i];
  }
  return {full, T(theta_rep_sign()) * full, embed_antidiag(b, c)};
}

/// X lies in L for alpha = -1 and its matrix part has zero diagonal blocks.
template <Field T>
bool in_theta_locus(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x, double tol = kDefaultResidualTol) {
  const std::size_t n = ctx.n();
  if (!in_L(ctx, x, AlphaSign::minus(), tol)) return false;
  Matrix<T> diag_part = x.A;
  set_block(diag_part, 0, n, Matrix<T>(n, n));
  set_block(diag_part, n, 0, Matrix<T>(n, n));
  if constexpr (is_exact_v<T>) {
    return is_zero_matrix(diag_part);
  } else {
    return frobenius_norm(diag_part) <= tol * (1.0 + norm(x));
  }
}

}  // namespace orbemb
