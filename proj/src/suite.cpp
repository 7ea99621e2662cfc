#include "orbemb/suite.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "orbemb/eigen_bridge.hpp"
#include "orbemb/gl2_case.hpp"
#include "orbemb/invariants.hpp"
#include "orbemb/random.hpp"

namespace orbemb {

namespace {

using Q = GaussRat;

struct Trial {
  std::size_t n;
  Rng rng;
  const Tolerances& tol;
};

// ---------------------------------------------------------------- helpers

template <Field T>
Matrix<T> lift(const Matrix<Q>& m) {
  if constexpr (is_exact_v<T>) return m; else return to_approx(m);
}
template <Field T>
Vector<T> lift(const Vector<Q>& v) {
  if constexpr (is_exact_v<T>) return v; else return to_approx(v);
}
template <Field T>
EnhancedElement<T> lift(const EnhancedElement<Q>& x) {
  if constexpr (is_exact_v<T>) return x; else return to_approx(x);
}
template <Field T>
GroupElement<T> lift(const GroupElement<Q>& g) {
  if constexpr (is_exact_v<T>) return g; else return to_approx(g);
}

template <Field T>
double diff_norm(const Matrix<T>& a, const Matrix<T>& b) { return frobenius_norm(Matrix<T>(a - b)); }
template <Field T>
double diff_norm(const Vector<T>& a, const Vector<T>& b) { return euclidean_norm(Vector<T>(a - b)); }
template <Field T>
double diff_norm(const EnhancedElement<T>& a, const EnhancedElement<T>& b) { return norm(EnhancedElement<T>(a - b)); }
template <Field T>
double diff_norm(const T& a, const T& b) { return std::abs(FieldTraits<T>::to_complex(a - b)); }

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void note(TrialResult& r, const std::string& what, double relative, bool ok) {
  if (std::isfinite(relative)) r.residual = std::max(r.residual, relative);
  if (!ok && r.pass) {
    r.pass = false;
    r.message = what + " (relative residual " + fmt(relative) + ")";
  }
}

void require(TrialResult& r, bool ok, const std::string& what) {
  if (!ok && r.pass) {
    r.pass = false;
    r.message = what;
  }
}

/// a = b: exactly in exact mode, within tol * scale otherwise.
template <Field T, typename X>
void expect_equal(TrialResult& r, const std::string& what, const X& a, const X& b, double tol, double scale) {
  const double res = diff_norm<T>(a, b);
  const bool ok = is_exact_v<T> ? a == b : res <= tol * scale;
  note(r, what, res / scale, ok);
}

/// residual <= tol * scale in approximate mode, residual == 0 in exact mode.
template <Field T>
void expect_small(TrialResult& r, const std::string& what, double residual, double tol, double scale) {
  const bool ok = is_exact_v<T> ? residual == 0.0 : residual <= tol * scale;
  note(r, what, residual / scale, ok);
}

double condition_number(const Matrix<Complex>& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
}

AlphaSign random_alpha(Rng& rng) { return rng.coin() ? AlphaSign::plus() : AlphaSign::minus(); }

Q nonzero_scalar(Rng& rng, long range, long max_den) {
  for (;;) {
    Q x = random_gauss_rat(rng, range, max_den);
    if (!x.is_zero()) return x;
  }
}

/// B C with inner dimension `rank`: a matrix of rank at most `rank`.
Matrix<Q> low_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  return random_matrix<Q>(rng, rows, rank, 3, 2) * random_matrix<Q>(rng, rank, cols, 3, 2);
}

std::size_t exact_rank(const Matrix<Q>& m) { return rref(m).pivot_cols.size(); }

Json mat_json(const Matrix<Q>& m) { return to_json(m); }

std::uint64_t draw_seed(Rng& rng) {
  return static_cast<std::uint64_t>(rng.uniform_int(0, std::numeric_limits<long>::max()));
}

// ------------------------------------------------------- field-linalg

template <Field T>
void linalg_solve(Trial& t, TrialResult& r) {
  const auto rows = static_cast<std::size_t>(t.rng.uniform_int(1, 12));
  const auto cols = static_cast<std::size_t>(t.rng.uniform_int(1, 12));
  const auto rank = static_cast<std::size_t>(t.rng.uniform_int(1, static_cast<long>(std::min(rows, cols))));
  const Matrix<Q> a = low_rank(t.rng, rows, cols, rank);
  const Matrix<Q> x_col = random_matrix<Q>(t.rng, cols, 1);
  Vector<Q> x(cols);
  for (std::size_t i = 0; i < cols; ++i) x[i] = x_col(i, 0);
  const Vector<Q> b = a * x;
  r.instance = {{"A", mat_json(a)}, {"b", to_json(b)}};

  const Matrix<T> at = lift<T>(a);
  const Vector<T> bt = lift<T>(b);
  auto sol = solve_linear(at, bt, t.tol.residual);
  require(r, sol.feasible, "consistent system reported infeasible");
  if (!sol.feasible) return;
  const double scale = 1.0 + euclidean_norm(bt);
  expect_equal<T>(r, "A x_p = b", Vector<T>(at * sol.particular), bt, t.tol.residual, scale);
  const double a_norm = frobenius_norm(at);
  for (const auto& k : sol.kernel) {
    expect_small<T>(r, "A k = 0", euclidean_norm(Vector<T>(at * k)), t.tol.residual,
                    1.0 + a_norm * euclidean_norm(k));
  }
  const std::size_t true_rank = exact_rank(a);
  require(r, sol.dimension() == cols - true_rank,
          "kernel dimension " + std::to_string(sol.dimension()) + " != " + std::to_string(cols - true_rank));
}

template <Field T>
void spectrum_planted(Trial& t, TrialResult& r) {
  const auto size = static_cast<std::size_t>(t.rng.uniform_int(1, 6));
  std::vector<Q> planted;
  for (std::size_t i = 0; i < size; ++i) {
    if (!planted.empty() && t.rng.uniform_int(0, 2) == 0) {
      planted.push_back(planted[static_cast<std::size_t>(t.rng.uniform_int(0, static_cast<long>(planted.size()) - 1))]);
    } else {
      planted.push_back(Q(mpq_class(t.rng.uniform_int(-3, 3)), mpq_class(t.rng.uniform_int(-1, 1))));
    }
  }
  Matrix<Q> d(size, size);
  for (std::size_t i = 0; i < size; ++i) d(i, i) = planted[i];
  const GroupElement<Q> p = random_invertible<Q>(t.rng, size, 2, 1);
  const Matrix<Q> m = p.matrix() * d * p.inverse();
  r.instance = {{"M", mat_json(m)}, {"planted", to_json(Vector<Q>(planted))}};

  std::map<std::pair<double, double>, std::size_t> expected;
  for (const auto& q : planted) ++expected[{q.to_complex().real(), q.to_complex().imag()}];

  std::map<std::pair<double, double>, std::size_t> found;
  if constexpr (is_exact_v<T>) {
    auto spec = exact_eigenvalues(m);
    require(r, spec.has_value(), "exact spectrum not found for a split matrix");
    if (!spec) return;
    for (const auto& ev : *spec) found[{ev.value.to_complex().real(), ev.value.to_complex().imag()}] += ev.algebraic;
    require(r, found == expected, "exact spectrum differs from the planted one");
  } else {
    auto clusters = eigen_spectrum(to_approx(m), t.tol.cluster);
    std::size_t total = 0;
    for (const auto& c : clusters) {
      total += c.multiplicity;
      double best = std::numeric_limits<double>::infinity();
      std::size_t mult = 0;
      for (const auto& [key, count] : expected) {
        double dist = std::abs(c.value - Complex(key.first, key.second));
        if (dist < best) best = dist, mult = count;
      }
      note(r, "eigenvalue cluster far from the planted spectrum", best, best <= 1e-6);
      require(r, mult == c.multiplicity, "cluster multiplicity differs from the planted one");
    }
    require(r, total == size, "multiplicities do not add up");
  }
}

// ---------------------------------------------- symplectic-structures

template <Field T>
void sigma_involution(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  const Matrix<Q> a = random_matrix<Q>(t.rng, ctx.dim(), ctx.dim());
  r.instance = {{"A", mat_json(a)}};
  const Matrix<T> at = lift<T>(a);
  expect_equal<T>(r, "sigma(sigma(A)) = A", sigma_end(ctx, sigma_end(ctx, at)), at, t.tol.residual,
                  1.0 + frobenius_norm(at));
}

template <Field T>
void sigma_anti_multiplicative(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  const Matrix<Q> a = random_matrix<Q>(t.rng, ctx.dim(), ctx.dim());
  const Matrix<Q> b = random_matrix<Q>(t.rng, ctx.dim(), ctx.dim());
  r.instance = {{"A", mat_json(a)}, {"B", mat_json(b)}};
  const Matrix<T> at = lift<T>(a), bt = lift<T>(b);
  expect_equal<T>(r, "sigma(AB) = sigma(B) sigma(A)", sigma_end(ctx, Matrix<T>(at * bt)),
                  Matrix<T>(sigma_end(ctx, bt) * sigma_end(ctx, at)), t.tol.residual,
                  1.0 + frobenius_norm(at) * frobenius_norm(bt));
}

template <Field T>
void symplectic_membership(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const GroupElement<Q> s = random_symplectic(qctx, t.rng, 3);
  const GroupElement<Q> g = random_invertible<Q>(t.rng, qctx.dim());
  r.instance = {{"s", mat_json(s.matrix())}, {"g", mat_json(g.matrix())}};
  const Matrix<T> st = lift<T>(s.matrix());
  const Matrix<T> one = Matrix<T>::identity(ctx.dim());
  require(r, is_symplectic(ctx, st, t.tol.residual), "product of transvections is not symplectic");
  expect_equal<T>(r, "sigma(s) s = 1", Matrix<T>(sigma_end(ctx, st) * st), one, t.tol.residual,
                  1.0 + frobenius_norm(st) * frobenius_norm(st));
  // For a generic invertible g both predicates must agree.
  const Matrix<T> gt = lift<T>(g.matrix());
  const bool form = is_symplectic(ctx, gt, t.tol.residual);
  const bool sigma = agree(Matrix<T>(sigma_end(ctx, gt) * gt), one, t.tol.residual,
                           1.0 + frobenius_norm(gt) * frobenius_norm(gt));
  require(r, form == sigma, "g^T J g = J and sigma(g) g = 1 disagree");
}

template <Field T>
void cartan_split_property(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  const Matrix<Q> a = random_matrix<Q>(t.rng, ctx.dim(), ctx.dim());
  r.instance = {{"A", mat_json(a)}};
  const Matrix<T> at = lift<T>(a);
  auto parts = cartan_split(ctx, at);
  const double scale = 1.0 + frobenius_norm(at);
  expect_equal<T>(r, "k + p = A", Matrix<T>(parts.k_part + parts.p_part), at, t.tol.residual, scale);
  expect_equal<T>(r, "sigma(k) = -k", sigma_end(ctx, parts.k_part), Matrix<T>(-parts.k_part), t.tol.residual, scale);
  expect_equal<T>(r, "sigma(p) = p", sigma_end(ctx, parts.p_part), parts.p_part, t.tol.residual, scale);
}

// ---------------------------------------------------- enhanced-action

template <Field T>
void sigma_equivariance(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const GroupElement<Q> g = random_invertible<Q>(t.rng, qctx.dim());
  const EnhancedElement<Q> x = random_enhanced(qctx, t.rng);
  r.instance = {{"g", mat_json(g.matrix())}, {"X", to_json(x)}};
  const GroupElement<T> gt = lift<T>(g);
  const EnhancedElement<T> xt = lift<T>(x);
  const auto lhs = sigma_L(ctx, act(ctx, gt, xt));
  const auto rhs = act(ctx, theta_group(ctx, gt), sigma_L(ctx, xt));
  const double kappa = frobenius_norm(gt.matrix()) * frobenius_norm(gt.inverse());
  expect_equal<T>(r, "sigma(g.X) = sigma(g)^{-1}.sigma(X)", lhs, rhs, t.tol.residual, (1.0 + norm(xt)) * kappa);
}

template <Field T>
void locus_stability(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const AlphaSign alpha = random_alpha(t.rng);
  const GroupElement<Q> s = random_symplectic(qctx, t.rng, 3);
  const EnhancedElement<Q> x = random_L_element(qctx, t.rng, alpha);
  r.instance = {{"alpha", alpha.value()}, {"g", mat_json(s.matrix())}, {"X", to_json(x)}};
  const auto y = act(ctx, lift<T>(s), lift<T>(x));
  const double kappa = frobenius_norm(lift<T>(s.matrix())) * frobenius_norm(lift<T>(s.inverse()));
  expect_small<T>(r, "g.X left L", locus_defect(ctx, y, alpha), t.tol.residual, (1.0 + norm(y)) * kappa);
}

template <Field T>
void action_homomorphism(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const GroupElement<Q> g = random_invertible<Q>(t.rng, qctx.dim());
  const GroupElement<Q> h = random_invertible<Q>(t.rng, qctx.dim());
  const EnhancedElement<Q> x = random_enhanced(qctx, t.rng);
  r.instance = {{"g", mat_json(g.matrix())}, {"h", mat_json(h.matrix())}, {"X", to_json(x)}};
  const GroupElement<T> gt = lift<T>(g), ht = lift<T>(h);
  const EnhancedElement<T> xt = lift<T>(x);
  const auto lhs = act(ctx, GroupElement<T>(gt * ht), xt);
  const auto rhs = act(ctx, gt, act(ctx, ht, xt));
  const double kappa = frobenius_norm(gt.matrix()) * frobenius_norm(gt.inverse()) *
                       frobenius_norm(ht.matrix()) * frobenius_norm(ht.inverse());
  expect_equal<T>(r, "(gh).X = g.(h.X)", lhs, rhs, t.tol.residual, (1.0 + norm(xt)) * kappa);
}

// ------------------------------------------------------ sqrt-calculus

struct SqrtCase {
  Matrix<Q> h;
  std::optional<Matrix<Q>> root;  ///< the primary root, when known by construction
  std::optional<Vector<Q>> fixed;  ///< h fixed = fixed, when planted
  std::string family;
};

/// sigma-fixed f0 = s diag(D, D) s^{-1} (or with a skew nilpotent block), h = f0^2.
SqrtCase draw_sqrt_case(std::size_t n, Rng& rng, int variant) {
  SymplecticContext<Q> ctx(n);
  const std::size_t dim = ctx.dim();
  if (variant == 0) {
    // sigma(g) g is sigma-fixed for any g.
    for (;;) {
      const GroupElement<Q> g = random_invertible<Q>(rng, dim, 3, 2);
      Matrix<Q> h = sigma_end(ctx, g.matrix()) * g.matrix();
      if (condition_number(to_approx(h)) <= 1e6) return {std::move(h), std::nullopt, std::nullopt, "generic"};
    }
  }
  const bool nilpotent = variant == 2 && n >= 2;
  const bool negative = variant == 3;
  std::vector<Q> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && rng.uniform_int(0, 2) == 0) {
      d[i] = d[i - 1];
    } else if (negative || rng.uniform_int(0, 3) == 0) {
      d[i] = Q(mpq_class(0), mpq_class(rng.uniform_int(1, 4), rng.uniform_int(1, 2)));
    } else {
      d[i] = Q(mpq_class(rng.uniform_int(1, 4), rng.uniform_int(1, 2)), mpq_class(rng.uniform_int(-2, 2), 2));
    }
  }
  if (!negative && rng.coin()) d[0] = Q(1);
  if (nilpotent) std::fill(d.begin(), d.end(), d[0]);
  Matrix<Q> core(dim, dim);
  for (std::size_t i = 0; i < n; ++i) core(i, i) = core(n + i, n + i) = d[i];
  if (nilpotent) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Q e = random_gauss_rat(rng, 2, 1);
        core(i, n + j) = e;
        core(j, n + i) = -e;
      }
  }
  const GroupElement<Q> s = random_symplectic(ctx, rng, 1);
  Matrix<Q> f0 = s.matrix() * core * s.inverse();
  SqrtCase out{f0 * f0, f0, std::nullopt, nilpotent ? "non-semisimple" : negative ? "negative-real" : "semisimple"};
  if (d[0] == Q(1) && !nilpotent) {
    Vector<Q> e1(dim);
    e1[0] = Q(1);
    out.fixed = s.matrix() * e1;
  }
  return out;
}

/// Redraws until cond(h) <= 1e6.
SqrtCase make_sqrt_case(std::size_t n, Rng& rng, int variant) {
  for (;;) {
    SqrtCase c = draw_sqrt_case(n, rng, variant);
    if (condition_number(to_approx(c.h)) <= 1e6) return c;
  }
}

template <Field T>
void check_sqrt(Trial& t, TrialResult& r, const SqrtCase& c, const SqrtResult<T>& res, const Matrix<T>& z) {
  SymplecticContext<T> ctx(t.n);
  const Matrix<T> h = lift<T>(c.h);
  const Matrix<T>& s = res.root;
  const double h_norm = frobenius_norm(h), s_norm = frobenius_norm(s);
  expect_equal<T>(r, "S^2 = h", Matrix<T>(s * s), h, t.tol.residual, h_norm);
  expect_small<T>(r, "certificate", res.cert.residual, t.tol.residual, 1.0 + h_norm);
  expect_equal<T>(r, "S = f(h)", evaluate(res.cert.coeffs, h), s, t.tol.residual, 1.0 + h_norm);
  expect_equal<T>(r, "S h = h S", Matrix<T>(s * h), Matrix<T>(h * s), t.tol.witness, s_norm * h_norm);
  expect_equal<T>(r, "S z = z S", Matrix<T>(s * z), Matrix<T>(z * s), t.tol.witness, s_norm * frobenius_norm(z));
  expect_equal<T>(r, "sigma(S) = S", sigma_end(ctx, s), s, t.tol.witness, s_norm);
  if (c.fixed) {
    const Vector<T> u = lift<T>(*c.fixed);
    expect_equal<T>(r, "h u = u implies S u = u", Vector<T>(s * u), u, t.tol.witness, s_norm * euclidean_norm(u));
  }
  if (c.root) {
    // The primary root with principal branches is unique.
    expect_equal<T>(r, "S equals the planted primary root", s, lift<T>(*c.root), t.tol.witness, s_norm);
  }
}

template <Field T>
void sqrt_kernel(Trial& t, TrialResult& r) {
  const int variant = static_cast<int>(t.rng.uniform_int(0, 3));
  const SqrtCase c = make_sqrt_case(t.n, t.rng, variant);
  r.instance = {{"family", c.family}, {"h", mat_json(c.h)}};
  // A random element of the centralizer of h.
  SymplecticContext<Q> qctx(t.n);
  const EnhancedElement<Q> probe{Vector<Q>(qctx.dim()), Vector<Q>(qctx.dim()), c.h};
  ConjugatorOptions copts;
  copts.seed = draw_seed(t.rng);
  auto central = find_conjugator(qctx, probe, probe, GroupConstraint::Full, copts);
  const Matrix<Q> z = central.conjugator ? central.conjugator->matrix() : Matrix<Q>::identity(qctx.dim());

  SqrtOptions opts{t.tol.residual, t.tol.witness, t.tol.cluster};
  if constexpr (is_exact_v<T>) {
    try {
      auto res = sigma_fixed_sqrt(qctx, c.h, opts);
      check_sqrt<Q>(t, r, c, res, z);
      return;
    } catch (const NotExactlyRepresentable&) {
      r.mode_switched = true;
    }
  }
  SymplecticContext<Complex> actx(t.n);
  auto res = sigma_fixed_sqrt(actx, to_approx(c.h), opts);
  check_sqrt<Complex>(t, r, c, res, to_approx(z));
}

// ------------------------------------------------------- orbit-engine

struct WitnessCase {
  EnhancedElement<Q> x;
  EnhancedElement<Q> y;
  GroupElement<Q> g;
  AlphaSign alpha;
  GroupConstraint constraint;
  std::string family;
};

/// z = c0 + c1 a + c2 a^2, resampled until invertible.
Matrix<Q> invertible_polynomial(Rng& rng, const Matrix<Q>& a) {
  const Matrix<Q> one = Matrix<Q>::identity(a.rows());
  for (;;) {
    Poly<Q> p{nonzero_scalar(rng, 3, 2), random_gauss_rat(rng, 2, 2), random_gauss_rat(rng, 1, 2)};
    Matrix<Q> z = evaluate(p, a);
    if (!determinant(z).is_zero()) return z;
  }
}

WitnessCase draw_full_case(std::size_t n, Rng& rng) {
  SymplecticContext<Q> ctx(n);
  const std::size_t dim = ctx.dim();
  const AlphaSign alpha = random_alpha(rng);
  const int variant = static_cast<int>(rng.uniform_int(0, 2));
  EnhancedElement<Q> x;
  Matrix<Q> z;
  std::string family;
  if (variant == 0) {
    // u = v = 0: every invertible polynomial in A stabilizes X.
    x = {Vector<Q>(dim), Vector<Q>(dim), random_locus_matrix(ctx, rng, alpha)};
    z = invertible_polynomial(rng, x.A);
    family = "polynomial";
  } else if (variant == 1) {
    // X0 = (e1, alpha e1) + diag(D, alpha D); p(T) = 1 + (T^2 - d1^2) q(T)
    // fixes e1 under A0 and under sigma(A0) = alpha A0.
    std::vector<Q> d(n);
    for (auto& di : d) di = nonzero_scalar(rng, 3, 2);
    Matrix<Q> a0(dim, dim);
    for (std::size_t i = 0; i < n; ++i) {
      a0(i, i) = d[i];
      a0(n + i, n + i) = Q(alpha.value()) * d[i];
    }
    Vector<Q> e1(dim);
    e1[0] = Q(1);
    const EnhancedElement<Q> x0{e1, Q(alpha.value()) * e1, a0};
    Matrix<Q> z0;
    const Matrix<Q> one = Matrix<Q>::identity(dim);
    for (;;) {
      const Matrix<Q> q = random_gauss_rat(rng, 2, 2) * one + random_gauss_rat(rng, 2, 2) * a0;
      z0 = one + (a0 * a0 - d[0] * d[0] * one) * q;
      if (!determinant(z0).is_zero()) break;
    }
    const GroupElement<Q> s0 = random_symplectic(ctx, rng, 1);
    x = act(ctx, s0, x0);
    z = s0.matrix() * z0 * s0.inverse();
    family = "structured";
  } else {
    x = random_L_element(ctx, rng, alpha);
    ConjugatorOptions opts;
    opts.seed = draw_seed(rng);
    auto stab = find_conjugator(ctx, x, x, GroupConstraint::Full, opts);
    z = stab.conjugator ? stab.conjugator->matrix() : Matrix<Q>::identity(dim);
    family = "sampled-stabilizer";
  }
  const GroupElement<Q> g = random_symplectic(ctx, rng, 2) * GroupElement<Q>(z);
  EnhancedElement<Q> y = act(ctx, g, x);
  return {std::move(x), std::move(y), g, alpha, GroupConstraint::Full, family};
}

// Instances stay inside the regime where the square root is well posed:
// cond(h) <= 1e6 for h = sigma(g) g, i.e. cond(g) <= 1e3.
inline constexpr double kMaxConjugatorCondition = 1e3;

double condition_estimate(const GroupElement<Q>& g) {
  const auto a = to_approx(g);
  return frobenius_norm(a.matrix()) * frobenius_norm(a.inverse());
}

WitnessCase make_full_case(std::size_t n, Rng& rng) {
  for (;;) {
    WitnessCase c = draw_full_case(n, rng);
    if (condition_estimate(c.g) <= kMaxConjugatorCondition) return c;
  }
}

WitnessCase make_theta_case(std::size_t n, Rng& rng) {
  SymplecticContext<Q> ctx(n);
  const ThetaLocus locus = rng.coin() ? ThetaLocus::L1 : ThetaLocus::L2;
  const std::size_t udim = locus == ThetaLocus::L1 ? 2 * n : n;
  const Vector<Q> u = rng.coin() ? Vector<Q>(udim) : random_vector<Q>(rng, udim);
  const Matrix<Q> b = random_symmetric<Q>(rng, n), c = random_symmetric<Q>(rng, n);
  const EnhancedElement<Q> x = embed_theta_rep(ctx, locus, u, b, c);
  ConjugatorOptions opts;
  opts.seed = draw_seed(rng);
  auto stab = find_conjugator(ctx, x, x, GroupConstraint::BlockDiagonal, opts);
  const Matrix<Q> z = stab.conjugator ? stab.conjugator->matrix() : Matrix<Q>::identity(ctx.dim());
  const GroupElement<Q> g = random_K_element(ctx, rng) * GroupElement<Q>(z);
  EnhancedElement<Q> y = act(ctx, g, x);
  return {x, std::move(y), g, AlphaSign::minus(), GroupConstraint::BlockDiagonal,
          locus == ThetaLocus::L1 ? "L1" : "L2"};
}

template <Field T>
Json instance_json(std::size_t n, const WitnessCase& c, const Matrix<T>& g) {
  WitnessInstance<T> inst{n, c.alpha, c.constraint, lift<T>(c.x), lift<T>(c.y), g};
  return to_json(inst);
}

template <Field T>
void note_witness(Trial& t, TrialResult& r, const WitnessReport<T>& rep, const EnhancedElement<Q>& y) {
  const double j_norm = std::sqrt(static_cast<double>(2 * t.n));
  const double form = rep.residual("form") / j_norm;
  const double action = rep.residual("action") / (1.0 + norm(lift<T>(y)));
  note(r, "witness form residual", form, is_exact_v<T> ? form == 0.0 : form <= t.tol.witness);
  note(r, "witness action residual", action, is_exact_v<T> ? action == 0.0 : action <= t.tol.witness);
}

/// Runs the witness pipeline for conjugator g; exact mode falls back to
/// approximate arithmetic when the square root leaves Q(i).
template <Field T>
void run_witness(Trial& t, TrialResult& r, const WitnessCase& c, const GroupElement<T>& g) {
  WitnessOptions opts{t.tol.residual, t.tol.witness, t.tol.cluster};
  if constexpr (is_exact_v<T>) {
    auto out = witness_with_fallback(t.n, c.x, c.y, g, c.constraint, c.alpha, opts);
    r.mode_switched = out.mode_switched;
    std::visit([&](const auto& rep) { note_witness(t, r, rep, c.y); }, out.report);
  } else {
    SymplecticContext<Complex> ctx(t.n);
    auto rep = symplectic_witness(ctx, to_approx(c.x), to_approx(c.y), g, c.constraint, c.alpha, opts);
    note_witness(t, r, rep, c.y);
  }
}

template <Field T>
void witness_soundness(Trial& t, TrialResult& r) {
  const WitnessCase c = make_full_case(t.n, t.rng);
  r.instance = instance_json<T>(t.n, c, lift<T>(c.g.matrix()));
  r.instance["family"] = c.family;
  run_witness<T>(t, r, c, lift<T>(c.g));
}

template <Field T>
void run_found_witness(Trial& t, TrialResult& r, const WitnessCase& c) {
  SymplecticContext<T> ctx(t.n);
  ConjugatorOptions opts;
  opts.seed = draw_seed(t.rng);
  opts.tol = t.tol.residual;
  auto found = find_conjugator(ctx, lift<T>(c.x), lift<T>(c.y),
                               c.constraint == GroupConstraint::Full ? GroupConstraint::Full : GroupConstraint::BlockDiagonal,
                               opts);
  require(r, found.conjugator.has_value(), "no conjugator found between conjugate elements");
  if (!found.conjugator) return;
  r.instance = instance_json<T>(t.n, c, found.conjugator->matrix());
  r.instance["family"] = c.family;
  run_witness<T>(t, r, c, *found.conjugator);
}

template <Field T>
void witness_injectivity(Trial& t, TrialResult& r) {
  const WitnessCase c = make_full_case(t.n, t.rng);
  r.instance = instance_json<T>(t.n, c, lift<T>(c.g.matrix()));
  run_found_witness<T>(t, r, c);
}

template <Field T>
void theta_witness(Trial& t, TrialResult& r) {
  const WitnessCase c = make_theta_case(t.n, t.rng);
  r.instance = instance_json<T>(t.n, c, lift<T>(c.g.matrix()));
  r.instance["family"] = c.family;
  if (t.rng.coin()) {
    run_found_witness<T>(t, r, c);
  } else {
    run_witness<T>(t, r, c, lift<T>(c.g));
  }
}

template <Field T>
void conjugator_inversion(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const EnhancedElement<Q> x = random_L_element(qctx, t.rng, random_alpha(t.rng));
  const GroupElement<Q> g0 = random_invertible<Q>(t.rng, qctx.dim());
  const EnhancedElement<Q> y = act(qctx, g0, x);
  r.instance = {{"X", to_json(x)}, {"Y", to_json(y)}};
  ConjugatorOptions opts;
  opts.seed = draw_seed(t.rng);
  opts.tol = t.tol.residual;
  const auto xt = lift<T>(x), yt = lift<T>(y);
  auto forward = find_conjugator(ctx, xt, yt, GroupConstraint::Full, opts);
  require(r, forward.conjugator.has_value(), "no conjugator found for (X, Y)");
  if (!forward.conjugator) return;
  const GroupElement<T>& g = *forward.conjugator;
  const double kappa = frobenius_norm(g.matrix()) * frobenius_norm(g.inverse());
  expect_equal<T>(r, "g.X = Y", act(ctx, g, xt), yt, t.tol.residual, (1.0 + norm(yt)) * kappa);
  expect_equal<T>(r, "g^{-1}.Y = X", act(ctx, g.inverted(), yt), xt, t.tol.residual, (1.0 + norm(xt)) * kappa);
  auto backward = find_conjugator(ctx, yt, xt, GroupConstraint::Full, opts);
  require(r, backward.conjugator.has_value(), "no conjugator found for (Y, X)");
}

template <Field T>
void conjugator_rank_mismatch(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  const std::size_t dim = ctx.dim();
  const auto r1 = static_cast<std::size_t>(t.rng.uniform_int(0, static_cast<long>(dim)));
  std::size_t r2 = r1;
  while (r2 == r1) r2 = static_cast<std::size_t>(t.rng.uniform_int(0, static_cast<long>(dim)));
  auto make = [&](std::size_t rank) {
    for (;;) {
      Matrix<Q> m = rank == 0 ? Matrix<Q>(dim, dim) : low_rank(t.rng, dim, dim, rank);
      if (exact_rank(m) == rank) return m;
    }
  };
  const Matrix<Q> a = make(r1), b = make(r2);
  r.instance = {{"A_X", mat_json(a)}, {"A_Y", mat_json(b)}};
  const EnhancedElement<T> x{Vector<T>(dim), Vector<T>(dim), lift<T>(a)};
  const EnhancedElement<T> y{Vector<T>(dim), Vector<T>(dim), lift<T>(b)};
  ConjugatorOptions opts;
  opts.seed = draw_seed(t.rng);
  opts.tol = t.tol.residual;
  auto found = find_conjugator(ctx, x, y, GroupConstraint::Full, opts);
  require(r, !found.conjugator.has_value(), "conjugator returned for matrices of different rank");
}

// --------------------------------------------------------- invariants

template <Field T>
void gamma_big_invariance(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const GroupElement<Q> g = random_invertible<Q>(t.rng, qctx.dim());
  const EnhancedElement<Q> x = random_enhanced(qctx, t.rng);
  const auto k = static_cast<unsigned>(t.rng.uniform_int(0, 4));
  r.instance = {{"g", mat_json(g.matrix())}, {"X", to_json(x)}, {"k", k}};
  const auto xt = lift<T>(x);
  const auto gt = lift<T>(g);
  const T before = gamma_big(ctx, xt, k);
  const T after = gamma_big(ctx, act(ctx, gt, xt), k);
  const double kappa = frobenius_norm(gt.matrix()) * frobenius_norm(gt.inverse());
  const double scale = (1.0 + std::pow(norm(xt) * kappa, static_cast<double>(k + 2)));
  expect_equal<T>(r, "Gamma_k(g.X) = Gamma_k(X)", after, before, t.tol.residual, scale);
}

template <Field T>
void gamma_small_even(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const Vector<Q> v = random_vector<Q>(t.rng, qctx.dim());
  const Matrix<Q> a = random_locus_matrix(qctx, t.rng, AlphaSign::minus());
  const auto k = static_cast<unsigned>(2 * t.rng.uniform_int(0, 4));
  r.instance = {{"v", to_json(v)}, {"A", mat_json(a)}, {"k", k}};
  const T value = gamma_small(ctx, lift<T>(v), lift<T>(a), k);
  const double scale = 1.0 + std::pow(1.0 + frobenius_norm(lift<T>(a)), static_cast<double>(k)) *
                                 std::pow(euclidean_norm(lift<T>(v)), 2.0);
  expect_equal<T>(r, "gamma_k = 0 for even k", value, T(0), t.tol.residual, scale);
}

template <Field T>
void restriction_sign(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const Vector<Q> u = t.rng.uniform_int(0, 9) == 0 ? Vector<Q>(qctx.dim()) : random_vector<Q>(t.rng, qctx.dim());
  const Matrix<Q> a = random_locus_matrix(qctx, t.rng, AlphaSign::minus());
  const auto k = static_cast<unsigned>(t.rng.uniform_int(0, 5));
  r.instance = {{"u", to_json(u)}, {"A", mat_json(a)}, {"k", k}};
  auto check = restriction_identity_check(ctx, lift<T>(u), lift<T>(a), k, t.tol.residual);
  require(r, check.holds, "Gamma_k on the embedded locus is not ±gamma_k");
  r.tag = check.sign;
}

template <Field T>
void gamma_small_invariance(Trial& t, TrialResult& r) {
  SymplecticContext<T> ctx(t.n);
  SymplecticContext<Q> qctx(t.n);
  const GroupElement<Q> s = random_symplectic(qctx, t.rng, 3);
  const Vector<Q> v = random_vector<Q>(t.rng, qctx.dim());
  const Matrix<Q> a = random_locus_matrix(qctx, t.rng, AlphaSign::minus());
  const auto k = static_cast<unsigned>(t.rng.uniform_int(0, 5));
  r.instance = {{"g", mat_json(s.matrix())}, {"v", to_json(v)}, {"A", mat_json(a)}, {"k", k}};
  const GroupElement<T> st = lift<T>(s);
  const Vector<T> vt = lift<T>(v);
  const Matrix<T> at = lift<T>(a);
  const T before = gamma_small(ctx, vt, at, k);
  const Matrix<T> moved = st.matrix() * at * st.inverse();
  // Conjugation leaves sp only up to rounding; project back in approximate mode.
  const Matrix<T> moved_sp = is_exact_v<T> ? moved : cartan_split(ctx, moved).k_part;
  const T after = gamma_small(ctx, Vector<T>(st.matrix() * vt), moved_sp, k);
  const double kappa = frobenius_norm(st.matrix()) * frobenius_norm(st.inverse());
  const double scale =
      1.0 + std::pow(kappa * (1.0 + frobenius_norm(at)), static_cast<double>(k + 1)) * std::pow(euclidean_norm(vt), 2.0);
  expect_equal<T>(r, "gamma_k(g v, g A g^{-1}) = gamma_k(v, A)", after, before, t.tol.residual, scale);
}

// ------------------------------------------------------ gl2-case-study

/// Random x in X with b, c != 0 and a rational root s of bc:
/// a = (tau + 1/tau) / 2, s = (tau - 1/tau) / 2, c = s^2 / b.
Matrix<Q> generic_X5(Rng& rng, const Q& tau) {
  const Q a = (tau + Q(1) / tau) / Q(2);
  const Q s = (tau - Q(1) / tau) / Q(2);
  const Q b = nonzero_scalar(rng, 4, 3);
  return Matrix<Q>{{a, b}, {s * s / b, a}};
}

Q random_tau(Rng& rng) {
  for (;;) {
    Q tau = nonzero_scalar(rng, 4, 3);
    if (!(tau * tau == Q(1)) && !(tau * tau == Q(-1))) return tau;
  }
}

template <Field T>
void gl2_canonical(Trial& t, TrialResult& r) {
  const int family = static_cast<int>(t.rng.uniform_int(0, 3));
  Matrix<Q> x;
  const Q sign = t.rng.coin() ? Q(1) : Q(-1);
  switch (family) {
    case 0: x = generic_X5(t.rng, random_tau(t.rng)); break;
    case 1: x = Matrix<Q>{{sign, nonzero_scalar(t.rng, 4, 3)}, {Q(0), sign}}; break;
    case 2: x = Matrix<Q>{{sign, Q(0)}, {nonzero_scalar(t.rng, 4, 3), sign}}; break;
    default: x = Matrix<Q>{{sign, Q(0)}, {Q(0), t.rng.coin() ? Q(1) : Q(-1)}}; break;
  }
  const Q p = nonzero_scalar(t.rng, 4, 3), q = nonzero_scalar(t.rng, 4, 3);
  const Matrix<Q> k{{p, Q(0)}, {Q(0), q}};
  const Matrix<Q> k_inv{{Q(1) / p, Q(0)}, {Q(0), Q(1) / q}};
  r.instance = {{"x", mat_json(x)}, {"k", mat_json(k)}};

  const Matrix<T> xt = lift<T>(x);
  const Matrix<T> moved = lift<T>(Matrix<Q>(k * x * k_inv));
  const double tol = t.tol.residual;
  require(r, in_X5(xt, tol), "generated x is not in X");
  const Matrix<T> rep = canonical_K_rep(xt, tol);
  const double scale = 1.0 + frobenius_norm(rep);
  expect_equal<T>(r, "canonical rep is K-invariant", canonical_K_rep(moved, tol), rep, tol, scale * 10.0);
  expect_equal<T>(r, "canonical rep is idempotent", canonical_K_rep(rep, tol), rep, tol, scale);
  if (family == 0) {
    // rep = diag(s / b, 1) x diag(b / s, 1) lies in the K-orbit of x.
    const T ratio = rep(0, 1) / xt(0, 1);
    const Matrix<T> kk{{ratio, T(0)}, {T(0), T(1)}};
    const Matrix<T> kk_inv{{T(1) / ratio, T(0)}, {T(0), T(1)}};
    expect_equal<T>(r, "rep is K-conjugate to x", Matrix<T>(kk * xt * kk_inv), rep, tol, scale * 10.0);
    const Complex s = FieldTraits<T>::to_complex(rep(0, 1));
    require(r, s.real() > 0.0 || (s.real() == 0.0 && s.imag() >= 0.0), "s outside the representative branch");
  }
}

template <Field T>
void gl2_conjugacy_trace(Trial& t, TrialResult& r) {
  const Q tau = random_tau(t.rng);
  const bool same = t.rng.coin();
  Q tau2 = tau;
  if (!same) {
    do tau2 = random_tau(t.rng);
    while (tau2 == tau || tau2 * tau == Q(1));
  } else if (t.rng.coin()) {
    tau2 = Q(1) / tau;
  }
  const Matrix<Q> x1 = generic_X5(t.rng, tau), x2 = generic_X5(t.rng, tau2);
  r.instance = {{"x1", mat_json(x1)}, {"x2", mat_json(x2)}};
  SymplecticContext<T> ctx(1);
  const EnhancedElement<T> e1{Vector<T>(2), Vector<T>(2), lift<T>(x1)};
  const EnhancedElement<T> e2{Vector<T>(2), Vector<T>(2), lift<T>(x2)};
  ConjugatorOptions opts;
  opts.seed = draw_seed(t.rng);
  opts.tol = t.tol.residual;
  const bool conjugate = find_conjugator(ctx, e1, e2, GroupConstraint::Full, opts).conjugator.has_value();
  const bool equal_trace = trace(x1) == trace(x2);
  require(r, conjugate == equal_trace, "G-conjugacy disagrees with equality of traces");
  const Matrix<T> rep1 = canonical_K_rep(lift<T>(x1), t.tol.residual);
  const Matrix<T> rep2 = canonical_K_rep(lift<T>(x2), t.tol.residual);
  const bool same_rep = is_exact_v<T> ? rep1 == rep2 : agree(rep1, rep2, 1e-6, 1.0 + frobenius_norm(rep1));
  require(r, same_rep == equal_trace, "canonical reps disagree with equality of traces");
}

void gl2_obstruction(Trial& t, TrialResult& r) {
  const Q alpha = t.rng.coin() ? Q(1) : Q(-1);
  const Q beta = random_gauss_rat(t.rng, 6, 4);
  const Matrix<Q> x{{Q(1), Q(1)}, {Q(0), Q(1)}};
  const Matrix<Q> f{{alpha, beta}, {Q(0), alpha}};
  r.instance = {{"alpha", alpha.str()}, {"beta", beta.str()}};
  require(r, sigma5(GroupElement<Q>(f)).matrix() == f && f * x == x * f, "[[alpha, beta], [0, alpha]] not in G_x^sigma");
  const Matrix<Q> sq = f * f;
  require(r, sq(0, 0) == Q(1) && sq(1, 1) == Q(1), "a square in G_x^sigma has a non-unit diagonal");

  const Matrix<Q> h_bad{{Q(-1), beta}, {Q(0), Q(-1)}};
  require(r, !obstruction_check(x, h_bad).has_root, "square root claimed for h with diagonal -1");
  const Matrix<Q> h_good{{Q(1), beta}, {Q(0), Q(1)}};
  require(r, obstruction_check(x, h_good).has_root, "no square root found for h with unit diagonal");

  const Matrix<Q> xd = t.rng.coin() ? Matrix<Q>{{Q(1), Q(0)}, {Q(0), Q(-1)}} : Matrix<Q>{{Q(-1), Q(0)}, {Q(0), Q(1)}};
  for (auto [a, d] : {std::pair{-1, -1}, {1, -1}, {-1, 1}}) {
    require(r, !obstruction_check(xd, Matrix<Q>{{Q(a), Q(0)}, {Q(0), Q(d)}}).has_root,
            "square root claimed at x = diag(±1, ∓1) for h != 1");
  }
  require(r, obstruction_check(xd, Matrix<Q>::identity(2)).has_root, "h = 1 has no square root");
}

template <Field T>
void gl2_sigma5(Trial& t, TrialResult& r) {
  const GroupElement<Q> g = random_invertible<Q>(t.rng, 2), h = random_invertible<Q>(t.rng, 2);
  r.instance = {{"g", mat_json(g.matrix())}, {"h", mat_json(h.matrix())}};
  const GroupElement<T> gt = lift<T>(g), ht = lift<T>(h);
  const double scale = 1.0 + frobenius_norm(gt.inverse()) * frobenius_norm(ht.inverse());
  expect_equal<T>(r, "sigma5(gh) = sigma5(h) sigma5(g)", sigma5(GroupElement<T>(gt * ht)).matrix(),
                  Matrix<T>(sigma5(ht).matrix() * sigma5(gt).matrix()), t.tol.residual, scale);
  expect_equal<T>(r, "sigma5 is an involution", sigma5(sigma5(gt)).matrix(), gt.matrix(), t.tol.residual,
                  1.0 + frobenius_norm(gt.matrix()));
}

// ----------------------------------------------------------- registry

using PropertyFn = std::function<void(Trial&, TrialResult&, Mode)>;

struct Property {
  PropertyInfo info;
  bool constant_tag;
  PropertyFn run;
};

#define ORBEMB_BOTH_MODES(fn) \
  [](Trial& t, TrialResult& r, Mode m) { m == Mode::Exact ? fn<GaussRat>(t, r) : fn<Complex>(t, r); }

const std::vector<Property>& registry() {
  static const std::vector<Property> props = {
      {{"linalg-solve-roundtrip", "field-linalg", false}, false, ORBEMB_BOTH_MODES(linalg_solve)},
      {{"spectrum-planted", "field-linalg", false}, false, ORBEMB_BOTH_MODES(spectrum_planted)},
      {{"sigma-involution", "symplectic-structures", true}, false, ORBEMB_BOTH_MODES(sigma_involution)},
      {{"sigma-anti-multiplicative", "symplectic-structures", true}, false, ORBEMB_BOTH_MODES(sigma_anti_multiplicative)},
      {{"symplectic-membership", "symplectic-structures", true}, false, ORBEMB_BOTH_MODES(symplectic_membership)},
      {{"cartan-split", "symplectic-structures", true}, false, ORBEMB_BOTH_MODES(cartan_split_property)},
      {{"sigma-equivariance", "enhanced-action", true}, false, ORBEMB_BOTH_MODES(sigma_equivariance)},
      {{"locus-stability", "enhanced-action", true}, false, ORBEMB_BOTH_MODES(locus_stability)},
      {{"action-homomorphism", "enhanced-action", true}, false, ORBEMB_BOTH_MODES(action_homomorphism)},
      {{"sqrt-kernel", "sqrt-calculus", true}, false, ORBEMB_BOTH_MODES(sqrt_kernel)},
      {{"witness-soundness", "orbit-engine", true}, false, ORBEMB_BOTH_MODES(witness_soundness)},
      {{"witness-injectivity", "orbit-engine", true}, false, ORBEMB_BOTH_MODES(witness_injectivity)},
      {{"theta-rep-witness", "orbit-engine", true}, false, ORBEMB_BOTH_MODES(theta_witness)},
      {{"conjugator-inversion", "orbit-engine", true}, false, ORBEMB_BOTH_MODES(conjugator_inversion)},
      {{"conjugator-rank-mismatch", "orbit-engine", true}, false, ORBEMB_BOTH_MODES(conjugator_rank_mismatch)},
      {{"gamma-big-invariance", "invariants", true}, false, ORBEMB_BOTH_MODES(gamma_big_invariance)},
      {{"gamma-small-even", "invariants", true}, false, ORBEMB_BOTH_MODES(gamma_small_even)},
      {{"restriction-sign", "invariants", true}, true, ORBEMB_BOTH_MODES(restriction_sign)},
      {{"gamma-small-invariance", "invariants", true}, false, ORBEMB_BOTH_MODES(gamma_small_invariance)},
      {{"gl2-canonical-rep", "gl2-case-study", false}, false, ORBEMB_BOTH_MODES(gl2_canonical)},
      {{"gl2-conjugacy-trace", "gl2-case-study", false}, false, ORBEMB_BOTH_MODES(gl2_conjugacy_trace)},
      {{"gl2-obstruction", "gl2-case-study", false}, false, [](Trial& t, TrialResult& r, Mode) { gl2_obstruction(t, r); }},
      {{"gl2-sigma5", "gl2-case-study", false}, false, ORBEMB_BOTH_MODES(gl2_sigma5)},
  };
  return props;
}

#undef ORBEMB_BOTH_MODES

const Property& find_property(const std::string& name) {
  for (const auto& p : registry())
    if (p.info.name == name) return p;
  throw SchemaError("unknown property \"" + name + "\"");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

TrialResult execute(const Property& p, std::size_t n, std::uint64_t seed, Mode mode, const Tolerances& tol) {
  Trial t{n == 0 ? 1 : n, Rng(seed), tol};
  TrialResult r;
  try {
    p.run(t, r, mode);
  } catch (const TheoremViolation& e) {
    r.pass = false;
    r.theorem_violation = true;
    r.message = e.what();
  } catch (const std::exception& e) {
    r.pass = false;
    r.message = e.what();
  }
  return r;
}

Json tolerances_json(const Tolerances& tol) {
  return Json{{"residual", tol.residual}, {"witness", tol.witness}, {"cluster", tol.cluster}};
}

}  // namespace

std::vector<PropertyInfo> list_properties() {
  std::vector<PropertyInfo> out;
  for (const auto& p : registry()) out.push_back(p.info);
  return out;
}

std::uint64_t trial_seed(std::uint64_t master, const std::string& property, std::size_t n, std::size_t trial) {
  return derive_seed(master, fnv1a(property), (static_cast<std::uint64_t>(n) << 32) | trial);
}

TrialResult run_trial(const std::string& property, std::size_t n, std::uint64_t seed, Mode mode,
                      const Tolerances& tol) {
  return execute(find_property(property), n, seed, mode, tol);
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  std::vector<const Property*> selected;
  if (cfg.properties.empty()) {
    for (const auto& p : registry()) selected.push_back(&p);
  } else {
    for (const auto& name : cfg.properties) selected.push_back(&find_property(name));
  }

  SuiteReport report;
  for (const Property* p : selected) {
    PropertyReport pr;
    pr.name = p->info.name;
    pr.module = p->info.module;
    std::set<int> tags;
    const std::vector<std::size_t> ns = p->info.per_n ? cfg.n_values : std::vector<std::size_t>{0};
    for (std::size_t n : ns) {
      for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t seed = trial_seed(cfg.seed, pr.name, n, trial);
        TrialResult r = execute(*p, n, seed, cfg.mode, cfg.tol);
        pr.worst_residual = std::max(pr.worst_residual, r.residual);
        if (r.mode_switched) ++pr.mode_switches;
        if (r.tag) tags.insert(*r.tag);
        if (r.pass) {
          ++pr.passed;
          continue;
        }
        ++pr.failed;
        if (r.theorem_violation) ++pr.theorem_violations;
        if (pr.failures.size() < cfg.max_dumps) {
          pr.failures.push_back(Json{{"property", pr.name},
                                     {"n", n},
                                     {"trial", trial},
                                     {"seed", seed},
                                     {"mode", mode_name(cfg.mode)},
                                     {"tolerances", tolerances_json(cfg.tol)},
                                     {"message", r.message},
                                     {"residual", r.residual},
                                     {"theorem_violation", r.theorem_violation},
                                     {"instance", r.instance}});
        }
      }
    }
    pr.tags.assign(tags.begin(), tags.end());
    if (p->constant_tag && tags.size() > 1) {
      ++pr.failed;
      pr.failures.push_back(Json{{"property", pr.name}, {"message", "measured sign is not constant across trials"}});
    }
    report.failed += pr.failed;
    report.theorem_violations += pr.theorem_violations;
    report.properties.push_back(std::move(pr));
  }
  return report;
}

Json to_json(const SuiteConfig& cfg) {
  return Json{{"n", cfg.n_values},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"mode", mode_name(cfg.mode)},
              {"tolerances", tolerances_json(cfg.tol)},
              {"properties", cfg.properties}};
}

Json to_json(const SuiteReport& report, const SuiteConfig& cfg) {
  Json props = Json::array();
  std::size_t passed = 0;
  for (const auto& p : report.properties) {
    passed += p.passed;
    props.push_back(Json{{"name", p.name},
                         {"module", p.module},
                         {"passed", p.passed},
                         {"failed", p.failed},
                         {"theorem_violations", p.theorem_violations},
                         {"mode_switches", p.mode_switches},
                         {"worst_residual", p.worst_residual},
                         {"tags", p.tags},
                         {"failures", p.failures}});
  }
  return Json{{"schema", kSchemaVersion},
              {"mode", mode_name(cfg.mode)},
              {"config", to_json(cfg)},
              {"theta_rep_sign", theta_rep_sign()},
              {"properties", std::move(props)},
              {"summary", Json{{"passed", passed},
                               {"failed", report.failed},
                               {"theorem_violations", report.theorem_violations}}}};
}

}  // namespace orbemb
