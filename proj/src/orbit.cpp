#include "orbemb/orbit.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

#include "orbemb/eigen_bridge.hpp"
#include "orbemb/random.hpp"

namespace orbemb {

namespace {

template <Field T>
struct AffineSpace {
  bool feasible = false;
  Vector<T> particular;
  std::vector<Vector<T>> directions;
};

AffineSpace<GaussRat> affine_space(const Matrix<GaussRat>& a, const Vector<GaussRat>& b, double tol) {
  auto sol = solve_linear(a, b, tol);
  return {sol.feasible, std::move(sol.particular), std::move(sol.kernel)};
}

// SVD instead of elimination: numerical rank is decided on singular values.
AffineSpace<Complex> affine_space(const Matrix<Complex>& a, const Vector<Complex>& b, double tol) {
  const Eigen::MatrixXcd m = to_eigen(a);
  Eigen::VectorXcd rhs(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) rhs(i) = b[i];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(sv.size() > 0 ? sv(0) : 0.0, 1e-300);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;

  const Eigen::MatrixXcd& u = svd.matrixU();
  const Eigen::MatrixXcd& v = svd.matrixV();
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(m.cols());
  for (Eigen::Index k = 0; k < rank; ++k) x += v.col(k) * (u.col(k).dot(rhs) / sv(k));

  AffineSpace<Complex> out;
  out.particular = Vector<Complex>(a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) out.particular[i] = x(i);
  out.feasible = (m * x - rhs).norm() <= tol * (1.0 + rhs.norm());
  for (Eigen::Index k = rank; k < v.cols(); ++k) {
    Vector<Complex> d(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i) d[i] = v(i, k);
    out.directions.push_back(std::move(d));
  }
  return out;
}

bool invertible(const Matrix<GaussRat>& m, double) { return !determinant(m).is_zero(); }

bool invertible(const Matrix<Complex>& m, double rcond) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& sv = svd.singularValues();
  return sv(0) > 0.0 && sv(sv.size() - 1) / sv(0) > rcond;
}

template <Field T>
Matrix<T> reshape(const Vector<T>& flat, std::size_t n) {
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = flat[i * n + j];
  return m;
}

template <Field T>
void append(std::vector<T>& out, const Vector<T>& v) {
  out.insert(out.end(), v.entries().begin(), v.entries().end());
}

template <Field T>
void append(std::vector<T>& out, const Matrix<T>& m) {
  out.insert(out.end(), m.entries().begin(), m.entries().end());
}

std::string describe(const char* what, double value, double bound) {
  std::ostringstream os;
  os << what << " residual " << value << " exceeds " << bound;
  return os.str();
}

}  // namespace

template <Field T>
ConjugatorSearch<T> find_conjugator(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x,
                                    const EnhancedElement<T>& y, GroupConstraint constraint,
                                    const ConjugatorOptions& opts) {
  require_shape(ctx, x, "find_conjugator");
  require_shape(ctx, y, "find_conjugator");
  if (constraint != GroupConstraint::Full && constraint != GroupConstraint::BlockDiagonal) {
    throw PreconditionViolation("find_conjugator: constraint must be full or block-diagonal");
  }
  const bool blocked = constraint == GroupConstraint::BlockDiagonal;
  const std::size_t dim = ctx.dim();
  const std::size_t n = ctx.n();

  // All conditions are affine in g: L(g) = rhs.
  auto conditions = [&](const Matrix<T>& g) {
    std::vector<T> out;
    append(out, Vector<T>(g * x.u));
    append(out, Vector<T>(sigma_end(ctx, g) * y.v));
    append(out, Matrix<T>(g * x.A - y.A * g));
    if (blocked) {
      append(out, block(g, 0, n, n, n));
      append(out, block(g, n, 0, n, n));
    }
    return out;
  };
  std::vector<T> rhs_entries;
  append(rhs_entries, y.u);
  append(rhs_entries, x.v);
  rhs_entries.resize(rhs_entries.size() + dim * dim + (blocked ? 2 * n * n : 0), T(0));

  Matrix<T> system(rhs_entries.size(), dim * dim);
  for (std::size_t e = 0; e < dim * dim; ++e) {
    Matrix<T> basis(dim, dim);
    basis(e / dim, e % dim) = T(1);
    auto col = conditions(basis);
    for (std::size_t r = 0; r < col.size(); ++r) system(r, e) = col[r];
  }
  Vector<T> rhs(rhs_entries.size());
  for (std::size_t r = 0; r < rhs_entries.size(); ++r) rhs[r] = rhs_entries[r];

  auto space = affine_space(system, rhs, opts.tol);
  ConjugatorSearch<T> out;
  out.feasible = space.feasible;
  out.solution_dim = space.directions.size();
  if (!space.feasible) return out;

  const long radius = static_cast<long>(dim * dim * std::max<std::size_t>(1, out.solution_dim));
  out.coefficient_set_size = static_cast<std::size_t>(2 * radius + 1);
  Rng rng(opts.seed);
  const std::size_t budget = out.solution_dim == 0 ? 1 : opts.samples;
  for (std::size_t s = 0; s < budget; ++s) {
    ++out.samples_tried;
    Vector<T> flat = space.particular;
    for (const auto& d : space.directions) {
      flat = flat + FieldTraits<T>::from_rational(rng.uniform_int(-radius, radius), radius) * d;
    }
    Matrix<T> candidate = reshape(flat, dim);
    if (!invertible(candidate, opts.rcond)) continue;
    GroupElement<T> g(std::move(candidate));
    out.action_residual = norm(EnhancedElement<T>(act(ctx, g, x) - y));
    out.conjugator = std::move(g);
    return out;
  }
  out.probabilistic_no = out.solution_dim > 0;
  return out;
}

template <Field T>
double WitnessReport<T>::residual(const std::string& name) const {
  for (const auto& [key, value] : residuals)
    if (key == name) return value;
  throw std::out_of_range("WitnessReport: no residual named " + name);
}

template <Field T>
WitnessReport<T> symplectic_witness(const SymplecticContext<T>& ctx, const EnhancedElement<T>& x,
                                    const EnhancedElement<T>& y, const GroupElement<T>& g,
                                    GroupConstraint constraint, AlphaSign alpha, const WitnessOptions& opts) {
  require_shape(ctx, x, "symplectic_witness");
  require_shape(ctx, y, "symplectic_witness");
  ctx.require_square(g.matrix(), "symplectic_witness");
  const bool block = constraint == GroupConstraint::BlockDiagonal || constraint == GroupConstraint::SymplecticBlock;
  const double tol = opts.witness_tol;
  constexpr bool exact = is_exact_v<T>;
  // Exact mode demands equality; approximate mode a relative bound.
  auto within = [&](double value, double bound) { return exact ? value == 0.0 : value <= bound; };

  if (block && alpha.value() != -1) {
    throw PreconditionViolation("symplectic_witness: the block-diagonal constraint needs alpha = -1");
  }
  if (!in_L(ctx, x, alpha, tol)) throw PreconditionViolation("symplectic_witness: X is not in L");
  if (!in_L(ctx, y, alpha, tol)) throw PreconditionViolation("symplectic_witness: Y is not in L");
  if (block) {
    if (!in_theta_locus(ctx, x, tol) || !in_theta_locus(ctx, y, tol)) {
      throw PreconditionViolation("symplectic_witness: X and Y must have an anti-diagonal matrix part");
    }
    if (!is_block_diagonal(ctx, g.matrix(), tol)) {
      throw PreconditionViolation("symplectic_witness: g is not block-diagonal");
    }
  }

  const double x_scale = 1.0 + norm(x);
  const double y_scale = 1.0 + norm(y);
  const double kappa = exact ? 1.0 : frobenius_norm(g.matrix()) * frobenius_norm(g.inverse());
  std::vector<std::pair<std::string, double>> res;

  const double input = norm(EnhancedElement<T>(act(ctx, g, x) - y));
  res.emplace_back("input_action", input);
  if (!within(input, tol * y_scale * kappa)) {
    throw PreconditionViolation("symplectic_witness: g does not carry X to Y (" +
                                describe("action", input, tol * y_scale * kappa) + ")");
  }

  const Matrix<T> sg = sigma_end(ctx, g.matrix());
  Matrix<T> h = sg * g.matrix();
  const Matrix<T> h_inv = g.inverse() * sigma_end(ctx, g.inverse());
  const Matrix<T> sh = sigma_end(ctx, h);
  const double sigma_h = frobenius_norm(Matrix<T>(sh - h));
  res.emplace_back("sigma_h", sigma_h);
  if (!within(sigma_h, tol * frobenius_norm(sg) * frobenius_norm(g.matrix()))) {
    throw VerificationFailure("symplectic_witness: h = sigma(g) g is not sigma-fixed");
  }
  if constexpr (!exact) h = Complex(0.5) * Matrix<T>(h + sh);

  const double stab_bound = tol * x_scale * kappa * kappa;
  const GroupElement<T> h_elem(h, h_inv);
  const double stab_h = norm(EnhancedElement<T>(act(ctx, h_elem, x) - x));
  res.emplace_back("stabilizer_h", stab_h);
  if (!within(stab_h, stab_bound)) {
    throw VerificationFailure("symplectic_witness: h does not fix X (" + describe("stabilizer", stab_h, stab_bound) + ")");
  }

  SqrtOptions sqrt_opts;
  sqrt_opts.residual_tol = opts.residual_tol;
  sqrt_opts.sigma_tol = opts.witness_tol;
  sqrt_opts.cluster_radius = opts.cluster_radius;
  SqrtResult<T> root = sigma_fixed_sqrt(ctx, h, sqrt_opts);
  res.emplace_back("square", root.square_residual);
  res.emplace_back("certificate", root.cert.residual);
  res.emplace_back("sigma_f", root.sigma_residual);

  const GroupElement<T> f(root.root);
  const double stab_f = norm(EnhancedElement<T>(act(ctx, f, x) - x));
  res.emplace_back("stabilizer_f", stab_f);
  if (!within(stab_f, stab_bound)) {
    throw VerificationFailure("symplectic_witness: f does not fix X (" + describe("stabilizer", stab_f, stab_bound) + ")");
  }

  GroupElement<T> w = g * f.inverted();
  const Matrix<T>& wm = w.matrix();
  const double form = symplectic_defect(ctx, wm);
  const double membership =
      frobenius_norm(Matrix<T>(sigma_end(ctx, wm) * wm - Matrix<T>::identity(ctx.dim())));
  const double action = norm(EnhancedElement<T>(act(ctx, w, x) - y));
  res.emplace_back("form", form);
  res.emplace_back("membership", membership);
  res.emplace_back("action", action);

  const double form_bound = tol * frobenius_norm(ctx.J());
  if (!within(form, form_bound)) {
    throw TheoremViolation("symplectic_witness: witness is not symplectic (" + describe("form", form, form_bound) + ")");
  }
  if (!within(action, tol * y_scale)) {
    throw TheoremViolation("symplectic_witness: witness does not carry X to Y (" +
                           describe("action", action, tol * y_scale) + ")");
  }
  if (block) {
    const double off = off_block_norm(ctx, wm);
    const double bound = tol * std::max(1.0, frobenius_norm(wm));
    res.emplace_back("block", off);
    if (!within(off, bound)) {
      throw TheoremViolation("symplectic_witness: witness is not block-diagonal (" + describe("block", off, bound) + ")");
    }
  }

  return WitnessReport<T>{constraint, alpha, std::move(w), std::move(h), root.root, std::move(root.cert),
                          root.cluster_radius, std::move(res)};
}

WitnessOutcome witness_with_fallback(std::size_t n, const EnhancedElement<GaussRat>& x,
                                     const EnhancedElement<GaussRat>& y, const GroupElement<GaussRat>& g,
                                     GroupConstraint constraint, AlphaSign alpha, const WitnessOptions& opts) {
  try {
    SymplecticContext<GaussRat> ctx(n);
    return {symplectic_witness(ctx, x, y, g, constraint, alpha, opts), false, {}};
  } catch (const NotExactlyRepresentable& e) {
    SymplecticContext<Complex> ctx(n);
    return {symplectic_witness(ctx, to_approx(x), to_approx(y), to_approx(g), constraint, alpha, opts), true,
            e.what()};
  }
}

int theta_rep_sign() {
  static const int sign = [] {
    SymplecticContext<GaussRat> ctx(1);
    Vector<GaussRat> u{GaussRat(1), GaussRat(0)};
    for (int eps : {1, -1}) {
      EnhancedElement<GaussRat> probe{u, GaussRat(eps) * u, Matrix<GaussRat>(2, 2)};
      if (in_L(ctx, probe, AlphaSign::minus())) return eps;
    }
    throw Error("theta_rep_sign: no sign puts the probe in L");
  }();
  return sign;
}

template struct WitnessReport<GaussRat>;
template struct WitnessReport<Complex>;

template ConjugatorSearch<GaussRat> find_conjugator(const SymplecticContext<GaussRat>&, const EnhancedElement<GaussRat>&,
                                                    const EnhancedElement<GaussRat>&, GroupConstraint,
                                                    const ConjugatorOptions&);
template ConjugatorSearch<Complex> find_conjugator(const SymplecticContext<Complex>&, const EnhancedElement<Complex>&,
                                                   const EnhancedElement<Complex>&, GroupConstraint,
                                                   const ConjugatorOptions&);
template WitnessReport<GaussRat> symplectic_witness(const SymplecticContext<GaussRat>&, const EnhancedElement<GaussRat>&,
                                                    const EnhancedElement<GaussRat>&, const GroupElement<GaussRat>&,
                                                    GroupConstraint, AlphaSign, const WitnessOptions&);
template WitnessReport<Complex> symplectic_witness(const SymplecticContext<Complex>&, const EnhancedElement<Complex>&,
                                                   const EnhancedElement<Complex>&, const GroupElement<Complex>&,
                                                   GroupConstraint, AlphaSign, const WitnessOptions&);

}  // namespace orbemb
