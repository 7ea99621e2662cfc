#include "orbemb/matrix_sqrt.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <sstream>

#include "orbemb/eigen_bridge.hpp"

namespace orbemb {

namespace {

/// Branch value for a cluster center: principal root, with centers lying on
/// the negative real axis up to the clustering radius sent to i sqrt|c|.
Complex cluster_branch(Complex center, double radius) {
  if (center.real() < 0.0 && std::abs(center.imag()) <= radius * std::abs(center)) {
    return {0.0, std::sqrt(std::abs(center))};
  }
  return principal_sqrt(center);
}

/// Upper-triangular R with R^2 = T (Bjorck-Hammarling recurrence) using the
/// per-cluster branch.  Returns false when a divisor vanishes.
bool triangular_sqrt(const Eigen::MatrixXcd& t, double radius, double floor, Eigen::MatrixXcd& r) {
  const Eigen::Index n = t.rows();
  std::vector<Complex> diag(n);
  for (Eigen::Index i = 0; i < n; ++i) diag[i] = t(i, i);
  std::vector<std::size_t> assignment;
  auto clusters = cluster_eigenvalues(diag, radius, floor, &assignment);

  r = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex branch = cluster_branch(clusters[assignment[i]].value, radius);
    Complex root = principal_sqrt(diag[i]);
    if (std::abs(root - branch) > std::abs(root + branch)) root = -root;
    r(i, i) = root;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex sum = 0.0;
      for (Eigen::Index k = i + 1; k < j; ++k) sum += r(i, k) * r(k, j);
      Complex denom = r(i, i) + r(j, j);
      if (std::abs(denom) == 0.0) return false;
      r(i, j) = (t(i, j) - sum) / denom;
    }
  }
  return true;
}

/// Least-squares fit of S in span{1, h, ..., h^{d-1}} for the smallest d that
/// meets the tolerance.
std::optional<PolyCert<Complex>> krylov_certificate(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& s,
                                                    double tol) {
  const Eigen::Index n = h.rows();
  const double h_norm = h.norm();
  std::vector<Eigen::MatrixXcd> powers{Eigen::MatrixXcd::Identity(n, n)};
  for (Eigen::Index k = 1; k < n; ++k) powers.push_back(powers.back() * h);
  Eigen::VectorXcd target = Eigen::Map<const Eigen::VectorXcd>(s.data(), n * n);

  for (Eigen::Index d = 1; d <= n; ++d) {
    Eigen::MatrixXcd basis(n * n, d);
    std::vector<double> scale(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      scale[k] = powers[k].norm();
      if (scale[k] == 0.0) scale[k] = 1.0;
      basis.col(k) = Eigen::Map<const Eigen::VectorXcd>(powers[k].data(), n * n) / scale[k];
    }
    Eigen::VectorXcd y = basis.completeOrthogonalDecomposition().solve(target);
    Eigen::MatrixXcd fitted = Eigen::MatrixXcd::Zero(n, n);
    PolyCert<Complex> cert;
    for (Eigen::Index k = 0; k < d; ++k) {
      Complex c = y(k) / scale[k];
      cert.coeffs.push_back(c);
      fitted += c * powers[k];
    }
    cert.residual = (fitted - s).norm();
    if (cert.residual <= tol * (1.0 + h_norm)) return cert;
  }
  return std::nullopt;
}

std::string fmt_residual(const char* what, double value, double bound) {
  std::ostringstream os;
  os << what << " residual " << value << " exceeds " << bound;
  return os.str();
}

}  // namespace

SqrtResult<Complex> primary_sqrt(const Matrix<Complex>& h_in, const SqrtOptions& opts) {
  if (!h_in.is_square()) throw DimensionMismatch("primary_sqrt: matrix is not square");
  const Eigen::MatrixXcd h = to_eigen(h_in);
  const Eigen::Index n = h.rows();
  const double h_norm = h.norm();
  if (n == 0) return {};

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(h);
  if (schur.info() != Eigen::Success) throw VerificationFailure("primary_sqrt: Schur decomposition failed");
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd& u = schur.matrixU();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(t(i, i)) <= 1e-14 * h_norm) throw SingularMatrix("primary_sqrt: matrix is singular");
  }

  double last_residual = std::numeric_limits<double>::infinity();
  for (double radius = opts.cluster_radius; radius <= 0.1; radius *= 1e3) {
    Eigen::MatrixXcd r;
    if (!triangular_sqrt(t, radius, 1e-8 * h_norm, r)) continue;
    Eigen::MatrixXcd s = u * r * u.adjoint();
    last_residual = (s * s - h).norm();
    if (!(last_residual <= opts.residual_tol * h_norm)) continue;

    auto cert = krylov_certificate(h, s, opts.residual_tol);
    if (!cert) {
      throw VerificationFailure("primary_sqrt: no polynomial certificate within tolerance");
    }
    SqrtResult<Complex> out;
    out.root = from_eigen(s);
    out.cert = std::move(*cert);
    out.square_residual = last_residual;
    out.cluster_radius = radius;
    return out;
  }
  throw VerificationFailure("primary_sqrt: " +
                            fmt_residual("square", last_residual, opts.residual_tol * h_norm));
}

SqrtResult<GaussRat> primary_sqrt(const Matrix<GaussRat>& h, const SqrtOptions&) {
  if (!h.is_square()) throw DimensionMismatch("primary_sqrt: matrix is not square");
  const std::size_t n = h.rows();
  if (determinant(h).is_zero()) throw SingularMatrix("primary_sqrt: matrix is singular");
  auto spectrum = exact_eigenvalues(h);
  if (!spectrum) throw NotExactlyRepresentable("primary_sqrt: spectrum does not split over Q(i)");

  // Hermite data of sqrt on each eigenvalue, up to its index in the minimal polynomial.
  std::size_t d = 0;
  for (const auto& ev : *spectrum) d += ev.index;
  Matrix<GaussRat> system(d, d);
  Vector<GaussRat> rhs(d);
  std::size_t row = 0;
  for (const auto& ev : *spectrum) {
    auto s = exact_sqrt(ev.value);
    if (!s) throw NotExactlyRepresentable("primary_sqrt: eigenvalue " + ev.value.str() + " is not a square in Q(i)");
    GaussRat deriv = *s;  // f^{(j)}(lambda) = s * prod_{i<j}(1/2 - i) / lambda^j
    for (std::size_t j = 0; j < ev.index; ++j, ++row) {
      for (std::size_t k = j; k < d; ++k) {
        GaussRat falling(1);
        for (std::size_t i = 0; i < j; ++i) falling *= GaussRat(static_cast<long>(k - i));
        GaussRat lambda_pow(1);
        for (std::size_t i = 0; i < k - j; ++i) lambda_pow *= ev.value;
        system(row, k) = falling * lambda_pow;
      }
      rhs[row] = deriv;
      deriv *= (GaussRat::rational(1, 2) - GaussRat(static_cast<long>(j))) / ev.value;
    }
  }
  auto sol = solve_linear(system, rhs);
  if (!sol.feasible || sol.dimension() != 0) throw VerificationFailure("primary_sqrt: Hermite system is singular");

  SqrtResult<GaussRat> out;
  out.cert.coeffs.assign(sol.particular.entries().begin(), sol.particular.entries().end());
  out.root = evaluate(out.cert.coeffs, h);
  if (!(out.root * out.root == h)) throw VerificationFailure("primary_sqrt: exact square check failed");
  out.cert.residual = 0.0;
  out.square_residual = 0.0;
  (void)n;
  return out;
}

SqrtResult<Complex> sigma_fixed_sqrt(const SymplecticContext<Complex>& ctx, const Matrix<Complex>& h,
                                     const SqrtOptions& opts) {
  ctx.require_square(h, "sigma_fixed_sqrt");
  Matrix<Complex> sh = sigma_end(ctx, h);
  const double defect = frobenius_norm(Matrix<Complex>(sh - h));
  if (defect > opts.residual_tol * frobenius_norm(h)) {
    throw PreconditionViolation("sigma_fixed_sqrt: sigma(h) != h (" +
                                fmt_residual("sigma", defect, opts.residual_tol * frobenius_norm(h)) + ")");
  }
  // sigma permutes entries up to sign, so the average is sigma-fixed in floating point.
  Matrix<Complex> sym = Complex(0.5) * Matrix<Complex>(h + sh);
  SqrtResult<Complex> out = primary_sqrt(sym, opts);
  out.square_residual = frobenius_norm(Matrix<Complex>(out.root * out.root - h));
  out.sigma_residual = frobenius_norm(Matrix<Complex>(sigma_end(ctx, out.root) - out.root));
  if (out.sigma_residual > opts.sigma_tol * frobenius_norm(out.root)) {
    throw VerificationFailure("sigma_fixed_sqrt: " +
                              fmt_residual("sigma", out.sigma_residual, opts.sigma_tol * frobenius_norm(out.root)));
  }
  return out;
}

SqrtResult<GaussRat> sigma_fixed_sqrt(const SymplecticContext<GaussRat>& ctx, const Matrix<GaussRat>& h,
                                      const SqrtOptions& opts) {
  ctx.require_square(h, "sigma_fixed_sqrt");
  if (!(sigma_end(ctx, h) == h)) throw PreconditionViolation("sigma_fixed_sqrt: sigma(h) != h");
  SqrtResult<GaussRat> out = primary_sqrt(h, opts);
  if (!(sigma_end(ctx, out.root) == out.root)) {
    throw VerificationFailure("sigma_fixed_sqrt: exact root is not sigma-fixed");
  }
  return out;
}

}  // namespace orbemb
