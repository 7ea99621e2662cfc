#include <gtest/gtest.h>

#include "oracle.hpp"
#include "orbemb/matrix_sqrt.hpp"
#include "orbemb/poly.hpp"
#include "orbemb/random.hpp"

using namespace orbemb;
using Q = GaussRat;

namespace {

/// Interpolant c0 + c1 T through (x0, y0), (x1, y1); with x0 == x1 the
/// slope y1 is the derivative instead.
std::pair<Q, Q> linear_interpolant(const Q& x0, const Q& y0, const Q& x1, const Q& y1, bool hermite) {
  const Q c1 = hermite ? y1 : (y1 - y0) / (x1 - x0);
  return {y0 - x0 * c1, c1};
}

TEST(PrimarySqrt, Identity) {
  auto r = primary_sqrt(Matrix<Q>::identity(3));
  EXPECT_EQ(r.root, Matrix<Q>::identity(3));
  ASSERT_EQ(r.cert.coeffs.size(), 1u);
  EXPECT_EQ(r.cert.coeffs[0], Q(1));
}

TEST(PrimarySqrt, DiagonalLagrange) {
  const Matrix<Q> h{{4, 0}, {0, 9}};
  auto r = primary_sqrt(h);
  EXPECT_EQ(r.root, (Matrix<Q>{{2, 0}, {0, 3}}));
  const auto [c0, c1] = linear_interpolant(Q(4), Q(2), Q(9), Q(3), false);
  ASSERT_EQ(r.cert.coeffs.size(), 2u);
  EXPECT_EQ(r.cert.coeffs[0], c0);
  EXPECT_EQ(r.cert.coeffs[1], c1);
  EXPECT_EQ(r.cert.residual, 0.0);

  auto a = primary_sqrt(to_approx(h));
  EXPECT_LT(oracle::dist(oracle::dense(a.root), oracle::dense(r.root)), 1e-12);
  EXPECT_LE(a.cert.residual, 1e-9 * (1.0 + frobenius_norm(to_approx(h))));
}

TEST(PrimarySqrt, JordanBlockAtMinusOne) {
  const Matrix<Q> h{{-1, 1}, {0, -1}};
  auto r = primary_sqrt(h);
  const Q i = Q::i();
  // f(-1) = i, f'(-1) = 1 / (2 i) = -i/2.
  EXPECT_EQ(r.root, (Matrix<Q>{{i, -i / Q(2)}, {Q(0), i}}));
  EXPECT_EQ(r.root * r.root, h);
  const auto [c0, c1] = linear_interpolant(Q(-1), i, Q(-1), Q(1) / (Q(2) * i), true);
  ASSERT_EQ(r.cert.coeffs.size(), 2u);
  EXPECT_EQ(r.cert.coeffs[0], c0);
  EXPECT_EQ(r.cert.coeffs[1], c1);

  auto a = primary_sqrt(to_approx(h));
  EXPECT_LT(oracle::dist(oracle::dense(a.root), oracle::dense(r.root)), 1e-7);
  EXPECT_LE(a.square_residual, 1e-9 * frobenius_norm(to_approx(h)));
}

TEST(PrimarySqrt, NegativeRealSpectrumUsesUpperBranch) {
  auto r = primary_sqrt(Matrix<Q>{{-1, 0}, {0, -9}});
  EXPECT_EQ(r.root, (Matrix<Q>{{Q::i(), 0}, {0, Q(3) * Q::i()}}));
  auto a = primary_sqrt(to_approx(Matrix<Q>::scalar(3, Q(-4))));
  EXPECT_LT(oracle::dist(oracle::dense(a.root), oracle::CM::Identity(3, 3) * Complex(0, 2)), 1e-12);
}

TEST(PrimarySqrt, IrrationalRootIsNotExact) {
  EXPECT_THROW(primary_sqrt(Matrix<Q>::scalar(2, Q(2))), NotExactlyRepresentable);
  EXPECT_THROW(primary_sqrt(Matrix<Q>{{1, 0}, {0, 0}}), SingularMatrix);
  EXPECT_THROW(primary_sqrt(to_approx(Matrix<Q>{{1, 0}, {0, 0}})), SingularMatrix);
}

TEST(PrimarySqrt, RandomMatchesEigen) {
  Rng rng(7);
  int tested = 0;
  while (tested < 60) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    Matrix<Complex> h(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) = Complex(rng.normal(), rng.normal());
    if (oracle::cond(oracle::dense(h)) > 1e6) continue;
    ++tested;
    auto r = primary_sqrt(h);
    const auto he = oracle::dense(h), se = oracle::dense(r.root);
    EXPECT_LE((se * se - he).norm(), 1e-9 * he.norm());
    EXPECT_LE((se * he - he * se).norm(), 1e-9 * he.squaredNorm());
    EXPECT_LE(r.cert.residual, 1e-9 * (1.0 + he.norm()));
    EXPECT_LT(oracle::dist(se, oracle::sqrtm(he)), 1e-7 * (1.0 + se.norm()));
  }
}

TEST(PrimarySqrt, CommutantAndFixedVectors) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 4));
    const GroupElement<Complex> p = random_invertible<Complex>(rng, n);
    Matrix<Complex> d(n, n);
    d(0, 0) = 1.0;
    for (std::size_t i = 1; i < n; ++i) d(i, i) = Complex(rng.uniform_real(0.5, 3.0), rng.uniform_real(-1.0, 1.0));
    const Matrix<Complex> h = p.matrix() * d * p.inverse();
    auto r = primary_sqrt(h);
    const Poly<Complex> q{Complex(rng.normal()), Complex(rng.normal()), Complex(rng.normal())};
    const Matrix<Complex> b = evaluate(q, h);
    const auto se = oracle::dense(r.root), be = oracle::dense(b);
    EXPECT_LE((se * be - be * se).norm(), 1e-8 * se.norm() * be.norm());
    Vector<Complex> e1(n);
    e1[0] = 1.0;
    const auto w = oracle::dense(Vector<Complex>(p.matrix() * e1));
    EXPECT_LE((se * w - w).norm(), 1e-8 * w.norm());
  }
}

TEST(SigmaFixedSqrt, Scalars) {
  for (std::size_t n : {1u, 2u}) {
    SymplecticContext<Q> ctx(n);
    auto r = sigma_fixed_sqrt(ctx, Matrix<Q>::scalar(2 * n, Q(4)));
    EXPECT_EQ(r.root, Matrix<Q>::scalar(2 * n, Q(2)));
    EXPECT_EQ(sigma_end(ctx, r.root), r.root);
  }
}

TEST(SigmaFixedSqrt, SigmaOfGTimesG) {
  SymplecticContext<Q> ctx(1);
  const Matrix<Q> g{{2, 0}, {0, 1}};
  const Matrix<Q> h = sigma_end(ctx, g) * g;
  EXPECT_EQ(h, Matrix<Q>::scalar(2, Q(2)));
  EXPECT_THROW(sigma_fixed_sqrt(ctx, h), NotExactlyRepresentable);
  SymplecticContext<Complex> actx(1);
  auto r = sigma_fixed_sqrt(actx, to_approx(h));
  EXPECT_LT(oracle::dist(oracle::dense(r.root), oracle::CM::Identity(2, 2) * std::sqrt(2.0)), 1e-12);

  const Matrix<Q> g2{{1, 1}, {0, 2}};
  const Matrix<Q> h2 = sigma_end(ctx, g2) * g2;
  auto r2 = sigma_fixed_sqrt(actx, to_approx(h2));
  const auto s = oracle::dense(r2.root);
  EXPECT_LE((oracle::sigma(s) - s).norm(), 1e-9 * s.norm());
}

TEST(SigmaFixedSqrt, RandomSigmaGG) {
  Rng rng(9);
  for (std::size_t n = 1; n <= 2; ++n) {
    SymplecticContext<Complex> ctx(n);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupElement<Complex> g = random_invertible<Complex>(rng, 2 * n);
      const Matrix<Complex> h = sigma_end(ctx, g.matrix()) * g.matrix();
      if (oracle::cond(oracle::dense(h)) > 1e6) continue;
      auto r = sigma_fixed_sqrt(ctx, Complex(0.5) * Matrix<Complex>(h + sigma_end(ctx, h)));
      const auto s = oracle::dense(r.root);
      EXPECT_LE((oracle::sigma(s) - s).norm(), 1e-8 * s.norm());
      EXPECT_LE((s * s - oracle::dense(h)).norm(), 1e-9 * oracle::dense(h).norm());
    }
  }
}

TEST(SigmaFixedSqrt, RejectsNonFixedInput) {
  SymplecticContext<Q> ctx(1);
  EXPECT_THROW(sigma_fixed_sqrt(ctx, Matrix<Q>{{1, 1}, {0, 1}}), PreconditionViolation);
}

}  // namespace
