#include <gtest/gtest.h>

#include "oracle.hpp"
#include "orbemb/random.hpp"
#include "orbemb/symplectic.hpp"

using namespace orbemb;
using Q = GaussRat;

namespace {

TEST(SymplecticForm, Values) {
  SymplecticContext<Q> ctx(1);
  EXPECT_EQ(symplectic_form(ctx, Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(0), Q(1)}), Q(1));
  // u^T J v with u = (1,1), v = (1,-1): J v = (-1,-1).
  EXPECT_EQ(symplectic_form(ctx, Vector<Q>{Q(1), Q(1)}, Vector<Q>{Q(1), Q(-1)}), Q(-2));
  Rng rng(1);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> c(n);
    const Vector<Q> u = random_vector<Q>(rng, 2 * n);
    EXPECT_EQ(symplectic_form(c, u, u), Q(0));
  }
}

TEST(SigmaEnd, TwoByTwoClosedForm) {
  SymplecticContext<Q> ctx(1);
  EXPECT_EQ(sigma_end(ctx, Matrix<Q>::identity(2)), Matrix<Q>::identity(2));
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Q a = random_gauss_rat(rng), b = random_gauss_rat(rng), c = random_gauss_rat(rng), d = random_gauss_rat(rng);
    // sigma is the adjugate for n = 1.
    EXPECT_EQ(sigma_end(ctx, Matrix<Q>{{a, b}, {c, d}}), (Matrix<Q>{{d, -b}, {-c, a}}));
  }
  EXPECT_EQ(sigma_end(ctx, Matrix<Q>{{0, 1}, {0, 0}}), (Matrix<Q>{{0, -1}, {0, 0}}));
}

TEST(SigmaEnd, MatchesOracleAndIsAntiMultiplicative) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix<Q> a = random_matrix<Q>(rng, 2 * n, 2 * n), b = random_matrix<Q>(rng, 2 * n, 2 * n);
      EXPECT_LT(oracle::dist(oracle::dense(sigma_end(ctx, a)), oracle::sigma(oracle::dense(a))), 1e-12);
      EXPECT_EQ(sigma_end(ctx, sigma_end(ctx, a)), a);
      EXPECT_EQ(sigma_end(ctx, Matrix<Q>(a * b)), sigma_end(ctx, b) * sigma_end(ctx, a));
    }
  }
}

TEST(ThetaGroup, Values) {
  SymplecticContext<Q> ctx(1);
  EXPECT_EQ(theta_group(ctx, GroupElement<Q>::identity(2)).matrix(), Matrix<Q>::identity(2));
  const GroupElement<Q> u(Matrix<Q>{{1, 1}, {0, 1}});
  EXPECT_EQ(theta_group(ctx, u).matrix(), u.matrix());
  // Scalars are sigma-fixed, so theta(2) = 1/2.
  const GroupElement<Q> two(Matrix<Q>::scalar(2, Q(2)));
  EXPECT_EQ(theta_group(ctx, two).matrix(), Matrix<Q>::scalar(2, Q::rational(1, 2)));
}

TEST(Membership, Values) {
  SymplecticContext<Q> ctx(1);
  EXPECT_TRUE(is_symplectic(ctx, Matrix<Q>::identity(2)));
  EXPECT_TRUE(is_symplectic(ctx, Matrix<Q>{{1, 1}, {0, 1}}));
  EXPECT_FALSE(is_symplectic(ctx, Matrix<Q>{{2, 0}, {0, 1}}));
}

TEST(Membership, TransvectionProductsAreSymplecticAndThetaFixed) {
  Rng rng(4);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    for (int trial = 0; trial < 10; ++trial) {
      const GroupElement<Q> s = random_symplectic(ctx, rng, 4);
      EXPECT_TRUE(is_symplectic(ctx, s));
      const auto e = oracle::dense(s.matrix());
      EXPECT_LT(oracle::dist(e.transpose() * oracle::J(n) * e, oracle::J(n)), 1e-9 * e.squaredNorm());
      EXPECT_EQ(theta_group(ctx, s).matrix(), s.matrix());
      EXPECT_EQ(s.matrix() * s.inverse(), Matrix<Q>::identity(2 * n));
    }
  }
}

TEST(CartanSplit, Values) {
  SymplecticContext<Q> ctx(1);
  const Matrix<Q> skew{{1, 0}, {0, -1}};
  auto parts = cartan_split(ctx, skew);
  EXPECT_EQ(parts.k_part, skew);
  EXPECT_EQ(parts.p_part, Matrix<Q>(2, 2));
  parts = cartan_split(ctx, Matrix<Q>::identity(2));
  EXPECT_EQ(parts.k_part, Matrix<Q>(2, 2));
  EXPECT_EQ(parts.p_part, Matrix<Q>::identity(2));
  parts = cartan_split(ctx, Matrix<Q>{{1, 0}, {0, 0}});
  const Q half = Q::rational(1, 2);
  EXPECT_EQ(parts.k_part, (Matrix<Q>{{half, 0}, {0, -half}}));
  EXPECT_EQ(parts.p_part, (Matrix<Q>{{half, 0}, {0, half}}));
}

TEST(CartanSplit, PartsAreEigenvectorsOfSigma) {
  Rng rng(5);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    const Matrix<Q> a = random_matrix<Q>(rng, 2 * n, 2 * n);
    auto parts = cartan_split(ctx, a);
    EXPECT_EQ(parts.k_part + parts.p_part, a);
    EXPECT_EQ(sigma_end(ctx, parts.k_part), -parts.k_part);
    EXPECT_EQ(sigma_end(ctx, parts.p_part), parts.p_part);
  }
}

TEST(BlockPattern, OffBlockNorm) {
  SymplecticContext<Q> ctx(1);
  EXPECT_TRUE(is_block_diagonal(ctx, Matrix<Q>{{2, 0}, {0, 3}}));
  EXPECT_FALSE(is_block_diagonal(ctx, Matrix<Q>{{2, 1}, {0, 3}}));
  EXPECT_DOUBLE_EQ(off_block_norm(ctx, Matrix<Q>{{2, 3}, {4, 5}}), 5.0);
}

}  // namespace
