#include <gtest/gtest.h>

#include "oracle.hpp"
#include "orbemb/enhanced.hpp"
#include "orbemb/random.hpp"

using namespace orbemb;
using Q = GaussRat;

namespace {

using EQ = EnhancedElement<Q>;

const Matrix<Q> kNil{{0, 1}, {0, 0}};

TEST(Action, Identity) {
  SymplecticContext<Q> ctx(2);
  Rng rng(1);
  const EQ x = random_enhanced(ctx, rng);
  EXPECT_EQ(act(ctx, GroupElement<Q>::identity(4), x), x);
}

TEST(Action, UnipotentInSp2) {
  SymplecticContext<Q> ctx(1);
  const EQ x{Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(0), Q(1)}, kNil};
  const EQ y = act(ctx, GroupElement<Q>(Matrix<Q>{{1, 1}, {0, 1}}), x);
  EXPECT_EQ(y, (EQ{Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(1), Q(1)}, kNil}));
}

TEST(Action, ScalarActsOppositelyOnVAndDual) {
  SymplecticContext<Q> ctx(1);
  const Matrix<Q> a{{3, 1}, {2, -1}};
  const EQ x{Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(1), Q(0)}, a};
  const EQ y = act(ctx, GroupElement<Q>(Matrix<Q>::scalar(2, Q(2))), x);
  EXPECT_EQ(y, (EQ{Vector<Q>{Q(2), Q(0)}, Vector<Q>{Q::rational(1, 2), Q(0)}, a}));
}

TEST(Action, MatchesOracleFormula) {
  Rng rng(2);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    const GroupElement<Q> g = random_invertible<Q>(rng, 2 * n);
    const EQ x = random_enhanced(ctx, rng);
    const EQ y = act(ctx, g, x);
    const auto ge = oracle::dense(g.matrix());
    const oracle::CM theta = oracle::sigma(ge).inverse();
    EXPECT_LT((oracle::dense(y.u) - ge * oracle::dense(x.u)).norm(), 1e-9);
    EXPECT_LT((oracle::dense(y.v) - theta * oracle::dense(x.v)).norm(), 1e-8 * theta.norm() * (1 + oracle::dense(x.v).norm()));
    EXPECT_LT(oracle::dist(oracle::dense(y.A), ge * oracle::dense(x.A) * ge.inverse()), 1e-8 * (1 + oracle::dense(y.A).norm()));
  }
}

TEST(SigmaL, Values) {
  SymplecticContext<Q> ctx(1);
  const EQ x{Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(0), Q(1)}, kNil};
  EXPECT_EQ(sigma_L(ctx, x), (EQ{Vector<Q>{Q(0), Q(1)}, Vector<Q>{Q(1), Q(0)}, Matrix<Q>{{0, -1}, {0, 0}}}));
  const EQ fixed{Vector<Q>{Q(2), Q(3)}, Vector<Q>{Q(2), Q(3)}, Matrix<Q>::identity(2)};
  EXPECT_EQ(sigma_L(ctx, fixed), fixed);
}

TEST(SigmaL, Involution) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    for (int trial = 0; trial < 10; ++trial) {
      const EQ x = random_enhanced(ctx, rng);
      EXPECT_EQ(sigma_L(ctx, sigma_L(ctx, x)), x);
    }
  }
}

TEST(Locus, Membership) {
  SymplecticContext<Q> ctx(1);
  EXPECT_TRUE(in_L(ctx, EQ{Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(-1), Q(0)}, Matrix<Q>{{1, 0}, {0, -1}}}, AlphaSign::minus()));
  EXPECT_TRUE(in_L(ctx, EQ{Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(1), Q(0)}, Matrix<Q>::identity(2)}, AlphaSign::plus()));
  EXPECT_FALSE(in_L(ctx, EQ{Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(1), Q(0)}, Matrix<Q>(2, 2)}, AlphaSign::minus()));
}

TEST(Locus, Embedding) {
  SymplecticContext<Q> ctx(1);
  const EQ zero = embed_L(ctx, Vector<Q>(2), Matrix<Q>(2, 2), AlphaSign::minus());
  EXPECT_EQ(zero, EQ::zero(2));
  EXPECT_TRUE(in_L(ctx, zero, AlphaSign::minus()));
  EXPECT_EQ(embed_L(ctx, Vector<Q>{Q(1), Q(0)}, kNil, AlphaSign::minus()),
            (EQ{Vector<Q>{Q(1), Q(0)}, Vector<Q>{Q(-1), Q(0)}, kNil}));
  EXPECT_EQ(embed_L(ctx, Vector<Q>{Q(0), Q(1)}, Matrix<Q>::identity(2), AlphaSign::plus()),
            (EQ{Vector<Q>{Q(0), Q(1)}, Vector<Q>{Q(0), Q(1)}, Matrix<Q>::identity(2)}));
  EXPECT_THROW(embed_L(ctx, Vector<Q>{Q(1), Q(0)}, Matrix<Q>::identity(2), AlphaSign::minus()), PreconditionViolation);
}

TEST(Action, EquivarianceOfSigmaL) {
  Rng rng(4);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    for (int trial = 0; trial < 20; ++trial) {
      const GroupElement<Q> g = random_invertible<Q>(rng, 2 * n);
      const EQ x = random_enhanced(ctx, rng);
      EXPECT_EQ(sigma_L(ctx, act(ctx, g, x)), act(ctx, theta_group(ctx, g), sigma_L(ctx, x)));
    }
  }
}

TEST(Action, SymplecticGroupPreservesBothLoci) {
  Rng rng(5);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    for (int s : {-1, 1}) {
      const AlphaSign alpha = AlphaSign::from_int(s);
      for (int trial = 0; trial < 10; ++trial) {
        const GroupElement<Q> g = random_symplectic(ctx, rng, 3);
        EXPECT_TRUE(in_L(ctx, act(ctx, g, random_L_element(ctx, rng, alpha)), alpha));
      }
    }
  }
}

TEST(Action, GeneralGroupLeavesTheLocus) {
  SymplecticContext<Q> ctx(1);
  const EQ x = embed_L(ctx, Vector<Q>{Q(1), Q(0)}, kNil, AlphaSign::minus());
  EXPECT_FALSE(in_L(ctx, act(ctx, GroupElement<Q>(Matrix<Q>::scalar(2, Q(2))), x), AlphaSign::minus()));
}

TEST(Action, Homomorphism) {
  Rng rng(6);
  SymplecticContext<Q> ctx(2);
  for (int trial = 0; trial < 10; ++trial) {
    const GroupElement<Q> g = random_invertible<Q>(rng, 4), h = random_invertible<Q>(rng, 4);
    const EQ x = random_enhanced(ctx, rng);
    EXPECT_EQ(act(ctx, g * h, x), act(ctx, g, act(ctx, h, x)));
  }
}

TEST(Shapes, MismatchThrows) {
  SymplecticContext<Q> ctx(2);
  const EQ bad{Vector<Q>(2), Vector<Q>(4), Matrix<Q>(4, 4)};
  EXPECT_THROW(act(ctx, GroupElement<Q>::identity(4), bad), DimensionMismatch);
  EXPECT_THROW(AlphaSign::from_int(2), Error);
}

}  // namespace
