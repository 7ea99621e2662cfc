#include <gtest/gtest.h>

#include "oracle.hpp"
#include "orbemb/orbit.hpp"
#include "orbemb/random.hpp"

using namespace orbemb;
using Q = GaussRat;

namespace {

using EQ = EnhancedElement<Q>;

EQ matrix_only(const Matrix<Q>& a) { return {Vector<Q>(a.rows()), Vector<Q>(a.rows()), a}; }

TEST(FindConjugator, SelfReturnsStabilizer) {
  SymplecticContext<Q> ctx(2);
  Rng rng(1);
  const EQ x = random_L_element(ctx, rng, AlphaSign::minus());
  auto found = find_conjugator(ctx, x, x, GroupConstraint::Full, {.seed = 3});
  ASSERT_TRUE(found.conjugator.has_value());
  EXPECT_EQ(act(ctx, *found.conjugator, x), x);
}

TEST(FindConjugator, DiagonalSwapIsAntidiagonal) {
  SymplecticContext<Q> ctx(1);
  const EQ x = matrix_only(Matrix<Q>{{1, 0}, {0, -1}});
  const EQ y = matrix_only(Matrix<Q>{{-1, 0}, {0, 1}});
  auto found = find_conjugator(ctx, x, y, GroupConstraint::Full, {.seed = 5});
  ASSERT_TRUE(found.conjugator.has_value());
  EXPECT_EQ(found.solution_dim, 2u);
  const Matrix<Q>& g = found.conjugator->matrix();
  EXPECT_TRUE(g(0, 0).is_zero());
  EXPECT_TRUE(g(1, 1).is_zero());
  EXPECT_EQ(act(ctx, *found.conjugator, x), y);
}

TEST(FindConjugator, RankMismatchHasNoConjugator) {
  SymplecticContext<Q> ctx(1);
  auto found = find_conjugator(ctx, matrix_only(Matrix<Q>{{0, 1}, {0, 0}}), matrix_only(Matrix<Q>(2, 2)),
                               GroupConstraint::Full, {.seed = 7});
  EXPECT_FALSE(found.conjugator.has_value());
  auto approx = find_conjugator(SymplecticContext<Complex>(1), to_approx(matrix_only(Matrix<Q>{{0, 1}, {0, 0}})),
                                to_approx(matrix_only(Matrix<Q>(2, 2))), GroupConstraint::Full, {.seed = 7});
  EXPECT_FALSE(approx.conjugator.has_value());
}

TEST(FindConjugator, CoefficientSetIsLargeEnough) {
  SymplecticContext<Q> ctx(2);
  Rng rng(2);
  const EQ x = random_L_element(ctx, rng, AlphaSign::plus());
  auto found = find_conjugator(ctx, x, x, GroupConstraint::Full, {.seed = 1});
  EXPECT_GE(found.coefficient_set_size, 2 * 16 * found.solution_dim);
}

TEST(FindConjugator, InverseWorksBackwards) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 2; ++n) {
    SymplecticContext<Q> ctx(n);
    for (int trial = 0; trial < 5; ++trial) {
      const EQ x = random_L_element(ctx, rng, AlphaSign::minus());
      const EQ y = act(ctx, random_invertible<Q>(rng, 2 * n), x);
      auto found = find_conjugator(ctx, x, y, GroupConstraint::Full, {.seed = 11});
      ASSERT_TRUE(found.conjugator.has_value());
      EXPECT_EQ(act(ctx, *found.conjugator, x), y);
      EXPECT_EQ(act(ctx, found.conjugator->inverted(), y), x);
    }
  }
}

TEST(FindConjugator, BlockConstraintGivesBlockDiagonal) {
  Rng rng(4);
  SymplecticContext<Q> ctx(2);
  const EQ x = embed_theta_rep(ctx, ThetaLocus::L1, random_vector<Q>(rng, 4), random_symmetric<Q>(rng, 2),
                               random_symmetric<Q>(rng, 2));
  const EQ y = act(ctx, random_K_element(ctx, rng), x);
  auto found = find_conjugator(ctx, x, y, GroupConstraint::BlockDiagonal, {.seed = 2});
  ASSERT_TRUE(found.conjugator.has_value());
  EXPECT_TRUE(is_block_diagonal(ctx, found.conjugator->matrix()));
  EXPECT_EQ(act(ctx, *found.conjugator, x), y);
}

TEST(Witness, SymplecticConjugatorIsItsOwnWitness) {
  Rng rng(5);
  SymplecticContext<Q> ctx(2);
  const EQ x = random_L_element(ctx, rng, AlphaSign::minus());
  const GroupElement<Q> s = random_symplectic(ctx, rng, 2);
  auto rep = symplectic_witness(ctx, x, act(ctx, s, x), s, GroupConstraint::Full, AlphaSign::minus());
  EXPECT_EQ(rep.h, Matrix<Q>::identity(4));
  EXPECT_EQ(rep.f, Matrix<Q>::identity(4));
  EXPECT_EQ(rep.witness.matrix(), s.matrix());
}

TEST(Witness, ScalarStabilizerGivesIdentity) {
  SymplecticContext<Q> ctx(1);
  const EQ x = matrix_only(Matrix<Q>{{1, 2}, {3, -1}});
  ASSERT_TRUE(in_L(ctx, x, AlphaSign::minus()));
  const GroupElement<Q> two(Matrix<Q>::scalar(2, Q(2)));
  auto rep = symplectic_witness(ctx, x, x, two, GroupConstraint::Full, AlphaSign::minus());
  EXPECT_EQ(rep.h, Matrix<Q>::scalar(2, Q(4)));
  EXPECT_EQ(rep.f, Matrix<Q>::scalar(2, Q(2)));
  EXPECT_EQ(rep.witness.matrix(), Matrix<Q>::identity(2));
}

TEST(Witness, TransvectionTimesScalarGivesTransvection) {
  Rng rng(6);
  SymplecticContext<Q> ctx(1);
  const EQ x = matrix_only(Matrix<Q>{{1, 2}, {3, -1}});
  for (int trial = 0; trial < 5; ++trial) {
    const GroupElement<Q> s = random_transvection(ctx, rng);
    const GroupElement<Q> g = s * GroupElement<Q>(Matrix<Q>::scalar(2, Q(2)));
    auto rep = symplectic_witness(ctx, x, act(ctx, g, x), g, GroupConstraint::Full, AlphaSign::minus());
    EXPECT_EQ(rep.h, Matrix<Q>::scalar(2, Q(4)));
    EXPECT_EQ(rep.witness.matrix(), s.matrix());
  }
}

TEST(Witness, RejectsBadInputs) {
  SymplecticContext<Q> ctx(1);
  const EQ x = matrix_only(Matrix<Q>{{1, 2}, {3, -1}});
  const EQ not_in_l = matrix_only(Matrix<Q>::identity(2));
  const GroupElement<Q> one = GroupElement<Q>::identity(2);
  EXPECT_THROW(symplectic_witness(ctx, x, not_in_l, one, GroupConstraint::Full, AlphaSign::minus()), PreconditionViolation);
  const EQ other = matrix_only(Matrix<Q>{{1, 0}, {0, -1}});
  EXPECT_THROW(symplectic_witness(ctx, x, other, one, GroupConstraint::Full, AlphaSign::minus()), PreconditionViolation);
}

/// Independent check of a witness: w^T J w = J and w . X = Y, evaluated in Eigen.
void expect_valid_witness(std::size_t n, const Matrix<Complex>& w, const EnhancedElement<Complex>& x,
                          const EnhancedElement<Complex>& y, bool block) {
  const auto we = oracle::dense(w);
  const auto j = oracle::J(n);
  EXPECT_LE((we.transpose() * j * we - j).norm(), 1e-8 * j.norm());
  const oracle::CM theta = oracle::sigma(we).inverse();
  const double act_res = (we * oracle::dense(x.u) - oracle::dense(y.u)).norm() +
                         (theta * oracle::dense(x.v) - oracle::dense(y.v)).norm() +
                         (we * oracle::dense(x.A) * we.inverse() - oracle::dense(y.A)).norm();
  const double y_norm = std::sqrt(oracle::dense(y.u).squaredNorm() + oracle::dense(y.v).squaredNorm() +
                                  oracle::dense(y.A).squaredNorm());
  EXPECT_LE(act_res, 3e-8 * (1.0 + y_norm));
  if (block) {
    EXPECT_LE(we.topRightCorner(n, n).norm() + we.bottomLeftCorner(n, n).norm(), 1e-8 * we.norm());
  }
}

TEST(Witness, RandomFoundConjugatorsGiveSymplecticWitnesses) {
  Rng rng(7);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    for (int trial = 0; trial < 6; ++trial) {
      const AlphaSign alpha = trial % 2 ? AlphaSign::plus() : AlphaSign::minus();
      const EQ x = random_L_element(ctx, rng, alpha);
      const EQ y = act(ctx, random_symplectic(ctx, rng, 2), x);
      auto found = find_conjugator(ctx, x, y, GroupConstraint::Full, {.seed = 13});
      ASSERT_TRUE(found.conjugator.has_value());
      auto out = witness_with_fallback(n, x, y, *found.conjugator, GroupConstraint::Full, alpha);
      std::visit([&](const auto& rep) { expect_valid_witness(n, to_approx(rep.witness.matrix()), to_approx(x), to_approx(y), false); },
                 out.report);
    }
  }
}

TEST(ThetaRep, SignAndEmbedding) {
  EXPECT_EQ(theta_rep_sign(), -1);
  SymplecticContext<Q> ctx(1);
  const Matrix<Q> b{{2}}, c{{3}};
  EXPECT_EQ(embed_antidiag(b, c), (Matrix<Q>{{0, 2}, {3, 0}}));
  EXPECT_EQ(embed_antidiag(Matrix<Q>(1, 1), Matrix<Q>(1, 1)), Matrix<Q>(2, 2));
  const EQ x1 = embed_theta_rep(ctx, ThetaLocus::L1, Vector<Q>{Q(1), Q(1)}, b, c);
  EXPECT_TRUE(in_L(ctx, x1, AlphaSign::minus()));
  EXPECT_TRUE(in_theta_locus(ctx, x1));
  EXPECT_EQ(x1, (EQ{Vector<Q>{Q(1), Q(1)}, Vector<Q>{Q(-1), Q(-1)}, Matrix<Q>{{0, 2}, {3, 0}}}));
  const EQ x2 = embed_theta_rep(ctx, ThetaLocus::L2, Vector<Q>{Q(1)}, Matrix<Q>(1, 1), Matrix<Q>(1, 1));
  EXPECT_EQ(x2.u, (Vector<Q>{Q(1), Q(0)}));
  EXPECT_EQ(x2.v, (Vector<Q>{Q(-1), Q(0)}));
  EXPECT_EQ(embed_theta_rep(ctx, ThetaLocus::L1, Vector<Q>(2), Matrix<Q>(1, 1), Matrix<Q>(1, 1)), EQ::zero(2));
  EXPECT_THROW(embed_theta_rep(SymplecticContext<Q>(2), ThetaLocus::L1, Vector<Q>(4), Matrix<Q>{{0, 1}, {2, 0}},
                               Matrix<Q>(2, 2)),
               PreconditionViolation);
}

TEST(ThetaRep, ConstrainedWitnessIsBlockDiagonal) {
  Rng rng(8);
  for (std::size_t n = 1; n <= 3; ++n) {
    SymplecticContext<Q> ctx(n);
    for (int trial = 0; trial < 6; ++trial) {
      const bool l1 = trial % 2 == 0;
      const Vector<Q> u = random_vector<Q>(rng, l1 ? 2 * n : n);
      const EQ x = embed_theta_rep(ctx, l1 ? ThetaLocus::L1 : ThetaLocus::L2, u, random_symmetric<Q>(rng, n),
                                   random_symmetric<Q>(rng, n));
      // A block-diagonal conjugator outside K: K element times a sampled stabilizer.
      auto stab = find_conjugator(ctx, x, x, GroupConstraint::BlockDiagonal, {.seed = 17});
      ASSERT_TRUE(stab.conjugator.has_value());
      const GroupElement<Q> g = random_K_element(ctx, rng) * *stab.conjugator;
      const EQ y = act(ctx, g, x);
      auto out = witness_with_fallback(n, x, y, g, GroupConstraint::BlockDiagonal, AlphaSign::minus());
      std::visit([&](const auto& rep) { expect_valid_witness(n, to_approx(rep.witness.matrix()), to_approx(x), to_approx(y), true); },
                 out.report);
    }
  }
}

TEST(ThetaRep, BlockConstraintNeedsThetaLocus) {
  SymplecticContext<Q> ctx(1);
  const EQ x = matrix_only(Matrix<Q>{{1, 0}, {0, -1}});
  EXPECT_THROW(symplectic_witness(ctx, x, x, GroupElement<Q>::identity(2), GroupConstraint::BlockDiagonal,
                                  AlphaSign::minus()),
               PreconditionViolation);
}

}  // namespace
