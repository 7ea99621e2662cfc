#include <gtest/gtest.h>

#include "oracle.hpp"
#include "orbemb/linsolve.hpp"
#include "orbemb/random.hpp"
#include "orbemb/spectrum.hpp"

using namespace orbemb;
using Q = GaussRat;

namespace {

TEST(GaussRat, ArithmeticAndParsing) {
  const Q a = Q::parse("1/2+3i");
  EXPECT_EQ(a.real(), mpq_class(1, 2));
  EXPECT_EQ(a.imag(), mpq_class(3));
  EXPECT_EQ(a * Q(2), Q::parse("1+6i"));
  EXPECT_EQ(Q::i() * Q::i(), Q(-1));
  EXPECT_EQ(Q(1) / Q::parse("1+i"), Q::parse("1/2-1/2i"));
  EXPECT_EQ(Q::parse(a.str()), a);
  EXPECT_THROW(Q::parse("1/0"), Error);
  EXPECT_THROW(Q::parse("abc"), Error);
}

TEST(GaussRat, ExactSquareRoots) {
  EXPECT_EQ(exact_sqrt(Q(4)), Q(2));
  EXPECT_EQ(exact_sqrt(Q(-4)), Q::parse("2i"));
  EXPECT_EQ(exact_sqrt(Q::parse("2i")), Q::parse("1+i"));
  EXPECT_FALSE(exact_sqrt(Q(2)).has_value());
  EXPECT_EQ(rational_sqrt(mpq_class(9, 4)), mpq_class(3, 2));
}

TEST(SolveLinear, Identity) {
  const Vector<Q> b{Q(3), Q::parse("1/2"), Q::i()};
  auto s = solve_linear(Matrix<Q>::identity(3), b);
  ASSERT_TRUE(s.feasible);
  EXPECT_EQ(s.particular, b);
  EXPECT_TRUE(s.kernel.empty());
}

TEST(SolveLinear, ZeroCoefficients) {
  auto s = solve_linear(Matrix<Q>(2, 2), Vector<Q>(2));
  ASSERT_TRUE(s.feasible);
  EXPECT_EQ(s.particular, Vector<Q>(2));
  EXPECT_EQ(s.kernel.size(), 2u);
  EXPECT_EQ(oracle::rank((oracle::CM(2, 2) << oracle::dense(s.kernel[0]), oracle::dense(s.kernel[1])).finished()), 2);
}

TEST(SolveLinear, RankOneSystem) {
  const Matrix<Q> a{{1, 1}, {2, 2}};
  auto s = solve_linear(a, Vector<Q>{Q(1), Q(2)});
  ASSERT_TRUE(s.feasible);
  EXPECT_EQ(s.particular, (Vector<Q>{Q(1), Q(0)}));
  ASSERT_EQ(s.kernel.size(), 1u);
  // The kernel is spanned by (1, -1).
  EXPECT_EQ(s.kernel[0][0] + s.kernel[0][1], Q(0));
  EXPECT_FALSE(s.kernel[0][0].is_zero());
}

TEST(SolveLinear, InfeasibleBothModes) {
  const Matrix<Q> a{{1, 1}, {2, 2}};
  EXPECT_FALSE(solve_linear(a, Vector<Q>{Q(1), Q(3)}).feasible);
  EXPECT_FALSE(solve_linear(to_approx(a), Vector<Complex>{1.0, 3.0}).feasible);
  EXPECT_TRUE(solve_linear(to_approx(a), Vector<Complex>{1.0, 2.0 + 1e-13}).feasible);
}

TEST(SolveLinear, RandomRoundTripAgainstRank) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.uniform_int(1, 6));
    const auto cols = static_cast<std::size_t>(rng.uniform_int(1, 6));
    Matrix<Q> a = random_matrix<Q>(rng, rows, cols, 2, 1);
    if (rng.coin()) {
      for (std::size_t j = 0; j < cols; ++j) a(rows - 1, j) = a(0, j) * Q(2);
    }
    const Vector<Q> x0 = random_vector<Q>(rng, cols);
    const Vector<Q> b = a * x0;
    auto s = solve_linear(a, b);
    ASSERT_TRUE(s.feasible);
    EXPECT_EQ(a * s.particular, b);
    for (const auto& k : s.kernel) EXPECT_EQ(a * k, Vector<Q>(rows));
    EXPECT_EQ(static_cast<Eigen::Index>(s.kernel.size()), static_cast<Eigen::Index>(cols) - oracle::rank(oracle::dense(a)));

    auto sa = solve_linear(to_approx(a), to_approx(b));
    ASSERT_TRUE(sa.feasible);
    EXPECT_EQ(sa.kernel.size(), s.kernel.size());
    EXPECT_LT((oracle::dense(to_approx(a)) * oracle::dense(sa.particular) - oracle::dense(to_approx(b))).norm(),
              1e-9 * (1.0 + oracle::dense(to_approx(b)).norm()));
  }
}

TEST(DenseOps, DeterminantAndInverseMatchEigen) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const GroupElement<Q> g = random_invertible<Q>(rng, n);
    const auto e = oracle::dense(g.matrix());
    EXPECT_NEAR(std::abs(determinant(g.matrix()).to_complex() - e.determinant()), 0.0, 1e-8 * (1.0 + std::abs(e.determinant())));
    EXPECT_EQ(g.matrix() * inverse(g.matrix()), Matrix<Q>::identity(n));
    EXPECT_LT(oracle::dist(oracle::dense(inverse(to_approx(g.matrix()))), e.inverse()), 1e-9 * e.inverse().norm());
  }
  EXPECT_THROW(inverse(Matrix<Q>{{1, 2}, {2, 4}}), SingularMatrix);
}

TEST(Spectrum, Diagonal) {
  auto ex = exact_eigenvalues(Matrix<Q>{{4, 0}, {0, 9}});
  ASSERT_TRUE(ex.has_value());
  ASSERT_EQ(ex->size(), 2u);
  auto approx = eigen_spectrum(to_approx(Matrix<Q>{{4, 0}, {0, 9}}));
  ASSERT_EQ(approx.size(), 2u);
  for (const auto& c : approx) EXPECT_EQ(c.multiplicity, 1u);
}

TEST(Spectrum, JordanBlockIsOneCluster) {
  const Matrix<Q> h{{-1, 1}, {0, -1}};
  auto ex = exact_eigenvalues(h);
  ASSERT_TRUE(ex.has_value());
  ASSERT_EQ(ex->size(), 1u);
  EXPECT_EQ((*ex)[0].value, Q(-1));
  EXPECT_EQ((*ex)[0].algebraic, 2u);
  EXPECT_EQ((*ex)[0].index, 2u);
  auto approx = eigen_spectrum(to_approx(h));
  ASSERT_EQ(approx.size(), 1u);
  EXPECT_EQ(approx[0].multiplicity, 2u);
  EXPECT_NEAR(std::abs(approx[0].value + 1.0), 0.0, 1e-7);
}

TEST(Spectrum, RotationHasImaginaryPair) {
  const Matrix<Q> h{{0, 1}, {-1, 0}};
  auto ex = exact_eigenvalues(h);
  ASSERT_TRUE(ex.has_value());
  ASSERT_EQ(ex->size(), 2u);
  bool plus = false, minus = false;
  for (const auto& e : *ex) {
    plus = plus || e.value == Q::i();
    minus = minus || e.value == -Q::i();
  }
  EXPECT_TRUE(plus && minus);
}

TEST(Spectrum, MultiplicitiesSumToDimension) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    auto clusters = eigen_spectrum(random_matrix<Complex>(rng, n, n));
    std::size_t total = 0;
    for (const auto& c : clusters) total += c.multiplicity;
    EXPECT_EQ(total, n);
  }
}

TEST(Spectrum, IrrationalEigenvaluesAreNotExact) {
  EXPECT_FALSE(exact_eigenvalues(Matrix<Q>{{0, 2}, {1, 0}}).has_value());
}

}  // namespace
