#include <gtest/gtest.h>

#include "wdrazin/fixtures.hpp"
#include "wdrazin/matcore.hpp"
#include "wdrazin/random.hpp"

using namespace wdrazin;
using fixtures::from_rows;

namespace {

Matrix jordan(Eigen::Index n) {
  Matrix J = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) J(i, i + 1) = 1;
  return J;
}

}  // namespace

TEST(MpInverse, IdentityIsItsOwnInverse) { EXPECT_LT(rel_diff(mp_inverse(identity(3)), identity(3)), 1e-14); }

TEST(MpInverse, ZeroMatrixTransposesShape) {
  Matrix Z = mp_inverse(Matrix::Zero(2, 3));
  EXPECT_EQ(Z.rows(), 3);
  EXPECT_EQ(Z.cols(), 2);
  EXPECT_EQ(Z.norm(), 0.0);
}

TEST(MpInverse, RankOneOuterProduct) {
  // B = u v*, u = e1, v = (1,1): B^+ = v u* / (|u|^2 |v|^2)
  Matrix B = from_rows({{1, 1}, {0, 0}});
  EXPECT_LT(rel_diff(mp_inverse(B), from_rows({{0.5, 0}, {0.5, 0}})), 1e-14);
}

TEST(MpInverse, PenroseEquationsOnRandomMatrix) {
  Rng rng(3);
  Matrix A = rng.gaussian(5, 3) * rng.gaussian(3, 4);
  Matrix X = mp_inverse(A);
  EXPECT_LT(rel_diff(A * X * A, A), 1e-12);
  EXPECT_LT(rel_diff(X * A * X, X), 1e-12);
  EXPECT_LT(rel_diff((A * X).adjoint(), A * X), 1e-12);
  EXPECT_LT(rel_diff((X * A).adjoint(), X * A), 1e-12);
}

TEST(RankOf, FixtureA1HasRankFour) { EXPECT_EQ(rank_of(fixtures::A1()), 4); }

TEST(RankOf, ZeroMatrix) { EXPECT_EQ(rank_of(Matrix::Zero(3, 4)), 0); }

TEST(RankOf, CubeOfA1W1) {
  Matrix P = matrix_power(fixtures::A1() * fixtures::W1(), 3);
  EXPECT_EQ(rank_of(P), 1);
  EXPECT_LT(rel_diff(P.row(0), from_rows({{1, 0, 1, 0, 1}})), 1e-15);
}

TEST(IndexOf, Identity) { EXPECT_EQ(index_of(identity(4)), 0); }

TEST(IndexOf, JordanBlock) { EXPECT_EQ(index_of(jordan(3)), 3); }

TEST(IndexOf, FixtureProduct) { EXPECT_EQ(index_of(fixtures::A1() * fixtures::W1()), 3); }

TEST(IndexOf, RejectsNonSquare) { EXPECT_THROW(index_of(Matrix::Zero(2, 3)), DimensionError); }

TEST(IndexOf, ConstructedSquares) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    int kt = rng.integer(0, 3);
    Eigen::Index n = rng.integer(kt + 1, 7);
    EXPECT_EQ(index_of(random_square(n, kt, rng)), kt);
  }
}

TEST(RangeInclusion, SelfIncluded) {
  Matrix A = fixtures::A1();
  EXPECT_TRUE(range_inclusion(A, A));
}

TEST(RangeInclusion, AxisNotInZeroRange) {
  Matrix e1 = Matrix::Zero(2, 1);
  e1(0, 0) = 1;
  EXPECT_FALSE(range_inclusion(e1, Matrix::Zero(2, 1)));
}

TEST(RangeInclusion, PowerChain) {
  Matrix S = fixtures::A1() * fixtures::W1();
  EXPECT_TRUE(range_inclusion(matrix_power(S, 4), matrix_power(S, 3)));
  EXPECT_FALSE(range_inclusion(matrix_power(S, 1), matrix_power(S, 3)));
}

TEST(ProjectorOnto, Cases) {
  EXPECT_LT(rel_diff(projector_onto(identity(2)), identity(2)), 1e-15);
  Matrix e1 = from_rows({{1}, {0}});
  EXPECT_LT(rel_diff(projector_onto(e1), from_rows({{1, 0}, {0, 0}})), 1e-15);
  EXPECT_LT(rel_diff(projector_onto(from_rows({{1, 1}, {0, 0}})), from_rows({{1, 0}, {0, 0}})), 1e-14);
}

TEST(ObliqueProjectorCheck, IdentityPasses) {
  Rng rng(5);
  Matrix G = rng.well_conditioned(3);
  EXPECT_TRUE(oblique_projector_check(identity(3), identity(3), G).overall());
}

TEST(ObliqueProjectorCheck, WrongNullSpaceDetected) {
  // P = [[1,1],[0,0]] is idempotent onto span e1 with kernel span (1,-1)
  Matrix P = from_rows({{1, 1}, {0, 0}});
  auto r = oblique_projector_check(P, from_rows({{1}, {0}}), from_rows({{0, 1}}));
  EXPECT_TRUE(r.find("P^2=P")->pass);
  EXPECT_TRUE(r.find("R(P)=R(E)")->pass);
  EXPECT_FALSE(r.find("N(P)=N(F)")->pass);
  EXPECT_TRUE(oblique_projector_check(P, from_rows({{1}, {0}}), from_rows({{1, 1}})).overall());
}

TEST(ObliqueProjectorCheck, NonIdempotentFails) {
  Matrix P = from_rows({{1, 1}, {0, 1}});
  EXPECT_FALSE(oblique_projector_check(P, P, P).find("P^2=P")->pass);
}

TEST(SpectralNorm, Cases) {
  EXPECT_NEAR(spectral_norm(identity(5)), 1.0, 1e-15);
  EXPECT_NEAR(spectral_norm(from_rows({{3, 0}, {0, -1}})), 3.0, 1e-15);
  EXPECT_NEAR(spectral_norm(from_rows({{0, 2}, {0, 0}})), 2.0, 1e-15);
}

TEST(WeightedPair, IndicesAndValidation) {
  WeightedPair p(fixtures::A1(), fixtures::W1());
  EXPECT_EQ(p.k_bw(), 3);
  EXPECT_EQ(p.k_wb(), index_of(fixtures::W1() * fixtures::A1()));
  EXPECT_THROW(WeightedPair(fixtures::A1(), fixtures::A1()), DimensionError);
  EXPECT_THROW(WeightedPair(fixtures::A1(), Matrix::Zero(4, 5)), DimensionError);
  Matrix bad = fixtures::A1();
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(WeightedPair(bad, fixtures::W1()), ComputationError);
}

TEST(WeightedPair, ConstructedIndexMatches) {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    auto in = random_pair(rng);
    WeightedPair p(in.B, in.W);
    EXPECT_EQ(p.k_bw(), in.target_index);
    EXPECT_EQ(rank_of(matrix_power(p.BW(), p.k())), in.q);
  }
}

TEST(VerificationReport, AggregatesConditions) {
  VerificationReport r("x", {});
  r.check("a", 1e-14);
  r.note("info", 0.5);
  EXPECT_TRUE(r.overall());
  r.check("b", 1e-3);
  EXPECT_FALSE(r.overall());
  EXPECT_EQ(r.conditions.size(), 2u);
  EXPECT_EQ(r.informational.size(), 1u);
}
