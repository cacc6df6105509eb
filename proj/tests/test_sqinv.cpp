#include <gtest/gtest.h>

#include "wdrazin/fixtures.hpp"
#include "wdrazin/random.hpp"
#include "wdrazin/sqinv.hpp"

using namespace wdrazin;
using fixtures::from_rows;

namespace {

Matrix jordan(Eigen::Index n) {
  Matrix J = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) J(i, i + 1) = 1;
  return J;
}

const Matrix idem = from_rows({{1, 1}, {0, 0}});

}  // namespace

TEST(Drazin, InvertibleGivesInverse) {
  Rng rng(1);
  Matrix S = rng.well_conditioned(4);
  auto r = drazin(S);
  EXPECT_EQ(r.index_used, 0);
  EXPECT_LT(rel_diff(r.value, S.inverse()), 1e-12);
}

TEST(Drazin, IdempotentIsItsOwnDrazinInverse) { EXPECT_LT(rel_diff(drazin(idem).value, idem), 1e-14); }

TEST(Drazin, NilpotentGivesZero) {
  auto r = drazin(jordan(3));
  EXPECT_EQ(r.index_used, 3);
  EXPECT_EQ(r.value.norm(), 0.0);
}

TEST(Drazin, RejectsNonSquare) { EXPECT_THROW(drazin(Matrix::Zero(2, 3)), DimensionError); }

TEST(Drazin, ConstructedSquaresCertify) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    Matrix S = random_square(rng);
    auto r = drazin(S);
    Matrix Sk = matrix_power(S, r.index_used);
    EXPECT_LT(rel_diff(r.value * S * r.value, r.value), 1e-9);
    EXPECT_LT(rel_diff(S * r.value, r.value * S), 1e-9);
    EXPECT_LT(rel_diff(Sk * S * r.value, Sk), 1e-9);
  }
}

TEST(CoreEp, InvertibleGivesInverse) {
  Rng rng(4);
  Matrix S = rng.well_conditioned(3);
  EXPECT_LT(rel_diff(core_ep(S).value, S.inverse()), 1e-12);
}

TEST(CoreEp, HermitianIdempotent) {
  Matrix D = from_rows({{1, 0}, {0, 0}});
  EXPECT_LT(rel_diff(core_ep(D).value, D), 1e-15);
}

TEST(CoreEp, RankOneIdempotent) {
  // k = 1 so S^(+) = S^D S S^+ = S S^+ = e1 e1*
  EXPECT_LT(rel_diff(core_ep(idem).value, from_rows({{1, 0}, {0, 0}})), 1e-14);
}

TEST(CoreEp, DefiningEquations) {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    Matrix S = random_square(rng);
    int k = index_of(S);
    Matrix X = core_ep(S).value;
    Matrix Sk = matrix_power(S, k);
    EXPECT_LT(rel_diff(X * S * X, X), 1e-9);
    EXPECT_LT(range_equal_residual(X, Sk), 1e-9);
    EXPECT_LT(range_equal_residual(X.adjoint(), Sk), 1e-9);
  }
}

TEST(MWgi, InvertibleGivesInverse) {
  Rng rng(6);
  Matrix S = rng.well_conditioned(3);
  for (int m = 1; m <= 3; ++m) EXPECT_LT(rel_diff(m_wgi(S, m).value, S.inverse()), 1e-11);
}

TEST(MWgi, WeakGroupInverseForMOne) {
  Matrix ce = core_ep(idem).value;
  EXPECT_LT(rel_diff(m_wgi(idem, 1).value, ce * ce * idem), 1e-14);
}

TEST(MWgi, NilpotentGivesZero) { EXPECT_EQ(m_wgi(jordan(3), 2).value.norm(), 0.0); }

TEST(MWgi, RejectsNonPositiveM) { EXPECT_THROW(m_wgi(idem, 0), std::invalid_argument); }

TEST(MWeakCore, InvertibleGivesInverse) {
  Rng rng(7);
  Matrix S = rng.well_conditioned(4);
  EXPECT_LT(rel_diff(m_weak_core(S, 2), S.inverse()), 1e-11);
}
