#include <gtest/gtest.h>

#include "wdrazin/fixtures.hpp"
#include "wdrazin/random.hpp"
#include "wdrazin/verify.hpp"

using namespace wdrazin;

namespace {

WeightedPair ex1() { return WeightedPair(fixtures::A1(), fixtures::W1()); }

struct Instance {
  WeightedPair p;
  Matrix X, Z;
};

Instance draw(Rng& rng) {
  auto in = random_pair(rng);
  WeightedPair p(in.B, in.W);
  auto fl = mrwwd_family(p);
  auto fr = mrwwd_right_family(p);
  return {p, fl.member(rng.gaussian(fl.param_rows(), fl.param_cols())),
          fr.member(rng.gaussian(fr.param_rows(), fr.param_cols()))};
}

}  // namespace

TEST(CheckMrwwd, FixtureMemberPassesAllSeven) {
  auto r = check_mrwwd(ex1(), fixtures::ex1_member(1, 2));
  EXPECT_TRUE(r.overall());
  EXPECT_EQ(r.items().size(), 7u);
}

TEST(CheckMrwwd, ZeroFailsPowerEquation) {
  auto r = check_mrwwd(ex1(), Matrix::Zero(5, 4));
  EXPECT_FALSE(r.item_pass("(i)"));
}

TEST(CheckMrwwd, RankInflationBreaksItems) {
  auto p = ex1();
  Matrix X = fixtures::ex1_member(1, 2);
  Matrix noise = Matrix::Zero(5, 4);
  noise(3, 2) = 1;  // outside R((BW)^k) = span e1
  auto r = check_mrwwd(p, X + noise);
  EXPECT_FALSE(r.overall());
  EXPECT_FALSE(r.find("(i) rank X=rank (BW)^k")->pass);
}

TEST(CheckMrwwdRight, ParticularAndFixturePass) {
  WeightedPair p(fixtures::A2(), fixtures::W2());
  EXPECT_TRUE(check_mrwwd_right(p, mrwwd_right_family(p).particular).overall());
  EXPECT_FALSE(check_mrwwd_right(p, Matrix::Zero(5, 4)).item_pass("(i)"));
}

TEST(CheckMrwwd, RandomItemsAgree) {
  Rng rng(1);
  for (int t = 0; t < 30; ++t) {
    auto in = draw(rng);
    auto a = check_mrwwd(in.p, in.X), b = check_mrwwd_right(in.p, in.Z);
    EXPECT_TRUE(a.overall() && a.items_agree());
    EXPECT_TRUE(b.overall() && b.items_agree());
    Matrix d = 1e-3 * rng.gaussian(in.p.m(), in.p.n());
    auto an = check_mrwwd(in.p, in.X + d);
    EXPECT_FALSE(an.item_pass("(i)"));
    EXPECT_TRUE(an.items_agree());
  }
}

TEST(WeakMpdSystem, FixtureAndNegative) {
  auto p = ex1();
  Matrix X = fixtures::ex1_member(1, 2);
  Matrix Y = fixtures::first_row(4, {1, 0, 1, 0, 1});
  EXPECT_TRUE(check_weak_mpd_system(p, X, Y).overall());
  auto bad = check_weak_mpd_system(p, X, mp_inverse(p.B()));
  EXPECT_FALSE(bad.overall());
}

TEST(MpdCharacterizations, FixtureAndRandom) {
  auto p = ex1();
  Matrix X = fixtures::ex1_member(-1, 2);
  EXPECT_TRUE(check_mpd_characterizations(p, X, weak_mpd(p, X).value).overall());
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    auto in = draw(rng);
    Matrix Y = weak_mpd(in.p, in.X).value, Y1 = weak_dmp(in.p, in.Z).value;
    EXPECT_TRUE(check_mpd_characterizations(in.p, in.X, Y).overall());
    EXPECT_TRUE(check_dmp_characterizations(in.p, in.Z, Y1).overall());
    Matrix dY = 1e-3 * rng.gaussian(in.p.n(), in.p.m());
    EXPECT_FALSE(check_mpd_characterizations(in.p, in.X, Y + dY).overall());
    EXPECT_FALSE(check_dmp_characterizations(in.p, in.Z, Y1 + dY).overall());
  }
}

TEST(WDrazinSpecialization, UnweightedDrazinCase) {
  Rng rng(3);
  Matrix B = random_square(rng);
  WeightedPair p(B, identity(B.rows()));
  EXPECT_TRUE(check_wdrazin_specialization(p, w_mpd(p).value).overall());
}

TEST(Projectors, FixtureRandomAndNegative) {
  auto p = ex1();
  Matrix X = fixtures::ex1_member(1, 2);
  EXPECT_TRUE(check_projectors(p, X, weak_mpd(p, X).value).overall());
  EXPECT_FALSE(check_projectors(p, X, mp_inverse(p.B())).overall());
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    auto in = draw(rng);
    EXPECT_TRUE(check_projectors(in.p, in.X, weak_mpd(in.p, in.X).value).overall());
    EXPECT_TRUE(check_projectors_right(in.p, in.Z, weak_dmp(in.p, in.Z).value).overall());
  }
}

TEST(ObliqueProjector, RangeAndNull) {
  Rng rng(5);
  Matrix U = rng.gaussian(5, 2), V = rng.gaussian(5, 2);
  Matrix P = oblique_projector(U, V.adjoint());
  EXPECT_TRUE(oblique_projector_check(P, U, V.adjoint()).overall());
}

TEST(UniqueProjectorSolution, BothSides) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    auto in = draw(rng);
    EXPECT_TRUE(check_unique_projector_solution(in.p, in.X, weak_mpd(in.p, in.X).value, {}, Side::left).overall());
    EXPECT_TRUE(check_unique_projector_solution(in.p, in.Z, weak_dmp(in.p, in.Z).value, {}, Side::right).overall());
  }
}

TEST(MpdDmpExpressions, Random) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    auto in = draw(rng);
    EXPECT_TRUE(check_mpd_dmp_expressions(in.p, in.X, in.Z).overall());
  }
}

TEST(OneInverseFamily, ZeroParameterGivesPseudoinverse) {
  auto p = ex1();
  auto [Q, r] = one_inverse_family(p, Matrix::Zero(4, 5), fixtures::ex1_member(1, 2));
  EXPECT_LT(rel_diff(Q, mp_inverse(p.B())), 1e-14);
  EXPECT_TRUE(r.overall());
}

TEST(OneInverseFamily, RandomParameterOnFixture) {
  auto p = ex1();
  Rng rng(8);
  auto [Q, r] = one_inverse_family(p, rng.gaussian(4, 5), fixtures::ex1_member(1, 2));
  EXPECT_TRUE(r.overall());
  ASSERT_EQ(r.informational.size(), 1u);
  EXPECT_EQ(r.informational[0].label, "BQB=B");
}

TEST(OneInverseFamily, AnnihilatedParameter) {
  auto p = ex1();
  Matrix K = matrix_power(p.BW(), p.k_bw());
  Rng rng(9);
  Matrix U = rng.gaussian(4, 5) * projector_onto(K);
  auto [Q, r] = one_inverse_family(p, U, fixtures::ex1_member(1, 2));
  EXPECT_LT(rel_diff(Q, mp_inverse(p.B())), 1e-12);
}

TEST(OneInverseFamily, RightRandom) {
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    auto in = draw(rng);
    EXPECT_TRUE(one_inverse_family(in.p, rng.gaussian(in.p.n(), in.p.m()), in.X).second.overall());
    EXPECT_TRUE(one_inverse_family_right(in.p, rng.gaussian(in.p.n(), in.p.m()), in.Z).second.overall());
  }
}

TEST(MpdGeneralSolution, Random) {
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    auto in = draw(rng);
    EXPECT_TRUE(mpd_general_solution(in.p, in.X, rng.gaussian(in.p.n(), in.p.m())).second.overall());
  }
}
