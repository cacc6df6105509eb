#include <gtest/gtest.h>

#include "wdrazin/fixtures.hpp"
#include "wdrazin/perturb.hpp"
#include "wdrazin/random.hpp"

using namespace wdrazin;

namespace {

WeightedPair ex1() { return WeightedPair(fixtures::A1(), fixtures::W1()); }

const ToleranceConfig t8{1e-10, 1e-8};

}  // namespace

TEST(AdmissiblePerturbation, FixtureScenarioHasAllFlags) {
  auto p = ex1();
  auto s = admissible_perturbation(p, fixtures::ex1_member(1, 2), 0.1, 1);
  EXPECT_TRUE(s.flags_hold());
  EXPECT_EQ(s.alpha, 0.1);
  EXPECT_LT(rel_diff(s.E, 0.1 * matrix_power(p.BW(), p.k()) * p.B()), 1e-15);
}

TEST(AdmissiblePerturbation, HugeAlphaIsRescaled) {
  auto p = ex1();
  Matrix X = fixtures::ex1_member(1, 2);
  auto s = admissible_perturbation(p, X, 1e3, 1);
  EXPECT_LT(s.alpha, 1e3);
  EXPECT_LE(spectral_norm(p.W() * s.E * p.W() * X), 0.5);
  EXPECT_THROW(admissible_perturbation(p, X, 1e30, 1, {}, Side::left, PerturbationFamily::closed, 3),
               InfeasibleError);
}

TEST(AdmissiblePerturbation, InvertibleCaseIsClassical) {
  Rng rng(1);
  Matrix B = rng.well_conditioned(3);
  WeightedPair p(B, identity(3));
  auto s = admissible_perturbation(p, B.inverse(), 0.1, 1);
  EXPECT_LT(rel_diff(s.E, s.alpha * B), 1e-14);
}

TEST(AdmissiblePerturbation, RejectsNonMember) {
  EXPECT_THROW(admissible_perturbation(ex1(), Matrix::Zero(5, 4), 0.1, 1), HypothesisError);
}

TEST(PerturbedMrwwd, ZeroPerturbationIsTrivial) {
  auto p = ex1();
  Matrix X = fixtures::ex1_member(1, 2);
  auto s = make_scenario(p, X, Matrix::Zero(5, 4), Side::left);
  auto [Xp, r] = perturbed_mrwwd(s);
  EXPECT_LT(rel_diff(Xp, X), 1e-15);
  EXPECT_TRUE(r.overall());
}

TEST(PerturbedMrwwd, FixtureScenario) {
  auto p = ex1();
  auto s = admissible_perturbation(p, fixtures::ex1_member(1, 2), 0.1, 1);
  EXPECT_TRUE(perturbed_mrwwd(s, t8).second.overall());
}

TEST(PerturbedMrwwd, RandomEBreaksIdentities) {
  auto p = ex1();
  Rng rng(2);
  auto s = make_scenario(p, fixtures::ex1_member(1, 2), 0.1 * rng.gaussian(5, 4), Side::left);
  EXPECT_FALSE(s.flags_hold());
  EXPECT_FALSE(perturbed_mrwwd(s, t8).second.overall());
}

TEST(MpdPerturbation, ZeroPerturbationGivesEqualityInBounds) {
  auto p = ex1();
  auto s = make_scenario(p, fixtures::ex1_member(1, 2), Matrix::Zero(5, 4), Side::left);
  auto r = mpd_perturbation(s, t8);
  EXPECT_TRUE(r.overall());
  int slacks = 0;
  for (const auto& c : r.informational)
    if (c.label.find("slack") != std::string::npos) {
      EXPECT_LE(std::abs(c.residual), 1e-12) << c.label;
      ++slacks;
    }
  EXPECT_EQ(slacks, 2);
}

TEST(MpdPerturbation, FixtureScenario) {
  auto p = ex1();
  auto s = admissible_perturbation(p, fixtures::ex1_member(1, 2), 0.05, 1);
  EXPECT_TRUE(mpd_perturbation(s, t8).overall());
}

TEST(MpdPerturbation, ViolatedHypothesisIsRefusedOrFails) {
  auto p = ex1();
  Rng rng(3);
  auto s = make_scenario(p, fixtures::ex1_member(1, 2), 0.05 * rng.gaussian(5, 4), Side::left);
  bool refused = false, failed = false;
  try {
    failed = !mpd_perturbation(s, t8).overall();
  } catch (const HypothesisError&) {
    refused = true;
  }
  EXPECT_TRUE(refused || failed);
}

TEST(DmpPerturbation, ZeroAndFixture) {
  WeightedPair p(fixtures::A2(), fixtures::W2());
  Matrix V = w_drazin(p).value;
  EXPECT_TRUE(dmp_perturbation(make_scenario(p, V, Matrix::Zero(5, 4), Side::right), t8).overall());
  auto s = admissible_perturbation(p, V, 0.05, 1, {}, Side::right);
  EXPECT_TRUE(dmp_perturbation(s, t8).overall());
  EXPECT_TRUE(perturbed_mrwwd_right(s, t8).second.overall());
}

TEST(Perturbation, RandomClosedFamily) {
  Rng rng(4);
  for (int t = 0; t < 25; ++t) {
    auto in = random_pair(rng);
    WeightedPair p(in.B, in.W);
    Matrix V = w_drazin(p).value;
    auto sl = admissible_perturbation(p, V, 1.0, 100 + t);
    auto sr = admissible_perturbation(p, V, 1.0, 100 + t, {}, Side::right);
    EXPECT_TRUE(perturbed_mrwwd(sl, t8).second.overall());
    EXPECT_TRUE(mpd_perturbation(sl, t8).overall());
    EXPECT_TRUE(drazin_case_perturbation(sl, t8).overall());
    EXPECT_TRUE(perturbed_mrwwd_right(sr, t8).second.overall());
    EXPECT_TRUE(dmp_perturbation(sr, t8).overall());
    EXPECT_TRUE(drazin_case_perturbation_dual(sr, t8).overall());
  }
}

TEST(Perturbation, RandomizedFamilyWithGeneralMembers) {
  Rng rng(5);
  for (int t = 0; t < 25; ++t) {
    auto in = random_pair(rng);
    WeightedPair p(in.B, in.W);
    auto fl = mrwwd_family(p);
    auto fr = mrwwd_right_family(p);
    Matrix X = fl.member(rng.gaussian(fl.param_rows(), fl.param_cols()));
    Matrix Z = fr.member(rng.gaussian(fr.param_rows(), fr.param_cols()));
    auto sl = admissible_perturbation(p, X, 1.0, 200 + t, {}, Side::left, PerturbationFamily::randomized);
    auto sr = admissible_perturbation(p, Z, 1.0, 200 + t, {}, Side::right, PerturbationFamily::randomized);
    EXPECT_TRUE(perturbed_mrwwd(sl, t8).second.overall());
    EXPECT_TRUE(mpd_perturbation(sl, t8).overall());
    EXPECT_TRUE(perturbed_mrwwd_right(sr, t8).second.overall());
    EXPECT_TRUE(dmp_perturbation(sr, t8).overall());
  }
}
