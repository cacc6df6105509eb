#include <gtest/gtest.h>

#include "wdrazin/decomp.hpp"
#include "wdrazin/fixtures.hpp"
#include "wdrazin/random.hpp"

using namespace wdrazin;
using fixtures::from_rows;

namespace {

WeightedPair ex1() { return WeightedPair(fixtures::A1(), fixtures::W1()); }

double worst(const ResidualMap& res) {
  double w = 0;
  for (const auto& [label, v] : res) w = std::max(w, v);
  return w;
}

}  // namespace

TEST(Decompose, UnweightedInvertibleHasFullCore) {
  Rng rng(1);
  Matrix B = rng.well_conditioned(4);
  auto d = weighted_core_ep_decompose(WeightedPair(B, identity(4)));
  EXPECT_EQ(d.q, 4);
  EXPECT_EQ(d.B3.size(), 0);
  EXPECT_EQ(d.W3.size(), 0);
  EXPECT_LT(rel_diff(d.B1, d.M.adjoint() * B * d.N), 1e-12);
}

TEST(Decompose, FixtureReassembles) {
  auto p = ex1();
  auto d = weighted_core_ep_decompose(p);
  EXPECT_EQ(d.q, 1);
  EXPECT_LT(worst(d.residuals), 1e-10);
  auto [a, b] = trailing_indices(d);
  EXPECT_EQ(a, 3);
  EXPECT_EQ(a, p.k_bw());
  EXPECT_EQ(b, p.k_wb());
}

TEST(Decompose, NilpotentProductHasEmptyCore) {
  Matrix B = from_rows({{0, 1}, {0, 0}});
  auto d = weighted_core_ep_decompose(WeightedPair(B, identity(2)));
  EXPECT_EQ(d.q, 0);
  EXPECT_EQ(d.B1.size(), 0);
  EXPECT_LT(worst(d.residuals), 1e-12);
}

TEST(Decompose, RandomPairsReassembleWithMatchingIndices) {
  Rng rng(2);
  for (int t = 0; t < 40; ++t) {
    auto in = random_pair(rng);
    WeightedPair p(in.B, in.W);
    auto d = weighted_core_ep_decompose(p);
    EXPECT_EQ(d.q, in.q);
    EXPECT_LT(worst(d.residuals), 1e-10);
    auto [a, b] = trailing_indices(d);
    EXPECT_EQ(a, p.k_bw());
    EXPECT_EQ(b, p.k_wb());
  }
}

TEST(MpViaBlocks, UnweightedInvertible) {
  Rng rng(3);
  Matrix B = rng.well_conditioned(3);
  auto d = weighted_core_ep_decompose(WeightedPair(B, identity(3)));
  EXPECT_LT(rel_diff(mp_via_blocks(d), B.inverse()), 1e-11);
}

TEST(MpViaBlocks, FixtureAgreesWithSvd) {
  auto d = weighted_core_ep_decompose(ex1());
  EXPECT_LT(rel_diff(mp_via_blocks(d), mp_inverse(fixtures::A1())), 1e-10);
}

TEST(MpViaBlocks, DiagonalWithZeroSingularValue) {
  Matrix B = from_rows({{2, 0, 0}, {0, 0, 0}, {0, 0, 0.5}});
  auto d = weighted_core_ep_decompose(WeightedPair(B, identity(3)));
  EXPECT_LT(rel_diff(mp_via_blocks(d), from_rows({{0.5, 0, 0}, {0, 0, 0}, {0, 0, 2}})), 1e-12);
}

TEST(MpViaBlocks, RandomPairs) {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    auto in = random_pair(rng);
    auto d = weighted_core_ep_decompose(WeightedPair(in.B, in.W));
    EXPECT_LT(rel_diff(mp_via_blocks(d, {1e-10, 1e-8}), mp_inverse(in.B)), 1e-8);
  }
}

TEST(WeakMpdCanonical, FixtureMember) {
  auto p = ex1();
  auto d = weighted_core_ep_decompose(p);
  Matrix X = fixtures::ex1_member(1, 2);
  Matrix Y = weak_mpd_canonical(d, X);
  EXPECT_LT(rel_diff(Y, weak_mpd(p, X).value), 1e-10);
  EXPECT_LT(rel_diff(Y, fixtures::first_row(4, {1, 0, 1, 0, 1})), 1e-10);
}

TEST(WeakMpdCanonical, UnweightedInvertible) {
  Rng rng(5);
  Matrix B = rng.well_conditioned(3);
  WeightedPair p(B, identity(3));
  auto d = weighted_core_ep_decompose(p);
  EXPECT_LT(rel_diff(weak_mpd_canonical(d, B.inverse()), B.inverse()), 1e-11);
}

TEST(WeakMpdCanonical, RandomFamilyMembers) {
  Rng rng(6);
  for (int t = 0; t < 30; ++t) {
    auto in = random_pair(rng, 6, 2);
    WeightedPair p(in.B, in.W);
    auto f = mrwwd_family(p);
    Matrix X = f.member(rng.gaussian(f.param_rows(), f.param_cols()));
    auto d = weighted_core_ep_decompose(p);
    EXPECT_LT(rel_diff(weak_mpd_canonical(d, X, {1e-10, 1e-8}), weak_mpd(p, X).value), 1e-8);
  }
}
