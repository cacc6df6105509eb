#pragma once

#include "io.hpp"
#include "runner.hpp"

#include <cstdint>
#include <functional>
#include <ostream>
#include <tuple>
#include <string>
#include <vector>

namespace wdrazin {

namespace detail {

inline ToleranceConfig with_atol(double a) {
  ToleranceConfig t;
  t.residual_atol = a;
  return t;
}

inline double max_abs(const Matrix& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace detail

// entrywise error of B^{D,W} for the first example and ind(A1 W1) = 3
inline VerificationReport criterion_ex1_drazin(std::uint64_t, const ToleranceConfig& tol = {}) {
  VerificationReport r("ex1-w-drazin", detail::with_atol(1e-12));
  WeightedPair p(fixtures::A1(), fixtures::W1(), tol);
  Matrix expect = fixtures::first_row(5, {1, 1, 0, 2});
  r.check("A1^{D,W} first row (1,1,0,2) entrywise", detail::max_abs(w_drazin(p, tol).value - expect));
  return r;
}

inline VerificationReport criterion_ex1_index(std::uint64_t, const ToleranceConfig& tol = {}) {
  VerificationReport r("ex1-index", tol);
  r.check_rank("ind(A1W1)=3", index_of(fixtures::A1() * fixtures::W1(), tol), 3);
  return r;
}

// members (1,x1,0,2) give Y with first row (1,0,x1,0,1); x1 = 1 is the W-weighted MPD inverse
inline VerificationReport criterion_ex1_weak_mpd(std::uint64_t, const ToleranceConfig& tol = {}) {
  VerificationReport r("ex1-weak-mpd", detail::with_atol(1e-10));
  WeightedPair p(fixtures::A1(), fixtures::W1(), tol);
  for (double x1 : {-1.0, 0.0, 1.0}) {
    std::string tag = "x1=" + std::to_string(int(x1)) + ": ";
    Matrix X = fixtures::ex1_member(x1, 2);
    Matrix Y = weak_mpd(p, X, tol).value;
    r.check(tag + "Y first row (1,0,x1,0,1)", detail::max_abs(Y - fixtures::first_row(4, {1, 0, x1, 0, 1})));
    r.absorb(check_weak_mpd_system(p, X, Y, tol), tag);
    if (x1 == 1.0) r.check_equal(tag + "Y = A1^{+,D,W}", Y, w_mpd(p, tol).value);
  }
  return r;
}

// the four displayed products of the second example, compared bit for bit
inline VerificationReport criterion_ex2_products(std::uint64_t seed, const ToleranceConfig& tol = {}) {
  VerificationReport r("ex2-order-laws", tol);
  Rng rng(seed);
  for (int draw = 0; draw < 10; ++draw) {
    double v[6];
    for (double& x : v) x = rng.integer(-2, 2);
    auto [y1, y2, z1, z2, z3, u1] = std::tuple(v[0], v[1], v[2], v[3], v[4], v[5]);
    auto c = ex2_case(y1, y2, z1, z2, z3, u1, tol);
    const Matrix &W = c.W, &Y = c.get("rev.Y3"), &Z = c.get("rev.Z2"), &U = c.get("trev.U1");
    std::string tag = "draw " + std::to_string(draw) + ": ";
    auto exact = [&](const std::string& l, const Matrix& got, const Matrix& want) {
      r.check(tag + l, got == want ? 0.0 : 1.0 + detail::max_abs(got - want), 0.0);
    };
    exact("Y3WZ2=(1,z1,z2,z3)", Y * W * Z, fixtures::first_row(5, {1, z1, z2, z3}));
    exact("Z2WY3=(1,y1,0,y2)", Z * W * Y, fixtures::first_row(5, {1, y1, 0, y2}));
    exact("U1WY4WZ3=(1,z1,z2,z3)", U * W * Y * W * Z, fixtures::first_row(5, {1, z1, z2, z3}));
    exact("Z3WY4WU1=(1,u1,0,0)", Z * W * Y * W * U, fixtures::first_row(5, {1, u1, 0, 0}));
  }
  return r;
}

// constructed members pass every item, perturbed ones fail every item (2.1/2.8) or at least one (3.3/3.4)
inline VerificationReport criterion_characterizations(std::uint64_t seed, const ToleranceConfig& tol = {}) {
  VerificationReport r("characterization-coherence", tol);
  Rng rng(seed);
  for (int t = 0; t < 100; ++t) {
    auto in = detail::random_instance(rng, tol);
    const WeightedPair& p = in.p;
    std::string tag = "[" + std::to_string(t) + "] ";
    auto verdict = [&](const std::string& l, bool ok) { r.check(tag + l, ok ? 0.0 : 1.0, 0.5); };
    Matrix Y = weak_mpd(p, in.X, tol).value, Y1 = weak_dmp(p, in.Z, tol).value;
    auto a = check_mrwwd(p, in.X, tol), b = check_mrwwd_right(p, in.Z, tol);
    verdict("2.1 member: all items pass", a.overall() && a.items_agree());
    verdict("2.8 member: all items pass", b.overall() && b.items_agree());
    Matrix dX = 1e-3 * rng.gaussian(p.m(), p.n());
    auto an = check_mrwwd(p, in.X + dX, tol), bn = check_mrwwd_right(p, in.Z + dX, tol);
    verdict("2.1 perturbed: all items fail", !an.item_pass(an.items().front().first) && an.items_agree());
    verdict("2.8 perturbed: all items fail", !bn.item_pass(bn.items().front().first) && bn.items_agree());
    verdict("3.3 constructed Y: seven sets pass", check_mpd_characterizations(p, in.X, Y, tol).overall());
    verdict("3.4 constructed Y1: seven sets pass", check_dmp_characterizations(p, in.Z, Y1, tol).overall());
    Matrix dY = 1e-3 * rng.gaussian(p.n(), p.m());
    verdict("3.3 Y+dY: some set fails", !check_mpd_characterizations(p, in.X, Y + dY, tol).overall());
    verdict("3.4 Y1+dY: some set fails", !check_dmp_characterizations(p, in.Z, Y1 + dY, tol).overall());
    Matrix Bp = mp_inverse(p.B(), tol);
    Matrix kerY = (identity(p.n()) - Bp * p.B()) * dY;
    Matrix kerY1 = dY * (identity(p.m()) - p.B() * Bp);
    if (detail::max_abs(kerY) > 1e-6)
      verdict("3.3 Y+(I-B^+B)G: some set fails", !check_mpd_characterizations(p, in.X, Y + kerY, tol).overall());
    if (detail::max_abs(kerY1) > 1e-6)
      verdict("3.4 Y1+G(I-BB^+): some set fails", !check_dmp_characterizations(p, in.Z, Y1 + kerY1, tol).overall());
  }
  return r;
}

inline VerificationReport criterion_projectors(std::uint64_t seed, const ToleranceConfig& tol = {}) {
  ToleranceConfig t = detail::with_atol(1e-8);
  t.rank_rtol = tol.rank_rtol;
  VerificationReport r("projector-lemmas", t);
  Rng rng(seed);
  for (int i = 0; i < 100; ++i) {
    auto in = detail::random_instance(rng, t);
    std::string tag = "[" + std::to_string(i) + "] ";
    r.absorb(check_projectors(in.p, in.X, weak_mpd(in.p, in.X, t).value, t), tag + "3.6 ");
    r.absorb(check_projectors_right(in.p, in.Z, weak_dmp(in.p, in.Z, t).value, t), tag + "3.7 ");
  }
  return r;
}

inline VerificationReport criterion_decomposition(std::uint64_t seed, const ToleranceConfig& tol = {}) {
  VerificationReport r("decomposition", tol);
  Rng rng(seed);
  ToleranceConfig t8 = detail::with_atol(1e-8);
  t8.rank_rtol = tol.rank_rtol;
  for (int i = 0; i < 100; ++i) {
    auto in = detail::random_instance(rng, tol);
    std::string tag = "[" + std::to_string(i) + "] ";
    auto d = weighted_core_ep_decompose(in.p, t8);
    for (const auto& [label, v] : d.residuals) r.check(tag + label, v, 1e-10);
    auto [a, b] = trailing_indices(d, tol);
    r.check_rank(tag + "ind(B3W3)=ind(BW)", a, in.p.k_bw());
    r.check_rank(tag + "ind(W3B3)=ind(WB)", b, in.p.k_wb());
    Matrix direct = weak_mpd(in.p, in.X, tol).value;
    try {
      r.check(tag + "canonical Y = weak MPD", rel_diff(weak_mpd_canonical(d, in.X, t8), direct), 1e-8);
    } catch (const FormulaDiscrepancyError& e) {
      r.check(tag + "canonical Y = weak MPD", rel_diff(e.formula, e.direct), 1e-8);
    }
    try {
      r.check(tag + "block B^+ = SVD B^+", rel_diff(mp_via_blocks(d, t8), mp_inverse(in.p.B(), tol)), 1e-8);
    } catch (const FormulaDiscrepancyError& e) {
      r.check(tag + "block B^+ = SVD B^+", rel_diff(e.formula, e.direct), 1e-8);
    }
  }
  return r;
}

// closed family E = a(BW)^k B with X = Z = B^{D,W}; E = 0 must give equality in the bounds
inline VerificationReport criterion_perturbation(std::uint64_t seed, const ToleranceConfig& tol = {}) {
  ToleranceConfig t = detail::with_atol(1e-8);
  t.rank_rtol = tol.rank_rtol;
  VerificationReport r("perturbation", t);
  Rng rng(seed);
  for (int i = 0; i < 50; ++i) {
    auto inst = random_pair(rng);
    WeightedPair p(inst.B, inst.W, tol);
    Matrix V = w_drazin(p, tol).value;
    std::string tag = "[" + std::to_string(i) + "] ";
    auto sl = admissible_perturbation(p, V, 1.0, seed + std::uint64_t(i), tol, Side::left);
    auto sr = admissible_perturbation(p, V, 1.0, seed + std::uint64_t(i), tol, Side::right);
    r.absorb(perturbed_mrwwd(sl, t).second, tag + "3.17 ");
    r.absorb(mpd_perturbation(sl, t), tag + "3.19 ");
    r.absorb(dmp_perturbation(sr, t), tag + "3.20 ");
    Matrix E0 = Matrix::Zero(p.m(), p.n());
    for (auto side : {Side::left, Side::right}) {
      auto s0 = make_scenario(p, V, E0, side, tol);
      auto rep = side == Side::left ? mpd_perturbation(s0, t) : dmp_perturbation(s0, t);
      for (const auto& c : rep.informational)
        if (c.label.find("slack") != std::string::npos)
          r.check(tag + "E=0 " + c.label, std::abs(c.residual), 1e-12);
    }
  }
  r.informational.clear();
  return r;
}

// W = I: w_dmp = B^D B B^+, w_mpd = B^+ B B^D, w_core_ep = core_ep
inline VerificationReport criterion_reductions(std::uint64_t seed, const ToleranceConfig& tol = {}) {
  VerificationReport r("reductions", detail::with_atol(1e-9));
  Rng rng(seed);
  for (int i = 0; i < 50; ++i) {
    Matrix B = random_square(rng);
    WeightedPair p(B, identity(B.rows()), tol);
    Matrix D = drazin(B, tol).value, Bp = mp_inverse(B, tol);
    std::string tag = "[" + std::to_string(i) + "] ";
    r.check_equal(tag + "w_dmp = B^D B B^+", w_dmp(p, tol).value, D * B * Bp);
    r.check_equal(tag + "w_mpd = B^+ B B^D", w_mpd(p, tol).value, Bp * B * D);
    r.check_equal(tag + "w_core_ep = core_ep", w_core_ep(p, tol).value, core_ep(B, tol).value);
  }
  return r;
}

struct SuiteItem {
  std::string name;
  std::function<VerificationReport(std::uint64_t)> run;
};

inline std::vector<SuiteItem> suite_battery() {
  std::vector<SuiteItem> items = {
      {"ex1-w-drazin", [](std::uint64_t s) { return criterion_ex1_drazin(s); }},
      {"ex1-weak-mpd", [](std::uint64_t s) { return criterion_ex1_weak_mpd(s); }},
      {"ex1-index", [](std::uint64_t s) { return criterion_ex1_index(s); }},
      {"ex2-order-laws", [](std::uint64_t s) { return criterion_ex2_products(s); }},
      {"characterization-coherence", [](std::uint64_t s) { return criterion_characterizations(s); }},
      {"projector-lemmas", [](std::uint64_t s) { return criterion_projectors(s); }},
      {"decomposition", [](std::uint64_t s) { return criterion_decomposition(s); }},
      {"perturbation", [](std::uint64_t s) { return criterion_perturbation(s); }},
      {"reductions", [](std::uint64_t s) { return criterion_reductions(s); }},
  };
  for (const auto& id : registered_ids()) {
    items.push_back({id + " random", [id](std::uint64_t s) {
                       RunOptions o;
                       o.random = true;
                       o.seed = s;
                       o.trials = 3;
                       return run_verify(id, o);
                     }});
  }
  return items;
}

// one JSON line per item, then the summary line
inline bool run_suite(std::uint64_t seed, std::ostream& out) {
  auto items = suite_battery();
  int passed = 0;
  std::string first_failure;
  for (const auto& item : items) {
    VerificationReport r;
    try {
      r = item.run(seed);
    } catch (const std::exception& e) {
      r = VerificationReport(item.name, ToleranceConfig{});
      r.check(std::string("exception: ") + e.what(), 1.0, 0.0);
    }
    out << report_json(r, {seed, {}}) << "\n";
    if (r.overall()) {
      ++passed;
    } else if (first_failure.empty()) {
      const Condition* worst = nullptr;
      for (const auto& c : r.conditions)
        if (!c.pass && (!worst || c.residual > worst->residual)) worst = &c;
      first_failure = item.name + ": " + (worst ? worst->label + " residual " + json_real(worst->residual) : "");
    }
  }
  int total = int(items.size());
  if (passed == total)
    out << "SUITE PASS " << passed << "/" << total << "\n";
  else
    out << "SUITE FAIL " << passed << "/" << total << " first failure " << first_failure << "\n";
  return passed == total;
}

}  // namespace wdrazin
