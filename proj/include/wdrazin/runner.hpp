#pragma once

#include "decomp.hpp"
#include "fixtures.hpp"
#include "orderlaw.hpp"
#include "perturb.hpp"
#include "random.hpp"
#include "verify.hpp"
#include "winv.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wdrazin {

inline const std::vector<std::string>& registered_ids() {
  static const std::vector<std::string> ids = {
      "thm2.1",  "thm2.8",  "thm3.1",  "lem3.2",  "thm3.3",  "thm3.4",      "thm3.5",     "lem3.6",
      "lem3.7",  "thm3.8",  "lem3.10", "thm3.12", "lem3.13", "lem3.14",     "lem3.15",    "thm3.16",
      "thm3.17", "thm3.18", "thm3.19", "thm3.20", "cor-mpd", "cor-dmp",     "thm3.25",    "thm3.26",
      "thm3.27", "thm3.28", "thm3.29", "thm3.30", "thm3.31", "thm3.32",     "thm3.30-rol", "mateq-pair",
      "mateq-triple"};
  return ids;
}

inline bool is_registered(const std::string& id) {
  const auto& v = registered_ids();
  return std::find(v.begin(), v.end(), id) != v.end();
}

inline bool is_order_law_id(const std::string& id) {
  static const std::vector<std::string> v = {"thm3.25", "thm3.26", "thm3.27", "thm3.28",     "thm3.29",
                                             "thm3.30", "thm3.31", "thm3.32", "thm3.30-rol", "mateq-pair",
                                             "mateq-triple"};
  return std::find(v.begin(), v.end(), id) != v.end();
}

struct RunOptions {
  std::string fixture;  // "ex1" or "ex2" when not random
  double x1 = 1, x2 = 2;
  double y1 = 0, y2 = 0, z1 = 0, z2 = 0, z3 = 0, u1 = 0;
  bool random = false;
  std::uint64_t seed = 1;
  int trials = 1;
};

// one pair with a left member X and a right member Z
struct PairInstance {
  WeightedPair p;
  Matrix X, Z;
  bool fixture = false;
};

namespace detail {

inline Matrix family_draw(const WeakDrazinFamily& f, Rng& rng) {
  return f.member(rng.gaussian(f.param_rows(), f.param_cols()));
}

inline PairInstance fixture_pair(const RunOptions& o, const ToleranceConfig& tol) {
  if (o.fixture == "ex1") {
    WeightedPair p(fixtures::A1(), fixtures::W1(), tol);
    return {p, fixtures::ex1_member(o.x1, o.x2), mrwwd_right_family(p, tol).particular, true};
  }
  if (o.fixture == "ex2") {
    WeightedPair p(fixtures::A2(), fixtures::W2(), tol);
    return {p, fixtures::ex2_Z(o.z1, o.z2, o.z3), mrwwd_right_family(p, tol).particular, true};
  }
  throw std::invalid_argument("unknown fixture '" + o.fixture + "' (expected ex1 or ex2)");
}

inline PairInstance random_instance(Rng& rng, const ToleranceConfig& tol) {
  auto inst = random_pair(rng);
  WeightedPair p(inst.B, inst.W, tol);
  Matrix X = family_draw(mrwwd_family(p, tol), rng);
  Matrix Z = family_draw(mrwwd_right_family(p, tol), rng);
  return {p, X, Z, false};
}

inline VerificationReport from_residuals(const std::string& id, const ResidualMap& res, const ToleranceConfig& tol) {
  VerificationReport r(id, tol);
  for (const auto& [label, v] : res) r.check(label, v);
  return r;
}

inline VerificationReport decomposition_report(const WeightedPair& p, const ToleranceConfig& tol) {
  VerificationReport r("lem3.15", tol);
  auto d = weighted_core_ep_decompose(p, tol);
  for (const auto& [label, v] : d.residuals) r.check(label, v);
  auto [a, b] = trailing_indices(d, tol);
  r.check_rank("ind(B3W3)=ind(BW)", a, p.k_bw());
  r.check_rank("ind(W3B3)=ind(WB)", b, p.k_wb());
  try {
    Matrix Bp = mp_via_blocks(d, tol);
    r.check_equal("block B^+ = SVD B^+", Bp, mp_inverse(p.B(), tol));
  } catch (const FormulaDiscrepancyError& e) {
    r.check("block B^+ = SVD B^+", rel_diff(e.formula, e.direct));
  }
  return r;
}

inline VerificationReport canonical_report(const WeightedPair& p, const Matrix& X, const ToleranceConfig& tol) {
  VerificationReport r("thm3.16", tol);
  auto d = weighted_core_ep_decompose(p, tol);
  Matrix direct = weak_mpd(p, X, tol).value;
  try {
    r.check_equal("canonical Y = B^+BWXW", weak_mpd_canonical(d, X, tol), direct);
  } catch (const FormulaDiscrepancyError& e) {
    r.check("canonical Y = B^+BWXW", rel_diff(e.formula, e.direct));
  }
  return r;
}

inline VerificationReport run_pair_id(const std::string& id, const PairInstance& in, Rng& rng, std::uint64_t seed,
                                      const ToleranceConfig& tol) {
  const WeightedPair& p = in.p;
  const Matrix &X = in.X, &Z = in.Z;
  auto free_nm = [&]() -> Matrix {
    return in.fixture ? Matrix(Matrix::Ones(p.n(), p.m())) : rng.gaussian(p.n(), p.m());
  };
  if (id == "thm2.1") return check_mrwwd(p, X, tol);
  if (id == "thm2.8") return check_mrwwd_right(p, Z, tol);
  if (id == "thm3.1") return check_weak_mpd_system(p, X, weak_mpd(p, X, tol).value, tol);
  if (id == "lem3.2") return check_weak_dmp_system(p, Z, weak_dmp(p, Z, tol).value, tol);
  if (id == "thm3.3") return check_mpd_characterizations(p, X, weak_mpd(p, X, tol).value, tol);
  if (id == "thm3.4") return check_dmp_characterizations(p, Z, weak_dmp(p, Z, tol).value, tol);
  if (id == "thm3.5") return check_wdrazin_specialization(p, w_mpd(p, tol).value, tol);
  if (id == "lem3.6") return check_projectors(p, X, weak_mpd(p, X, tol).value, tol);
  if (id == "lem3.7") return check_projectors_right(p, Z, weak_dmp(p, Z, tol).value, tol);
  if (id == "thm3.8") {
    auto r = check_unique_projector_solution(p, X, weak_mpd(p, X, tol).value, tol, Side::left);
    r.absorb(check_unique_projector_solution(p, Z, weak_dmp(p, Z, tol).value, tol, Side::right), "mirror: ");
    return r;
  }
  if (id == "lem3.10") return check_mpd_dmp_expressions(p, X, Z, tol);
  if (id == "thm3.12") return one_inverse_family(p, free_nm(), X, tol).second;
  if (id == "lem3.13") return one_inverse_family_right(p, free_nm(), Z, tol).second;
  if (id == "lem3.14") return mpd_general_solution(p, X, free_nm(), tol).second;
  if (id == "lem3.15") return decomposition_report(p, tol);
  if (id == "thm3.16") return canonical_report(p, X, tol);

  const double alpha = in.fixture ? 0.1 : 1.0;
  Matrix V = w_drazin(p, tol).value;
  if (id == "thm3.17" || id == "thm3.19" || id == "cor-mpd") {
    Matrix Xs = (in.fixture && id != "cor-mpd") ? X : V;
    auto s = admissible_perturbation(p, Xs, alpha, seed, tol, Side::left);
    if (id == "thm3.17") return perturbed_mrwwd(s, tol).second;
    if (id == "thm3.19") return mpd_perturbation(s, tol);
    return drazin_case_perturbation(s, tol);
  }
  if (id == "thm3.18" || id == "thm3.20" || id == "cor-dmp") {
    auto s = admissible_perturbation(p, V, alpha, seed, tol, Side::right);
    if (id == "thm3.18") return perturbed_mrwwd_right(s, tol).second;
    if (id == "thm3.20") return dmp_perturbation(s, tol);
    return drazin_case_perturbation_dual(s, tol);
  }
  throw std::invalid_argument("unknown theorem id " + id);
}

inline VerificationReport run_case_id(const std::string& id, const OrderLawCase& c, Rng& rng, bool fixture,
                                      const ToleranceConfig& tol) {
  if (id == "thm3.25") return reverse_order_weak(c, tol);
  if (id == "thm3.26") return forward_order_weak(c, tol);
  if (id == "thm3.27") return reverse_order_minimal(c, tol);
  if (id == "thm3.28") return forward_order_minimal(c, tol);
  if (id == "thm3.29") return wdrazin_order_corollaries(c, tol);
  if (id == "thm3.30") return triple_wdrazin_corollaries(c, tol);
  if (id == "thm3.31") return triple_reverse(c, tol);
  if (id == "thm3.32") return triple_forward(c, tol);
  if (id == "thm3.30-rol") return reverse_order_weak_mpd(c, tol);
  if (id == "mateq-pair" || id == "mateq-triple") {
    const Eigen::Index m = c.A.rows(), n = c.A.cols();
    ProductKind kind = id == "mateq-pair" ? ProductKind::pair : ProductKind::triple;
    VerificationReport r(id, tol);
    for (auto dir : {Direction::reverse, Direction::forward}) {
      Matrix R = fixture ? c.W : rng.gaussian(n, m);
      Matrix Zf = fixture ? Matrix(Matrix::Zero(n, m)) : rng.gaussian(n, m);
      r.absorb(matrix_equation_solution(c, R, kind, dir, Zf, tol).second,
               dir == Direction::reverse ? "reverse: " : "forward: ");
    }
    return r;
  }
  throw std::invalid_argument("unknown theorem id " + id);
}

inline VerificationReport run_once(const std::string& id, const RunOptions& o, std::uint64_t seed,
                                   const ToleranceConfig& tol) {
  Rng rng(seed);
  if (is_order_law_id(id)) {
    if (o.random) {
      if (id == "thm3.30-rol") return run_case_id(id, rol_case_generator(rng.integer(2, 6), seed, tol), rng, false, tol);
      Eigen::Index m = rng.integer(1, 6), n = rng.integer(1, 6);
      return run_case_id(id, commuting_case_generator(m, n, seed, true, tol), rng, false, tol);
    }
    if (o.fixture != "ex2") throw std::invalid_argument("order-law checks need --fixture ex2 or --random");
    return run_case_id(id, ex2_case(o.y1, o.y2, o.z1, o.z2, o.z3, o.u1, tol), rng, true, tol);
  }
  PairInstance in = o.random ? random_instance(rng, tol) : fixture_pair(o, tol);
  return run_pair_id(id, in, rng, seed, tol);
}

}  // namespace detail

// trials use seeds seed, seed+1, ...; with several trials labels carry a "[t] " prefix
inline VerificationReport run_verify(const std::string& id, const RunOptions& o, const ToleranceConfig& tol = {}) {
  if (!is_registered(id)) throw std::invalid_argument("unknown theorem id " + id);
  if (!o.random || o.trials <= 1) return detail::run_once(id, o, o.seed, tol);
  VerificationReport all(id, tol);
  for (int t = 0; t < o.trials; ++t)
    all.absorb(detail::run_once(id, o, o.seed + std::uint64_t(t), tol), "[" + std::to_string(t) + "] ");
  return all;
}

inline std::vector<std::string> fixtures_for(const std::string& id, const RunOptions& o) {
  if (o.random) return {};
  if (o.fixture == "ex1") return {"A1", "W1"};
  if (is_order_law_id(id)) return {"A2", "B2", "C2", "W2"};
  return {"A2", "W2"};
}

}  // namespace wdrazin
