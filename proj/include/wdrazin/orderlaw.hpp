#pragma once

#include "matcore.hpp"
#include "random.hpp"
#include "fixtures.hpp"
#include "verify.hpp"
#include "winv.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wdrazin {

// members are keyed "<law>.<name>": weak.Y2, weak.Z1, rev.Y3, rev.Z2, fwd.Y3, fwd.Z2,
// trev.U1, trev.Y4, trev.Z3, tfwd.Z3, tfwd.Y4, tfwd.U1, rol.Y3, rol.Z2
struct OrderLawCase {
  Matrix A, B, W;
  std::optional<Matrix> C;
  std::map<std::string, Matrix> inverses;
  std::vector<Condition> commutation_flags;
  std::string source;

  const Matrix& get(const std::string& key) const {
    auto it = inverses.find(key);
    if (it == inverses.end()) throw std::invalid_argument("case has no inverse " + key);
    return it->second;
  }
  const Matrix& c() const {
    if (!C) throw std::invalid_argument("case has no third matrix");
    return *C;
  }
};

struct GeneralSolutionFamily {
  Matrix particular;
  Matrix annihilator;
  Matrix P;  // AWBW or AWBWCW
  int k = 0;
  Matrix R;

  Matrix member(const Matrix& Zfree) const {
    if (Zfree.rows() != particular.rows() || Zfree.cols() != annihilator.rows())
      throw DimensionError("free parameter must be " + shape(particular));
    return particular + Zfree * annihilator;
  }
};

enum class ProductKind { pair, triple };
enum class Direction { reverse, forward };

namespace detail {

inline double comm(const Matrix& a, const Matrix& b) { return rel_diff(a * b, b * a); }

inline void pairwise_flags(OrderLawCase& c, const ToleranceConfig& tol) {
  auto add = [&](const std::string& l, double r) {
    c.commutation_flags.push_back({l, r, tol.residual_atol, r <= tol.residual_atol});
  };
  Matrix AW = c.A * c.W, BW = c.B * c.W;
  add("(AW)(BW)=(BW)(AW)", comm(AW, BW));
  if (c.C) {
    Matrix CW = *c.C * c.W;
    add("(AW)(CW)=(CW)(AW)", comm(AW, CW));
    add("(BW)(CW)=(CW)(BW)", comm(BW, CW));
  }
}

inline Matrix random_member(const WeightedPair& p, Rng& rng, const ToleranceConfig& tol) {
  auto f = mrwwd_family(p, tol);
  return f.member(rng.gaussian(f.param_rows(), f.param_cols()));
}

// K M^+ + G(I - MM^+): weak Drazin but without the rank condition
inline Matrix plain_weak_member(const WeightedPair& p, Rng& rng, const ToleranceConfig& tol) {
  auto f = mrwwd_family(p, tol);
  return f.particular + rng.gaussian(p.m(), p.n()) * f.right_factor;
}

inline void require(const std::vector<Condition>& flags, const std::string& what) {
  for (const auto& f : flags)
    if (!f.pass)
      throw HypothesisError(what + " hypothesis fails: " + f.label + " (residual " + std::to_string(f.residual) + ")");
}

inline Condition make_flag(const std::string& label, double r, const ToleranceConfig& tol) {
  return {label, r, tol.residual_atol, r <= tol.residual_atol};
}

inline int shared_index(const std::vector<Matrix>& squares, const ToleranceConfig& tol) {
  int k = 0;
  for (const auto& S : squares) k = std::max(k, index_of(S, tol));
  return k;
}

}  // namespace detail

// A, B, C = (I + a_i RW) R share the core-nilpotent structure of one random pair (R, W),
// so AW, BW, CW are polynomials in RW and commute
inline OrderLawCase commuting_case_generator(Eigen::Index m, Eigen::Index n, std::uint64_t seed, bool with_C,
                                             const ToleranceConfig& tol = {}, int max_attempts = 10) {
  if (m < 1 || n < 1) throw DimensionError("m and n must be positive");
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Eigen::Index q = rng.integer(1, int(std::min(m, n)));
    Eigen::Index r = m - q, d = std::min(m - q, n - q);
    int kt = r == 0 ? 0 : (d == 0 ? 1 : rng.integer(1, int(std::min<Eigen::Index>(3, d))));
    auto inst = random_pair(m, n, q, kt, rng);
    Matrix T = inst.B * inst.W;
    auto poly = [&]() -> Matrix { return (identity(m) + 0.3 * rng.uniform(0.0, 1.0) * rng.phase() * T) * inst.B; };
    OrderLawCase c;
    c.source = "random";
    c.W = inst.W;
    c.A = poly();
    c.B = poly();
    if (with_C) c.C = poly();
    detail::pairwise_flags(c, tol);
    bool ok = true;
    for (const auto& f : c.commutation_flags) ok = ok && f.pass;
    if (!ok) continue;
    try {
      WeightedPair pa(c.A, c.W, tol), pb(c.B, c.W, tol);
      c.inverses["weak.Z1"] = detail::plain_weak_member(pa, rng, tol);
      c.inverses["weak.Y2"] = detail::plain_weak_member(pb, rng, tol);
      c.inverses["rev.Y3"] = w_drazin(pb, tol).value;
      c.inverses["rev.Z2"] = detail::random_member(pa, rng, tol);
      c.inverses["fwd.Z2"] = w_drazin(pa, tol).value;
      c.inverses["fwd.Y3"] = detail::random_member(pb, rng, tol);
      if (with_C) {
        WeightedPair pc(*c.C, c.W, tol);
        c.inverses["trev.U1"] = w_drazin(pc, tol).value;
        c.inverses["trev.Y4"] = c.inverses["rev.Y3"];
        c.inverses["trev.Z3"] = detail::random_member(pa, rng, tol);
        c.inverses["tfwd.Z3"] = c.inverses["fwd.Z2"];
        c.inverses["tfwd.Y4"] = c.inverses["rev.Y3"];
        c.inverses["tfwd.U1"] = detail::random_member(pc, rng, tol);
      }
    } catch (const CertificationError&) {
      continue;
    }
    return c;
  }
  throw InfeasibleError("no commuting case after " + std::to_string(max_attempts) + " attempts");
}

// the second worked example with its displayed members; its W-weighted Drazin
// inverses do not obey the reverse corollaries, the products are members only
inline OrderLawCase ex2_case(double y1, double y2, double z1, double z2, double z3, double u1,
                             const ToleranceConfig& tol = {}) {
  OrderLawCase c;
  c.source = "ex2";
  c.A = fixtures::A2();
  c.B = fixtures::B2();
  c.C = fixtures::C2();
  c.W = fixtures::W2();
  Matrix Y = fixtures::ex2_Y(y1, y2), Z = fixtures::ex2_Z(z1, z2, z3), U = fixtures::ex2_U(u1);
  for (const char* law : {"weak", "rev", "fwd"}) {
    std::string s(law);
    c.inverses[s == "weak" ? "weak.Y2" : s + ".Y3"] = Y;
    c.inverses[s == "weak" ? "weak.Z1" : s + ".Z2"] = Z;
  }
  for (const char* law : {"trev", "tfwd"}) {
    std::string s(law);
    c.inverses[s + ".U1"] = U;
    c.inverses[s + ".Y4"] = Y;
    c.inverses[s + ".Z3"] = Z;
  }
  c.inverses["rol.Y3"] = Y;
  c.inverses["rol.Z2"] = Z;
  detail::pairwise_flags(c, tol);
  return c;
}

namespace detail {

inline VerificationReport power_law(const std::string& id, const Matrix& prod, const Matrix& P, const Matrix& W,
                                    int k, const ToleranceConfig& tol) {
  VerificationReport r(id, tol);
  Matrix PW = P * W;
  Matrix Kk = clean_power(PW, k, tol);
  r.check("XW(PW)^{k+1}=(PW)^k", rel_diff(prod * W * Kk * PW, Kk));
  return r;
}

inline VerificationReport minimal_law(const std::string& id, const Matrix& prod, const Matrix& P, const Matrix& W,
                                      int k, const std::vector<Condition>& flags, const ToleranceConfig& tol) {
  VerificationReport r = power_law(id, prod, P, W, k, tol);
  r.absorb(check_mrwwd(WeightedPair(P, W, tol), prod, tol));
  for (const auto& f : flags) r.informational.push_back({"hypothesis " + f.label, f.residual, f.threshold, f.pass});
  return r;
}

inline int pair_index(const OrderLawCase& c, const ToleranceConfig& tol) {
  Matrix AW = c.A * c.W, BW = c.B * c.W;
  return shared_index({AW, BW, AW * BW}, tol);
}

inline int triple_index(const OrderLawCase& c, const ToleranceConfig& tol) {
  Matrix AW = c.A * c.W, BW = c.B * c.W, CW = c.c() * c.W;
  return shared_index({AW, BW, CW, AW * BW * CW}, tol);
}

}  // namespace detail

// Y2 W Z1 is a weak Drazin inverse of AWB (no rank condition)
inline VerificationReport reverse_order_weak(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  detail::require({c.commutation_flags.front()}, "reverse weak order law");
  return detail::power_law("thm3.25", c.get("weak.Y2") * c.W * c.get("weak.Z1"), c.A * c.W * c.B, c.W,
                           detail::pair_index(c, tol), tol);
}

inline VerificationReport forward_order_weak(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  detail::require({c.commutation_flags.front()}, "forward weak order law");
  return detail::power_law("thm3.26", c.get("weak.Z1") * c.W * c.get("weak.Y2"), c.A * c.W * c.B, c.W,
                           detail::pair_index(c, tol), tol);
}

inline std::vector<Condition> reverse_minimal_flags(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  Matrix AW = c.A * c.W;
  return {c.commutation_flags.front(),
          detail::make_flag("(Y3W)(AW)=(AW)(Y3W)", detail::comm(c.get("rev.Y3") * c.W, AW), tol)};
}

inline std::vector<Condition> forward_minimal_flags(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  Matrix BW = c.B * c.W;
  return {c.commutation_flags.front(),
          detail::make_flag("(Z2W)(BW)=(BW)(Z2W)", detail::comm(c.get("fwd.Z2") * c.W, BW), tol)};
}

// Y3 W Z2 passes the full minimal rank suite for AWB
inline VerificationReport reverse_order_minimal(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  auto flags = reverse_minimal_flags(c, tol);
  detail::require(flags, "reverse order law");
  return detail::minimal_law("thm3.27", c.get("rev.Y3") * c.W * c.get("rev.Z2"), c.A * c.W * c.B, c.W,
                             detail::pair_index(c, tol), flags, tol);
}

inline VerificationReport forward_order_minimal(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  auto flags = forward_minimal_flags(c, tol);
  detail::require(flags, "forward order law");
  return detail::minimal_law("thm3.28", c.get("fwd.Z2") * c.W * c.get("fwd.Y3"), c.A * c.W * c.B, c.W,
                             detail::pair_index(c, tol), flags, tol);
}

// (AWB)^{D,W} = B^{D,W} W A^{D,W} = A^{D,W} W B^{D,W}
inline VerificationReport wdrazin_order_corollaries(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  Matrix Ad = w_drazin(WeightedPair(c.A, c.W, tol), tol).value;
  Matrix Bd = w_drazin(WeightedPair(c.B, c.W, tol), tol).value;
  Matrix AW = c.A * c.W, BW = c.B * c.W;
  std::vector<Condition> flags = {c.commutation_flags.front(),
                                  detail::make_flag("(B^{D,W}W)(AW)=(AW)(B^{D,W}W)", detail::comm(Bd * c.W, AW), tol),
                                  detail::make_flag("(A^{D,W}W)(BW)=(BW)(A^{D,W}W)", detail::comm(Ad * c.W, BW), tol)};
  detail::require(flags, "W-weighted Drazin order law");
  Matrix Pd = w_drazin(WeightedPair(c.A * c.W * c.B, c.W, tol), tol).value;
  VerificationReport r("thm3.29", tol);
  WeightedPair pp(c.A * c.W * c.B, c.W, tol);
  r.check_equal("(AWB)^{D,W}=B^{D,W}WA^{D,W}", Pd, Bd * c.W * Ad);
  r.check_equal("(AWB)^{D,W}=A^{D,W}WB^{D,W}", Pd, Ad * c.W * Bd);
  r.note("B^{D,W}WA^{D,W} is a minimal rank member for AWB", left_member_residual(pp, Bd * c.W * Ad, tol));
  r.note("A^{D,W}WB^{D,W} is a minimal rank member for AWB", left_member_residual(pp, Ad * c.W * Bd, tol));
  return r;
}

inline VerificationReport triple_wdrazin_corollaries(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  const Matrix& C = c.c();
  Matrix Ad = w_drazin(WeightedPair(c.A, c.W, tol), tol).value;
  Matrix Bd = w_drazin(WeightedPair(c.B, c.W, tol), tol).value;
  Matrix Cd = w_drazin(WeightedPair(C, c.W, tol), tol).value;
  Matrix AW = c.A * c.W, BW = c.B * c.W, CW = C * c.W;
  std::vector<Condition> flags = c.commutation_flags;
  flags.push_back(detail::make_flag("(C^{D,W}W)(AWBW)=(AWBW)(C^{D,W}W)", detail::comm(Cd * c.W, AW * BW), tol));
  flags.push_back(
      detail::make_flag("(A^{D,W}WB^{D,W}W)(CW)=(CW)(A^{D,W}WB^{D,W}W)", detail::comm(Ad * c.W * Bd * c.W, CW), tol));
  detail::require(flags, "triple W-weighted Drazin order law");
  Matrix Pd = w_drazin(WeightedPair(c.A * c.W * c.B * c.W * C, c.W, tol), tol).value;
  VerificationReport r("thm3.30", tol);
  WeightedPair pp(c.A * c.W * c.B * c.W * C, c.W, tol);
  r.check_equal("(AWBWC)^{D,W}=C^{D,W}WB^{D,W}WA^{D,W}", Pd, Cd * c.W * Bd * c.W * Ad);
  r.check_equal("(AWBWC)^{D,W}=A^{D,W}WB^{D,W}WC^{D,W}", Pd, Ad * c.W * Bd * c.W * Cd);
  r.note("C^{D,W}WB^{D,W}WA^{D,W} is a minimal rank member for AWBWC",
         left_member_residual(pp, Cd * c.W * Bd * c.W * Ad, tol));
  r.note("A^{D,W}WB^{D,W}WC^{D,W} is a minimal rank member for AWBWC",
         left_member_residual(pp, Ad * c.W * Bd * c.W * Cd, tol));
  return r;
}

inline std::vector<Condition> triple_reverse_flags(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  std::vector<Condition> flags = c.commutation_flags;
  Matrix ABW = c.A * c.W * c.B * c.W;
  flags.push_back(detail::make_flag("(U1W)(AWBW)=(AWBW)(U1W)", detail::comm(c.get("trev.U1") * c.W, ABW), tol));
  return flags;
}

inline std::vector<Condition> triple_forward_flags(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  std::vector<Condition> flags = c.commutation_flags;
  Matrix ZY = c.get("tfwd.Z3") * c.W * c.get("tfwd.Y4") * c.W;
  flags.push_back(detail::make_flag("(Z3WY4W)(CW)=(CW)(Z3WY4W)", detail::comm(ZY, c.c() * c.W), tol));
  return flags;
}

inline VerificationReport triple_reverse(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  auto flags = triple_reverse_flags(c, tol);
  detail::require(flags, "triple reverse order law");
  Matrix prod = c.get("trev.U1") * c.W * c.get("trev.Y4") * c.W * c.get("trev.Z3");
  return detail::minimal_law("thm3.31", prod, c.A * c.W * c.B * c.W * c.c(), c.W, detail::triple_index(c, tol), flags,
                             tol);
}

inline VerificationReport triple_forward(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  auto flags = triple_forward_flags(c, tol);
  detail::require(flags, "triple forward order law");
  Matrix prod = c.get("tfwd.Z3") * c.W * c.get("tfwd.Y4") * c.W * c.get("tfwd.U1");
  return detail::minimal_law("thm3.32", prod, c.A * c.W * c.B * c.W * c.c(), c.W, detail::triple_index(c, tol), flags,
                             tol);
}

// square case with unitary W and A = (I + a RW0) W*, B = RW0 W*, so AW and BW commute
// and the four hypotheses of the weak MPD reverse order law hold
inline OrderLawCase rol_case_generator(Eigen::Index n, std::uint64_t seed, const ToleranceConfig& tol = {}) {
  if (n < 2) throw DimensionError("n must be at least 2");
  Rng rng(seed);
  Eigen::Index q = rng.integer(1, int(n));
  Eigen::Index r = n - q;
  int kt = r == 0 ? 0 : rng.integer(1, int(std::min<Eigen::Index>(3, r)));
  auto inst = random_pair(n, n, q, kt, rng);
  Matrix T = inst.B * inst.W;
  OrderLawCase c;
  c.source = "rol";
  c.W = rng.unitary(n);
  c.B = T * c.W.adjoint();
  c.A = (identity(n) + 0.3 * rng.phase() * T) * c.W.adjoint();
  detail::pairwise_flags(c, tol);
  WeightedPair pa(c.A, c.W, tol), pb(c.B, c.W, tol);
  c.inverses["rol.Y3"] = w_drazin(pb, tol).value;
  c.inverses["rol.Z2"] = detail::random_member(pa, rng, tol);
  return c;
}

inline std::vector<Condition> rol_flags(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  const Matrix &A = c.A, &B = c.B, &W = c.W, &Y3 = c.get("rol.Y3");
  Matrix Ap = mp_inverse(A, tol), Wp = mp_inverse(W, tol);
  Matrix BBs = B * B.adjoint();
  Matrix G = B * W * Y3 * W;
  return {detail::make_flag("R(WBB*W*A*) in R(A^+A)", range_residual(W * BBs * W.adjoint() * A.adjoint(), Ap * A, tol),
                            tol),
          detail::make_flag("W^+WBB*=BB*W^+W", rel_diff(Wp * W * BBs, BBs * Wp * W), tol),
          detail::make_flag("W^+A^+(BWY3W)=(BWY3W)W^+A^+", rel_diff(Wp * Ap * G, G * Wp * Ap), tol),
          detail::make_flag("(AW)(Y3W)=(Y3W)(AW)", detail::comm(A * W, Y3 * W), tol)};
}

// the weak MPD inverse of AWB built from X2 = Y3 W Z2 equals Y~ W^+ Z~;
// the form Y~ A Z~ is reported alongside
inline VerificationReport reverse_order_weak_mpd(const OrderLawCase& c, const ToleranceConfig& tol = {}) {
  auto flags = rol_flags(c, tol);
  detail::require(flags, "weak MPD reverse order law");
  const Matrix &A = c.A, &B = c.B, &W = c.W, &Y3 = c.get("rol.Y3"), &Z2 = c.get("rol.Z2");
  Matrix X2 = Y3 * W * Z2;
  Matrix Xt = weak_mpd(WeightedPair(A * W * B, W, tol), X2, tol).value;
  Matrix Yt = weak_mpd(WeightedPair(B, W, tol), Y3, tol).value;
  Matrix Zt = weak_mpd(WeightedPair(A, W, tol), Z2, tol).value;
  VerificationReport r("thm3.30-rol", tol);
  for (const auto& f : flags) r.informational.push_back({"hypothesis " + f.label, f.residual, f.threshold, f.pass});
  r.check_equal("(AWB)^{+,D_w}=B^{+,D_w}W^+A^{+,D_w}", Xt, Yt * mp_inverse(W, tol) * Zt);
  r.note("(AWB)^{+,D_w}=B^{+,D_w}AA^{+,D_w} as stated", rel_diff(Xt, Yt * A * Zt));
  return r;
}

// Y = R X W + Zfree (I - PW X W) solves Y(PW)^{k+1} = R(PW)^k, X the order-law product
inline std::pair<GeneralSolutionFamily, VerificationReport> matrix_equation_solution(
    const OrderLawCase& c, const Matrix& R, ProductKind which, Direction dir, const Matrix& Zfree,
    const ToleranceConfig& tol = {}) {
  const Eigen::Index m = c.A.rows(), n = c.A.cols();
  if (R.rows() != n || R.cols() != m) throw DimensionError("R must be " + std::to_string(n) + "x" + std::to_string(m));
  Matrix X, P;
  int k = 0;
  if (which == ProductKind::pair) {
    if (dir == Direction::reverse) {
      detail::require(reverse_minimal_flags(c, tol), "reverse order law");
      X = c.get("rev.Y3") * c.W * c.get("rev.Z2");
    } else {
      detail::require(forward_minimal_flags(c, tol), "forward order law");
      X = c.get("fwd.Z2") * c.W * c.get("fwd.Y3");
    }
    P = c.A * c.W * c.B * c.W;
    k = detail::pair_index(c, tol);
  } else {
    if (dir == Direction::reverse) {
      detail::require(triple_reverse_flags(c, tol), "triple reverse order law");
      X = c.get("trev.U1") * c.W * c.get("trev.Y4") * c.W * c.get("trev.Z3");
    } else {
      detail::require(triple_forward_flags(c, tol), "triple forward order law");
      X = c.get("tfwd.Z3") * c.W * c.get("tfwd.Y4") * c.W * c.get("tfwd.U1");
    }
    P = c.A * c.W * c.B * c.W * c.c() * c.W;
    k = detail::triple_index(c, tol);
  }
  GeneralSolutionFamily fam{R * X * c.W, identity(m) - P * X * c.W, P, k, R};
  Matrix Y = fam.member(Zfree);
  Matrix Pk = detail::clean_power(P, k, tol);
  std::string id = which == ProductKind::pair ? "mateq-pair" : "mateq-triple";
  VerificationReport r(id, tol);
  r.check_equal("Y(PW)^{k+1}=R(PW)^k", Y * Pk * P, R * Pk);
  r.check_equal("annihilator (I-PWXW)(PW)^{k+1}=0", fam.annihilator * Pk * P, Matrix::Zero(m, m));
  return {fam, r};
}

}  // namespace wdrazin
