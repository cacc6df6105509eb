#pragma once

#include "matcore.hpp"
#include "random.hpp"
#include "winv.hpp"
#include "verify.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wdrazin {

enum class PerturbationFamily { closed, randomized };

struct PerturbationScenario {
  WeightedPair pair;
  Matrix X_or_Z;
  Matrix E;
  Matrix D;
  Side side = Side::left;
  double alpha = 0.0;
  std::vector<Condition> hypothesis_flags;

  bool flags_hold() const {
    for (const auto& f : hypothesis_flags)
      if (!f.pass) return false;
    return true;
  }
  const Condition* first_failed() const {
    for (const auto& f : hypothesis_flags)
      if (!f.pass) return &f;
    return nullptr;
  }
};

namespace detail {

inline void flag(std::vector<Condition>& v, const std::string& label, double res, double thr) {
  v.push_back({label, res, thr, res <= thr});
}

constexpr double norm_target = 0.5;

// the range inclusions and norm bounds the proofs use, each only where it is
// dimensionally meaningful
inline std::vector<Condition> perturbation_flags(const WeightedPair& p, const Matrix& XZ, const Matrix& E, Side side,
                                                 const ToleranceConfig& tol) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  std::vector<Condition> f;
  const double a = tol.residual_atol;
  if (side == Side::left) {
    const Matrix& X = XZ;
    Matrix K = clean_power(p.BW(), p.k_bw(), tol);
    Matrix EW = E * W;
    flag(f, "R(E) in R(EW)", range_residual(E, EW, tol), a);
    flag(f, "R(EW) in R((BW)^k)", range_residual(EW, K, tol), a);
    flag(f, "R((EW)*) in R((XWBW)*)", range_residual(EW.adjoint(), (X * W * B * W).adjoint(), tol), a);
    flag(f, "R(E) in R(B)", range_residual(E, B, tol), a);
    flag(f, "R(E*) in R(B*)", range_residual(E.adjoint(), B.adjoint(), tol), a);
    flag(f, "||WEWX||<=1/2", spectral_norm(W * E * W * X), norm_target);
    flag(f, "||B^+E||<=1/2", spectral_norm(Bp * E), norm_target);
    if (f[0].pass && f[1].pass && f[2].pass && left_member_residual(p, X, tol) <= a) {
      Matrix Y = Bp * B * W * X * W;
      flag(f, "||YE||<=1/2", spectral_norm(Y * E), norm_target);
    } else {
      flag(f, "||YE||<=1/2", 1.0, norm_target);
    }
  } else {
    const Matrix& Z = XZ;
    Matrix WE = W * E;
    Matrix Nk1 = matrix_power(p.WB(), p.k_wb() + 1);
    flag(f, "R(WE) in R(WBWZ)", range_residual(WE, W * B * W * Z, tol), a);
    flag(f, "R((WE)*) in R(((WB)^{k+1})*)", range_residual(WE.adjoint(), Nk1.adjoint(), tol), a);
    flag(f, "R(E*) in R((WE)*)", range_residual(E.adjoint(), WE.adjoint(), tol), a);
    flag(f, "R(E) in R(B)", range_residual(E, B, tol), a);
    flag(f, "R(E*) in R(B*)", range_residual(E.adjoint(), B.adjoint(), tol), a);
    flag(f, "||ZWEW||<=1/2", spectral_norm(Z * W * E * W), norm_target);
    flag(f, "||EB^+||<=1/2", spectral_norm(E * Bp), norm_target);
    Matrix Y1 = W * Z * W * B * Bp;
    flag(f, "||EY1||<=1/2", spectral_norm(E * Y1), norm_target);
  }
  return f;
}

inline bool is_norm_flag(const Condition& c) { return c.label.rfind("||", 0) == 0; }

}  // namespace detail

// builds the scenario as given and records its flags; nothing is rejected
inline PerturbationScenario make_scenario(const WeightedPair& p, const Matrix& XZ, const Matrix& E, Side side,
                                          const ToleranceConfig& tol = {}, double alpha = 0.0) {
  if (XZ.rows() != p.m() || XZ.cols() != p.n()) throw DimensionError("inverse must be " + shape(p.B()));
  if (E.rows() != p.m() || E.cols() != p.n()) throw DimensionError("E must be " + shape(p.B()));
  return {p, XZ, E, p.B() + E, side, alpha, detail::perturbation_flags(p, XZ, E, side, tol)};
}

// closed: E = a (BW)^k B. randomized left: E = a (BW)^k G XWB; right: E = a BWZ G (WB)^k.
// a is halved while a norm bound fails; a failed range flag redraws G
inline PerturbationScenario admissible_perturbation(const WeightedPair& p, const Matrix& XZ, double alpha,
                                                    std::uint64_t seed, const ToleranceConfig& tol = {},
                                                    Side side = Side::left,
                                                    PerturbationFamily family = PerturbationFamily::closed,
                                                    int max_attempts = 20) {
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  double mr = side == Side::left ? left_member_residual(p, XZ, tol) : right_member_residual(p, XZ, tol);
  if (mr > tol.residual_atol) throw HypothesisError("inverse is not a certified family member");
  Rng rng(seed);
  const Matrix &B = p.B(), &W = p.W();
  Matrix base;
  auto draw = [&]() {
    if (family == PerturbationFamily::closed)
      base = matrix_power(p.BW(), p.k()) * B;
    else if (side == Side::left)
      base = detail::clean_power(p.BW(), p.k_bw(), tol) * rng.gaussian(p.m(), p.m()) * XZ * W * B;
    else
      base = B * W * XZ * rng.gaussian(p.n(), p.n()) * detail::clean_power(p.WB(), p.k_wb(), tol);
  };
  draw();
  std::string failed = "no attempt";
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto s = make_scenario(p, XZ, alpha * base, side, tol, alpha);
    const Condition* bad = s.first_failed();
    if (!bad) return s;
    failed = bad->label;
    if (detail::is_norm_flag(*bad)) {
      alpha *= 0.5;
    } else if (family == PerturbationFamily::randomized) {
      draw();
    } else {
      break;
    }
  }
  throw InfeasibleError("no admissible perturbation: " + failed + " fails");
}

namespace detail {

inline Matrix guarded_inverse(const Matrix& A, const std::string& what) {
  Eigen::FullPivLU<Matrix> lu(A);
  if (!lu.isInvertible()) throw ComputationError(what + " is numerically singular");
  return lu.inverse();
}

inline void require_flags(const PerturbationScenario& s, Side side) {
  if (s.side != side) throw std::invalid_argument("scenario is for the other side");
  if (const Condition* bad = s.first_failed())
    throw HypothesisError("perturbation hypothesis fails: " + bad->label + " (" + std::to_string(bad->residual) + ")");
}

inline void note_flags(VerificationReport& r, const PerturbationScenario& s) {
  for (const auto& f : s.hypothesis_flags)
    r.informational.push_back({"hypothesis " + f.label, f.residual, f.threshold, f.pass});
}

// lo <= v <= hi as residuals relative to v
inline void sandwich(VerificationReport& r, const std::string& what, double lo, double v, double hi) {
  r.check(what + " lower bound", std::max(0.0, lo - v) / (1.0 + v));
  r.check(what + " upper bound", std::max(0.0, v - hi) / (1.0 + v));
  r.note(what + " lower slack", v - lo);
  r.note(what + " upper slack", hi - v);
}

}  // namespace detail

// Xp = X(I + WEWX)^{-1}; range flags are not enforced so that violating them shows up in (a)
inline std::pair<Matrix, VerificationReport> perturbed_mrwwd(const PerturbationScenario& s,
                                                             const ToleranceConfig& tol = {}) {
  if (s.side != Side::left) throw std::invalid_argument("left scenario required");
  const Matrix &B = s.pair.B(), &W = s.pair.W(), &X = s.X_or_Z, &E = s.E, &D = s.D;
  Matrix Xp = X * detail::guarded_inverse(identity(s.pair.n()) + W * E * W * X, "I+WEWX");
  WeightedPair pd(D, W, tol);
  VerificationReport r("thm3.17", tol);
  detail::note_flags(r, s);
  Matrix Kd = detail::clean_power(pd.BW(), pd.k_bw(), tol);
  r.check("(a) D: XpW(DW)^{k+1}=(DW)^k", rel_diff(Xp * W * Kd * pd.BW(), Kd));
  r.check_rank("(a) D: rank Xp=rank (DW)^k", rank_of(Xp, tol), rank_of(Kd, tol));
  r.check_rank("(a) rank (DW)^k=rank (BW)^k", rank_of(detail::clean_power(pd.BW(), s.pair.k(), tol), tol),
               rank_of(detail::clean_power(s.pair.BW(), s.pair.k(), tol), tol));
  r.check_equal("(b) XpWDW=XWBW", Xp * W * D * W, X * W * B * W);
  Matrix inv = detail::guarded_inverse(identity(s.pair.m()) + X * W * E * W, "I+XWEW");
  r.check_equal("(c) WDW(I+XWEW)^{-1}X=WBWX", W * D * W * inv * X, W * B * W * X);
  return {Xp, r};
}

// Zp = (I + ZWEW)^{-1}Z
inline std::pair<Matrix, VerificationReport> perturbed_mrwwd_right(const PerturbationScenario& s,
                                                                   const ToleranceConfig& tol = {}) {
  if (s.side != Side::right) throw std::invalid_argument("right scenario required");
  const Matrix &B = s.pair.B(), &W = s.pair.W(), &Z = s.X_or_Z, &E = s.E, &D = s.D;
  Matrix Zp = detail::guarded_inverse(identity(s.pair.m()) + Z * W * E * W, "I+ZWEW") * Z;
  WeightedPair pd(D, W, tol);
  VerificationReport r("thm3.18", tol);
  detail::note_flags(r, s);
  Matrix Nd = detail::clean_power(pd.WB(), pd.k_wb(), tol);
  r.check("(a) D: W(DW)^{k+1}Zp=(WD)^k", rel_diff(W * matrix_power(pd.BW(), pd.k_wb() + 1) * Zp, Nd));
  r.check_rank("(a) D: rank Zp=rank (WD)^k", rank_of(Zp, tol), rank_of(Nd, tol));
  r.check_rank("(a) rank (WD)^k=rank (WB)^k", rank_of(detail::clean_power(pd.WB(), s.pair.k(), tol), tol),
               rank_of(detail::clean_power(s.pair.WB(), s.pair.k(), tol), tol));
  r.check_equal("(b) WDWZp=WBWZ", W * D * W * Zp, W * B * W * Z);
  Matrix inv = detail::guarded_inverse(identity(s.pair.n()) + W * E * W * Z, "I+WEWZ");
  r.check_equal("(c) Z(I+WEWZ)^{-1}WDW=ZWBW", Z * inv * W * D * W, Z * W * B * W);
  return {Zp, r};
}

inline VerificationReport mpd_perturbation(const PerturbationScenario& s, const ToleranceConfig& tol = {}) {
  detail::require_flags(s, Side::left);
  const Matrix &B = s.pair.B(), &W = s.pair.W(), &X = s.X_or_Z, &E = s.E, &D = s.D;
  const Eigen::Index m = s.pair.m(), n = s.pair.n();
  Matrix Bp = mp_inverse(B, tol), Dp = mp_inverse(D, tol);
  Matrix Y = weak_mpd(s.pair, X, tol).value;
  Matrix Xp = perturbed_mrwwd(s, tol).first;
  Matrix WDW = W * D * W;
  Matrix L1 = Dp * Xp * WDW * X;
  Matrix L2 = Dp * X * WDW * detail::guarded_inverse(identity(m) + X * W * E * W, "I+XWEW") * X;
  Matrix R = detail::guarded_inverse(identity(n) + Y * E, "I+YE") * Y * X;
  VerificationReport r("thm3.19", tol);
  detail::note_flags(r, s);
  r.check_equal("D^+=(I+B^+E)^{-1}B^+", Dp, detail::guarded_inverse(identity(n) + Bp * E, "I+B^+E") * Bp);
  r.check_equal("D^+XpWDWX=D^+XWDW(I+XWEW)^{-1}X", L1, L2);
  r.check_equal("D^+XpWDWX=(I+YE)^{-1}YX", L1, R);
  r.check_equal("DD^+XpWDWX=BYX", D * L1, B * Y * X);
  double yx = spectral_norm(Y * X), ye = spectral_norm(Y * E);
  detail::sandwich(r, "||D^+XpWDWX||", yx / (1.0 + ye), spectral_norm(L1), yx / (1.0 - ye));
  return r;
}

// the second form reads Z(I+WEWZ)^{-1}WDWZD^+ and the projector form multiplies by D on the right
inline VerificationReport dmp_perturbation(const PerturbationScenario& s, const ToleranceConfig& tol = {}) {
  detail::require_flags(s, Side::right);
  const Matrix &B = s.pair.B(), &W = s.pair.W(), &Z = s.X_or_Z, &E = s.E, &D = s.D;
  const Eigen::Index m = s.pair.m(), n = s.pair.n();
  Matrix Bp = mp_inverse(B, tol), Dp = mp_inverse(D, tol);
  Matrix Y1 = weak_dmp(s.pair, Z, tol).value;
  Matrix Zp = perturbed_mrwwd_right(s, tol).first;
  Matrix WDW = W * D * W;
  Matrix L1 = Z * WDW * Zp * Dp;
  Matrix L2 = Z * detail::guarded_inverse(identity(n) + W * E * W * Z, "I+WEWZ") * WDW * Z * Dp;
  Matrix R = Z * Y1 * detail::guarded_inverse(identity(m) + E * Y1, "I+EY1");
  VerificationReport r("thm3.20", tol);
  detail::note_flags(r, s);
  r.check_equal("D^+=B^+(I+EB^+)^{-1}", Dp, Bp * detail::guarded_inverse(identity(m) + E * Bp, "I+EB^+"));
  r.check_equal("ZWDWZpD^+=Z(I+WEWZ)^{-1}WDWZD^+", L1, L2);
  r.check_equal("ZWDWZpD^+=ZY1(I+EY1)^{-1}", L1, R);
  r.check_equal("ZWDWZpD^+D=ZY1B", L1 * D, Z * Y1 * B);
  double zy = spectral_norm(Z * Y1), ey = spectral_norm(E * Y1);
  detail::sandwich(r, "||ZWDWZpD^+||", zy / (1.0 + ey), spectral_norm(L1), zy / (1.0 - ey));
  return r;
}

// scenario inverse must be B^{D,W}; the perturbed MPD inverse is computed from D directly
inline VerificationReport drazin_case_perturbation(const PerturbationScenario& s, const ToleranceConfig& tol = {}) {
  detail::require_flags(s, Side::left);
  const Matrix &B = s.pair.B(), &W = s.pair.W(), &E = s.E, &D = s.D;
  const Eigen::Index m = s.pair.m(), n = s.pair.n();
  VerificationReport r("cor-mpd", tol);
  detail::note_flags(r, s);
  r.check_equal("X=B^{D,W}", s.X_or_Z, w_drazin(s.pair, tol).value);
  Matrix Y = w_mpd(s.pair, tol).value;
  Matrix Yd = w_mpd(WeightedPair(D, W, tol), tol).value;
  r.check_equal("D^{+,D,W}=(I+YE)^{-1}Y", Yd, detail::guarded_inverse(identity(n) + Y * E, "I+YE") * Y);
  r.check_equal("D^{+,D,W}=Y(I+EY)^{-1}", Yd, Y * detail::guarded_inverse(identity(m) + E * Y, "I+EY"));
  r.check_equal("DD^{+,D,W}=BY", D * Yd, B * Y);
  r.check_equal("D^{+,D,W}D=YB", Yd * D, Y * B);
  double ny = spectral_norm(Y), ye = spectral_norm(Y * E);
  detail::sandwich(r, "||D^{+,D,W}||", ny / (1.0 + ye), spectral_norm(Yd), ny / (1.0 - ye));
  return r;
}

inline VerificationReport drazin_case_perturbation_dual(const PerturbationScenario& s,
                                                        const ToleranceConfig& tol = {}) {
  detail::require_flags(s, Side::right);
  const Matrix &B = s.pair.B(), &W = s.pair.W(), &E = s.E, &D = s.D;
  const Eigen::Index m = s.pair.m(), n = s.pair.n();
  VerificationReport r("cor-dmp", tol);
  detail::note_flags(r, s);
  Matrix V = w_drazin(s.pair, tol).value;
  r.check_equal("Z=B^{D,W}", s.X_or_Z, V);
  Matrix Y1 = w_dmp(s.pair, tol).value;
  Matrix Y1d = w_dmp(WeightedPair(D, W, tol), tol).value;
  r.check_equal("D^{D,+,W}=Y1(I+EY1)^{-1}", Y1d, Y1 * detail::guarded_inverse(identity(m) + E * Y1, "I+EY1"));
  r.check_equal("D^{D,+,W}=(I+Y1E)^{-1}Y1", Y1d, detail::guarded_inverse(identity(n) + Y1 * E, "I+Y1E") * Y1);
  r.check_equal("DD^{D,+,W}=BY1", D * Y1d, B * Y1);
  r.check_equal("D^{D,+,W}D=Y1B", Y1d * D, Y1 * B);
  double ny = spectral_norm(Y1), ey = spectral_norm(E * Y1);
  detail::sandwich(r, "||D^{D,+,W}||", ny / (1.0 + ey), spectral_norm(Y1d), ny / (1.0 - ey));
  r.note("||B^{D,W}WBW|| as printed", spectral_norm(V * W * B * W));
  return r;
}

}  // namespace wdrazin
