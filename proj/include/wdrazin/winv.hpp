#pragma once

#include "matcore.hpp"
#include "sqinv.hpp"

#include <string>

namespace wdrazin {

struct WeightedInverseResult {
  std::string kind;
  Matrix value;
  ResidualMap residuals;
};

namespace detail {

// S^k with round-off cleared when the power is numerically zero against ||S||^k
inline Matrix clean_power(const Matrix& S, int k, const ToleranceConfig& tol) {
  Matrix P = matrix_power(S, k);
  if (rank_of(P, tol, pow_norm(S, k)) == 0) P.setZero();
  return P;
}

inline WeightedInverseResult finish(std::string kind, Matrix value, ResidualMap res, const ToleranceConfig& tol) {
  certify(kind, res, tol);
  return {std::move(kind), std::move(value), std::move(res)};
}

}  // namespace detail

// [(BW)^D]^2 B, cross-checked against B [(WB)^D]^2
inline WeightedInverseResult w_drazin(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix BW = p.BW();
  Matrix Dbw = drazin(BW, tol).value;
  Matrix Dwb = drazin(p.WB(), tol).value;
  Matrix V = Dbw * Dbw * B;
  Matrix dual = B * Dwb * Dwb;
  Matrix Kb = matrix_power(BW, p.k_bw());
  return detail::finish("w-drazin", V,
                        {{"VWBWV=V", rel_diff(V * W * B * W * V, V)},
                         {"BWV=VWB", rel_diff(B * W * V, V * W * B)},
                         {"(BW)^{k+1}VW=(BW)^k", rel_diff(Kb * BW * V * W, Kb)},
                         {"dual formula", rel_diff(V, dual)}},
                        tol);
}

// B [(WB)^core]^2
inline WeightedInverseResult w_core_ep(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix C = core_ep(p.WB(), tol).value;
  Matrix V = B * C * C;
  int k = p.k();
  Matrix Nk = detail::clean_power(p.WB(), k, tol);
  Matrix Kk = detail::clean_power(p.BW(), k, tol);
  return detail::finish("w-core-ep", V,
                        {{"WBWV=P((WB)^k)", rel_diff(W * B * W * V, projector_onto(Nk, tol))},
                         {"R(V)=R((BW)^k)", range_equal_residual(V, Kk, tol)}},
                        tol);
}

inline void require_m(int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
}

// (B^{core,W} W)^{m+1} (BW)^{m-1} B
inline WeightedInverseResult w_m_wgi(const WeightedPair& p, int m, const ToleranceConfig& tol = {}) {
  require_m(m);
  const Matrix &B = p.B(), &W = p.W();
  Matrix CW = w_core_ep(p, tol).value * W;
  Matrix CWm = matrix_power(CW, m);
  Matrix H = CWm * CW * matrix_power(p.BW(), m - 1) * B;
  return detail::finish("w-m-wgi", H,
                        {{"BWH=(CW)^m(BW)^{m-1}B", rel_diff(B * W * H, CWm * matrix_power(p.BW(), m - 1) * B)},
                         {"HWBWH=H", rel_diff(H * W * B * W * H, H)}},
                        tol);
}

inline WeightedInverseResult w_m_weak_core(const WeightedPair& p, int m, const ToleranceConfig& tol = {}) {
  require_m(m);
  const Matrix &B = p.B(), &W = p.W();
  Matrix Pm = projector_onto(detail::clean_power(p.WB(), m, tol), tol);
  Matrix H = w_m_wgi(p, m, tol).value * Pm;
  Matrix sq = m_weak_core(p.WB(), m, tol);
  return detail::finish("w-m-weak-core", H,
                        {{"BWH=B(WB)^{wc,m}", rel_diff(B * W * H, B * sq)},
                         {"BWHWH=H", rel_diff(B * W * H * W * H, H)}},
                        tol);
}

namespace detail {
inline WeightedInverseResult outer_certified(std::string kind, const Matrix& Y, const Matrix& B,
                                             const ToleranceConfig& tol) {
  return finish(std::move(kind), Y, {{"YBY=Y", rel_diff(Y * B * Y, Y)}}, tol);
}
}  // namespace detail

inline WeightedInverseResult w_mpcep(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  return detail::outer_certified("w-mpcep", Bp * B * W * w_core_ep(p, tol).value * W, B, tol);
}

inline WeightedInverseResult w_cepmp(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  return detail::outer_certified("w-cepmp", W * w_core_ep(p, tol).value * W * B * Bp, B, tol);
}

inline WeightedInverseResult w_m_wgmp(const WeightedPair& p, int m, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  return detail::outer_certified("w-m-wgmp", W * w_m_wgi(p, m, tol).value * W * B * Bp, B, tol);
}

// W B^{D,W} W B B^+
inline WeightedInverseResult w_dmp(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  Matrix V = w_drazin(p, tol).value;
  Matrix Y = W * V * W * B * Bp;
  Matrix Nk1 = matrix_power(p.WB(), p.k_wb() + 1);
  return detail::finish("w-dmp", Y,
                        {{"YBY=Y", rel_diff(Y * B * Y, Y)},
                         {"YB=W B^{D,W} W B", rel_diff(Y * B, W * V * W * B)},
                         {"(WB)^{k+1}Y=(WB)^{k+1}B^+", rel_diff(Nk1 * Y, Nk1 * Bp)}},
                        tol);
}

// B^+ B W B^{D,W} W
inline WeightedInverseResult w_mpd(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  Matrix V = w_drazin(p, tol).value;
  Matrix Y = Bp * B * W * V * W;
  Matrix Kk1 = matrix_power(p.BW(), p.k_bw() + 1);
  return detail::finish("w-mpd", Y,
                        {{"YBY=Y", rel_diff(Y * B * Y, Y)},
                         {"BY=BW B^{D,W} W", rel_diff(B * Y, B * W * V * W)},
                         {"Y(BW)^{k+1}=B^+(BW)^{k+1}", rel_diff(Y * Kk1, Bp * Kk1)}},
                        tol);
}

enum class Side { left, right };

// members are particular + left_factor * P * right_factor for any m x n parameter P
struct WeakDrazinFamily {
  Side side = Side::left;
  Matrix particular;
  Matrix left_factor;
  Matrix right_factor;
  int k = 0;

  Matrix member(const Matrix& P) const {
    if (P.rows() != left_factor.cols() || P.cols() != right_factor.rows())
      throw DimensionError("family parameter must be " + std::to_string(left_factor.cols()) + "x" +
                           std::to_string(right_factor.rows()) + ", got " + shape(P));
    return particular + left_factor * P * right_factor;
  }
  Eigen::Index param_rows() const { return left_factor.cols(); }
  Eigen::Index param_cols() const { return right_factor.rows(); }
};

// K = (BW)^k, M = W(BW)^{k+1}: X = K M^+ + K Z0 (I - M M^+)
inline WeakDrazinFamily mrwwd_family(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  int k = p.k_bw();
  Matrix K = detail::clean_power(p.BW(), k, tol);
  Matrix M = p.W() * K * p.BW();
  Matrix Mp = mp_inverse(M, tol);
  if (rel_diff(K * Mp * M, K) > tol.residual_atol)
    throw CertificationError("left family: K M^+ M != K, index or rank detection is off");
  return {Side::left, K * Mp, K, identity(p.n()) - M * Mp, k};
}

// N = (WB)^k, M = W(BW)^{k+1}: Z = M^+ N + (I - M^+ M) T0 N
inline WeakDrazinFamily mrwwd_right_family(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  int k = p.k_wb();
  Matrix N = detail::clean_power(p.WB(), k, tol);
  Matrix M = p.W() * matrix_power(p.BW(), k + 1);
  Matrix Mp = mp_inverse(M, tol);
  if (rel_diff(M * Mp * N, N) > tol.residual_atol)
    throw CertificationError("right family: M M^+ N != N, index or rank detection is off");
  return {Side::right, Mp * N, identity(p.m()) - Mp * M, N, k};
}

inline double left_member_residual(const WeightedPair& p, const Matrix& X, const ToleranceConfig& tol = {}) {
  if (X.rows() != p.m() || X.cols() != p.n()) throw DimensionError("X must be " + shape(p.B()));
  Matrix K = detail::clean_power(p.BW(), p.k_bw(), tol);
  double r = rel_diff(X * p.W() * K * p.BW(), K);
  if (rank_of(X, tol) != rank_of(K, tol)) r = std::max(r, 1.0);
  return r;
}

inline double right_member_residual(const WeightedPair& p, const Matrix& Z, const ToleranceConfig& tol = {}) {
  if (Z.rows() != p.m() || Z.cols() != p.n()) throw DimensionError("Z must be " + shape(p.B()));
  Matrix N = detail::clean_power(p.WB(), p.k_wb(), tol);
  double r = rel_diff(p.W() * matrix_power(p.BW(), p.k_wb() + 1) * Z, N);
  if (rank_of(Z, tol) != rank_of(N, tol)) r = std::max(r, 1.0);
  return r;
}

// B^+ B W X W
inline WeightedInverseResult weak_mpd(const WeightedPair& p, const Matrix& X, const ToleranceConfig& tol = {}) {
  double mr = left_member_residual(p, X, tol);
  if (mr > tol.residual_atol)
    throw HypothesisError("X is not a minimal rank weighted weak Drazin inverse (residual " + std::to_string(mr) +
                          ")");
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  Matrix Y = Bp * B * W * X * W;
  Matrix Kk1 = matrix_power(p.BW(), p.k_bw() + 1);
  Matrix mpd = w_mpd(p, tol).value;
  return detail::finish("weak-mpd", Y,
                        {{"YBY=Y", rel_diff(Y * B * Y, Y)},
                         {"BY=BWXW", rel_diff(B * Y, B * W * X * W)},
                         {"Y(BW)^{k+1}=B^+(BW)^{k+1}", rel_diff(Y * Kk1, Bp * Kk1)},
                         {"Y=B^{+,D,W}BWXW", rel_diff(Y, mpd * B * W * X * W)}},
                        tol);
}

// W Z W B B^+
inline WeightedInverseResult weak_dmp(const WeightedPair& p, const Matrix& Z, const ToleranceConfig& tol = {}) {
  double mr = right_member_residual(p, Z, tol);
  if (mr > tol.residual_atol)
    throw HypothesisError("Z is not a minimal rank weighted right weak Drazin inverse (residual " +
                          std::to_string(mr) + ")");
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  Matrix Y = W * Z * W * B * Bp;
  Matrix Nk1 = matrix_power(p.WB(), p.k_wb() + 1);
  Matrix dmp = w_dmp(p, tol).value;
  return detail::finish("weak-dmp", Y,
                        {{"YBY=Y", rel_diff(Y * B * Y, Y)},
                         {"YB=WZWB", rel_diff(Y * B, W * Z * W * B)},
                         {"(WB)^{k+1}Y=(WB)^{k+1}B^+", rel_diff(Nk1 * Y, Nk1 * Bp)},
                         {"Y=WZWB B^{D,+,W}", rel_diff(Y, W * Z * W * B * dmp)}},
                        tol);
}

}  // namespace wdrazin
