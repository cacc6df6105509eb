#pragma once

#include "matcore.hpp"
#include "winv.hpp"

#include <string>
#include <utility>

namespace wdrazin {

// the seven equivalent descriptions of a minimal rank weighted weak Drazin inverse
inline VerificationReport check_mrwwd(const WeightedPair& p, const Matrix& X, const ToleranceConfig& tol = {}) {
  if (X.rows() != p.m() || X.cols() != p.n()) throw DimensionError("X must be " + shape(p.B()));
  const Matrix &B = p.B(), &W = p.W();
  Matrix BW = p.BW();
  Matrix K = detail::clean_power(BW, p.k_bw(), tol);
  Matrix KKp = projector_onto(K, tol);
  VerificationReport r("thm2.1", tol);
  double pw = rel_diff(X * W * K * BW, K);
  int rx = rank_of(X, tol), rk = rank_of(K, tol);
  double rng = range_equal_residual(X, K, tol);
  double outer = rel_diff(X * W * B * W * X, X);
  double proj = rel_diff(KKp * X, X);
  const std::string eq = " XW(BW)^{k+1}=(BW)^k";

  r.check("(i)" + eq, pw);
  r.check_rank("(i) rank X=rank (BW)^k", rx, rk);
  r.check("(ii)" + eq, pw);
  r.check("(ii) R(X)=R((BW)^k)", rng);
  r.check("(iii) XWBWX=X", outer);
  r.check("(iii) R(X)=R((BW)^k)", rng);
  r.check("(iv) X=(BW)^k[(BW)^k]^+X", proj);
  r.check("(iv)" + eq, pw);
  r.check("(v) XWBWX=X", outer);
  r.check("(v) X=(BW)^k[(BW)^k]^+X", proj);
  r.check("(v)" + eq, pw);
  r.check("(vi) BWXWX=X", rel_diff(BW * X * W * X, X));
  r.check("(vi)" + eq, pw);
  r.check("(vii) X=(BW)^D BW X", rel_diff(drazin(BW, tol).value * BW * X, X));
  r.check("(vii)" + eq, pw);
  return r;
}

inline VerificationReport check_mrwwd_right(const WeightedPair& p, const Matrix& Z, const ToleranceConfig& tol = {}) {
  if (Z.rows() != p.m() || Z.cols() != p.n()) throw DimensionError("Z must be " + shape(p.B()));
  const Matrix &B = p.B(), &W = p.W();
  Matrix WB = p.WB();
  Matrix N = detail::clean_power(WB, p.k_wb(), tol);
  Matrix M = W * matrix_power(p.BW(), p.k_wb() + 1);
  Matrix NpN = mp_inverse(N, tol) * N;
  VerificationReport r("thm2.8", tol);
  double pw = rel_diff(M * Z, N);
  double nul = null_equal_residual(Z, N, tol);
  double outer = rel_diff(Z * W * B * W * Z, Z);
  double proj = rel_diff(Z * NpN, Z);
  const std::string eq = " W(BW)^{k+1}Z=(WB)^k";

  r.check("(i)" + eq, pw);
  r.check_rank("(i) rank Z=rank (WB)^k", rank_of(Z, tol), rank_of(N, tol));
  r.check("(ii)" + eq, pw);
  r.check("(ii) N(Z)=N((WB)^k)", nul);
  r.check("(iii) ZWBWZ=Z", outer);
  r.check("(iii) N(Z)=N((WB)^k)", nul);
  r.check("(iv) Z=Z[(WB)^k]^+(WB)^k", proj);
  r.check("(iv)" + eq, pw);
  r.check("(v) ZWBWZ=Z", outer);
  r.check("(v) Z=Z[(WB)^k]^+(WB)^k", proj);
  r.check("(v)" + eq, pw);
  r.check("(vi) ZWZWB=Z", rel_diff(Z * W * Z * WB, Z));
  r.check("(vi)" + eq, pw);
  r.check("(vii) Z=Z(WB)^D WB", rel_diff(Z * drazin(WB, tol).value * WB, Z));
  r.check("(vii)" + eq, pw);
  return r;
}

inline VerificationReport check_weak_mpd_system(const WeightedPair& p, const Matrix& X, const Matrix& Y,
                                                const ToleranceConfig& tol = {}) {
  if (Y.rows() != p.n() || Y.cols() != p.m()) throw DimensionError("Y must be the shape of B^*");
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  Matrix Kk1 = matrix_power(p.BW(), p.k_bw() + 1);
  VerificationReport r("thm3.1", tol);
  r.check_equal("YBY=Y", Y * B * Y, Y);
  r.check_equal("BY=BWXW", B * Y, B * W * X * W);
  r.check_equal("Y(BW)^{k+1}=B^+(BW)^{k+1}", Y * Kk1, Bp * Kk1);
  return r;
}

inline VerificationReport check_weak_dmp_system(const WeightedPair& p, const Matrix& Z, const Matrix& Y1,
                                                const ToleranceConfig& tol = {}) {
  if (Y1.rows() != p.n() || Y1.cols() != p.m()) throw DimensionError("Y1 must be the shape of B^*");
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  Matrix Nk1 = matrix_power(p.WB(), p.k_wb() + 1);
  VerificationReport r("lem3.2", tol);
  r.check_equal("Y1BY1=Y1", Y1 * B * Y1, Y1);
  r.check_equal("Y1B=WZWB", Y1 * B, W * Z * W * B);
  r.check_equal("(WB)^{k+1}Y1=(WB)^{k+1}B^+", Nk1 * Y1, Nk1 * Bp);
  return r;
}

// YXB only exists for square B; the checked form inserts W (YXWB), and the
// literal one is reported on the side when it is defined
inline VerificationReport check_mpd_characterizations(const WeightedPair& p, const Matrix& X, const Matrix& Y,
                                                      const ToleranceConfig& tol = {},
                                                      const std::string& id = "thm3.3") {
  if (Y.rows() != p.n() || Y.cols() != p.m()) throw DimensionError("Y must be the shape of B^*");
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  Matrix Kk1 = matrix_power(p.BW(), p.k_bw() + 1);
  Matrix BWXW = B * W * X * W;
  VerificationReport r(id, tol);
  double outer = rel_diff(Y * B * Y, Y);
  double by = rel_diff(B * Y, BWXW);
  double pw = rel_diff(Y * Kk1, Bp * Kk1);
  double yb = rel_diff(Y * B, Bp * B * Y * B);
  double left = rel_diff(Y, Bp * B * Y);

  r.check("(i) Y=B^+BWXW", rel_diff(Y, Bp * BWXW));
  r.check("(ii) YBY=Y", outer);
  r.check("(ii) BYB=BWXWB", rel_diff(B * Y * B, BWXW * B));
  r.check("(ii) BY=BWXW", by);
  r.check("(ii) Y(BW)^{k+1}=B^+(BW)^{k+1}", pw);
  r.check("(iii) YBY=Y", outer);
  r.check("(iii) BY=BWXW", by);
  r.check("(iii) YB=B^+BYB", yb);
  r.check("(iv) BY=BWXW", by);
  r.check("(iv) YB=B^+BYB", yb);
  r.check("(iv) Y=B^+BY", left);
  r.check("(v) YBY=Y", outer);
  r.check("(v) BY=BWXW", by);
  r.check("(v) Y(BW)^{k+1}=B^+(BW)^{k+1}", pw);
  r.check("(v) YX=B^+X", rel_diff(Y * X, Bp * X));
  r.check("(vi) Y=B^+BY", left);
  r.check("(vi) BY=BWXW", by);
  r.check("(vi) YXB^+=B^+XB^+", rel_diff(Y * X * Bp, Bp * X * Bp));
  r.check("(vii) Y=B^+BY", left);
  r.check("(vii) BY=BWXW", by);
  r.check("(vii) YXWB=B^+XWB", rel_diff(Y * X * W * B, Bp * X * W * B));
  if (p.m() == p.n()) r.note("(vii) YXB=B^+XB as printed", rel_diff(Y * X * B, Bp * X * B));
  return r;
}

// mirror of the above; (v) uses the mirrored equations and (vii) inserts W
inline VerificationReport check_dmp_characterizations(const WeightedPair& p, const Matrix& Z, const Matrix& Y1,
                                                      const ToleranceConfig& tol = {}) {
  if (Y1.rows() != p.n() || Y1.cols() != p.m()) throw DimensionError("Y1 must be the shape of B^*");
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  Matrix Nk1 = matrix_power(p.WB(), p.k_wb() + 1);
  Matrix WZWB = W * Z * W * B;
  VerificationReport r("thm3.4", tol);
  double outer = rel_diff(Y1 * B * Y1, Y1);
  double yb = rel_diff(Y1 * B, WZWB);
  double pw = rel_diff(Nk1 * Y1, Nk1 * Bp);
  double by = rel_diff(B * Y1, B * Y1 * B * Bp);
  double right = rel_diff(Y1, Y1 * B * Bp);

  r.check("(i) Y1=WZWBB^+", rel_diff(Y1, WZWB * Bp));
  r.check("(ii) Y1BY1=Y1", outer);
  r.check("(ii) BY1B=BWZWB", rel_diff(B * Y1 * B, B * WZWB));
  r.check("(ii) Y1B=WZWB", yb);
  r.check("(ii) (WB)^{k+1}Y1=(WB)^{k+1}B^+", pw);
  r.check("(iii) Y1BY1=Y1", outer);
  r.check("(iii) Y1B=WZWB", yb);
  r.check("(iii) BY1=BY1BB^+", by);
  r.check("(iv) Y1B=WZWB", yb);
  r.check("(iv) BY1=BY1BB^+", by);
  r.check("(iv) Y1=Y1BB^+", right);
  r.check("(v) Y1BY1=Y1", outer);
  r.check("(v) Y1B=WZWB", yb);
  r.check("(v) (WB)^{k+1}Y1=(WB)^{k+1}B^+", pw);
  r.check("(v) ZY1=ZB^+", rel_diff(Z * Y1, Z * Bp));
  r.check("(vi) Y1=Y1BB^+", right);
  r.check("(vi) Y1B=WZWB", yb);
  r.check("(vi) B^+ZY1=B^+ZB^+", rel_diff(Bp * Z * Y1, Bp * Z * Bp));
  r.check("(vii) Y1=Y1BB^+", right);
  r.check("(vii) Y1B=WZWB", yb);
  r.check("(vii) BWZY1=BWZB^+", rel_diff(B * W * Z * Y1, B * W * Z * Bp));
  r.note("(v) BY1=BWZW as printed", rel_diff(B * Y1, B * W * Z * W));
  if (p.m() == p.n()) r.note("(vii) BZY1=BZB^+ as printed", rel_diff(B * Z * Y1, B * Z * Bp));
  return r;
}

inline VerificationReport check_wdrazin_specialization(const WeightedPair& p, const Matrix& Y,
                                                       const ToleranceConfig& tol = {}) {
  return check_mpd_characterizations(p, w_drazin(p, tol).value, Y, tol, "thm3.5");
}

inline VerificationReport check_projectors(const WeightedPair& p, const Matrix& X, const Matrix& Y,
                                           const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix BW = p.BW();
  Matrix K = detail::clean_power(BW, p.k_bw(), tol);
  Matrix G = mp_inverse(B, tol) * K * BW;
  Matrix XW = X * W;
  VerificationReport r("lem3.6", tol);
  r.absorb(oblique_projector_check(B * Y, K, XW, tol), "(i) BY ");
  r.absorb(oblique_projector_check(Y * B, G, XW * B, tol), "(ii) YB ");
  r.check_equal("(iii) YBY=Y", Y * B * Y, Y);
  r.check("(iii) R(Y)=R(B^+(BW)^{k+1})", range_equal_residual(Y, G, tol));
  r.check("(iii) N(Y)=N(XW)", null_equal_residual(Y, XW, tol));
  return r;
}

inline VerificationReport check_projectors_right(const WeightedPair& p, const Matrix& Z, const Matrix& Y1,
                                                 const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix WB = p.WB();
  Matrix N = detail::clean_power(WB, p.k_wb(), tol);
  Matrix F = N * WB * mp_inverse(B, tol);
  Matrix WZ = W * Z;
  VerificationReport r("lem3.7", tol);
  r.absorb(oblique_projector_check(B * Y1, B * WZ, F, tol), "(i) BY1 ");
  r.absorb(oblique_projector_check(Y1 * B, WZ, N, tol), "(ii) Y1B ");
  r.check_equal("(iii) Y1BY1=Y1", Y1 * B * Y1, Y1);
  r.check("(iii) R(Y1)=R(WZ)", range_equal_residual(Y1, WZ, tol));
  r.check("(iii) N(Y1)=N((WB)^{k+1}B^+)", null_equal_residual(Y1, F, tol));
  return r;
}

// U (V* U)^{-1} V*: the projector onto R(range_gen) along N(null_gen)
inline Matrix oblique_projector(const Matrix& range_gen, const Matrix& null_gen, const ToleranceConfig& tol = {}) {
  Matrix U = range_basis(range_gen, tol);
  Matrix V = range_basis(null_gen.adjoint(), tol);
  if (U.cols() != V.cols()) throw DegenerateError("range and null generators have different ranks");
  Matrix G = V.adjoint() * U;
  Eigen::FullPivLU<Matrix> lu(G);
  if (U.cols() > 0 && !lu.isInvertible()) throw DegenerateError("range and null space are not complementary");
  if (U.cols() == 0) return Matrix::Zero(range_gen.rows(), range_gen.rows());
  return U * lu.inverse() * V.adjoint();
}

// left: BY = P_{R((BW)^k), N(XW)} with R(Y) in R(B*); right: Y1B = P_{R(WZ), N((WB)^k)} with R(Y1*) in R(B)
inline VerificationReport check_unique_projector_solution(const WeightedPair& p, const Matrix& XZ, const Matrix& Y,
                                                          const ToleranceConfig& tol = {}, Side side = Side::left) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  if (side == Side::left) {
    VerificationReport r("thm3.8", tol);
    Matrix K = detail::clean_power(p.BW(), p.k_bw(), tol);
    Matrix P = oblique_projector(K, XZ * W, tol);
    r.check_equal("BY=P_{R((BW)^k),N(XW)}", B * Y, P);
    r.check("R(Y) in R(B*)", range_residual(Y, B.adjoint(), tol));
    r.check_equal("Y=B^+P", Y, Bp * P);
    return r;
  }
  VerificationReport r("lem3.9", tol);
  Matrix N = detail::clean_power(p.WB(), p.k_wb(), tol);
  Matrix P = oblique_projector(W * XZ, N, tol);
  r.check_equal("Y1B=P_{R(WZ),N((WB)^k)}", Y * B, P);
  r.check("R(Y1*) in R(B)", range_residual(Y.adjoint(), B, tol));
  r.check_equal("Y1=PB^+", Y, P * Bp);
  return r;
}

inline VerificationReport check_mpd_dmp_expressions(const WeightedPair& p, const Matrix& X, const Matrix& Z,
                                                    const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  Matrix Bp = mp_inverse(B, tol);
  VerificationReport r("lem3.10", tol);
  r.check_equal("B^+BWXW=B^{+,D,W}BWXW", Bp * B * W * X * W, w_mpd(p, tol).value * B * W * X * W);
  r.check_equal("WZWBB^+=WZWBB^{D,+,W}", W * Z * W * B * Bp, W * Z * W * B * w_dmp(p, tol).value);
  return r;
}

// Q = B^+ + U(I - (BW)^k[(BW)^k]^+); BQB=B is reported, not asserted
inline std::pair<Matrix, VerificationReport> one_inverse_family(const WeightedPair& p, const Matrix& U,
                                                                const Matrix& X, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  if (U.rows() != p.n() || U.cols() != p.m()) throw DimensionError("U must be the shape of B^*");
  Matrix Bp = mp_inverse(B, tol);
  Matrix BW = p.BW();
  Matrix K = detail::clean_power(BW, p.k_bw(), tol);
  Matrix Q = Bp + U * (identity(p.m()) - projector_onto(K, tol));
  Matrix Kk1 = K * BW;
  VerificationReport r("thm3.12", tol);
  r.check_equal("(i) QBWXW=B^+BWXW", Q * B * W * X * W, Bp * B * W * X * W);
  r.check_equal("(ii) Q(BW)^{k+1}=B^+(BW)^{k+1}", Q * Kk1, Bp * Kk1);
  r.check("(iii) R(Q(BW)^{k+1})=R(B^+(BW)^{k+1})", range_equal_residual(Q * Kk1, Bp * Kk1, tol));
  r.check("(iv) R(Q(BW)^{k+1}) in R(B^+(BW)^{k+1})", range_residual(Q * Kk1, Bp * Kk1, tol));
  r.note("BQB=B", rel_diff(B * Q * B, B));
  return {Q, r};
}

inline std::pair<Matrix, VerificationReport> one_inverse_family_right(const WeightedPair& p, const Matrix& U,
                                                                      const Matrix& Z,
                                                                      const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  if (U.rows() != p.n() || U.cols() != p.m()) throw DimensionError("U must be the shape of B^*");
  Matrix Bp = mp_inverse(B, tol);
  Matrix WB = p.WB();
  Matrix N = detail::clean_power(WB, p.k_wb(), tol);
  Matrix Q = Bp + (identity(p.n()) - mp_inverse(N, tol) * N) * U;
  Matrix Nk1 = N * WB;
  VerificationReport r("lem3.13", tol);
  r.check_equal("(i) WZWBB^+=WZWBQ", W * Z * W * B * Bp, W * Z * W * B * Q);
  r.check_equal("(ii) (WB)^{k+1}Q=(WB)^{k+1}B^+", Nk1 * Q, Nk1 * Bp);
  r.check("(iii) N((WB)^{k+1}Q)=N((WB)^{k+1}B^+)", null_equal_residual(Nk1 * Q, Nk1 * Bp, tol));
  r.check("(iv) N((WB)^{k+1}Q) in N((WB)^{k+1}B^+)", range_residual((Nk1 * Bp).adjoint(), (Nk1 * Q).adjoint(), tol));
  r.note("BQB=B", rel_diff(B * Q * B, B));
  return {Q, r};
}

// Y = B^+ + Zfree (I - BWXW) solves Y(BW)^{k+1} = B^+(BW)^{k+1}
inline std::pair<Matrix, VerificationReport> mpd_general_solution(const WeightedPair& p, const Matrix& X,
                                                                  const Matrix& Zfree,
                                                                  const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  if (Zfree.rows() != p.n() || Zfree.cols() != p.m()) throw DimensionError("Zfree must be the shape of B^*");
  Matrix Bp = mp_inverse(B, tol);
  Matrix Y = Bp + Zfree * (identity(p.m()) - B * W * X * W);
  Matrix Kk1 = matrix_power(p.BW(), p.k_bw() + 1);
  VerificationReport r("lem3.14", tol);
  r.check_equal("Y(BW)^{k+1}=B^+(BW)^{k+1}", Y * Kk1, Bp * Kk1);
  return {Y, r};
}

}  // namespace wdrazin
