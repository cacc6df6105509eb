#pragma once

#include "matcore.hpp"
#include "winv.hpp"

#include <string>

namespace wdrazin {

struct BlockDecomposition {
  Matrix M, N;
  Eigen::Index q = 0;
  Matrix B1, B2, B3, W1, W2, W3;
  int k = 0;
  ResidualMap residuals;
  Matrix B, W;
};

struct CanonicalBlocks {
  Matrix Delta, Qblk, Dblk;
  Matrix B3p, Pn;  // B3^+ and I - B3^+ B3
};

namespace detail {

inline Matrix full_left_singular(const Matrix& A) {
  if (A.rows() == 0) return Matrix(0, 0);
  Eigen::JacobiSVD<Matrix> s(A, Eigen::ComputeFullU);
  if (s.info() != Eigen::Success) throw ComputationError("SVD failed in decomposition");
  return s.matrixU();
}

inline double min_singular(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> s(A);
  return s.singularValues()(s.singularValues().size() - 1);
}

}  // namespace detail

// M from R((BW)^k), N from R((WB)^k), k = max of both indices
inline BlockDecomposition weighted_core_ep_decompose(const WeightedPair& p, const ToleranceConfig& tol = {}) {
  const Matrix &B = p.B(), &W = p.W();
  const Eigen::Index m = p.m(), n = p.n();
  int k = p.k();
  Matrix K = detail::clean_power(p.BW(), k, tol);
  Matrix Nk = detail::clean_power(p.WB(), k, tol);
  Eigen::Index q = rank_of(K, tol);
  if (rank_of(Nk, tol) != q)
    throw DegenerateError("rank((BW)^k) and rank((WB)^k) differ: " + std::to_string(q) + " vs " +
                          std::to_string(rank_of(Nk, tol)));

  BlockDecomposition d;
  d.k = k;
  d.q = q;
  d.B = B;
  d.W = W;
  d.M = q > 0 ? detail::full_left_singular(K) : identity(m);
  d.N = q > 0 ? detail::full_left_singular(Nk) : identity(n);
  Matrix Bb = d.M.adjoint() * B * d.N;
  Matrix Wb = d.N.adjoint() * W * d.M;
  d.B1 = Bb.topLeftCorner(q, q);
  d.B2 = Bb.topRightCorner(q, n - q);
  d.B3 = Bb.bottomRightCorner(m - q, n - q);
  d.W1 = Wb.topLeftCorner(q, q);
  d.W2 = Wb.topRightCorner(q, m - q);
  d.W3 = Wb.bottomRightCorner(n - q, m - q);

  double nb = spectral_norm(B), nw = spectral_norm(W);
  double llB = spectral_norm(Bb.bottomLeftCorner(m - q, q)) / (1.0 + nb);
  double llW = spectral_norm(Wb.bottomLeftCorner(n - q, q)) / (1.0 + nw);
  if (llB > tol.residual_atol || llW > tol.residual_atol)
    throw ComputationError("lower-left blocks do not vanish: " + std::to_string(llB) + ", " + std::to_string(llW));

  double sB = detail::min_singular(d.B1), sW = detail::min_singular(d.W1);
  if (q > 0 && (sB <= tol.rank_rtol * double(q) * (1.0 + nb) || sW <= tol.rank_rtol * double(q) * (1.0 + nw)))
    throw DegenerateError("leading blocks are numerically singular: sigma_min " + std::to_string(sB) + ", " +
                          std::to_string(sW));

  Matrix Bre = Matrix::Zero(m, n), Wre = Matrix::Zero(n, m);
  Bre.topLeftCorner(q, q) = d.B1;
  Bre.topRightCorner(q, n - q) = d.B2;
  Bre.bottomRightCorner(m - q, n - q) = d.B3;
  Wre.topLeftCorner(q, q) = d.W1;
  Wre.topRightCorner(q, m - q) = d.W2;
  Wre.bottomRightCorner(n - q, m - q) = d.W3;

  d.residuals = {{"M*M=I", rel_diff(d.M.adjoint() * d.M, identity(m))},
                 {"N*N=I", rel_diff(d.N.adjoint() * d.N, identity(n))},
                 {"B reassembly", spectral_norm(B - d.M * Bre * d.N.adjoint()) / (1.0 + nb)},
                 {"W reassembly", spectral_norm(W - d.N * Wre * d.M.adjoint()) / (1.0 + nw)},
                 {"lower-left B", llB},
                 {"lower-left W", llW}};
  detail::certify("decomposition", d.residuals, tol);
  return d;
}

// nilpotency indices of the trailing products, each computed by index_of
inline std::pair<int, int> trailing_indices(const BlockDecomposition& d, const ToleranceConfig& tol = {}) {
  Matrix BW3 = d.B3 * d.W3, WB3 = d.W3 * d.B3;
  // blocks are unitary slices of B and W, so round-off scales with ||B|| ||W||
  const double sc = spectral_norm(d.B) * spectral_norm(d.W);
  int a = BW3.rows() ? index_of(BW3, tol, sc) : 0;
  int b = WB3.rows() ? index_of(WB3, tol, sc) : 0;
  return {a, b};
}

inline CanonicalBlocks canonical_blocks(const BlockDecomposition& d, const ToleranceConfig& tol = {}) {
  CanonicalBlocks c;
  double nb = spectral_norm(d.B);
  c.B3p = mp_inverse(d.B3, tol, nb);
  c.Pn = identity(d.B3.cols()) - c.B3p * d.B3;
  if (d.q == 0) return c;
  Matrix G = d.B1 * d.B1.adjoint() + d.B2 * c.Pn * d.B2.adjoint();
  Eigen::FullPivLU<Matrix> lu(G);
  if (!lu.isInvertible()) throw DegenerateError("Delta is singular");
  c.Delta = lu.inverse();
  Matrix T = (d.W1 * d.B1 * d.W1).inverse();
  c.Qblk = d.B1 * d.W1 * T * d.W1;
  c.Dblk = c.Delta * d.B1 * d.W1 * T * d.W2;
  return c;
}

inline Matrix mp_via_blocks(const BlockDecomposition& d, const ToleranceConfig& tol = {}) {
  auto c = canonical_blocks(d, tol);
  const Eigen::Index m = d.B.rows(), n = d.B.cols(), q = d.q;
  Matrix H = Matrix::Zero(n, m);
  if (q > 0) {
    H.topLeftCorner(q, q) = d.B1.adjoint() * c.Delta;
    H.topRightCorner(q, m - q) = -d.B1.adjoint() * c.Delta * d.B2 * c.B3p;
    H.bottomLeftCorner(n - q, q) = c.Pn * d.B2.adjoint() * c.Delta;
    H.bottomRightCorner(n - q, m - q) = c.B3p - c.Pn * d.B2.adjoint() * c.Delta * d.B2 * c.B3p;
  } else {
    H = c.B3p;
  }
  Matrix Bp = d.N * H * d.M.adjoint();
  Matrix direct = mp_inverse(d.B, tol);
  double r = rel_diff(Bp, direct);
  if (r > tol.residual_atol)
    throw FormulaDiscrepancyError("block pseudoinverse disagrees with SVD: " + std::to_string(r), Bp, direct);
  return Bp;
}

// X must read [[(W1 B1 W1)^{-1}, X2], [0, 0]] under (M, N)
inline Matrix weak_mpd_canonical(const BlockDecomposition& d, const Matrix& X, const ToleranceConfig& tol = {}) {
  const Eigen::Index m = d.B.rows(), n = d.B.cols(), q = d.q;
  if (X.rows() != m || X.cols() != n) throw DimensionError("X must be " + shape(d.B));
  WeightedPair p(d.B, d.W, tol);
  Matrix direct = weak_mpd(p, X, tol).value;
  if (q == 0) return direct;

  Matrix Xb = d.M.adjoint() * X * d.N;
  Matrix T = (d.W1 * d.B1 * d.W1).inverse();
  double shape_res = spectral_norm(Xb.bottomRows(m - q)) / (1.0 + spectral_norm(X));
  shape_res = std::max(shape_res, rel_diff(Xb.topLeftCorner(q, q), T));
  if (shape_res > tol.residual_atol)
    throw HypothesisError("X is not in canonical block form (residual " + std::to_string(shape_res) + ")");
  Matrix X2 = Xb.topRightCorner(q, n - q);

  auto c = canonical_blocks(d, tol);
  Matrix tail = c.Delta * d.B1 * d.W1 * X2 * d.W3;
  Matrix Yb(n, m);
  Yb.topLeftCorner(q, q) = d.B1.adjoint() * c.Delta * c.Qblk;
  Yb.topRightCorner(q, m - q) = d.B1.adjoint() * c.Dblk + d.B1.adjoint() * tail;
  Yb.bottomLeftCorner(n - q, q) = c.Pn * d.B2.adjoint() * c.Delta * c.Qblk;
  Yb.bottomRightCorner(n - q, m - q) = c.Pn * d.B2.adjoint() * c.Dblk + c.Pn * d.B2.adjoint() * tail;
  Matrix Y = d.N * Yb * d.M.adjoint();
  double r = rel_diff(Y, direct);
  if (r > tol.residual_atol)
    throw FormulaDiscrepancyError("canonical weak MPD disagrees with direct formula: " + std::to_string(r), Y,
                                  direct);
  return Y;
}

}  // namespace wdrazin
