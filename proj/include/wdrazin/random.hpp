#pragma once

#include "matcore.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace wdrazin {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng_); }
  bool coin() { return integer(0, 1) == 1; }
  cplx phase() { return std::polar(1.0, uniform(0.0, 2.0 * M_PI)); }

  Matrix gaussian(Eigen::Index r, Eigen::Index c) {
    Matrix G(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
      for (Eigen::Index i = 0; i < r; ++i) {
        double re = normal(), im = normal();
        G(i, j) = cplx(re, im) / std::sqrt(2.0);
      }
    return G;
  }

  Matrix unitary(Eigen::Index n) {
    if (n == 0) return Matrix(0, 0);
    Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
    return qr.householderQ() * identity(n);
  }

  // U diag(U[0.7,1.4]) V
  Matrix well_conditioned(Eigen::Index q) {
    Matrix D = Matrix::Zero(q, q);
    for (Eigen::Index i = 0; i < q; ++i) D(i, i) = uniform(0.7, 1.4);
    Matrix U = unitary(q);
    return U * D * unitary(q);
  }

  // strictly upper bidiagonal with Jordan chains; the first chain has length kt
  Matrix nilpotent_chains(Eigen::Index d, int kt) {
    Matrix N = Matrix::Zero(d, d);
    Eigen::Index i = 0;
    bool first = true;
    while (i < d) {
      Eigen::Index len = first ? kt : integer(1, kt);
      len = std::min(len, d - i);
      first = false;
      for (Eigen::Index j = i; j + 1 < i + len; ++j) N(j, j + 1) = uniform(0.5, 1.5) * phase();
      i += len;
    }
    return N;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

struct RandomInstance {
  Matrix B, W;
  int target_index = 0;
  Eigen::Index q = 0;
};

// B = M [[B1,B2],[0,B3]] N*, W = N [[W1,W2],[0,W3]] M* with B3W3 nilpotent of
// index kt, so ind(BW) = kt and rank((BW)^k) = q by construction
inline RandomInstance random_pair(Eigen::Index m, Eigen::Index n, Eigen::Index q, int kt, Rng& rng) {
  if (q < 1 || q > std::min(m, n)) throw std::invalid_argument("core rank out of range");
  Eigen::Index r = m - q, s = n - q, d = std::min(r, s);
  Matrix B1 = rng.well_conditioned(q), W1 = rng.well_conditioned(q);
  Matrix B2 = 0.5 * rng.gaussian(q, s), W2 = 0.5 * rng.gaussian(q, r);
  Matrix Nch = rng.nilpotent_chains(d, std::max(kt, 1));
  Matrix D = Matrix::Zero(d, d), Dinv = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    D(i, i) = rng.uniform(0.7, 1.4);
    Dinv(i, i) = 1.0 / D(i, i);
  }
  Matrix B3 = Matrix::Zero(r, s), W3 = Matrix::Zero(s, r);
  if (s >= r) {
    B3.leftCols(d) = D;
    W3.topRows(d) = Dinv * Nch;
    if (rng.coin()) W3.bottomRows(s - d) = 0.5 * rng.gaussian(s - d, r);
  } else {
    B3.topRows(d) = Nch * Dinv;
    W3.leftCols(d) = D;
  }
  Matrix Bb = Matrix::Zero(m, n), Wb = Matrix::Zero(n, m);
  Bb.topLeftCorner(q, q) = B1;
  Bb.topRightCorner(q, s) = B2;
  Bb.bottomRightCorner(r, s) = B3;
  Wb.topLeftCorner(q, q) = W1;
  Wb.topRightCorner(q, r) = W2;
  Wb.bottomRightCorner(s, r) = W3;
  Matrix M = rng.unitary(m), N = rng.unitary(n);
  return {M * Bb * N.adjoint(), N * Wb * M.adjoint(), kt, q};
}

// m, n in [1, max_dim], index at most max_index
inline RandomInstance random_pair(Rng& rng, int max_dim = 8, int max_index = 3) {
  Eigen::Index m = rng.integer(1, max_dim), n = rng.integer(1, max_dim);
  Eigen::Index q = rng.integer(1, int(std::min(m, n)));
  Eigen::Index r = m - q, s = n - q, d = std::min(r, s);
  int kt = 0;
  if (r == 0)
    kt = 0;
  else if (d == 0)
    kt = 1;
  else
    kt = rng.integer(1, int(std::min<Eigen::Index>(max_index, d)));
  return random_pair(m, n, q, kt, rng);
}

// square S = U [[S1,S2],[0,Nil]] U* with ind(S) = kt
inline Matrix random_square(Eigen::Index n, int kt, Rng& rng) {
  Eigen::Index nil = kt == 0 ? 0 : std::max<Eigen::Index>(kt, rng.integer(0, int(n - 1)));
  nil = std::min(nil, n - 1);
  Eigen::Index q = n - nil;
  Matrix S = Matrix::Zero(n, n);
  S.topLeftCorner(q, q) = rng.well_conditioned(q);
  S.topRightCorner(q, nil) = 0.5 * rng.gaussian(q, nil);
  S.bottomRightCorner(nil, nil) = rng.nilpotent_chains(nil, kt);
  Matrix U = rng.unitary(n);
  return U * S * U.adjoint();
}

inline Matrix random_square(Rng& rng, int max_dim = 8, int max_index = 3) {
  Eigen::Index n = rng.integer(2, max_dim);
  int kt = rng.integer(0, int(std::min<Eigen::Index>(max_index, n - 1)));
  return random_square(n, kt, rng);
}

}  // namespace wdrazin
