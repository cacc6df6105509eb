#pragma once

#include "matcore.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace wdrazin {

using ResidualMap = std::vector<std::pair<std::string, double>>;

namespace detail {

inline void certify(const std::string& what, const ResidualMap& res, const ToleranceConfig& tol) {
  const std::pair<std::string, double>* worst = nullptr;
  for (const auto& r : res)
    if (!(r.second <= tol.residual_atol) && (!worst || !(r.second <= worst->second))) worst = &r;
  if (worst)
    throw CertificationError(what + ": " + worst->first + " residual " + std::to_string(worst->second));
}

inline double pow_norm(const Matrix& S, int k) { return std::pow(spectral_norm(S), k); }

}  // namespace detail

struct SquareInverseResult {
  Matrix value;
  int index_used = 0;
  ResidualMap residuals;
};

// S^D = S^k (S^{2k+1})^+ S^k
inline SquareInverseResult drazin(const Matrix& S, const ToleranceConfig& tol = {}) {
  if (S.rows() != S.cols()) throw DimensionError("drazin needs a square matrix, got " + shape(S));
  int k = index_of(S, tol);
  Matrix Sk = matrix_power(S, k);
  Matrix Y = Sk * mp_inverse(matrix_power(S, 2 * k + 1), tol, detail::pow_norm(S, 2 * k + 1)) * Sk;
  SquareInverseResult r{Y, k, {}};
  r.residuals = {{"YSY=Y", rel_diff(Y * S * Y, Y)},
                 {"SY=YS", rel_diff(S * Y, Y * S)},
                 {"S^{k+1}Y=S^k", rel_diff(Sk * S * Y, Sk)}};
  detail::certify("drazin", r.residuals, tol);
  return r;
}

inline SquareInverseResult core_ep(const Matrix& S, const ToleranceConfig& tol = {}) {
  auto d = drazin(S, tol);
  int k = d.index_used;
  Matrix Sk = matrix_power(S, k);
  Matrix P = projector_onto(Sk, tol, detail::pow_norm(S, k));
  Matrix Y = d.value * P;
  SquareInverseResult r{Y, k, {}};
  r.residuals = {{"YSY=Y", rel_diff(Y * S * Y, Y)},
                 {"R(Y)=R(S^k)", range_equal_residual(Y, Sk, tol)},
                 {"SY=P(S^k)", rel_diff(S * Y, P)}};
  detail::certify("core-ep", r.residuals, tol);
  return r;
}

// (S^core)^{m+1} S^m
inline SquareInverseResult m_wgi(const Matrix& S, int m, const ToleranceConfig& tol = {}) {
  if (m < 1) throw std::invalid_argument("m-WGI needs m >= 1");
  auto c = core_ep(S, tol);
  Matrix Cm = matrix_power(c.value, m);
  Matrix Y = Cm * c.value * matrix_power(S, m);
  SquareInverseResult r{Y, c.index_used, {}};
  r.residuals = {{"SY=(S^core)^m S^m", rel_diff(S * Y, Cm * matrix_power(S, m))},
                 {"YSY=Y", rel_diff(Y * S * Y, Y)}};
  detail::certify("m-wgi", r.residuals, tol);
  return r;
}

// S^{wm} S^m (S^m)^+
inline Matrix m_weak_core(const Matrix& S, int m, const ToleranceConfig& tol = {}) {
  Matrix Sm = matrix_power(S, m);
  return m_wgi(S, m, tol).value * projector_onto(Sm, tol, detail::pow_norm(S, m));
}

}  // namespace wdrazin
