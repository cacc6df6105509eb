#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wdrazin {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CertificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormulaDiscrepancyError : std::runtime_error {
  Matrix formula, direct;
  FormulaDiscrepancyError(const std::string& what, Matrix f, Matrix d)
      : std::runtime_error(what), formula(std::move(f)), direct(std::move(d)) {}
};

struct ToleranceConfig {
  double rank_rtol = 1e-10;
  double residual_atol = 1e-10;

  void validate() const {
    if (!(rank_rtol > 0) || !(residual_atol > 0))
      throw std::invalid_argument("tolerances must be positive");
  }
};

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline bool all_finite(const Matrix& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      if (!std::isfinite(A(i, j).real()) || !std::isfinite(A(i, j).imag())) return false;
  return true;
}

inline std::string shape(const Matrix& A) {
  return std::to_string(A.rows()) + "x" + std::to_string(A.cols());
}

namespace detail {

inline Eigen::JacobiSVD<Matrix> svd(const Matrix& A, bool vectors) {
  if (!all_finite(A)) throw ComputationError("non-finite entries in " + shape(A) + " matrix");
  Eigen::JacobiSVD<Matrix> s;
  if (vectors)
    s.compute(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  else
    s.compute(A);
  if (s.info() != Eigen::Success) throw ComputationError("SVD failed on " + shape(A) + " matrix");
  return s;
}

// floor lets callers pin the cutoff to a known scale so that round-off in a
// block that should vanish is not mistaken for rank
inline double cutoff(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols,
                     const ToleranceConfig& tol, double floor) {
  double top = sv.size() ? sv(0) : 0.0;
  return tol.rank_rtol * double(std::max(rows, cols)) * std::max(top, floor);
}

}  // namespace detail

inline double spectral_norm(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  auto s = detail::svd(A, false);
  return s.singularValues()(0);
}

// ||a - b|| / (1 + max(||a||, ||b||))
inline double rel_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("residual of " + shape(a) + " against " + shape(b));
  if (a.size() == 0) return 0.0;
  return spectral_norm(a - b) / (1.0 + std::max(spectral_norm(a), spectral_norm(b)));
}

inline Matrix mp_inverse(const Matrix& A, const ToleranceConfig& tol = {}, double floor = 0.0) {
  Matrix H = Matrix::Zero(A.cols(), A.rows());
  if (A.size() == 0) return H;
  auto s = detail::svd(A, true);
  const auto& sv = s.singularValues();
  double cut = detail::cutoff(sv, A.rows(), A.cols(), tol, floor);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (!(sv(i) > cut)) break;
    H += (s.matrixV().col(i) / sv(i)) * s.matrixU().col(i).adjoint();
  }
  return H;
}

inline int rank_of(const Matrix& A, const ToleranceConfig& tol = {}, double floor = 0.0) {
  if (A.size() == 0) return 0;
  auto s = detail::svd(A, false);
  const auto& sv = s.singularValues();
  double cut = detail::cutoff(sv, A.rows(), A.cols(), tol, floor);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

inline Matrix matrix_power(const Matrix& S, int k) {
  if (S.rows() != S.cols()) throw DimensionError("power of non-square " + shape(S));
  Matrix R = identity(S.rows());
  for (int i = 0; i < k; ++i) R = R * S;
  return R;
}

// ranks of S^j use ||S||^j as floor; for a nilpotent S the computed powers are
// pure round-off and must count as rank 0
// scale > 0 sets the rank floor of S^j to scale^j (round-off of a block taken from a larger product)
inline int index_of(const Matrix& S, const ToleranceConfig& tol = {}, double scale = 0.0) {
  if (S.rows() != S.cols()) throw DimensionError("index of non-square " + shape(S));
  const Eigen::Index n = S.rows();
  const double s = scale > 0.0 ? scale : spectral_norm(S);
  Matrix P = identity(n);
  int prev = int(n);
  for (int k = 0; k <= n; ++k) {
    Matrix Q = P * S;
    int r = rank_of(Q, tol, std::pow(s, k + 1));
    if (r == prev) return k;
    prev = r;
    P = Q;
  }
  return int(n);
}

inline Matrix projector_onto(const Matrix& A, const ToleranceConfig& tol = {}, double floor = 0.0) {
  return A * mp_inverse(A, tol, floor);
}

// ||(I - B B^+) A|| / (1 + ||A||)
inline double range_residual(const Matrix& A, const Matrix& B, const ToleranceConfig& tol = {}) {
  if (A.rows() != B.rows())
    throw DimensionError("range test needs equal row counts: " + shape(A) + " vs " + shape(B));
  if (A.size() == 0) return 0.0;
  Matrix R = A - B * (mp_inverse(B, tol) * A);
  return spectral_norm(R) / (1.0 + spectral_norm(A));
}

inline bool range_inclusion(const Matrix& A, const Matrix& B, const ToleranceConfig& tol = {}) {
  return range_residual(A, B, tol) <= tol.residual_atol;
}

inline double range_equal_residual(const Matrix& A, const Matrix& B, const ToleranceConfig& tol = {}) {
  return std::max(range_residual(A, B, tol), range_residual(B, A, tol));
}

// N(A) = N(B) iff R(A*) = R(B*)
inline double null_equal_residual(const Matrix& A, const Matrix& B, const ToleranceConfig& tol = {}) {
  if (A.cols() != B.cols())
    throw DimensionError("null-space test needs equal column counts: " + shape(A) + " vs " + shape(B));
  return range_equal_residual(A.adjoint(), B.adjoint(), tol);
}

inline Matrix range_basis(const Matrix& A, const ToleranceConfig& tol = {}, double floor = 0.0) {
  if (A.size() == 0) return Matrix::Zero(A.rows(), 0);
  auto s = detail::svd(A, true);
  int r = rank_of(A, tol, floor);
  return s.matrixU().leftCols(r);
}

class WeightedPair {
 public:
  WeightedPair(Matrix B, Matrix W, const ToleranceConfig& tol = {}) : B_(std::move(B)), W_(std::move(W)) {
    if (B_.rows() < 1 || B_.cols() < 1) throw DimensionError("B must be non-empty");
    if (W_.rows() != B_.cols() || W_.cols() != B_.rows())
      throw DimensionError("W must be " + std::to_string(B_.cols()) + "x" + std::to_string(B_.rows()) +
                           ", got " + shape(W_));
    if (!all_finite(B_) || !all_finite(W_)) throw ComputationError("non-finite entries in pair");
    if (W_.isZero(0.0)) throw DimensionError("weight W must be nonzero");
    k_bw_ = index_of(B_ * W_, tol);
    k_wb_ = index_of(W_ * B_, tol);
  }

  const Matrix& B() const { return B_; }
  const Matrix& W() const { return W_; }
  Eigen::Index m() const { return B_.rows(); }
  Eigen::Index n() const { return B_.cols(); }
  int k_bw() const { return k_bw_; }
  int k_wb() const { return k_wb_; }
  int k() const { return std::max(k_bw_, k_wb_); }
  Matrix BW() const { return B_ * W_; }
  Matrix WB() const { return W_ * B_; }

 private:
  Matrix B_, W_;
  int k_bw_ = 0, k_wb_ = 0;
};

struct Condition {
  std::string label;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string theorem_id;
  std::vector<Condition> conditions;
  // evaluated and shown, never part of the verdict
  std::vector<Condition> informational;
  ToleranceConfig tol;

  VerificationReport() = default;
  VerificationReport(std::string id, const ToleranceConfig& t) : theorem_id(std::move(id)), tol(t) {}

  bool check(const std::string& label, double residual) {
    return check(label, residual, tol.residual_atol);
  }
  bool check(const std::string& label, double residual, double threshold) {
    bool ok = residual <= threshold;
    conditions.push_back({label, residual, threshold, ok});
    return ok;
  }
  bool check_equal(const std::string& label, const Matrix& lhs, const Matrix& rhs) {
    return check(label, rel_diff(lhs, rhs));
  }
  bool check_rank(const std::string& label, int a, int b) {
    return check(label, std::abs(double(a - b)), 0.5);
  }
  void note(const std::string& label, double residual) {
    informational.push_back({label, residual, tol.residual_atol, residual <= tol.residual_atol});
  }
  void absorb(const VerificationReport& other, const std::string& prefix = "") {
    for (const auto& c : other.conditions) conditions.push_back({prefix + c.label, c.residual, c.threshold, c.pass});
    for (const auto& c : other.informational)
      informational.push_back({prefix + c.label, c.residual, c.threshold, c.pass});
  }

  bool overall() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.pass; });
  }
  double worst() const {
    double w = 0.0;
    for (const auto& c : conditions) w = std::max(w, c.residual);
    return w;
  }
  const Condition* find(const std::string& label) const {
    for (const auto& c : conditions)
      if (c.label == label) return &c;
    return nullptr;
  }

  // conditions are labelled "(item) text"; an item passes when all of its
  // conditions do
  std::vector<std::pair<std::string, bool>> items() const {
    std::vector<std::pair<std::string, bool>> out;
    for (const auto& c : conditions) {
      std::string tag = "";
      if (!c.label.empty() && c.label[0] == '(') tag = c.label.substr(0, c.label.find(')') + 1);
      auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == tag; });
      if (it == out.end())
        out.emplace_back(tag, c.pass);
      else
        it->second = it->second && c.pass;
    }
    return out;
  }
  bool item_pass(const std::string& tag) const {
    for (const auto& [t, ok] : items())
      if (t == tag) return ok;
    return false;
  }
  bool items_agree() const {
    auto v = items();
    return std::all_of(v.begin(), v.end(), [&](const auto& p) { return p.second == v.front().second; });
  }
};

// P idempotent with range R(range_gen) and null space N(null_gen)
inline VerificationReport oblique_projector_check(const Matrix& P, const Matrix& range_gen, const Matrix& null_gen,
                                                  const ToleranceConfig& tol = {}) {
  if (P.rows() != P.cols()) throw DimensionError("projector must be square, got " + shape(P));
  if (range_gen.rows() != P.rows() || null_gen.cols() != P.cols())
    throw DimensionError("projector generators do not match " + shape(P));
  VerificationReport r("oblique-projector", tol);
  r.check_equal("P^2=P", P * P, P);
  r.check("R(P)=R(E)", range_equal_residual(P, range_gen, tol));
  r.check("N(P)=N(F)", null_equal_residual(P, null_gen, tol));
  return r;
}

}  // namespace wdrazin
