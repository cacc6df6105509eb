#pragma once

#include "matcore.hpp"

#include <initializer_list>

namespace wdrazin::fixtures {

inline Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::Index r = Eigen::Index(rows.size()), c = Eigen::Index(rows.begin()->size());
  Matrix A(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) A(i, j++) = v;
    ++i;
  }
  return A;
}

// zero matrix except for the first row
inline Matrix first_row(Eigen::Index rows, std::initializer_list<double> row) {
  Matrix A = Matrix::Zero(rows, Eigen::Index(row.size()));
  Eigen::Index j = 0;
  for (double v : row) A(0, j++) = v;
  return A;
}

inline Matrix A1() {
  return from_rows({{1, 1, 0, 1}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 0}});
}
inline Matrix W1() { return from_rows({{1, 0, 0, 0, 1}, {0, 0, 1, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 0}}); }

inline Matrix A2() {
  return from_rows({{1, 1, 1, 1}, {0, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}});
}
inline Matrix B2() {
  return from_rows({{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
}
inline Matrix C2() {
  return from_rows({{1, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
}
inline Matrix W2() { return first_row(4, {1, 1, 0, 1, 1}); }

// left family member of (A1, W1) with first row (1, x1, 0, x2)
inline Matrix ex1_member(double x1, double x2) { return first_row(5, {1, x1, 0, x2}); }

// the displayed weak Drazin inverses of the second example
inline Matrix ex2_Z(double z1, double z2, double z3) { return first_row(5, {1, z1, z2, z3}); }
inline Matrix ex2_Y(double y1, double y2) { return first_row(5, {1, y1, 0, y2}); }
inline Matrix ex2_U(double u1) { return first_row(5, {1, u1, 0, 0}); }

}  // namespace wdrazin::fixtures
