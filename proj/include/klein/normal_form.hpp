#pragma once

// Hermite and Smith normal forms over the integers.
//
// Hermite convention (row style): U * m = H with U unimodular and H in upper
// row-echelon form. Every pivot is positive, entries below a pivot are zero
// and entries above a pivot lie in [0, pivot). Zero rows sit at the bottom.
//
// Smith convention: U * m * V = S with U, V unimodular, S diagonal with
// nonnegative entries d_1 | d_2 | ... and all nonzero entries first.

#include <cstddef>
#include <utility>

#include "klein/core.hpp"

namespace klein {

struct HermiteForm {
  IntegerMatrix H;
  IntegerMatrix U;
};

struct SmithForm {
  IntegerMatrix S;
  IntegerMatrix U;
  IntegerMatrix V;
};

inline HermiteForm hermiteNormalForm(IntegerMatrix const& m) {
  IntegerMatrix H = m;
  IntegerMatrix U = IntegerMatrix::identity(m.rows());
  std::size_t pivotRow = 0;
  for (std::size_t col = 0; col < H.cols() && pivotRow < H.rows(); ++col) {
    // Euclid on column `col` over rows [pivotRow, rows).
    while (true) {
      std::size_t best = H.rows();
      for (std::size_t i = pivotRow; i < H.rows(); ++i) {
        if (H(i, col) == 0) continue;
        if (best == H.rows() || abs(H(i, col)) < abs(H(best, col))) best = i;
      }
      if (best == H.rows()) break;
      if (best != pivotRow) {
        H.swapRows(best, pivotRow);
        U.swapRows(best, pivotRow);
      }
      bool cleared = true;
      for (std::size_t i = pivotRow + 1; i < H.rows(); ++i) {
        if (H(i, col) == 0) continue;
        Integer q = H(i, col) / H(pivotRow, col);
        H.addRow(i, pivotRow, -q);
        U.addRow(i, pivotRow, -q);
        if (H(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (H(pivotRow, col) == 0) continue;
    if (H(pivotRow, col) < 0) {
      H.negateRow(pivotRow);
      U.negateRow(pivotRow);
    }
    for (std::size_t i = 0; i < pivotRow; ++i) {
      Integer q = floorDiv(H(i, col), H(pivotRow, col));
      H.addRow(i, pivotRow, -q);
      U.addRow(i, pivotRow, -q);
    }
    ++pivotRow;
  }
  return {std::move(H), std::move(U)};
}

inline SmithForm smithNormalForm(IntegerMatrix const& m) {
  IntegerMatrix S = m;
  IntegerMatrix U = IntegerMatrix::identity(m.rows());
  IntegerMatrix V = IntegerMatrix::identity(m.cols());
  std::size_t const n = std::min(S.rows(), S.cols());
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t bi = S.rows(), bj = S.cols();
      for (std::size_t i = t; i < S.rows(); ++i)
        for (std::size_t j = t; j < S.cols(); ++j) {
          if (S(i, j) == 0) continue;
          if (bi == S.rows() || abs(S(i, j)) < abs(S(bi, bj))) {
            bi = i;
            bj = j;
          }
        }
      if (bi == S.rows()) break;
      if (bi != t) {
        S.swapRows(bi, t);
        U.swapRows(bi, t);
      }
      if (bj != t) {
        S.swapCols(bj, t);
        V.swapCols(bj, t);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < S.rows(); ++i) {
        if (S(i, t) == 0) continue;
        Integer q = S(i, t) / S(t, t);
        S.addRow(i, t, -q);
        U.addRow(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < S.cols(); ++j) {
        if (S(t, j) == 0) continue;
        Integer q = S(t, j) / S(t, t);
        S.addCol(j, t, -q);
        V.addCol(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad = S.rows();
      for (std::size_t i = t + 1; i < S.rows() && bad == S.rows(); ++i)
        for (std::size_t j = t + 1; j < S.cols(); ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == S.rows()) break;
      S.addRow(t, bad, 1);
      U.addRow(t, bad, 1);
    }
    if (S(t, t) < 0) {
      S.negateRow(t);
      U.negateRow(t);
    }
  }
  return {std::move(S), std::move(U), std::move(V)};
}

// Inverse of a unimodular matrix, exactly.
inline IntegerMatrix unimodularInverse(IntegerMatrix const& m) {
  auto inv = inverse(toRational(m));
  if (!inv) throw InternalError("matrix is singular");
  auto out = toIntegerMatrix(*inv);
  if (!out) throw InternalError("matrix is not unimodular");
  return *out;
}

}  // namespace klein
