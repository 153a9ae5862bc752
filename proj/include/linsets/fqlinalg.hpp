// Exact dense linear algebra over a tabled base field F_q.
//
// Matrices hold digit indices into a SmallField; row reduction is the
// canonical-form workhorse behind subspaces, weights, and intersections.
#pragma once

#include <cstdint>
#include <vector>

#include "linsets/common.hpp"
#include "linsets/fields.hpp"

namespace linsets {

struct FqMat {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint16_t> a;

  FqMat() = default;
  FqMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  std::uint16_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  std::uint16_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  std::uint16_t* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
  const std::uint16_t* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }

  bool operator==(const FqMat&) const = default;
};

/// In-place reduced row echelon form; returns pivot columns. Zero rows are
/// dropped, so the result is the canonical basis matrix of the row space.
inline std::vector<int> fq_rref(FqMat& m, const SmallField& F) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m.at(i, c)) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    std::uint16_t piv_inv = F.inv(m.at(r, c));
    if (piv_inv != 1)
      for (int j = c; j < m.cols; ++j) m.at(r, j) = F.mul(piv_inv, m.at(r, j));
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      std::uint16_t f = m.at(i, c);
      if (!f) continue;
      for (int j = c; j < m.cols; ++j) m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  m.rows = r;
  m.a.resize(static_cast<size_t>(r) * m.cols);
  return pivots;
}

/// Reduces row (length m.cols) against an RREF matrix in place.
inline void fq_reduce_row(std::uint16_t* row, const FqMat& m, const std::vector<int>& pivots,
                          const SmallField& F) {
  for (size_t t = 0; t < pivots.size(); ++t) {
    std::uint16_t c = row[pivots[t]];
    if (!c) continue;
    const std::uint16_t* pr = m.row(static_cast<int>(t));
    for (int j = pivots[t]; j < m.cols; ++j) row[j] = F.sub(row[j], F.mul(c, pr[j]));
  }
}

inline bool fq_row_is_zero(const std::uint16_t* row, int cols) {
  for (int j = 0; j < cols; ++j)
    if (row[j]) return false;
  return true;
}

inline int fq_rank(FqMat m, const SmallField& F) { return static_cast<int>(fq_rref(m, F).size()); }

/// Basis of the left kernel {x : x * m = 0}, x a row vector of length m.rows.
inline FqMat fq_null_space(const FqMat& m, const SmallField& F) {
  FqMat work(m.rows, m.cols + m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) work.at(i, j) = m.at(i, j);
    work.at(i, m.cols + i) = 1;
  }
  auto pivots = fq_rref(work, F);
  FqMat out(0, m.rows);
  for (size_t t = 0; t < pivots.size(); ++t) {
    if (pivots[t] >= m.cols) {
      out.rows += 1;
      for (int j = 0; j < m.rows; ++j) out.a.push_back(work.at(static_cast<int>(t), m.cols + j));
    }
  }
  return out;
}

/// Solves x * m = b for a single row b, if consistent.
inline bool fq_solve_row(const FqMat& rref, const std::vector<int>& pivots,
                         const std::uint16_t* b, int cols, std::vector<std::uint16_t>& coeffs,
                         const SmallField& F) {
  std::vector<std::uint16_t> r(b, b + cols);
  coeffs.assign(pivots.size(), 0);
  for (size_t t = 0; t < pivots.size(); ++t) {
    std::uint16_t c = r[pivots[t]];
    if (!c) continue;
    coeffs[t] = c;
    const std::uint16_t* pr = rref.row(static_cast<int>(t));
    for (int j = pivots[t]; j < cols; ++j) r[j] = F.sub(r[j], F.mul(c, pr[j]));
  }
  return fq_row_is_zero(r.data(), cols);
}

}  // namespace linsets
