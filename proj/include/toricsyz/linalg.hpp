#pragma once

// Small dense exact linear algebra over the integers. Everything here is
// desk-scale: matrices with at most a few dozen rows.

#include <cstddef>
#include <utility>
#include <vector>

#include "toricsyz/integer.hpp"

namespace toricsyz {

using IntegerMatrix = std::vector<std::vector<Integer>>;

namespace detail {

// Fraction-free (Bareiss) forward elimination in place. Returns the rank and
// the sign of the row permutation applied.
inline std::pair<std::size_t, int> bareiss_eliminate(IntegerMatrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  std::size_t rank = 0;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      sign = -sign;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        m[r][k] = m[rank][c] * m[r][k] - m[r][c] * m[rank][k];
        mpz_divexact(m[r][k].get_mpz_t(), m[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return {rank, sign};
}

}  // namespace detail

inline std::size_t rank(IntegerMatrix m) { return detail::bareiss_eliminate(m).first; }

/// Determinant of a square matrix; the empty matrix has determinant 1.
inline Integer determinant(IntegerMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  // Bareiss skips zero columns, so detect singularity through the rank.
  auto [r, sign] = detail::bareiss_eliminate(m);
  if (r < n) return 0;
  return sign * m[n - 1][n - 1];
}

/// Result of unimodular column reduction D * U = [H | 0].
struct ColumnEchelon {
  std::size_t rank = 0;
  IntegerMatrix transform;  // U, N x N, unimodular
  IntegerMatrix inverse;    // U^{-1}
};

/// Column-style Hermite reduction of a k x N integer matrix. The first `rank`
/// columns of D*U span the column space; the rest vanish. Because U is
/// unimodular, x -> (x*U)[0..rank) identifies Z^N intersected with the row
/// space of D with Z^rank.
inline ColumnEchelon column_echelon(IntegerMatrix d, std::size_t ncols) {
  ColumnEchelon out;
  out.transform.assign(ncols, std::vector<Integer>(ncols, 0));
  out.inverse.assign(ncols, std::vector<Integer>(ncols, 0));
  for (std::size_t i = 0; i < ncols; ++i) out.transform[i][i] = out.inverse[i][i] = 1;

  auto& u = out.transform;
  auto& uinv = out.inverse;
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : d) std::swap(row[a], row[b]);
    for (auto& row : u) std::swap(row[a], row[b]);
    std::swap(uinv[a], uinv[b]);
  };
  // col[target] -= q * col[source]
  auto sub_col = [&](std::size_t target, std::size_t source, const Integer& q) {
    for (auto& row : d) row[target] -= q * row[source];
    for (auto& row : u) row[target] -= q * row[source];
    for (std::size_t k = 0; k < ncols; ++k) uinv[source][k] += q * uinv[target][k];
  };

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < d.size() && pivot < ncols; ++r) {
    auto& row = d[r];
    while (true) {
      std::size_t best = ncols;
      for (std::size_t c = pivot; c < ncols; ++c) {
        if (row[c] == 0) continue;
        if (best == ncols || abs(row[c]) < abs(row[best])) best = c;
      }
      if (best == ncols) break;
      swap_cols(pivot, best);
      bool done = true;
      for (std::size_t c = pivot + 1; c < ncols; ++c) {
        if (row[c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), row[c].get_mpz_t(), row[pivot].get_mpz_t());
        sub_col(c, pivot, q);
        if (row[c] != 0) done = false;
      }
      if (done) break;
    }
    if (row[pivot] != 0) ++pivot;
  }
  out.rank = pivot;
  return out;
}

}  // namespace toricsyz
