#pragma once

// Exact rank of dense matrices: fraction-free (Bareiss) elimination over the
// integers and Gauss-Jordan elimination over F_p.

#include <cstdint>
#include <utility>
#include <vector>

#include "lintersect/arith.hpp"

namespace lintersect {

template <typename T>
using DenseMatrix = std::vector<std::vector<T>>;

struct RankResult {
  std::size_t rank = 0;
  std::uint64_t operations = 0;  // entry updates performed
};

/// Rank over Q of an integer matrix. After each pivot step every entry below
/// the pivot row is a minor of the input, so the division by the previous
/// pivot is exact and no fractions appear.
inline RankResult rank_fraction_free(DenseMatrix<BigInt> m) {
  RankResult out;
  if (m.empty()) return out;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  BigInt previous = 1;
  BigInt scratch;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    const auto& prow = m[r];
    const BigInt& head = prow[c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      auto& row = m[i];
      const BigInt factor = row[c];
      row[c] = 0;
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (row[j] == 0 && (factor == 0 || prow[j] == 0)) continue;
        scratch = head * row[j];
        if (factor != 0 && prow[j] != 0) scratch -= factor * prow[j];
        if (previous != 1) scratch /= previous;
        row[j] = std::move(scratch);
        ++out.operations;
      }
    }
    previous = head;
    ++r;
  }
  out.rank = r;
  return out;
}

/// Rank over F_p of a matrix with entries already reduced mod p.
inline RankResult rank_mod_p(DenseMatrix<std::uint64_t> m, const ModularDomain& dom) {
  RankResult out;
  if (m.empty()) return out;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    const auto inv = dom.inverse(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = dom.mul(m[r][j], inv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const auto factor = m[i][c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        if (m[r][j] == 0) continue;
        m[i][j] = dom.sub(m[i][j], dom.mul(factor, m[r][j]));
        ++out.operations;
      }
    }
    ++r;
  }
  out.rank = r;
  return out;
}

inline RankResult exact_rank(const IntegerDomain&, DenseMatrix<BigInt> m) { return rank_fraction_free(std::move(m)); }
inline RankResult exact_rank(const ModularDomain& dom, DenseMatrix<std::uint64_t> m) {
  return rank_mod_p(std::move(m), dom);
}

}  // namespace lintersect
