#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call the library algorithm they are checking.

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "lintersect/lintersect.hpp"

namespace oracle {

using lintersect::Mask;
using Rational = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Pascal's triangle, no overflow checks needed at test sizes.
inline std::int64_t choose(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<std::int64_t> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j > 0; --j) row[j] += row[j - 1];
  return row[k];
}

inline Int mod_floor(const Int& a, std::uint64_t p) {
  Int r = a % p;
  if (r < 0) r += p;
  return r;
}

// c_j of P_L(t) = prod (t - l), found by evaluating P at t = 0..s and solving
// the unit lower-triangular system sum_{j<=i} c_j binom(i,j) = P(i).
// Returns values reduced mod p when p is given.
inline std::vector<Int> binomial_coefficients(const std::vector<std::uint64_t>& roots, std::optional<std::uint64_t> p) {
  const unsigned s = static_cast<unsigned>(roots.size());
  std::vector<Int> c(s + 1, 0);
  for (unsigned i = 0; i <= s; ++i) {
    Int value = 1;
    for (auto l : roots) value *= Int(i) - Int(l);
    for (unsigned j = 0; j < i; ++j) value -= c[j] * choose(i, j);
    c[i] = p ? mod_floor(value, *p) : value;
  }
  return c;
}

// Power-basis coefficients of prod (t - l) by direct convolution.
inline std::vector<Int> power_coefficients(const std::vector<std::uint64_t>& roots, std::optional<std::uint64_t> p) {
  std::vector<Int> a{1};
  for (auto l : roots) {
    std::vector<Int> next(a.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      next[i + 1] += a[i];
      next[i] -= a[i] * Int(l);
    }
    a = std::move(next);
  }
  if (p)
    for (auto& v : a) v = mod_floor(v, *p);
  return a;
}

// t-subsets of [n] contained in some member, by scanning all t-subsets.
inline std::vector<Mask> shadow(unsigned n, const std::vector<Mask>& family, unsigned t) {
  std::vector<Mask> out;
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    if (static_cast<unsigned>(std::popcount(x)) != t) continue;
    for (Mask a : family)
      if ((x & ~a) == 0) {
        out.push_back(x);
        break;
      }
  }
  return out;
}

// Rank over Q by Gaussian elimination on rationals.
inline std::size_t rational_rank(const std::vector<std::vector<Int>>& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<Rational>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Rank over F_p with plain inverse-by-Fermat elimination.
inline std::size_t modular_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  auto inv = [p](std::int64_t x) {
    std::int64_t r = 1, b = x % p, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  for (auto& row : a)
    for (auto& v : row) v = ((v % p) + p) % p;
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const auto iv = inv(a[rank][c]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const auto f = a[i][c] * iv % p;
      for (std::size_t j = c; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline bool admits(std::uint64_t value, const std::vector<std::uint64_t>& allowed, std::optional<std::uint64_t> p) {
  for (auto a : allowed)
    if (p ? value % *p == a % *p : value == a) return true;
  return false;
}

// Largest admissible family by enumerating every subfamily of the vertex set.
// Returns the size and the least family (as sorted vertex indices) in
// lexicographic order of index lists among the maximum ones.
struct NaiveResult {
  std::size_t size = 0;
  std::vector<std::size_t> members;
};

inline NaiveResult naive_max(const std::vector<Mask>& vertices, const std::vector<std::uint64_t>& meets,
                             std::optional<std::uint64_t> p) {
  const std::size_t v = vertices.size();
  std::vector<std::uint32_t> compatible(v, 0);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j)
      if (i != j && admits(static_cast<unsigned>(std::popcount(vertices[i] & vertices[j])), meets, p))
        compatible[i] |= std::uint32_t{1} << j;
  // clique[S] for every subset S, built from S minus its lowest element.
  const std::uint32_t total = std::uint32_t{1} << v;
  std::vector<bool> clique(total, false);
  clique[0] = true;
  NaiveResult best;
  std::optional<std::vector<std::size_t>> best_list;
  for (std::uint32_t s = 1; s < total; ++s) {
    const unsigned low = static_cast<unsigned>(std::countr_zero(s));
    const std::uint32_t rest = s & (s - 1);
    clique[s] = clique[rest] && (rest & ~compatible[low]) == 0;
    if (!clique[s]) continue;
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (size < best.size) continue;
    std::vector<std::size_t> list;
    for (std::uint32_t u = s; u; u &= u - 1) list.push_back(static_cast<std::size_t>(std::countr_zero(u)));
    if (size > best.size || list < *best_list) {
      best.size = size;
      best_list = list;
    }
  }
  if (best_list) best.members = *best_list;
  return best;
}

}  // namespace oracle
