#pragma once

// Linear-independence witnesses behind the bounds, built explicitly and
// checked by exact rank:
//
//   * the polynomial family  B = {f_i} u {x_I g : |I| <= s-r} u {x_J : J non-shadow}
//     for the multilevel theorems (integers or F_p), and
//   * the incidence vectors w_A (plus unit vectors e_T on non-shadows) and the
//     Gram matrix P_L(|A n B|) for the coefficient-sensitive theorems (F_p).

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lintersect/arith.hpp"
#include "lintersect/bounds.hpp"
#include "lintersect/error.hpp"
#include "lintersect/ffpoly.hpp"
#include "lintersect/linalg.hpp"
#include "lintersect/multilinear.hpp"
#include "lintersect/setfam.hpp"

namespace lintersect {

inline constexpr std::int64_t kDefaultMatrixCap = 200000;

struct Certificate {
  std::string domain;  // "rationals" or "F_p"
  std::optional<std::uint64_t> p;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  bool independent = false;
  std::vector<std::pair<std::string, std::size_t>> blocks;  // name, size, in row order
  std::uint64_t operations = 0;
  DenseMatrix<BigInt> matrix;  // row-major, filled only on request
};

struct CertificateOptions {
  std::int64_t matrix_cap = kDefaultMatrixCap;  // max columns
  bool keep_matrix = false;
};

enum class HypothesisPolicy { Enforce, Record };

template <CoefficientDomain D>
struct WitnessFamily {
  D domain;
  unsigned n = 0;
  std::size_t s = 0;
  std::size_t r = 0;
  std::vector<MultilinearPoly<D>> polys{};  // triangular, filter, non-shadow blocks in order
  std::size_t triangular_count = 0;
  std::size_t filter_count = 0;
  std::size_t nonshadow_count = 0;
  bool hypotheses_ok = true;
  std::vector<std::string> violated{};

  std::size_t size() const noexcept { return polys.size(); }

  /// dim span{x_I : |I| <= s} = sum_{i<=s} binom(n, i)
  std::int64_t ambient_dimension() const {
    std::int64_t total = 0;
    for (std::size_t i = 0; i <= s; ++i) total = checked_add(total, binomial(n, i));
    return total;
  }
};

namespace detail {

inline std::string domain_label(const IntegerDomain&) { return "rationals"; }
inline std::string domain_label(const ModularDomain& d) { return d.name(); }

template <CoefficientDomain D>
Mode mode_of(const D& domain) {
  if (auto p = domain.modulus()) return Mode::modulo(*p);
  return Mode::exact();
}

inline void require_columns(std::int64_t columns, std::int64_t cap) {
  if (columns > cap)
    throw Error(ErrorCode::DimensionOverflow,
                std::to_string(columns) + " columns exceed the matrix cap of " + std::to_string(cap));
}

/// Monomials of degree <= d in canonical order, with a reverse index.
struct MonomialIndex {
  std::vector<Mask> monomials;
  std::unordered_map<Mask, std::size_t> position;

  MonomialIndex(unsigned n, unsigned max_degree) {
    for (unsigned i = 0; i <= std::min(max_degree, n); ++i)
      for_each_k_subset(ground_mask(n), i, [&](Mask m) {
        position.emplace(m, monomials.size());
        monomials.push_back(m);
      });
  }
};

}  // namespace detail

/// f_i(x) = prod_{l in L, l < |A_i|} (v_{A_i} . x - l), one per member in
/// canonical order.
template <CoefficientDomain D>
std::vector<MultilinearPoly<D>> triangular_polys(const SetFamily& family, const ResidueSet& meets, const D& domain) {
  if (auto p = domain.modulus(); p && !meets.empty() && meets.max() >= *p)
    throw Error(ErrorCode::DomainMismatch, "L = " + meets.to_string() + " is not a residue set mod " + std::to_string(*p));
  std::vector<MultilinearPoly<D>> out;
  out.reserve(family.size());
  for (Mask a : family.masks()) {
    auto f = MultilinearPoly<D>::constant(domain, family.n(), 1);
    for (auto l : meets.elements()) {
      if (l >= popcount(a)) break;
      f = f * MultilinearPoly<D>::linear_form(domain, family.n(), a, -static_cast<std::int64_t>(l));
    }
    out.push_back(std::move(f));
  }
  return out;
}

/// g(x) = prod_{k in K} (x_1 + ... + x_n - k)
template <CoefficientDomain D>
MultilinearPoly<D> filter_poly(const ResidueSet& sizes, unsigned n, const D& domain) {
  auto g = MultilinearPoly<D>::constant(domain, n, 1);
  for (auto k : sizes.elements())
    g = g * MultilinearPoly<D>::linear_form(domain, n, ground_mask(n), -static_cast<std::int64_t>(k));
  return g;
}

/// Assembles B for the multilevel theorem (IntegerDomain) or its modular
/// variant (ModularDomain). Under HypothesisPolicy::Enforce a failed
/// hypothesis throws HypothesisViolated; under Record it is only noted.
template <CoefficientDomain D>
WitnessFamily<D> build_witness(const SetFamily& family, const ResidueSet& sizes, const ResidueSet& meets,
                               const D& domain, HypothesisPolicy policy = HypothesisPolicy::Enforce) {
  const auto modulus = domain.modulus();
  const BoundReport hyp = modulus ? check_modular_multilevel(family, sizes, meets, *modulus)
                                  : check_multilevel(family, sizes, meets);
  if (!hyp.hypotheses_ok && policy == HypothesisPolicy::Enforce) {
    std::string what;
    for (const auto& v : hyp.violated) what += (what.empty() ? "" : "; ") + v;
    throw Error(ErrorCode::HypothesisViolated, what);
  }

  WitnessFamily<D> w{domain};
  w.n = family.n();
  w.s = meets.size();
  w.r = sizes.size();
  w.hypotheses_ok = hyp.hypotheses_ok;
  w.violated = hyp.violated;

  w.polys = triangular_polys(family, meets, domain);
  w.triangular_count = w.polys.size();

  const auto gap = static_cast<std::int64_t>(w.s) - static_cast<std::int64_t>(w.r);
  if (gap >= 0) {
    const auto g = filter_poly(sizes, family.n(), domain);
    for (unsigned i = 0; i <= std::min<std::int64_t>(gap, family.n()); ++i)
      for_each_k_subset(ground_mask(family.n()), i, [&](Mask index) {
        w.polys.push_back(g.times_monomial(index));
        ++w.filter_count;
      });
  }

  for (auto j : top_levels(w.s, w.r)) {
    if (j > family.n()) break;
    const SetFamily missing = nonshadow(family, j);
    for (Mask t : missing.masks()) {
      w.polys.push_back(MultilinearPoly<D>::monomial(domain, family.n(), t));
      ++w.nonshadow_count;
    }
  }
  return w;
}

/// Exact rank of the monomial-coefficient matrix of W. Columns are the
/// monomials of degree <= max(s, deg W) in canonical order.
template <CoefficientDomain D>
Certificate verify_independence(const WitnessFamily<D>& w, const CertificateOptions& options = {}) {
  int max_degree = static_cast<int>(w.s);
  for (const auto& f : w.polys) max_degree = std::max(max_degree, f.degree());
  const auto degree = static_cast<unsigned>(std::min<int>(max_degree, static_cast<int>(w.n)));

  std::int64_t columns = 0;
  for (unsigned i = 0; i <= degree; ++i) columns = checked_add(columns, binomial(w.n, i));
  detail::require_columns(columns, options.matrix_cap);
  const detail::MonomialIndex index(w.n, degree);

  using V = typename D::value_type;
  DenseMatrix<V> rows;
  rows.reserve(w.polys.size());
  for (const auto& f : w.polys) {
    std::vector<V> row(index.monomials.size(), w.domain.zero());
    for (const auto& [m, c] : f.terms()) row[index.position.at(m)] = c;
    rows.push_back(std::move(row));
  }

  Certificate cert;
  cert.domain = detail::domain_label(w.domain);
  cert.p = w.domain.modulus();
  cert.rows = rows.size();
  cert.cols = index.monomials.size();
  cert.blocks = {{"triangular", w.triangular_count}, {"filter", w.filter_count}, {"nonshadow", w.nonshadow_count}};
  if (options.keep_matrix) {
    for (const auto& row : rows) {
      std::vector<BigInt> out;
      for (const auto& v : row) out.push_back(w.domain.to_bigint(v));
      cert.matrix.push_back(std::move(out));
    }
  }
  const auto result = exact_rank(w.domain, std::move(rows));
  cert.rank = result.rank;
  cert.operations = result.operations;
  cert.independent = cert.rank == cert.rows;
  return cert;
}

/// Cross-check: rank of the evaluation matrix [h(J)] over all J in 2^[n].
/// Limited to n <= 12.
template <CoefficientDomain D>
Certificate verify_independence_by_evaluation(const WitnessFamily<D>& w) {
  if (w.n > 12) throw Error(ErrorCode::DimensionOverflow, "evaluation cross-check is limited to n <= 12");
  using V = typename D::value_type;
  const std::size_t points = std::size_t{1} << w.n;
  DenseMatrix<V> rows;
  for (const auto& f : w.polys) {
    std::vector<V> row(points, w.domain.zero());
    for (std::size_t J = 0; J < points; ++J) row[J] = f.evaluate(J);
    rows.push_back(std::move(row));
  }
  Certificate cert;
  cert.domain = detail::domain_label(w.domain);
  cert.p = w.domain.modulus();
  cert.rows = rows.size();
  cert.cols = points;
  cert.blocks = {{"triangular", w.triangular_count}, {"filter", w.filter_count}, {"nonshadow", w.nonshadow_count}};
  const auto result = exact_rank(w.domain, std::move(rows));
  cert.rank = result.rank;
  cert.operations = result.operations;
  cert.independent = cert.rank == cert.rows;
  return cert;
}

// ---------------------------------------------------------------------------

struct GramWitness {
  std::uint64_t p = 0;
  DenseMatrix<std::uint64_t> values;  // P_L(|A n B|) mod p
  bool valid = true;
  /// First offending entry in row-major order over i <= j: a zero diagonal
  /// entry (i == j) or a nonzero off-diagonal entry.
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
};

inline GramWitness gram_witness(const SetFamily& family, const ResidueSet& meets, std::uint64_t p) {
  const ModularDomain dom{PrimeModulus(p)};
  const auto annihilator = annihilator_poly(meets, dom);
  GramWitness out;
  out.p = p;
  const auto masks = family.masks();
  out.values.assign(masks.size(), std::vector<std::uint64_t>(masks.size(), 0));
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i; j < masks.size(); ++j) {
      const auto v = annihilator.evaluate_at(popcount(masks[i] & masks[j]));
      out.values[i][j] = out.values[j][i] = v;
      const bool bad = (i == j) ? v == 0 : v != 0;
      if (bad && out.valid) {
        out.valid = false;
        out.witness_pair = std::make_pair(i, j);
      }
    }
  }
  return out;
}

/// Rank over F_p of the vectors w_A = (u_A^{(j)})_{j in bsupp(L)}, A in F,
/// optionally joined by the unit vectors e_T^{(j)} for T in N_j(F).
inline Certificate incidence_independence(const SetFamily& family, const ResidueSet& meets, std::uint64_t p,
                                          bool with_nonshadows, const CertificateOptions& options = {}) {
  const ModularDomain dom{PrimeModulus(p)};
  if (meets.size() >= p)
    throw Error(ErrorCode::BasisDegenerate, "s must be below p for the binomial basis");
  const auto support = bsupp(meets, dom);
  const auto columns = level_sum(family.n(), support);
  detail::require_columns(columns, options.matrix_cap);

  std::vector<Mask> coords;  // column labels, grouped by level
  std::unordered_map<Mask, std::size_t> position;
  for (auto j : support) {
    if (j > family.n()) continue;
    for_each_k_subset(ground_mask(family.n()), j, [&](Mask t) {
      position.emplace(t, coords.size());
      coords.push_back(t);
    });
  }

  DenseMatrix<std::uint64_t> rows;
  for (Mask a : family.masks()) {
    std::vector<std::uint64_t> row(coords.size(), 0);
    for (std::size_t c = 0; c < coords.size(); ++c)
      if ((coords[c] & ~a) == 0) row[c] = 1;
    rows.push_back(std::move(row));
  }
  std::size_t unit_vectors = 0;
  if (with_nonshadows) {
    for (auto j : support) {
      if (j > family.n()) continue;
      const SetFamily missing = nonshadow(family, j);
      for (Mask t : missing.masks()) {
        std::vector<std::uint64_t> row(coords.size(), 0);
        row[position.at(t)] = 1;
        rows.push_back(std::move(row));
        ++unit_vectors;
      }
    }
  }

  Certificate cert;
  cert.domain = dom.name();
  cert.p = p;
  cert.rows = rows.size();
  cert.cols = coords.size();
  cert.blocks = {{"incidence", family.size()}, {"nonshadow", unit_vectors}};
  if (options.keep_matrix)
    for (const auto& row : rows) cert.matrix.emplace_back(row.begin(), row.end());
  const auto result = rank_mod_p(std::move(rows), dom);
  cert.rank = result.rank;
  cert.operations = result.operations;
  cert.independent = cert.rank == cert.rows;
  return cert;
}

}  // namespace lintersect
