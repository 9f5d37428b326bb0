#pragma once

// Univariate polynomials over an exact coefficient domain, the annihilator
// P_L(t) = prod_{l in L} (t - l), and conversion to the binomial basis
// binom(t,0), ..., binom(t,s).

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lintersect/arith.hpp"
#include "lintersect/error.hpp"

namespace lintersect {

/// Sorted set of levels j (indices into the binomial basis or Boolean lattice).
using LevelSet = std::vector<unsigned>;

/// Sorted duplicate-free set of nonnegative integers, used for L, K and R.
/// The modulus, when one applies, travels with the domain or Mode argument.
class ResidueSet {
 public:
  ResidueSet() = default;
  ResidueSet(std::initializer_list<std::uint64_t> values) : ResidueSet(std::vector<std::uint64_t>(values)) {}
  explicit ResidueSet(std::vector<std::uint64_t> values) : elements_(std::move(values)) {
    std::sort(elements_.begin(), elements_.end());
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
      throw Error(ErrorCode::InvalidArgument, "residue set has a repeated element");
  }

  std::span<const std::uint64_t> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(std::uint64_t x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }
  std::uint64_t max() const { return elements_.empty() ? 0 : elements_.back(); }

  bool disjoint_from(const ResidueSet& other) const {
    return std::none_of(elements_.begin(), elements_.end(), [&](auto x) { return other.contains(x); });
  }

  /// Throws ResidueOutOfRange unless every element is < p.
  void require_below(std::uint64_t p) const {
    if (!elements_.empty() && elements_.back() >= p)
      throw Error(ErrorCode::ResidueOutOfRange,
                  std::to_string(elements_.back()) + " is not a residue mod " + std::to_string(p));
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(elements_[i]);
    }
    return out + "}";
  }

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  std::vector<std::uint64_t> elements_;
};

/// Dense polynomial a_0 + a_1 t + ... + a_d t^d, trailing zeros trimmed.
template <CoefficientDomain D>
class PowerPoly {
 public:
  using value_type = typename D::value_type;

  explicit PowerPoly(D domain) : domain_(std::move(domain)) {}
  PowerPoly(D domain, std::vector<value_type> coefficients)
      : domain_(std::move(domain)), coeffs_(std::move(coefficients)) {
    trim();
  }
  PowerPoly(D domain, std::initializer_list<std::int64_t> coefficients) : domain_(std::move(domain)) {
    for (auto c : coefficients) coeffs_.push_back(domain_.from_int(c));
    trim();
  }

  static PowerPoly constant(D domain, std::int64_t c) { return PowerPoly(domain, {c}); }

  const D& domain() const noexcept { return domain_; }
  const std::vector<value_type>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  value_type coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : domain_.zero(); }

  value_type evaluate(const value_type& t) const {
    value_type acc = domain_.zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = domain_.add(domain_.mul(acc, t), *it);
    return acc;
  }
  value_type evaluate_at(std::int64_t t) const { return evaluate(domain_.from_int(t)); }

  /// Multiplies in place by (t - root).
  PowerPoly& multiply_by_root(const value_type& root) {
    if (coeffs_.empty()) return *this;
    std::vector<value_type> out(coeffs_.size() + 1, domain_.zero());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      out[i + 1] = domain_.add(out[i + 1], coeffs_[i]);
      out[i] = domain_.sub(out[i], domain_.mul(root, coeffs_[i]));
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
  }

  friend PowerPoly operator+(const PowerPoly& a, const PowerPoly& b) {
    std::vector<value_type> out(std::max(a.coeffs_.size(), b.coeffs_.size()), a.domain_.zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.domain_.add(a.coefficient(i), b.coefficient(i));
    return PowerPoly(a.domain_, std::move(out));
  }

  friend PowerPoly operator-(const PowerPoly& a, const PowerPoly& b) {
    std::vector<value_type> out(std::max(a.coeffs_.size(), b.coeffs_.size()), a.domain_.zero());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.domain_.sub(a.coefficient(i), b.coefficient(i));
    return PowerPoly(a.domain_, std::move(out));
  }

  friend PowerPoly operator*(const PowerPoly& a, const PowerPoly& b) {
    if (a.is_zero() || b.is_zero()) return PowerPoly(a.domain_);
    std::vector<value_type> out(a.coeffs_.size() + b.coeffs_.size() - 1, a.domain_.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] = a.domain_.add(out[i + j], a.domain_.mul(a.coeffs_[i], b.coeffs_[j]));
    return PowerPoly(a.domain_, std::move(out));
  }

  PowerPoly scaled(const value_type& c) const {
    std::vector<value_type> out;
    out.reserve(coeffs_.size());
    for (const auto& a : coeffs_) out.push_back(domain_.mul(a, c));
    return PowerPoly(domain_, std::move(out));
  }

  friend bool operator==(const PowerPoly& a, const PowerPoly& b) {
    return a.domain_ == b.domain_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && domain_.is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  D domain_;
  std::vector<value_type> coeffs_;
};

/// Coefficients c_0..c_s of sum_j c_j binom(t, j). Zeros are retained.
template <CoefficientDomain D>
class BinomialExpansion {
 public:
  using value_type = typename D::value_type;

  BinomialExpansion(D domain, std::vector<value_type> coefficients)
      : domain_(std::move(domain)), coeffs_(std::move(coefficients)) {}

  const D& domain() const noexcept { return domain_; }
  const std::vector<value_type>& coefficients() const noexcept { return coeffs_; }
  /// s, the top basis index.
  unsigned top() const noexcept { return static_cast<unsigned>(coeffs_.size()) - 1; }
  const value_type& operator[](std::size_t j) const { return coeffs_.at(j); }

  /// { j : c_j != 0 }
  LevelSet support() const {
    LevelSet out;
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
      if (!domain_.is_zero(coeffs_[j])) out.push_back(static_cast<unsigned>(j));
    return out;
  }

  /// sum_j c_j binom(t, j) for a nonnegative integer t.
  value_type evaluate_at(std::uint64_t t) const {
    value_type acc = domain_.zero();
    BigInt b = 1;  // binom(t, j)
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (j > 0) b = b * (BigInt(t) - (j - 1)) / j;
      acc = domain_.add(acc, domain_.mul(coeffs_[j], domain_.from_bigint(b)));
    }
    return acc;
  }

  friend bool operator==(const BinomialExpansion&, const BinomialExpansion&) = default;

 private:
  D domain_;
  std::vector<value_type> coeffs_;
};

// ---------------------------------------------------------------------------

namespace detail {

template <CoefficientDomain D>
void require_residues(const ResidueSet& values, const D& domain) {
  if (auto p = domain.modulus()) values.require_below(*p);
}

template <CoefficientDomain D>
void require_basis(unsigned s, const D& domain) {
  if (auto p = domain.modulus(); p && s >= *p)
    throw Error(ErrorCode::BasisDegenerate, "binom(t,0..s) is not a basis mod " + std::to_string(*p) +
                                                " when s = " + std::to_string(s));
}

}  // namespace detail

/// P_L(t) = prod_{l in L} (t - l). L = {} gives the constant 1.
template <CoefficientDomain D>
PowerPoly<D> annihilator_poly(const ResidueSet& roots, const D& domain) {
  detail::require_residues(roots, domain);
  if (auto p = domain.modulus(); p && roots.size() >= *p)
    throw Error(ErrorCode::DegreeExceedsModulus,
                "|L| = " + std::to_string(roots.size()) + " must be < p = " + std::to_string(*p));
  auto poly = PowerPoly<D>::constant(domain, 1);
  for (auto root : roots.elements()) poly.multiply_by_root(domain.from_int(static_cast<std::int64_t>(root)));
  return poly;
}

/// (t)_k = t (t-1) ... (t-k+1); (t)_0 = 1.
template <CoefficientDomain D>
PowerPoly<D> falling_factorial(unsigned k, const D& domain) {
  auto poly = PowerPoly<D>::constant(domain, 1);
  for (unsigned i = 0; i < k; ++i) poly.multiply_by_root(domain.from_int(i));
  return poly;
}

/// Expansion of `poly` in binom(t,0..s).
///
/// Synthetic division by t, t-1, ..., t-s in turn leaves remainders r_j with
///   poly = sum_j r_j (t)_j,
/// and since (t)_j = j! binom(t,j) the binomial coefficients are c_j = j! r_j.
/// Over the integers every r_j is an integer, so the result stays integral.
template <CoefficientDomain D>
BinomialExpansion<D> to_binomial_basis(const PowerPoly<D>& poly, unsigned s) {
  const D& dom = poly.domain();
  detail::require_basis(s, dom);
  if (poly.degree() > static_cast<int>(s))
    throw Error(ErrorCode::InvalidArgument,
                "degree " + std::to_string(poly.degree()) + " exceeds basis size s = " + std::to_string(s));

  using V = typename D::value_type;
  std::vector<V> quotient = poly.coefficients();
  std::vector<V> out(s + 1, dom.zero());
  V scale = dom.one();  // j!
  for (unsigned j = 0; j <= s && !quotient.empty(); ++j) {
    if (j > 0) scale = dom.mul(scale, dom.from_int(j));
    const V root = dom.from_int(j);
    // Horner-style division by (t - j): the last accumulated value is the remainder.
    std::vector<V> next(quotient.size() - 1, dom.zero());
    V acc = dom.zero();
    for (std::size_t i = quotient.size(); i-- > 0;) {
      acc = dom.add(dom.mul(acc, root), quotient[i]);
      if (i > 0) next[i - 1] = acc;
    }
    out[j] = dom.mul(acc, scale);
    quotient = std::move(next);
  }
  return BinomialExpansion<D>(dom, std::move(out));
}

/// Power-basis reconstruction, sum_j (c_j / j!) (t)_j. Over the integers this
/// throws InvalidArgument when some c_j is not divisible by j!.
template <CoefficientDomain D>
PowerPoly<D> to_power_basis(const BinomialExpansion<D>& expansion) {
  const D& dom = expansion.domain();
  detail::require_basis(expansion.top(), dom);
  PowerPoly<D> acc(dom);
  auto ff = PowerPoly<D>::constant(dom, 1);
  typename D::value_type scale = dom.one();
  for (unsigned j = 0; j <= expansion.top(); ++j) {
    if (j > 0) {
      ff.multiply_by_root(dom.from_int(j - 1));
      scale = dom.mul(scale, dom.from_int(j));
    }
    acc = acc + ff.scaled(dom.divide_exact(expansion[j], scale));
  }
  return acc;
}

template <CoefficientDomain D>
BinomialExpansion<D> binomial_expansion(const ResidueSet& roots, const D& domain) {
  return to_binomial_basis(annihilator_poly(roots, domain), static_cast<unsigned>(roots.size()));
}

/// Binomial support of P_L: { j : c_j(L) != 0 }.
template <CoefficientDomain D>
LevelSet bsupp(const ResidueSet& roots, const D& domain) {
  return binomial_expansion(roots, domain).support();
}

struct AlmostInitial {
  unsigned m = 0;
  ResidueSet extra;  // R
  friend bool operator==(const AlmostInitial&, const AlmostInitial&) = default;
};

/// Decomposes L = {0, ..., s-m-1} u R with the smallest m. m = s is the
/// degenerate pattern with an empty initial segment. Absent when L is empty
/// or some element is not a residue mod p.
inline std::optional<AlmostInitial> is_almost_initial(const ResidueSet& roots, std::uint64_t p) {
  if (roots.empty() || roots.max() >= p) return std::nullopt;
  const auto elems = roots.elements();
  std::size_t run = 0;
  while (run < elems.size() && elems[run] == run) ++run;
  AlmostInitial out;
  out.m = static_cast<unsigned>(elems.size() - run);
  out.extra = ResidueSet(std::vector<std::uint64_t>(elems.begin() + static_cast<std::ptrdiff_t>(run), elems.end()));
  return out;
}

}  // namespace lintersect
