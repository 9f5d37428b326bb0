#pragma once

// Multilinear polynomials in x_1..x_n over an exact domain, stored as a
// sparse map from monomial index set I (a mask) to coefficient. Products are
// reduced with x_i^2 = x_i, so x_I * x_J = x_{I u J}.

#include <map>
#include <utility>

#include "lintersect/arith.hpp"
#include "lintersect/setfam.hpp"

namespace lintersect {

template <CoefficientDomain D>
class MultilinearPoly {
 public:
  using value_type = typename D::value_type;
  using Terms = std::map<Mask, value_type, CanonicalLess>;

  MultilinearPoly(D domain, unsigned n) : domain_(std::move(domain)), n_(n) {}

  static MultilinearPoly constant(D domain, unsigned n, std::int64_t c) {
    MultilinearPoly out(domain, n);
    out.add_term(0, out.domain_.from_int(c));
    return out;
  }

  static MultilinearPoly monomial(D domain, unsigned n, Mask index) {
    MultilinearPoly out(domain, n);
    out.add_term(index, out.domain_.one());
    return out;
  }

  /// sum_{i in support} x_i + c
  static MultilinearPoly linear_form(D domain, unsigned n, Mask support, std::int64_t c) {
    MultilinearPoly out(domain, n);
    for (Mask u = support; u; u &= u - 1) out.add_term(u & (~u + 1), out.domain_.one());
    out.add_term(0, out.domain_.from_int(c));
    return out;
  }

  const D& domain() const noexcept { return domain_; }
  unsigned n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [index, c] : terms_) d = std::max(d, static_cast<int>(popcount(index)));
    return d;
  }

  value_type coefficient(Mask index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? domain_.zero() : it->second;
  }

  void add_term(Mask index, const value_type& c) {
    if (domain_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(index, c);
    if (inserted) return;
    it->second = domain_.add(it->second, c);
    if (domain_.is_zero(it->second)) terms_.erase(it);
  }

  friend MultilinearPoly operator*(const MultilinearPoly& a, const MultilinearPoly& b) {
    MultilinearPoly out(a.domain_, a.n_);
    for (const auto& [i, ci] : a.terms_)
      for (const auto& [j, cj] : b.terms_) out.add_term(i | j, a.domain_.mul(ci, cj));
    return out;
  }

  MultilinearPoly times_monomial(Mask index) const {
    MultilinearPoly out(domain_, n_);
    for (const auto& [i, c] : terms_) out.add_term(i | index, c);
    return out;
  }

  /// Value at the 0/1 point of J: sum of coefficients of monomials x_I with I subset of J.
  value_type evaluate(Mask point) const {
    value_type acc = domain_.zero();
    for (const auto& [i, c] : terms_)
      if ((i & ~point) == 0) acc = domain_.add(acc, c);
    return acc;
  }

  friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  D domain_;
  unsigned n_;
  Terms terms_;
};

}  // namespace lintersect
