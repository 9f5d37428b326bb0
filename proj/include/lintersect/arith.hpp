#pragma once

// Exact coefficient arithmetic. Two domains share one interface:
//   IntegerDomain  - arbitrary-precision integers
//   ModularDomain  - residues modulo a prime p
// No floating point is used anywhere in the library.

#include <array>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "lintersect/error.hpp"

namespace lintersect {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto b : bases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  unsigned twos = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++twos;
  }
  for (auto a : bases) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < twos; ++i) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw Error(ErrorCode::NonPrimeModulus, std::to_string(p) + " is not prime");
  }

  std::uint64_t value() const noexcept { return p_; }
  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint64_t p_;
};

class IntegerDomain {
 public:
  using value_type = BigInt;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return v; }
  value_type from_bigint(const BigInt& v) const { return v; }
  BigInt to_bigint(const value_type& v) const { return v; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  bool is_zero(const value_type& a) const { return a == 0; }

  /// Exact quotient; a remainder means the result is not integral.
  value_type divide_exact(const value_type& a, const value_type& b) const {
    if (b == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0) throw Error(ErrorCode::InvalidArgument, "quotient is not an integer");
    return q;
  }

  std::optional<std::uint64_t> modulus() const { return std::nullopt; }
  std::string name() const { return "integers"; }
  friend bool operator==(const IntegerDomain&, const IntegerDomain&) = default;
};

class ModularDomain {
 public:
  using value_type = std::uint64_t;

  explicit ModularDomain(PrimeModulus p) : p_(p) {}
  explicit ModularDomain(std::uint64_t p) : p_(p) {}

  std::uint64_t p() const noexcept { return p_.value(); }
  PrimeModulus prime() const noexcept { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p(); }
  value_type from_int(std::int64_t v) const {
    auto m = static_cast<std::int64_t>(p());
    auto r = v % m;
    return static_cast<value_type>(r < 0 ? r + m : r);
  }
  value_type from_bigint(const BigInt& v) const {
    BigInt r = v % p();
    if (r < 0) r += p();
    return static_cast<value_type>(r);
  }
  BigInt to_bigint(const value_type& v) const { return v; }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p() ? s - p() : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p() - b; }
  value_type mul(value_type a, value_type b) const { return detail::mulmod(a, b, p()); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p() - a; }
  bool is_zero(value_type a) const { return a == 0; }

  value_type inverse(value_type a) const {
    if (a == 0) throw Error(ErrorCode::InvalidArgument, "zero has no inverse");
    return detail::powmod(a, p() - 2, p());
  }
  value_type divide_exact(value_type a, value_type b) const { return mul(a, inverse(b)); }

  std::optional<std::uint64_t> modulus() const { return p(); }
  std::string name() const { return "F_" + std::to_string(p()); }
  friend bool operator==(const ModularDomain&, const ModularDomain&) = default;

 private:
  PrimeModulus p_;
};

template <typename D>
concept CoefficientDomain = requires(const D d, const typename D::value_type v, std::int64_t i) {
  { d.zero() } -> std::convertible_to<typename D::value_type>;
  { d.one() } -> std::convertible_to<typename D::value_type>;
  { d.from_int(i) } -> std::convertible_to<typename D::value_type>;
  { d.add(v, v) } -> std::convertible_to<typename D::value_type>;
  { d.sub(v, v) } -> std::convertible_to<typename D::value_type>;
  { d.mul(v, v) } -> std::convertible_to<typename D::value_type>;
  { d.neg(v) } -> std::convertible_to<typename D::value_type>;
  { d.is_zero(v) } -> std::convertible_to<bool>;
  { d.to_bigint(v) } -> std::convertible_to<BigInt>;
  { d.modulus() } -> std::convertible_to<std::optional<std::uint64_t>>;
};

// ---------------------------------------------------------------------------
// Counting helpers. Counts are int64; overflow is a parameter error.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorCode::ParamOutOfRange, "count exceeds 64-bit range");
  return out;
}

/// binom(n, k) with binom(n, k) = 0 for k > n.
inline std::int64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    acc = acc * (n - i) / (i + 1);
    if (acc > static_cast<unsigned __int128>(INT64_MAX))
      throw Error(ErrorCode::ParamOutOfRange, "binomial coefficient exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(acc);
}

inline BigInt factorial(unsigned k) {
  BigInt f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace lintersect
