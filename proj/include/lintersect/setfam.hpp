#pragma once

// Subsets of [n] as 64-bit masks (bit i <-> element i+1), set families in
// canonical order, shadows, non-shadows and intersection conditions.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lintersect/arith.hpp"
#include "lintersect/error.hpp"
#include "lintersect/ffpoly.hpp"

namespace lintersect {

using Mask = std::uint64_t;
inline constexpr unsigned kMaxGroundSet = 64;

inline unsigned popcount(Mask m) noexcept { return static_cast<unsigned>(std::popcount(m)); }

inline Mask ground_mask(unsigned n) noexcept { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// Canonical order: by cardinality, then by numeric mask value.
inline bool canonical_less(Mask a, Mask b) noexcept {
  const unsigned ca = popcount(a);
  const unsigned cb = popcount(b);
  return ca != cb ? ca < cb : a < b;
}

struct CanonicalLess {
  bool operator()(Mask a, Mask b) const noexcept { return canonical_less(a, b); }
};

/// Calls f(mask) for every k-subset of `universe`, in lexicographic order of
/// element positions.
template <typename F>
void for_each_k_subset(Mask universe, unsigned k, F&& f) {
  std::vector<unsigned> pos;
  for (Mask u = universe; u; u &= u - 1) pos.push_back(static_cast<unsigned>(std::countr_zero(u)));
  const unsigned m = static_cast<unsigned>(pos.size());
  if (k > m) return;
  std::vector<unsigned> idx(k);
  for (unsigned i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mask s = 0;
    for (unsigned i : idx) s |= Mask{1} << pos[i];
    f(s);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && idx[static_cast<unsigned>(i)] == m - k + static_cast<unsigned>(i)) --i;
    if (i < 0) return;
    ++idx[static_cast<unsigned>(i)];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// A subset of [n].
class Subset {
 public:
  Subset(unsigned n, Mask mask) : n_(n), mask_(mask) {
    if (n > kMaxGroundSet) throw Error(ErrorCode::InvalidArgument, "ground set larger than 64");
    if (mask & ~ground_mask(n)) throw Error(ErrorCode::InvalidArgument, "element outside [n]");
  }

  /// From 1-based element labels.
  static Subset from_elements(unsigned n, std::span<const unsigned> elements) {
    Mask m = 0;
    for (auto e : elements) {
      if (e < 1 || e > n)
        throw Error(ErrorCode::InvalidArgument, "element " + std::to_string(e) + " outside [" + std::to_string(n) + "]");
      m |= Mask{1} << (e - 1);
    }
    return Subset(n, m);
  }

  unsigned n() const noexcept { return n_; }
  Mask mask() const noexcept { return mask_; }
  unsigned size() const noexcept { return popcount(mask_); }
  bool contains(const Subset& other) const noexcept { return (other.mask_ & ~mask_) == 0; }

  std::vector<unsigned> elements() const {
    std::vector<unsigned> out;
    for (Mask u = mask_; u; u &= u - 1) out.push_back(static_cast<unsigned>(std::countr_zero(u)) + 1);
    return out;
  }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  unsigned n_;
  Mask mask_;
};

/// Duplicate-free family of subsets of [n] in canonical order.
class SetFamily {
 public:
  explicit SetFamily(unsigned n = 0) : n_(n) {
    if (n > kMaxGroundSet) throw Error(ErrorCode::InvalidArgument, "ground set larger than 64");
  }

  /// Sorts into canonical order; rejects repeated sets and stray bits.
  SetFamily(unsigned n, std::vector<Mask> masks) : SetFamily(n) {
    const Mask ground = ground_mask(n);
    for (auto m : masks)
      if (m & ~ground) throw Error(ErrorCode::InvalidArgument, "member has an element outside [n]");
    std::sort(masks.begin(), masks.end(), CanonicalLess{});
    if (std::adjacent_find(masks.begin(), masks.end()) != masks.end())
      throw Error(ErrorCode::InvalidArgument, "family contains a repeated set");
    masks_ = std::move(masks);
  }

  SetFamily(unsigned n, std::initializer_list<std::initializer_list<unsigned>> sets) : SetFamily(n) {
    std::vector<Mask> masks;
    for (const auto& s : sets) masks.push_back(Subset::from_elements(n, std::vector<unsigned>(s)).mask());
    *this = SetFamily(n, std::move(masks));
  }

  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return masks_.size(); }
  bool empty() const noexcept { return masks_.empty(); }
  std::span<const Mask> masks() const noexcept { return masks_; }
  Mask operator[](std::size_t i) const { return masks_[i]; }
  Subset subset(std::size_t i) const { return Subset(n_, masks_.at(i)); }

  bool contains(Mask m) const {
    return std::binary_search(masks_.begin(), masks_.end(), m, CanonicalLess{});
  }

  /// True when every mask of `other` is a member.
  bool includes(const SetFamily& other) const {
    return std::includes(masks_.begin(), masks_.end(), other.masks_.begin(), other.masks_.end(), CanonicalLess{});
  }

  std::size_t count_of_size(unsigned k) const {
    return static_cast<std::size_t>(
        std::count_if(masks_.begin(), masks_.end(), [k](Mask m) { return popcount(m) == k; }));
  }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  unsigned n_;
  std::vector<Mask> masks_;
};

// ---------------------------------------------------------------------------
// Exact vs. modular reading of the conditions "|A| in K" and "|A n B| in L".

class Mode {
 public:
  static Mode exact() { return Mode(); }
  static Mode modulo(PrimeModulus p) { return Mode(p.value()); }
  static Mode modulo(std::uint64_t p) { return Mode(PrimeModulus(p).value()); }

  bool is_modular() const noexcept { return p_.has_value(); }
  std::optional<std::uint64_t> modulus() const noexcept { return p_; }
  std::uint64_t p() const { return p_.value(); }

  /// value in allowed (exact) or value mod p in allowed (modular).
  bool admits(std::uint64_t value, const ResidueSet& allowed) const {
    return allowed.contains(p_ ? value % *p_ : value);
  }

  std::string name() const { return p_ ? "mod " + std::to_string(*p_) : "exact"; }
  friend bool operator==(const Mode&, const Mode&) = default;

 private:
  Mode() = default;
  explicit Mode(std::uint64_t p) : p_(p) {}
  std::optional<std::uint64_t> p_;
};

// ---------------------------------------------------------------------------

namespace detail {

inline void require_level(const SetFamily& family, unsigned t) {
  if (t > family.n())
    throw Error(ErrorCode::LevelOutOfRange,
                "level " + std::to_string(t) + " outside 0.." + std::to_string(family.n()));
}

/// Members of size >= t that make up a full level k (so every t-set is covered).
inline bool has_full_level_above(const SetFamily& family, unsigned t) {
  for (unsigned k = t; k <= family.n(); ++k)
    if (family.count_of_size(k) == static_cast<std::size_t>(binomial(family.n(), k))) return true;
  return false;
}

}  // namespace detail

/// All t-subsets of [n] contained in some member, in canonical order.
inline SetFamily shadow(const SetFamily& family, unsigned t) {
  detail::require_level(family, t);
  std::unordered_set<Mask> seen;
  for (Mask a : family.masks()) {
    if (popcount(a) < t) continue;
    for_each_k_subset(a, t, [&](Mask sub) { seen.insert(sub); });
  }
  return SetFamily(family.n(), std::vector<Mask>(seen.begin(), seen.end()));
}

/// N_t(F): the t-subsets of [n] contained in no member.
inline SetFamily nonshadow(const SetFamily& family, unsigned t) {
  const SetFamily covered = shadow(family, t);
  std::vector<Mask> out;
  for_each_k_subset(ground_mask(family.n()), t, [&](Mask sub) {
    if (!covered.contains(sub)) out.push_back(sub);
  });
  return SetFamily(family.n(), std::move(out));
}

inline std::int64_t nonshadow_count(const SetFamily& family, unsigned t) {
  detail::require_level(family, t);
  if (detail::has_full_level_above(family, t)) return 0;
  return binomial(family.n(), t) - static_cast<std::int64_t>(shadow(family, t).size());
}

struct LevelStats {
  unsigned level = 0;
  std::int64_t shadow_count = 0;
  std::int64_t nonshadow_count = 0;
  friend bool operator==(const LevelStats&, const LevelStats&) = default;
};

/// Levels above n are empty on both sides.
inline LevelStats level_stats(const SetFamily& family, unsigned j) {
  if (j > family.n()) return {j, 0, 0};
  const std::int64_t missing = nonshadow_count(family, j);
  return {j, binomial(family.n(), j) - missing, missing};
}

/// Multiset of |A n B| over unordered distinct pairs, as a histogram indexed
/// by intersection size (length n+1).
struct IntersectionProfile {
  std::vector<std::int64_t> histogram;

  std::int64_t pair_count() const {
    std::int64_t total = 0;
    for (auto c : histogram) total += c;
    return total;
  }
  std::int64_t count(unsigned size) const { return size < histogram.size() ? histogram[size] : 0; }
};

inline IntersectionProfile intersection_profile(const SetFamily& family) {
  IntersectionProfile out{std::vector<std::int64_t>(family.n() + 1, 0)};
  const auto masks = family.masks();
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t j = i + 1; j < masks.size(); ++j) ++out.histogram[popcount(masks[i] & masks[j])];
  return out;
}

struct PairViolation {
  std::size_t first = 0;   // index in canonical order
  std::size_t second = 0;  // index, first < second
  Mask first_mask = 0;
  Mask second_mask = 0;
  unsigned intersection = 0;
};

struct IntersectionVerdict {
  bool ok = true;
  std::optional<PairViolation> violation;  // first offending pair in (i, j) order
  explicit operator bool() const noexcept { return ok; }
};

inline IntersectionVerdict check_L_intersecting(const SetFamily& family, const ResidueSet& allowed, const Mode& mode) {
  const auto masks = family.masks();
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      const unsigned meet = popcount(masks[i] & masks[j]);
      if (!mode.admits(meet, allowed)) return {false, PairViolation{i, j, masks[i], masks[j], meet}};
    }
  }
  return {};
}

struct SizeVerdict {
  bool ok = true;
  std::optional<std::size_t> violator;  // index of the first offending member
  explicit operator bool() const noexcept { return ok; }
};

inline SizeVerdict check_sizes(const SetFamily& family, const ResidueSet& sizes, const Mode& mode) {
  const auto masks = family.masks();
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (!mode.admits(popcount(masks[i]), sizes)) return {false, i};
  return {};
}

/// Every subset of [n] whose size is in `levels`.
inline SetFamily union_of_levels(unsigned n, LevelSet levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<Mask> out;
  for (auto k : levels) {
    if (k > n) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(k) + " > n");
    for_each_k_subset(ground_mask(n), k, [&](Mask m) { out.push_back(m); });
  }
  return SetFamily(n, std::move(out));
}

}  // namespace lintersect
