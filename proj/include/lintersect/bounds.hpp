#pragma once

// Evaluation of the restricted-intersection bounds on a concrete family.
//
// Every check_* function returns a complete BoundReport. A failed hypothesis
// is recorded in `violated` (and clears `hypotheses_ok`) instead of aborting,
// so near misses can still be inspected. Only malformed input that makes the
// right-hand side undefined (non-prime p, L not a residue set, s >= p) throws.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lintersect/arith.hpp"
#include "lintersect/error.hpp"
#include "lintersect/family_io.hpp"
#include "lintersect/ffpoly.hpp"
#include "lintersect/setfam.hpp"

namespace lintersect {

enum class TheoremId {
  AbsClassic,
  MultilevelNonshadow,
  ModularMultilevel,
  CoeffSensitive,
  CoeffSensitiveNonshadow,
  AlmostInitial,
  Consecutive,
  NonmodularSupport,
};

inline constexpr TheoremId kAllTheorems[] = {
    TheoremId::AbsClassic,     TheoremId::MultilevelNonshadow,     TheoremId::ModularMultilevel,
    TheoremId::CoeffSensitive, TheoremId::CoeffSensitiveNonshadow, TheoremId::AlmostInitial,
    TheoremId::Consecutive,    TheoremId::NonmodularSupport,
};

constexpr std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::AbsClassic: return "ABS_CLASSIC";
    case TheoremId::MultilevelNonshadow: return "MULTILEVEL_NONSHADOW";
    case TheoremId::ModularMultilevel: return "MODULAR_MULTILEVEL";
    case TheoremId::CoeffSensitive: return "COEFF_SENSITIVE";
    case TheoremId::CoeffSensitiveNonshadow: return "COEFF_SENSITIVE_NONSHADOW";
    case TheoremId::AlmostInitial: return "ALMOST_INITIAL";
    case TheoremId::Consecutive: return "CONSECUTIVE";
    case TheoremId::NonmodularSupport: return "NONMODULAR_SUPPORT";
  }
  return "UNKNOWN";
}

inline std::optional<TheoremId> theorem_from_string(std::string_view name) {
  for (auto id : kAllTheorems)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

/// Theorems whose statement needs a prime modulus.
constexpr bool is_modular(TheoremId id) {
  return id != TheoremId::AbsClassic && id != TheoremId::MultilevelNonshadow && id != TheoremId::NonmodularSupport;
}

struct BoundReport {
  TheoremId theorem = TheoremId::AbsClassic;
  unsigned n = 0;
  std::size_t s = 0;  // |L|
  std::size_t r = 0;  // |K|
  std::optional<std::uint64_t> p;

  bool hypotheses_ok = true;
  std::vector<std::string> violated;

  std::int64_t family_size = 0;
  std::int64_t shadow_sum = 0;     // sum of |shadow_j F| over the inspected levels
  std::int64_t nonshadow_sum = 0;  // sum of |N_j F| over the inspected levels
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::int64_t slack = 0;  // rhs - lhs
  std::int64_t refined_lhs = 0;  // family_size + nonshadow_sum

  std::vector<LevelStats> levels;
  std::optional<LevelSet> bsupp;
  std::vector<BigInt> coefficients;  // c_0..c_s when the theorem uses bsupp
  std::optional<unsigned> almost_initial_m;

  /// Shadow form: |F| <= sum of shadow counts.
  bool shadow_form_holds() const { return family_size <= shadow_sum; }
};

// ---------------------------------------------------------------------------

/// N(n, s, r) = binom(n,s) + ... + binom(n,s-r+1), for 1 <= r <= s <= n.
inline std::int64_t abs_bound(unsigned n, unsigned s, unsigned r) {
  if (r < 1 || r > s || s > n)
    throw Error(ErrorCode::ParamOutOfRange, "abs_bound needs 1 <= r <= s <= n, got n=" + std::to_string(n) +
                                                " s=" + std::to_string(s) + " r=" + std::to_string(r));
  std::int64_t total = 0;
  for (unsigned i = s - r + 1; i <= s; ++i) total = checked_add(total, binomial(n, i));
  return total;
}

/// sum of binom(n, j) over the given levels (levels above n contribute 0).
inline std::int64_t level_sum(unsigned n, const LevelSet& levels) {
  std::int64_t total = 0;
  for (auto j : levels) total = checked_add(total, binomial(n, j));
  return total;
}

/// The top r levels below s: max(0, s-r+1), ..., s.
inline LevelSet top_levels(std::size_t s, std::size_t r) {
  LevelSet out;
  if (r == 0) return out;
  const std::size_t lo = r > s ? 0 : s - r + 1;
  for (std::size_t j = lo; j <= s; ++j) out.push_back(static_cast<unsigned>(j));
  return out;
}

/// N(n,s,r) - binom(n,s) for consecutive L; positive whenever 2 <= r <= s < p.
inline std::int64_t unattainability_margin(unsigned n, unsigned s, unsigned r, std::uint64_t p) {
  PrimeModulus modulus(p);
  if (r < 2 || r > s || s + 1 > modulus.value() || n < s)
    throw Error(ErrorCode::ParamOutOfRange, "unattainability_margin needs 2 <= r <= s <= p-1 and n >= s");
  return abs_bound(n, s, r) - binomial(n, s);
}

// ---------------------------------------------------------------------------

namespace detail {

class ReportBuilder {
 public:
  ReportBuilder(TheoremId id, const SetFamily& family, const ResidueSet& sizes, const ResidueSet& meets,
                std::optional<std::uint64_t> p)
      : family_(family) {
    report_.theorem = id;
    report_.n = family.n();
    report_.s = meets.size();
    report_.r = sizes.size();
    report_.p = p;
    report_.family_size = static_cast<std::int64_t>(family.size());
  }

  void require(bool holds, std::string what) {
    if (holds) return;
    report_.hypotheses_ok = false;
    report_.violated.push_back(std::move(what));
  }

  void require_sizes(const ResidueSet& sizes, const Mode& mode) {
    const auto v = check_sizes(family_, sizes, mode);
    if (v) return;
    const Mask m = family_[*v.violator];
    require(false, "member sizes in K" + std::string(mode.is_modular() ? " (mod p)" : "") + ": {" +
                       format_subset(m) + "} has size " + std::to_string(popcount(m)));
  }

  void require_intersections(const ResidueSet& meets, const Mode& mode) {
    const auto v = check_L_intersecting(family_, meets, mode);
    if (v) return;
    const auto& bad = *v.violation;
    require(false, "pairwise intersections in L" + std::string(mode.is_modular() ? " (mod p)" : "") + ": {" +
                       format_subset(bad.first_mask) + "} and {" + format_subset(bad.second_mask) + "} meet in " +
                       std::to_string(bad.intersection));
  }

  void inspect_levels(const LevelSet& levels) {
    for (auto j : levels) {
      const auto stats = level_stats(family_, j);
      report_.levels.push_back(stats);
      report_.shadow_sum = checked_add(report_.shadow_sum, stats.shadow_count);
      report_.nonshadow_sum = checked_add(report_.nonshadow_sum, stats.nonshadow_count);
    }
    report_.refined_lhs = checked_add(report_.family_size, report_.nonshadow_sum);
  }

  template <CoefficientDomain D>
  void record_expansion(const BinomialExpansion<D>& expansion) {
    report_.bsupp = expansion.support();
    report_.coefficients.clear();
    for (const auto& c : expansion.coefficients()) report_.coefficients.push_back(expansion.domain().to_bigint(c));
  }

  BoundReport finish(bool refined, std::int64_t rhs) {
    report_.lhs = refined ? report_.refined_lhs : report_.family_size;
    report_.rhs = rhs;
    report_.slack = rhs - report_.lhs;
    return std::move(report_);
  }

  BoundReport& report() { return report_; }

 private:
  const SetFamily& family_;
  BoundReport report_;
};

inline bool all_above(const ResidueSet& sizes, std::int64_t floor) {
  for (auto k : sizes.elements())
    if (static_cast<std::int64_t>(k) <= floor) return false;
  return true;
}

inline std::string p_range(std::uint64_t p) { return "{0,...," + std::to_string(p - 1) + "}"; }

inline std::int64_t signed_gap(std::size_t s, std::size_t r) {
  return static_cast<std::int64_t>(s) - static_cast<std::int64_t>(r);
}

}  // namespace detail

/// |F| <= N(n, s, r) for exactly K-sized, exactly L-intersecting F with k > s - r.
inline BoundReport check_abs_classic(const SetFamily& family, const ResidueSet& sizes, const ResidueSet& meets) {
  detail::ReportBuilder b(TheoremId::AbsClassic, family, sizes, meets, std::nullopt);
  const auto s = meets.size();
  const auto r = sizes.size();
  b.require(r >= 1 && r <= s, "1 <= r <= s");
  b.require_sizes(sizes, Mode::exact());
  b.require_intersections(meets, Mode::exact());
  b.require(detail::all_above(sizes, detail::signed_gap(s, r)), "k > s-r for every k in K");
  const auto levels = top_levels(s, r);
  b.inspect_levels(levels);
  return b.finish(false, level_sum(family.n(), levels));
}

/// |F| + sum_{j=s-r+1}^{s} |N_j(F)| <= N(n, s, r), same hypotheses as ABS.
inline BoundReport check_multilevel(const SetFamily& family, const ResidueSet& sizes, const ResidueSet& meets) {
  auto report = check_abs_classic(family, sizes, meets);
  report.theorem = TheoremId::MultilevelNonshadow;
  report.lhs = report.refined_lhs;
  report.slack = report.rhs - report.lhs;
  return report;
}

/// Modular multilevel bound: K, L disjoint residue sets with k > s-r >= 0,
/// sizes in K + pZ, intersections in L + pZ.
inline BoundReport check_modular_multilevel(const SetFamily& family, const ResidueSet& sizes, const ResidueSet& meets,
                                            std::uint64_t p) {
  const PrimeModulus modulus(p);
  const auto mode = Mode::modulo(modulus);
  detail::ReportBuilder b(TheoremId::ModularMultilevel, family, sizes, meets, p);
  const auto s = meets.size();
  const auto r = sizes.size();
  b.require(sizes.empty() || sizes.max() < p, "K subset of " + detail::p_range(p));
  b.require(meets.empty() || meets.max() < p, "L subset of " + detail::p_range(p));
  b.require(sizes.disjoint_from(meets), "K and L disjoint");
  b.require(s >= r, "s-r >= 0");
  b.require(detail::all_above(sizes, detail::signed_gap(s, r)), "k > s-r for every k in K");
  b.require_sizes(sizes, mode);
  b.require_intersections(meets, mode);
  const auto levels = top_levels(s, r);
  b.inspect_levels(levels);
  return b.finish(true, level_sum(family.n(), levels));
}

namespace detail {

inline void require_coefficient_hypotheses(ReportBuilder& b, const ResidueSet& sizes, const ResidueSet& meets,
                                           std::uint64_t p) {
  const auto mode = Mode::modulo(p);
  b.require(meets.size() >= 1, "1 <= s");
  b.require((sizes.empty() || sizes.max() < p) && sizes.disjoint_from(meets), "K subset of F_p \\ L");
  b.require_sizes(sizes, mode);
  b.require_intersections(meets, mode);
}

inline BinomialExpansion<ModularDomain> modular_expansion(const ResidueSet& meets, std::uint64_t p) {
  const ModularDomain dom{PrimeModulus(p)};
  meets.require_below(p);
  if (meets.size() >= p)
    throw Error(ErrorCode::BasisDegenerate, "s = " + std::to_string(meets.size()) + " must be below p = " +
                                                std::to_string(p));
  return binomial_expansion(meets, dom);
}

}  // namespace detail

/// |F| <= sum_{j in bsupp(L)} binom(n, j); with_nonshadows adds the
/// non-shadow counts on the bsupp levels to the left side.
inline BoundReport check_coeff_sensitive(const SetFamily& family, const ResidueSet& sizes, const ResidueSet& meets,
                                         std::uint64_t p, bool with_nonshadows) {
  const auto expansion = detail::modular_expansion(meets, p);
  detail::ReportBuilder b(with_nonshadows ? TheoremId::CoeffSensitiveNonshadow : TheoremId::CoeffSensitive, family,
                          sizes, meets, p);
  detail::require_coefficient_hypotheses(b, sizes, meets, p);
  b.record_expansion(expansion);
  const auto levels = expansion.support();
  b.inspect_levels(levels);
  return b.finish(with_nonshadows, level_sum(family.n(), levels));
}

/// |F| <= sum_{i=0}^{m} binom(n, s-i) for L = {0..s-m-1} u R with the
/// smallest m. The refined form (non-shadows over bsupp(L)) is in refined_lhs.
inline BoundReport check_almost_initial(const SetFamily& family, const ResidueSet& sizes, const ResidueSet& meets,
                                        std::uint64_t p) {
  const PrimeModulus modulus(p);
  const auto pattern = is_almost_initial(meets, p);
  if (!pattern) throw Error(ErrorCode::NotAlmostInitial, "L = " + meets.to_string() + " mod " + std::to_string(p));
  const auto expansion = detail::modular_expansion(meets, p);
  detail::ReportBuilder b(TheoremId::AlmostInitial, family, sizes, meets, p);
  detail::require_coefficient_hypotheses(b, sizes, meets, p);
  b.record_expansion(expansion);
  b.report().almost_initial_m = pattern->m;
  b.inspect_levels(expansion.support());
  const auto s = static_cast<unsigned>(meets.size());
  std::int64_t rhs = 0;
  for (unsigned i = 0; i <= pattern->m; ++i) rhs = checked_add(rhs, binomial(family.n(), s - i));
  return b.finish(false, rhs);
}

/// |F| <= binom(n, s) for L = {0, ..., s-1} mod p, 2 <= s <= p-1.
inline BoundReport check_consecutive(const SetFamily& family, const ResidueSet& sizes, const ResidueSet& meets,
                                     std::uint64_t p) {
  const auto expansion = detail::modular_expansion(meets, p);
  detail::ReportBuilder b(TheoremId::Consecutive, family, sizes, meets, p);
  const auto s = static_cast<unsigned>(meets.size());
  const auto pattern = is_almost_initial(meets, p);
  b.require(s >= 2, "2 <= s");
  b.require(pattern && pattern->m == 0, "L = {0,...,s-1}");
  detail::require_coefficient_hypotheses(b, sizes, meets, p);
  b.record_expansion(expansion);
  b.inspect_levels(LevelSet{s});
  return b.finish(false, binomial(family.n(), s));
}

/// Integer-domain analogue: K, L disjoint, |F| + sum_{j in bsupp_Z(L)} |N_j|
/// <= sum_{j in bsupp_Z(L)} binom(n, j).
inline BoundReport check_nonmodular_support(const SetFamily& family, const ResidueSet& sizes,
                                            const ResidueSet& meets) {
  const auto expansion = binomial_expansion(meets, IntegerDomain{});
  detail::ReportBuilder b(TheoremId::NonmodularSupport, family, sizes, meets, std::nullopt);
  b.require(sizes.disjoint_from(meets), "K and L disjoint");
  b.require_sizes(sizes, Mode::exact());
  b.require_intersections(meets, Mode::exact());
  b.record_expansion(expansion);
  const auto levels = expansion.support();
  b.inspect_levels(levels);
  return b.finish(true, level_sum(family.n(), levels));
}

/// Dispatch by id. Modular theorems need p; a missing p is InvalidArgument.
inline BoundReport check_theorem(TheoremId id, const SetFamily& family, const ResidueSet& sizes,
                                 const ResidueSet& meets, std::optional<std::uint64_t> p) {
  if (is_modular(id) && !p)
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(id)) + " needs a prime modulus");
  switch (id) {
    case TheoremId::AbsClassic: return check_abs_classic(family, sizes, meets);
    case TheoremId::MultilevelNonshadow: return check_multilevel(family, sizes, meets);
    case TheoremId::ModularMultilevel: return check_modular_multilevel(family, sizes, meets, *p);
    case TheoremId::CoeffSensitive: return check_coeff_sensitive(family, sizes, meets, *p, false);
    case TheoremId::CoeffSensitiveNonshadow: return check_coeff_sensitive(family, sizes, meets, *p, true);
    case TheoremId::AlmostInitial: return check_almost_initial(family, sizes, meets, *p);
    case TheoremId::Consecutive: return check_consecutive(family, sizes, meets, *p);
    case TheoremId::NonmodularSupport: return check_nonmodular_support(family, sizes, meets);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown theorem");
}

// ---------------------------------------------------------------------------

struct ParameterBound {
  TheoremId theorem;
  std::int64_t rhs;
};

/// Bounds whose parameter-level hypotheses hold for (n, K, L, mode); the
/// family-level conditions are those of the problem itself, so every family
/// admissible for the problem obeys each returned bound.
inline std::vector<ParameterBound> applicable_bounds(unsigned n, const ResidueSet& sizes, const ResidueSet& meets,
                                                     const Mode& mode) {
  std::vector<ParameterBound> out;
  const auto s = meets.size();
  const auto r = sizes.size();
  const bool gap_ok = detail::all_above(sizes, detail::signed_gap(s, r));
  const bool disjoint = sizes.disjoint_from(meets);
  if (!mode.is_modular()) {
    if (r >= 1 && r <= s && gap_ok)
      out.push_back({TheoremId::MultilevelNonshadow, level_sum(n, top_levels(s, r))});
    if (disjoint)
      out.push_back({TheoremId::NonmodularSupport, level_sum(n, bsupp(meets, IntegerDomain{}))});
    return out;
  }
  const auto p = mode.p();
  const bool residues = (sizes.empty() || sizes.max() < p) && (meets.empty() || meets.max() < p);
  if (residues && disjoint && s >= r && gap_ok)
    out.push_back({TheoremId::ModularMultilevel, level_sum(n, top_levels(s, r))});
  if (residues && disjoint && s >= 1 && s < p)
    out.push_back({TheoremId::CoeffSensitive, level_sum(n, bsupp(meets, ModularDomain{PrimeModulus(p)}))});
  return out;
}

}  // namespace lintersect
