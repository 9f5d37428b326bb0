#pragma once

// Maximum admissible families by clique search.
//
// Vertices are the subsets of [n] whose size meets the K condition, numbered
// in canonical order; two vertices are adjacent when their intersection meets
// the L condition. Admissible families are exactly the cliques.
//
// The search runs in two phases:
//   1. branch and bound with greedy-colouring bounds (Tomita-style), split
//      over threads at the root, to find the maximum size. The smallest
//      applicable theorem bound is a global cutoff: reaching it ends the search.
//   2. a sequential lexicographic search for the least clique of that size,
//      so the returned witness does not depend on the thread schedule.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lintersect/bounds.hpp"
#include "lintersect/error.hpp"
#include "lintersect/ffpoly.hpp"
#include "lintersect/setfam.hpp"

namespace lintersect {

struct SearchProblem {
  unsigned n = 0;
  Mode mode = Mode::exact();
  ResidueSet sizes;  // K
  ResidueSet meets;  // L
};

struct SearchOptions {
  unsigned n_cap = 10;
  std::size_t vertex_cap = 1024;
  double time_budget_seconds = 60.0;
  unsigned threads = 0;  // 0: hardware concurrency
  bool theorem_cutoff = true;
};

struct SearchResult {
  std::int64_t max_size = 0;
  SetFamily witness;
  std::uint64_t nodes_explored = 0;
  std::int64_t bound_used = 0;
  std::optional<TheoremId> bound_theorem;  // empty: the vertex count
  bool proof_of_optimality = false;
  bool timed_out = false;
  bool witness_canonical = false;  // lexicographically least maximum family
  std::size_t vertex_count = 0;
  double elapsed_seconds = 0.0;
};

/// Subsets of [n] whose size is in K (exact) or in K + pZ (modular).
inline SetFamily admissible_vertices(const SearchProblem& problem, const SearchOptions& options = {}) {
  if (problem.n > options.n_cap)
    throw Error(ErrorCode::SearchCapExceeded,
                "n = " + std::to_string(problem.n) + " exceeds the search cap " + std::to_string(options.n_cap));
  LevelSet levels;
  for (unsigned k = 0; k <= problem.n; ++k)
    if (problem.mode.admits(k, problem.sizes)) levels.push_back(k);
  return union_of_levels(problem.n, levels);
}

namespace detail {

class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t size) : words_((size + 63) / 64, 0) {}

  void set(std::size_t v) { words_[v / 64] |= std::uint64_t{1} << (v % 64); }
  void reset(std::size_t v) { words_[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }
  bool test(std::size_t v) const { return (words_[v / 64] >> (v % 64)) & 1U; }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](auto w) { return w != 0; });
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  /// Smallest member; the set must be nonempty.
  std::size_t first() const {
    for (std::size_t i = 0;; ++i)
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }

  VertexSet operator&(const VertexSet& other) const {
    VertexSet out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
    return out;
  }
  void subtract(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  }

 private:
  std::vector<std::uint64_t> words_;
};

class CliqueSearch {
 public:
  using Clock = std::chrono::steady_clock;

  CliqueSearch(std::vector<VertexSet> adjacency, std::size_t vertices, Clock::time_point deadline)
      : adj_(std::move(adjacency)), vertices_(vertices), deadline_(deadline) {}

  std::uint64_t nodes() const { return nodes_.load(); }
  bool timed_out() const { return timed_out_.load(); }

  /// Phase 1. `seed` is a known clique; `target` an upper bound that ends the
  /// search when reached.
  std::vector<std::size_t> maximum(std::vector<std::size_t> seed, std::int64_t target, unsigned threads) {
    best_clique_ = std::move(seed);
    best_.store(static_cast<std::int64_t>(best_clique_.size()));
    target_ = target;
    if (expired()) return best_clique_;

    VertexSet all(vertices_);
    for (std::size_t v = 0; v < vertices_; ++v) all.set(v);
    std::vector<std::size_t> order;
    std::vector<std::size_t> colors;
    color_sort(all, order, colors);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      std::vector<std::size_t> clique;
      while (!stop()) {
        const std::size_t task = next.fetch_add(1);
        if (task >= order.size()) return;
        const std::size_t k = order.size() - 1 - task;
        if (static_cast<std::int64_t>(colors[k]) <= best_.load()) return;
        VertexSet candidates(vertices_);
        for (std::size_t i = 0; i < k; ++i) candidates.set(order[i]);
        clique.assign(1, order[k]);
        branch(clique, candidates & adj_[order[k]]);
      }
    };
    const unsigned workers = std::max(1U, threads);
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    std::sort(best_clique_.begin(), best_clique_.end());
    return best_clique_;
  }

  /// Phase 2: the lexicographically least clique of exactly `size` vertices.
  std::optional<std::vector<std::size_t>> least_clique(std::size_t size) {
    if (size == 0) return std::vector<std::size_t>{};
    VertexSet all(vertices_);
    for (std::size_t v = 0; v < vertices_; ++v) all.set(v);
    std::vector<std::size_t> clique;
    if (lex_branch(clique, all, size)) return clique;
    return std::nullopt;
  }

 private:
  bool expired() {
    if (Clock::now() >= deadline_) timed_out_.store(true);
    return timed_out_.load();
  }

  bool stop() { return timed_out_.load() || best_.load() >= target_; }

  void tick() {
    if ((nodes_.fetch_add(1) & 255U) == 0) expired();
  }

  /// Greedy colouring: `order` lists P by nondecreasing colour and colors[i]
  /// bounds the clique number of {order[0..i]}.
  void color_sort(VertexSet uncolored, std::vector<std::size_t>& order, std::vector<std::size_t>& colors) const {
    order.clear();
    colors.clear();
    std::size_t color = 0;
    while (uncolored.any()) {
      ++color;
      VertexSet independent = uncolored;
      while (independent.any()) {
        const std::size_t v = independent.first();
        independent.reset(v);
        independent.subtract(adj_[v]);
        uncolored.reset(v);
        order.push_back(v);
        colors.push_back(color);
      }
    }
  }

  std::size_t color_bound(VertexSet uncolored) const {
    std::size_t color = 0;
    while (uncolored.any()) {
      ++color;
      VertexSet independent = uncolored;
      while (independent.any()) {
        const std::size_t v = independent.first();
        independent.reset(v);
        independent.subtract(adj_[v]);
        uncolored.reset(v);
      }
    }
    return color;
  }

  void offer(const std::vector<std::size_t>& clique) {
    const auto size = static_cast<std::int64_t>(clique.size());
    if (size <= best_.load()) return;
    std::lock_guard lock(mutex_);
    if (size <= best_.load()) return;
    best_clique_ = clique;
    best_.store(size);
  }

  void branch(std::vector<std::size_t>& clique, VertexSet candidates) {
    tick();
    if (!candidates.any()) {
      offer(clique);
      return;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> colors;
    color_sort(candidates, order, colors);
    for (std::size_t k = order.size(); k-- > 0;) {
      if (stop()) return;
      if (static_cast<std::int64_t>(clique.size() + colors[k]) <= best_.load()) return;
      const std::size_t v = order[k];
      clique.push_back(v);
      branch(clique, candidates & adj_[v]);
      clique.pop_back();
      candidates.reset(v);
    }
  }

  bool lex_branch(std::vector<std::size_t>& clique, VertexSet candidates, std::size_t size) {
    tick();
    if (clique.size() == size) return true;
    if (timed_out_.load()) return false;
    if (clique.size() + candidates.count() < size) return false;
    if (clique.size() + color_bound(candidates) < size) return false;
    while (candidates.any()) {
      const std::size_t v = candidates.first();
      candidates.reset(v);
      VertexSet next = candidates & adj_[v];
      clique.push_back(v);
      if (lex_branch(clique, std::move(next), size)) return true;
      clique.pop_back();
      if (timed_out_.load() || clique.size() + candidates.count() < size) return false;
    }
    return false;
  }

  std::vector<VertexSet> adj_;
  std::size_t vertices_;
  Clock::time_point deadline_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> timed_out_{false};
  std::atomic<std::int64_t> best_{0};
  std::int64_t target_ = 0;
  std::mutex mutex_;
  std::vector<std::size_t> best_clique_;
};

}  // namespace detail

/// Maximum admissible family. A Timeout is reported in the result
/// (timed_out, proof_of_optimality = false) with the best family found.
inline SearchResult max_family(const SearchProblem& problem, const SearchOptions& options = {}) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const auto budget = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(std::max(0.0, options.time_budget_seconds)));
  const auto deadline = started + budget;

  const SetFamily vertices = admissible_vertices(problem, options);
  const std::size_t count = vertices.size();
  if (count > options.vertex_cap)
    throw Error(ErrorCode::SearchCapExceeded, std::to_string(count) + " admissible vertices exceed the cap " +
                                                  std::to_string(options.vertex_cap));

  std::vector<detail::VertexSet> adjacency(count, detail::VertexSet(count));
  for (std::size_t u = 0; u < count; ++u)
    for (std::size_t v = u + 1; v < count; ++v)
      if (problem.mode.admits(popcount(vertices[u] & vertices[v]), problem.meets)) {
        adjacency[u].set(v);
        adjacency[v].set(u);
      }

  SearchResult result;
  result.vertex_count = count;
  result.bound_used = static_cast<std::int64_t>(count);
  if (options.theorem_cutoff) {
    for (const auto& b : applicable_bounds(problem.n, problem.sizes, problem.meets, problem.mode))
      if (b.rhs < result.bound_used) {
        result.bound_used = b.rhs;
        result.bound_theorem = b.theorem;
      }
  }

  // Greedy seed in canonical order.
  std::vector<std::size_t> seed;
  for (std::size_t v = 0; v < count; ++v)
    if (std::all_of(seed.begin(), seed.end(), [&](std::size_t u) { return adjacency[u].test(v); })) seed.push_back(v);

  detail::CliqueSearch search(adjacency, count, deadline);
  const unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::size_t> best = search.maximum(std::move(seed), result.bound_used, threads);

  result.max_size = static_cast<std::int64_t>(best.size());
  result.timed_out = search.timed_out();
  result.proof_of_optimality = !result.timed_out;
  if (result.proof_of_optimality) {
    if (auto least = search.least_clique(best.size())) {
      best = std::move(*least);
      result.witness_canonical = true;
    }
  }

  std::vector<Mask> members;
  for (auto v : best) members.push_back(vertices[v]);
  result.witness = SetFamily(problem.n, std::move(members));
  result.nodes_explored = search.nodes();
  result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return result;
}

// ---------------------------------------------------------------------------

struct SharpnessRow {
  unsigned n = 0;
  unsigned s = 0;
  unsigned r = 0;
  std::int64_t attained = 0;
  std::int64_t bound = 0;  // N(n, s, r)
  bool construction_admissible = false;  // union of levels s-r+1..s has size N and is admissible
  bool proof_of_optimality = false;
  bool attains() const { return attained == bound; }
};

/// For L = {0..s-1}, K = {s-r+1..s}: the maximum family against N(n, s, r).
inline std::vector<SharpnessRow> sharpness_sweep(unsigned n_max, unsigned s_max, const SearchOptions& options = {}) {
  if (n_max > options.n_cap)
    throw Error(ErrorCode::SearchCapExceeded, "n_max exceeds the search cap " + std::to_string(options.n_cap));
  std::vector<SharpnessRow> rows;
  for (unsigned n = 1; n <= n_max; ++n) {
    for (unsigned s = 1; s <= std::min(s_max, n); ++s) {
      for (unsigned r = 1; r <= s; ++r) {
        std::vector<std::uint64_t> meets;
        for (unsigned l = 0; l < s; ++l) meets.push_back(l);
        std::vector<std::uint64_t> sizes;
        LevelSet levels;
        for (unsigned k = s - r + 1; k <= s; ++k) {
          sizes.push_back(k);
          levels.push_back(k);
        }
        const SearchProblem problem{n, Mode::exact(), ResidueSet(sizes), ResidueSet(meets)};
        const auto found = max_family(problem, options);
        const auto construction = union_of_levels(n, levels);

        SharpnessRow row{n, s, r};
        row.attained = found.max_size;
        row.bound = abs_bound(n, s, r);
        row.proof_of_optimality = found.proof_of_optimality;
        row.construction_admissible = static_cast<std::int64_t>(construction.size()) == row.bound &&
                                      check_sizes(construction, problem.sizes, problem.mode).ok &&
                                      check_L_intersecting(construction, problem.meets, problem.mode).ok;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

struct UnattainabilityRow {
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned s = 0;
  ResidueSet sizes;  // K
  bool hypotheses_ok = true;
  std::vector<std::string> violated;
  std::int64_t max_size = 0;
  std::int64_t level_bound = 0;  // binom(n, s)
  std::int64_t abs_bound = 0;    // N(n, s, r)
  bool proof_of_optimality = false;
};

/// Consecutive L = {0..s-1} mod p with s in K, 2 <= |K| <= s: the maximum
/// family must stay at or below binom(n, s), strictly below N(n, s, |K|).
/// A family above binom(n, s) is a counterexample and throws std::logic_error.
inline UnattainabilityRow unattainability_check(std::uint64_t p, unsigned n, unsigned s, const ResidueSet& sizes,
                                                const SearchOptions& options = {}) {
  const PrimeModulus modulus(p);
  UnattainabilityRow row;
  row.p = p;
  row.n = n;
  row.s = s;
  row.sizes = sizes;
  const std::size_t r = sizes.size();
  std::vector<std::uint64_t> meets_values;
  for (unsigned l = 0; l < s; ++l) meets_values.push_back(l);
  const ResidueSet meets(meets_values);

  auto require = [&](bool holds, const std::string& what) {
    if (holds) return;
    row.hypotheses_ok = false;
    row.violated.push_back(what);
  };
  require(s >= 2 && s + 1 <= p, "2 <= s <= p-1");
  require(n >= s, "n >= s");
  require((sizes.empty() || sizes.max() < p) && sizes.disjoint_from(meets), "K subset of F_p \\ L");
  require(sizes.contains(s), "s in K");
  require(r >= 2 && r <= s, "2 <= r <= s");
  if (!row.hypotheses_ok) return row;

  row.level_bound = binomial(n, s);
  row.abs_bound = abs_bound(n, s, static_cast<unsigned>(r));
  const auto found = max_family({n, Mode::modulo(modulus), sizes, meets}, options);
  row.max_size = found.max_size;
  row.proof_of_optimality = found.proof_of_optimality;
  if (row.max_size > row.level_bound)
    throw std::logic_error("counterexample: p=" + std::to_string(p) + " n=" + std::to_string(n) + " K=" +
                           sizes.to_string() + " admits " + std::to_string(row.max_size) + " > binom(n,s) = " +
                           std::to_string(row.level_bound));
  return row;
}

/// Every valid (s, K, n) with n <= n_max for the given prime.
inline std::vector<UnattainabilityRow> unattainability_sweep(std::uint64_t p, unsigned n_max,
                                                             const SearchOptions& options = {}) {
  const PrimeModulus modulus(p);
  if (n_max > options.n_cap)
    throw Error(ErrorCode::SearchCapExceeded, "n_max exceeds the search cap " + std::to_string(options.n_cap));
  std::vector<UnattainabilityRow> rows;
  for (unsigned s = 2; s + 1 <= p; ++s) {
    for (unsigned n = s; n <= n_max; ++n) {
      const auto above = static_cast<unsigned>(p - 1 - s);  // residues s+1..p-1
      for (unsigned r = 2; r <= s && r - 1 <= above; ++r) {
        for_each_k_subset(ground_mask(above), r - 1, [&](Mask extra) {
          std::vector<std::uint64_t> sizes{s};
          for (Mask u = extra; u; u &= u - 1) sizes.push_back(s + 1 + static_cast<unsigned>(std::countr_zero(u)));
          rows.push_back(unattainability_check(p, n, s, ResidueSet(sizes), options));
        });
      }
    }
  }
  return rows;
}

}  // namespace lintersect
