#pragma once

// Seeded random admissible families, for sweeps and property tests.

#include <algorithm>
#include <random>
#include <vector>

#include "lintersect/search.hpp"
#include "lintersect/setfam.hpp"

namespace lintersect {

/// Visits the admissible vertices in random order and keeps each one that is
/// compatible with everything kept so far, with probability `keep`.
/// The result always satisfies the size and intersection conditions.
inline SetFamily random_admissible_family(const SearchProblem& problem, std::mt19937_64& rng, double keep = 1.0) {
  SearchOptions unlimited;
  unlimited.n_cap = kMaxGroundSet;
  const SetFamily vertices = admissible_vertices(problem, unlimited);
  std::vector<Mask> order(vertices.masks().begin(), vertices.masks().end());
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution take(std::clamp(keep, 0.0, 1.0));
  std::vector<Mask> chosen;
  for (Mask v : order) {
    if (!take(rng)) continue;
    const bool compatible = std::all_of(chosen.begin(), chosen.end(), [&](Mask u) {
      return problem.mode.admits(popcount(u & v), problem.meets);
    });
    if (compatible) chosen.push_back(v);
  }
  return SetFamily(problem.n, std::move(chosen));
}

/// Random subset of {lo, ..., hi} with exactly `count` elements.
inline ResidueSet random_residue_set(std::uint64_t lo, std::uint64_t hi, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::uint64_t> pool;
  for (auto v = lo; v <= hi; ++v) pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min(count, pool.size()));
  return ResidueSet(std::move(pool));
}

}  // namespace lintersect
