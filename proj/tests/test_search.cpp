#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace lintersect;

namespace {

SearchOptions with_threads(unsigned threads) {
  SearchOptions o;
  o.threads = threads;
  return o;
}

std::optional<std::uint64_t> modulus_of(const SearchProblem& p) { return p.mode.modulus(); }

std::vector<std::uint64_t> values(const ResidueSet& r) { return {r.elements().begin(), r.elements().end()}; }

}  // namespace

TEST(AdmissibleVertices, Examples) {
  EXPECT_EQ(admissible_vertices({4, Mode::exact(), {2}, {}}), union_of_levels(4, {2}));
  const auto mod5 = admissible_vertices({5, Mode::modulo(5), {2, 4}, {0, 1}});
  EXPECT_EQ(mod5.size(), 15U);
  EXPECT_EQ(mod5, union_of_levels(5, {2, 4}));
  EXPECT_TRUE(admissible_vertices({3, Mode::exact(), {5}, {}}).empty());
  EXPECT_EQ(admissible_vertices({7, Mode::modulo(3), {1}, {0}}), union_of_levels(7, {1, 4, 7}));
}

TEST(AdmissibleVertices, SearchCap) {
  try {
    admissible_vertices({11, Mode::exact(), {2}, {1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SearchCapExceeded);
    EXPECT_TRUE(e.is_refusal());
  }
}

TEST(MaxFamily, Examples) {
  const auto a = max_family({5, Mode::modulo(5), {2, 4}, {0, 1}});
  EXPECT_EQ(a.max_size, 10);
  EXPECT_EQ(a.witness, union_of_levels(5, {2}));
  EXPECT_TRUE(a.proof_of_optimality);
  EXPECT_LT(a.max_size, abs_bound(5, 2, 2));
  EXPECT_EQ(a.bound_used, 10);

  const auto b = max_family({4, Mode::exact(), {1, 2}, {0, 1}});
  EXPECT_EQ(b.max_size, 10);
  EXPECT_EQ(b.witness, union_of_levels(4, {1, 2}));
  EXPECT_EQ(b.bound_used, abs_bound(4, 2, 2));

  const auto c = max_family({3, Mode::exact(), {1}, {0}});
  EXPECT_EQ(c.max_size, 3);
  EXPECT_EQ(c.witness, SetFamily(3, {{1}, {2}, {3}}));
  EXPECT_TRUE(c.witness_canonical);
}

TEST(MaxFamily, WitnessIsLeastAmongMaximum) {
  // Pairwise intersecting 2-subsets of [4]: stars and triangles of size 3.
  // Canonical order is 12, 13, 23, 14, ... so the triangle comes first.
  const auto r = max_family({4, Mode::exact(), {2}, {1}});
  EXPECT_EQ(r.max_size, 3);
  EXPECT_EQ(r.witness, SetFamily(4, {{1, 2}, {1, 3}, {2, 3}}));
}

TEST(MaxFamily, AgreesWithNaiveEnumeration) {
  std::mt19937_64 rng(4);
  int compared = 0;
  for (int trial = 0; trial < 400 && compared < 150; ++trial) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 6);
    SearchProblem problem;
    problem.n = n;
    if (rng() % 2) {
      static const std::uint64_t primes[] = {2, 3, 5};
      const auto p = primes[rng() % 3];
      problem.mode = Mode::modulo(p);
      problem.sizes = random_residue_set(0, p - 1, 1 + rng() % 2, rng);
      problem.meets = random_residue_set(0, p - 1, rng() % p, rng);
    } else {
      problem.sizes = random_residue_set(0, n, 1 + rng() % 2, rng);
      problem.meets = random_residue_set(0, n, rng() % 3, rng);
    }
    const auto vertices = admissible_vertices(problem);
    if (vertices.size() > 20) continue;
    ++compared;
    const auto got = max_family(problem, with_threads(1 + static_cast<unsigned>(trial % 3)));
    const std::vector<Mask> vs(vertices.masks().begin(), vertices.masks().end());
    const auto expected = oracle::naive_max(vs, values(problem.meets), modulus_of(problem));
    ASSERT_EQ(static_cast<std::size_t>(got.max_size), expected.size) << "n=" << n << " " << problem.mode.name();
    std::vector<Mask> members;
    for (auto i : expected.members) members.push_back(vs[i]);
    EXPECT_EQ(got.witness, SetFamily(n, members));
    EXPECT_TRUE(check_sizes(got.witness, problem.sizes, problem.mode).ok);
    EXPECT_TRUE(check_L_intersecting(got.witness, problem.meets, problem.mode).ok);
    EXPECT_LE(got.max_size, got.bound_used);
  }
  EXPECT_GE(compared, 100);
}

TEST(MaxFamily, DeterministicAcrossThreadCounts) {
  const std::vector<SearchProblem> problems{
      {6, Mode::exact(), {2, 3}, {0, 1}},
      {6, Mode::modulo(3), {2}, {0, 1}},
      {7, Mode::exact(), {3}, {1}},
      {6, Mode::modulo(5), {1, 3}, {0, 2}},
  };
  for (const auto& p : problems) {
    const auto one = max_family(p, with_threads(1));
    const auto four = max_family(p, with_threads(4));
    EXPECT_EQ(one.max_size, four.max_size);
    EXPECT_EQ(one.witness, four.witness);
    EXPECT_TRUE(one.witness_canonical);
    EXPECT_TRUE(four.witness_canonical);
  }
}

TEST(MaxFamily, CutoffDoesNotChangeTheAnswer) {
  for (const SearchProblem& p : {SearchProblem{6, Mode::exact(), {2, 3}, {0, 1, 2}},
                                 SearchProblem{6, Mode::modulo(5), {2, 4}, {0, 1}}}) {
    SearchOptions off;
    off.theorem_cutoff = false;
    const auto with = max_family(p);
    const auto without = max_family(p, off);
    EXPECT_EQ(with.max_size, without.max_size);
    EXPECT_EQ(with.witness, without.witness);
  }
}

TEST(MaxFamily, ZeroBudgetTimesOut) {
  SearchOptions o;
  o.time_budget_seconds = 0;
  const auto r = max_family({6, Mode::exact(), {2, 3}, {0, 1}}, o);
  EXPECT_TRUE(r.timed_out);
  EXPECT_FALSE(r.proof_of_optimality);
  EXPECT_TRUE(check_L_intersecting(r.witness, {0, 1}, Mode::exact()).ok);
  EXPECT_EQ(static_cast<std::size_t>(r.max_size), r.witness.size());
}

TEST(MaxFamily, VertexCap) {
  SearchOptions o;
  o.vertex_cap = 10;
  EXPECT_THROW(max_family({6, Mode::exact(), {2, 3}, {0, 1}}, o), Error);
}

TEST(Sharpness, SweepAttainsEverywhere) {
  const auto rows = sharpness_sweep(5, 3);
  EXPECT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_TRUE(r.attains()) << r.n << "," << r.s << "," << r.r;
    EXPECT_TRUE(r.construction_admissible);
    EXPECT_TRUE(r.proof_of_optimality);
    EXPECT_EQ(r.bound, abs_bound(r.n, r.s, r.r));
  }
  auto find = [&](unsigned n, unsigned s, unsigned r) {
    for (const auto& row : rows)
      if (row.n == n && row.s == s && row.r == r) return row;
    ADD_FAILURE() << "missing row";
    return SharpnessRow{};
  };
  EXPECT_EQ(find(4, 2, 2).attained, 10);
  EXPECT_EQ(find(5, 3, 1).attained, 10);
  EXPECT_EQ(find(1, 1, 1).attained, 1);
}

TEST(Unattainability, Examples) {
  const auto a = unattainability_check(5, 5, 2, {2, 4});
  EXPECT_TRUE(a.hypotheses_ok);
  EXPECT_EQ(a.max_size, 10);
  EXPECT_EQ(a.level_bound, 10);
  EXPECT_EQ(a.abs_bound, 15);
  EXPECT_TRUE(a.proof_of_optimality);

  const auto b = unattainability_check(3, 4, 2, {0, 2});
  EXPECT_FALSE(b.hypotheses_ok);
  EXPECT_FALSE(b.violated.empty());
}

TEST(Unattainability, SweepModFive) {
  const auto rows = unattainability_sweep(5, 5);
  EXPECT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_LE(r.max_size, r.level_bound);
    EXPECT_LT(r.level_bound, r.abs_bound);
  }
}
