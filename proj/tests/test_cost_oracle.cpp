#include "doctest.h"

#include <random>
#include <vector>

#include "bnsl/cost_oracle.hpp"
#include "bnsl/error.hpp"
#include "support/synthetic.hpp"

using namespace bnsl;
using testsupport::copy_pair_table;
using testsupport::make_table;
using testsupport::random_table;

namespace {

// Exhaustive subset search with the library's node scores: validates the
// search and tie-break logic of exact-subset mode value-for-value. (The node
// scores themselves are validated against the factorial oracle elsewhere.)
BestParents exhaustive_with_library_scores(const DiscreteTable& t, int child,
                                           std::vector<int> candidates,
                                           const ScoreConfig& config) {
  std::sort(candidates.begin(), candidates.end());
  const int c = static_cast<int>(candidates.size());
  BestParents best;
  best.score = -std::numeric_limits<double>::infinity();
  bool first = true;
  for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
    if (std::popcount(mask) > config.max_in_degree) continue;
    std::vector<int> subset;
    for (int i = 0; i < c; ++i)
      if (mask & (1u << i)) subset.push_back(candidates[i]);
    const ParentSet ps = ParentSet::of(subset);
    const double score = node_score(t, child, ps, config);
    if (first || score > best.score ||
        (score == best.score && ps < best.parents)) {
      best = BestParents{score, ps};
      first = false;
    }
  }
  return best;
}

} // namespace

TEST_CASE("best_parent_score base cases") {
  const DiscreteTable t = copy_pair_table(1000);
  ScoreConfig config;
  ScoreCache cache;

  SUBCASE("no candidates means the empty parent set, in both modes") {
    for (const auto mode : {SearchMode::ExactSubset, SearchMode::Greedy}) {
      const auto r = best_parent_score(t, 1, {}, config, mode, cache);
      CHECK(r.parents.empty());
      CHECK(r.score == node_score(t, 1, ParentSet{}, config));
    }
  }

  SUBCASE("k = 0 pins the empty set regardless of candidates") {
    ScoreConfig k0 = config;
    k0.max_in_degree = 0;
    const std::vector<int> cand{0};
    for (const auto mode : {SearchMode::ExactSubset, SearchMode::Greedy}) {
      const auto r = best_parent_score(t, 1, cand, k0, mode, cache);
      CHECK(r.parents.empty());
    }
  }

  SUBCASE("a deterministic copy is adopted as parent in both modes") {
    const std::vector<int> cand{0};
    for (const auto mode : {SearchMode::ExactSubset, SearchMode::Greedy}) {
      const auto r = best_parent_score(t, 1, cand, config, mode, cache);
      CHECK(r.parents.members() == std::vector<int>{0});
    }
    // and the adoption is justified by the independent factorial oracle
    CHECK(testsupport::factorial_k2(t, 1, {0}) >
          testsupport::factorial_k2(t, 1, {}));
  }

  SUBCASE("the child may not be its own candidate") {
    const std::vector<int> cand{0, 1};
    CHECK_THROWS_AS(
        best_parent_score(t, 1, cand, config, SearchMode::ExactSubset, cache),
        DataError);
  }
}

TEST_CASE("exact-subset search equals exhaustive enumeration") {
  std::mt19937_64 rng(31);
  ScoreConfig config;
  config.max_in_degree = 2;
  for (int trial = 0; trial < 15; ++trial) {
    const DiscreteTable t = random_table(rng, 6, 120);
    ScoreCache cache;
    for (int child = 0; child < 6; ++child) {
      std::vector<int> cand;
      for (int v = 0; v < 6; ++v)
        if (v != child) cand.push_back(v);
      const auto got = best_parent_score(t, child, cand, config,
                                         SearchMode::ExactSubset, cache);
      const auto want = exhaustive_with_library_scores(t, child, cand, config);
      CHECK(got.score == want.score);
      CHECK(got.parents == want.parents);
    }
  }
}

TEST_CASE("exact-subset ties break toward the smallest parent set") {
  // B is a byte-for-byte copy of A, so {A} and {B} score identically.
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < 40; ++i) rows.push_back({i % 2, i % 2, i % 2});
  const DiscreteTable t = make_table({"A", "B", "X"}, {2, 2, 2}, rows);
  ScoreConfig config;
  ScoreCache cache;
  const std::vector<int> cand{0, 1};
  const auto r =
      best_parent_score(t, 2, cand, config, SearchMode::ExactSubset, cache);
  CHECK(r.parents.members() == std::vector<int>{0});
}

TEST_CASE("greedy search") {
  std::mt19937_64 rng(43);
  ScoreConfig config;
  config.max_in_degree = 3;

  SUBCASE("never returns more than k parents and never loses to empty") {
    for (int trial = 0; trial < 10; ++trial) {
      const DiscreteTable t = random_table(rng, 6, 100);
      ScoreCache cache;
      for (int child = 0; child < 6; ++child) {
        std::vector<int> cand;
        for (int v = 0; v < 6; ++v)
          if (v != child) cand.push_back(v);
        const auto r =
            best_parent_score(t, child, cand, config, SearchMode::Greedy, cache);
        CHECK(r.parents.size() <= config.max_in_degree);
        CHECK(r.score >= node_score(t, child, ParentSet{}, config));
      }
    }
  }

  SUBCASE("greedy never beats exact-subset") {
    for (int trial = 0; trial < 10; ++trial) {
      const DiscreteTable t = random_table(rng, 5, 100);
      ScoreCache cache;
      for (int child = 0; child < 5; ++child) {
        std::vector<int> cand;
        for (int v = 0; v < 5; ++v)
          if (v != child) cand.push_back(v);
        const double exact =
            best_parent_score(t, child, cand, config, SearchMode::ExactSubset, cache)
                .score;
        const double greedy =
            best_parent_score(t, child, cand, config, SearchMode::Greedy, cache)
                .score;
        CHECK(greedy <= exact);
      }
    }
  }
}

TEST_CASE("exact-subset budget guard") {
  std::mt19937_64 rng(3);
  const DiscreteTable t = random_table(rng, 8, 30);
  ScoreConfig config;
  config.max_in_degree = 3;
  config.exact_subset_budget = 10; // C(7,<=3) = 64 subsets > 10
  ScoreCache cache;
  std::vector<int> cand;
  for (int v = 1; v < 8; ++v) cand.push_back(v);
  CHECK_THROWS_AS(
      best_parent_score(t, 0, cand, config, SearchMode::ExactSubset, cache),
      SolverError);
  // greedy mode is polynomial and ignores the budget
  CHECK_NOTHROW(
      best_parent_score(t, 0, cand, config, SearchMode::Greedy, cache));
}

TEST_CASE("CostOracle monotonicity: more history never hurts (exact mode)") {
  std::mt19937_64 rng(59);
  ScoreConfig config;
  config.max_in_degree = 2;
  int greedy_violations = 0;
  for (int trial = 0; trial < 8; ++trial) {
    const DiscreteTable t = random_table(rng, 5, 80);
    ScoreCache cache_exact, cache_greedy;
    const CostOracle exact(t, config, SearchMode::ExactSubset, cache_exact);
    const CostOracle greedy(t, config, SearchMode::Greedy, cache_greedy);
    for (int child = 0; child < 5; ++child) {
      std::vector<int> others;
      for (int v = 0; v < 5; ++v)
        if (v != child) others.push_back(v);
      // chain of nested predecessor sets
      for (std::size_t len = 0; len < others.size(); ++len) {
        const std::span<const int> small(others.data(), len);
        const std::span<const int> large(others.data(), len + 1);
        CHECK(exact.cost(child, large) <= exact.cost(child, small));
        if (greedy.cost(child, large) > greedy.cost(child, small))
          ++greedy_violations;
      }
    }
  }
  // heuristic property for greedy mode: observed, not contractual
  WARN_MESSAGE(greedy_violations == 0,
               "greedy cost oracle was non-monotone in ", greedy_violations,
               " nested-set pairs (allowed for the heuristic mode)");
}
