#include "bnsl/cost_oracle.hpp"

#include <algorithm>

#include "bnsl/error.hpp"

namespace bnsl {

std::string search_mode_name(SearchMode mode) {
  return mode == SearchMode::ExactSubset ? "exact-subset" : "greedy";
}

SearchMode search_mode_from_name(const std::string& name) {
  if (name == "exact-subset") return SearchMode::ExactSubset;
  if (name == "greedy") return SearchMode::Greedy;
  throw ConfigError("unknown oracle mode '" + name +
                    "' (expected exact-subset or greedy)");
}

namespace {

// Number of subsets of an s-element set with size <= k, saturating at cap.
std::uint64_t subset_count(int s, int k, std::uint64_t cap) {
  std::uint64_t total = 0;
  double binom = 1.0; // C(s, i), exact for the magnitudes that matter here
  for (int i = 0; i <= std::min(s, k); ++i) {
    if (binom > static_cast<double>(cap))
      return cap + 1;
    total += static_cast<std::uint64_t>(binom);
    if (total > cap)
      return cap + 1;
    binom = binom * (s - i) / (i + 1);
  }
  return total;
}

BestParents exact_subset_search(const DiscreteTable& table, int child,
                                std::span<const int> candidates,
                                const ScoreConfig& config, ScoreCache& cache) {
  std::vector<int> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());
  const int s = static_cast<int>(pool.size());
  const int k = std::min(config.max_in_degree, s);

  if (subset_count(s, k, config.exact_subset_budget) > config.exact_subset_budget)
    throw SolverError("exact-subset enumeration over " + std::to_string(s) +
                      " candidates exceeds the budget of " +
                      std::to_string(config.exact_subset_budget) + " subsets");

  BestParents best;
  best.parents = ParentSet{};
  best.score = cached_node_score(table, child, best.parents, config, cache);

  // fixed-size combinations of the sorted pool, sizes 1..k
  std::vector<int> pick;
  for (int size = 1; size <= k; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i)
      idx[i] = i;
    while (true) {
      pick.clear();
      for (int i : idx)
        pick.push_back(pool[i]);
      const ParentSet parents = ParentSet::of(pick);
      const double score = cached_node_score(table, child, parents, config, cache);
      if (score > best.score ||
          (score == best.score && parents < best.parents))
        best = BestParents{score, parents};
      // next combination
      int i = size - 1;
      while (i >= 0 && idx[i] == s - size + i)
        --i;
      if (i < 0)
        break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j)
        idx[j] = idx[j - 1] + 1;
    }
  }
  return best;
}

BestParents greedy_search(const DiscreteTable& table, int child,
                          std::span<const int> candidates,
                          const ScoreConfig& config, ScoreCache& cache) {
  std::vector<int> pool(candidates.begin(), candidates.end());
  std::sort(pool.begin(), pool.end());

  BestParents current;
  current.parents = ParentSet{};
  current.score = cached_node_score(table, child, current.parents, config, cache);

  std::vector<bool> used(pool.size(), false);
  while (current.parents.size() < config.max_in_degree) {
    int best_idx = -1;
    double best_score = current.score;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i])
        continue;
      const ParentSet extended = current.parents.with(pool[i]);
      const double score = cached_node_score(table, child, extended, config, cache);
      if (score > best_score) { // strict: ties keep the earlier (lower) index
        best_score = score;
        best_idx = static_cast<int>(i);
      }
    }
    if (best_idx < 0)
      break;
    used[best_idx] = true;
    current.parents = current.parents.with(pool[best_idx]);
    current.score = best_score;
  }
  return current;
}

} // namespace

BestParents best_parent_score(const DiscreteTable& table, int child,
                              std::span<const int> candidates,
                              const ScoreConfig& config, SearchMode mode,
                              ScoreCache& cache) {
  for (int c : candidates)
    if (c == child)
      throw DataError("child cannot be its own ordering predecessor");
  if (config.max_in_degree <= 0 || candidates.empty()) {
    BestParents best;
    best.parents = ParentSet{};
    best.score = cached_node_score(table, child, best.parents, config, cache);
    return best;
  }
  return mode == SearchMode::ExactSubset
             ? exact_subset_search(table, child, candidates, config, cache)
             : greedy_search(table, child, candidates, config, cache);
}

} // namespace bnsl
