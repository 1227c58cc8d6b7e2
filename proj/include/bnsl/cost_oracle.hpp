#ifndef BNSL_COST_ORACLE_HPP
#define BNSL_COST_ORACLE_HPP

#include <span>

#include "bnsl/discrete_table.hpp"
#include "bnsl/parent_set.hpp"
#include "bnsl/score_cache.hpp"
#include "bnsl/scoring.hpp"

namespace bnsl {

// How the inner maximization over candidate parent sets is carried out.
// ExactSubset enumerates every subset of the predecessors up to size k;
// Greedy adds one best improving parent at a time.
enum class SearchMode { ExactSubset, Greedy };

std::string search_mode_name(SearchMode mode);
SearchMode search_mode_from_name(const std::string& name);

struct BestParents {
  double score = 0.0; // log node score of the chosen parent set
  ParentSet parents;
};

// Best achievable node score for `child` with parents drawn from
// `candidates`, bounded by config.max_in_degree. Exact-subset ties are
// broken toward the lexicographically smallest parent set; greedy ties
// toward the lowest variable index. Exact-subset throws SolverError when
// the number of subsets exceeds config.exact_subset_budget.
BestParents best_parent_score(const DiscreteTable& table, int child,
                              std::span<const int> candidates,
                              const ScoreConfig& config, SearchMode mode,
                              ScoreCache& cache);

// Cost(X, S) = -BestNodeScore(X | parents within S). Pure given (X, S):
// repeated queries return identical values, so tours may be re-evaluated
// incrementally. In exact-subset mode the cost is monotone non-increasing
// in S; in greedy mode that is only a heuristic property.
class CostOracle {
public:
  CostOracle(const DiscreteTable& table, const ScoreConfig& config,
             SearchMode mode, ScoreCache& cache)
      : table_(&table), config_(config), mode_(mode), cache_(&cache) {}

  int variable_count() const { return table_->variable_count(); }
  SearchMode mode() const { return mode_; }
  const ScoreConfig& config() const { return config_; }

  double cost(int var, std::span<const int> predecessors) const {
    return -best_parents(var, predecessors).score;
  }

  BestParents best_parents(int var, std::span<const int> predecessors) const {
    return best_parent_score(*table_, var, predecessors, config_, mode_, *cache_);
  }

private:
  const DiscreteTable* table_;
  ScoreConfig config_;
  SearchMode mode_;
  ScoreCache* cache_;
};

} // namespace bnsl

#endif
