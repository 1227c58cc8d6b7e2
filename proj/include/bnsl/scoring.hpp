#ifndef BNSL_SCORING_HPP
#define BNSL_SCORING_HPP

#include <cstdint>
#include <string>

#include "bnsl/dag.hpp"
#include "bnsl/discrete_table.hpp"
#include "bnsl/parent_set.hpp"
#include "bnsl/score_cache.hpp"

namespace bnsl {

enum class ScoreMetric { K2, Bic };

std::string metric_name(ScoreMetric metric);
ScoreMetric metric_from_name(const std::string& name);

struct ScoreConfig {
  ScoreMetric metric = ScoreMetric::K2;
  int max_in_degree = 3;
  std::int64_t max_parent_configs = std::int64_t{1} << 31;
  std::uint64_t exact_subset_budget = 1'000'000;
};

// Sufficient statistics for one (child, parent set) pair. Parent joint
// configurations are mixed-radix encoded with the first listed (lowest
// index) parent most significant.
struct ContingencyCounts {
  int child_cardinality = 0;                // r
  std::int64_t config_count = 0;            // q
  std::vector<std::int64_t> counts;         // N_ijk at [j * r + k]
  std::vector<std::int64_t> config_totals;  // N_ij
  std::int64_t total = 0;                   // sum of all counts

  std::int64_t at(std::int64_t config, int state) const {
    return counts[config * child_cardinality + state];
  }
};

ContingencyCounts count_contingency(const DiscreteTable& table, int child,
                                    const ParentSet& parents,
                                    std::int64_t max_parent_configs = std::int64_t{1} << 31);

// log of the K2 marginal likelihood term for one node, evaluated entirely in
// log-gamma space:  sum_j [ lnG(r) - lnG(N_ij + r) + sum_k lnG(N_ijk + 1) ].
double k2_node_score(const ContingencyCounts& counts);

// Max log-likelihood minus (q (r-1) / 2) ln m.
double bic_node_score(const ContingencyCounts& counts, std::int64_t rows);

double node_score(const DiscreteTable& table, int child, const ParentSet& parents,
                  const ScoreConfig& config);

// As node_score but memoized; the cached value equals recomputation exactly.
double cached_node_score(const DiscreteTable& table, int child,
                         const ParentSet& parents, const ScoreConfig& config,
                         ScoreCache& cache);

// Sum of node scores given each node's DAG parents (the decomposable graph
// score). Throws SolverError if any in-degree exceeds config.max_in_degree.
double graph_score(const DiscreteTable& table, const Dag& dag,
                   const ScoreConfig& config, ScoreCache& cache);

// Context string for warm-start cache files (metric + table fingerprint).
std::string score_context(const DiscreteTable& table, const ScoreConfig& config);

} // namespace bnsl

#endif
