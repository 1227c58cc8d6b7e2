#include "bnsl/scoring.hpp"

#include <cmath>
#include <string>

#include "bnsl/error.hpp"

namespace bnsl {

std::string metric_name(ScoreMetric metric) {
  return metric == ScoreMetric::K2 ? "k2" : "bic";
}

ScoreMetric metric_from_name(const std::string& name) {
  if (name == "k2") return ScoreMetric::K2;
  if (name == "bic") return ScoreMetric::Bic;
  throw ConfigError("unknown metric '" + name + "' (expected k2 or bic)");
}

ContingencyCounts count_contingency(const DiscreteTable& table, int child,
                                    const ParentSet& parents,
                                    std::int64_t max_parent_configs) {
  const int n = table.variable_count();
  if (child < 0 || child >= n)
    throw DataError("child index out of range");
  if (parents.contains(child))
    throw DataError("child appears in its own parent set");

  std::int64_t q = 1;
  for (int p : parents.members()) {
    if (p < 0 || p >= n)
      throw DataError("parent index out of range");
    q *= table.cardinalities[p];
    if (q > max_parent_configs)
      throw SolverError("parent configuration count exceeds limit of " +
                        std::to_string(max_parent_configs));
  }

  ContingencyCounts counts;
  counts.child_cardinality = table.cardinalities[child];
  counts.config_count = q;
  counts.counts.assign(q * counts.child_cardinality, 0);
  counts.config_totals.assign(q, 0);

  const std::int64_t m = table.row_count();
  for (std::int64_t row = 0; row < m; ++row) {
    std::int64_t j = 0;
    for (int p : parents.members())
      j = j * table.cardinalities[p] + table.at(row, p);
    ++counts.counts[j * counts.child_cardinality + table.at(row, child)];
    ++counts.config_totals[j];
  }
  counts.total = m;
  return counts;
}

double k2_node_score(const ContingencyCounts& counts) {
  const int r = counts.child_cardinality;
  const double lgamma_r = std::lgamma(static_cast<double>(r));
  double score = 0.0;
  for (std::int64_t j = 0; j < counts.config_count; ++j) {
    if (counts.config_totals[j] == 0)
      continue; // empty-data identity term
    score += lgamma_r - std::lgamma(static_cast<double>(counts.config_totals[j] + r));
    for (int k = 0; k < r; ++k)
      score += std::lgamma(static_cast<double>(counts.at(j, k) + 1));
  }
  return score;
}

double bic_node_score(const ContingencyCounts& counts, std::int64_t rows) {
  if (rows <= 0)
    throw DataError("BIC requires a positive row count");
  const int r = counts.child_cardinality;
  double loglik = 0.0;
  for (std::int64_t j = 0; j < counts.config_count; ++j) {
    const std::int64_t nij = counts.config_totals[j];
    if (nij == 0)
      continue;
    for (int k = 0; k < r; ++k) {
      const std::int64_t nijk = counts.at(j, k);
      if (nijk > 0)
        loglik += static_cast<double>(nijk) *
                  std::log(static_cast<double>(nijk) / static_cast<double>(nij));
    }
  }
  const double penalty = 0.5 * static_cast<double>(counts.config_count) *
                         static_cast<double>(r - 1) *
                         std::log(static_cast<double>(rows));
  return loglik - penalty;
}

double node_score(const DiscreteTable& table, int child, const ParentSet& parents,
                  const ScoreConfig& config) {
  const ContingencyCounts counts =
      count_contingency(table, child, parents, config.max_parent_configs);
  return config.metric == ScoreMetric::K2 ? k2_node_score(counts)
                                          : bic_node_score(counts, table.row_count());
}

double cached_node_score(const DiscreteTable& table, int child,
                         const ParentSet& parents, const ScoreConfig& config,
                         ScoreCache& cache) {
  if (auto hit = cache.find(child, parents))
    return *hit;
  const double score = node_score(table, child, parents, config);
  cache.insert(child, parents, score);
  return score;
}

double graph_score(const DiscreteTable& table, const Dag& dag,
                   const ScoreConfig& config, ScoreCache& cache) {
  dag.verify();
  double total = 0.0;
  for (int v = 0; v < dag.n; ++v) {
    if (dag.parents[v].size() > config.max_in_degree)
      throw SolverError("node " + std::to_string(v) + " has in-degree " +
                        std::to_string(dag.parents[v].size()) + " > k = " +
                        std::to_string(config.max_in_degree));
    total += cached_node_score(table, v, dag.parents[v], config, cache);
  }
  return total;
}

std::string score_context(const DiscreteTable& table, const ScoreConfig& config) {
  // FNV-1a over the table contents
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 0x100000001b3ULL;
  };
  for (int c : table.cardinalities)
    mix(static_cast<std::uint64_t>(c));
  for (std::int32_t x : table.data)
    mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)));
  return metric_name(config.metric) + ":" + std::to_string(table.variable_count()) +
         "x" + std::to_string(table.row_count()) + ":" + std::to_string(h);
}

} // namespace bnsl
