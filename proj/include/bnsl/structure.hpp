#ifndef BNSL_STRUCTURE_HPP
#define BNSL_STRUCTURE_HPP

#include <string>
#include <vector>

#include "bnsl/cost_oracle.hpp"
#include "bnsl/dag.hpp"
#include "bnsl/discrete_table.hpp"

namespace bnsl {

// Order-constrained parent selection: node v at position i may only take
// parents from the first i variables of the ordering. The default greedy
// mode adds one improving parent at a time; ties go to the lower variable
// index. No deletion or reversal pass afterwards.
Dag learn_structure(const DiscreteTable& table, const Ordering& ordering,
                    const ScoreConfig& config, ScoreCache& cache,
                    SearchMode mode = SearchMode::Greedy);

std::string to_dot(const Dag& dag, const std::vector<std::string>& names);
void write_dot(const Dag& dag, const std::vector<std::string>& names,
               const std::string& path);

// Learned network plus the bookkeeping needed to reload and evaluate it.
struct NetworkModel {
  Dag dag;
  std::vector<std::string> names;
  std::vector<int> cardinalities;
  ScoreMetric metric = ScoreMetric::K2;
  double score = 0.0;

  bool operator==(const NetworkModel&) const = default;
};

// Versioned structured-text format; write/read round-trips exactly.
void write_network(const NetworkModel& model, const std::string& path);
NetworkModel read_network(const std::string& path);

} // namespace bnsl

#endif
