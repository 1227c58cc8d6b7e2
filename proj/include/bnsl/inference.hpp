#ifndef BNSL_INFERENCE_HPP
#define BNSL_INFERENCE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "bnsl/dag.hpp"
#include "bnsl/discrete_table.hpp"

namespace bnsl {

// Fitted conditional probability tables. Each node's table is q x r with
// rows summing to 1; entries are strictly positive when alpha > 0.
struct CptSet {
  struct NodeCpt {
    int cardinality = 0;                 // r
    std::int64_t config_count = 1;       // q
    std::vector<int> parents;            // ascending variable indices
    std::vector<int> parent_cards;
    std::vector<double> prob;            // [config * r + state]

    std::int64_t config_of(const std::vector<int>& assignment) const {
      std::int64_t j = 0;
      for (std::size_t i = 0; i < parents.size(); ++i)
        j = j * parent_cards[i] + assignment[parents[i]];
      return j;
    }
    double p(std::int64_t config, int state) const {
      return prob[config * cardinality + state];
    }
  };
  double alpha = 1.0;
  std::vector<NodeCpt> nodes;

  int variable_count() const { return static_cast<int>(nodes.size()); }
};

// P(X = k | config j) = (N_ijk + alpha) / (N_ij + alpha * r); rows that stay
// unsmoothed and unobserved (alpha = 0, N_ij = 0) fall back to uniform.
CptSet fit_cpts(const DiscreteTable& table, const Dag& dag, double alpha);

struct Query {
  int target = 0;
  std::map<int, int> evidence; // variable -> observed state; target excluded
};

// Exact enumeration over all completions consistent with the evidence,
// normalized over target states. Guarded at 25 variables. Throws DataError
// when the evidence has probability zero.
std::vector<double> query_posterior(const CptSet& cpts, const Dag& dag,
                                    const Query& query);

struct ConfusionCounts {
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
};

struct TaskResult {
  double mse = 0.0;
  double accuracy = 0.0;
  ConfusionCounts confusion;
  std::int64_t test_rows = 0;
};

// Shared protocol for a binary target: posterior P(state 1 | evidence) per
// test row (memoized by evidence configuration), squared error against the
// observed state, and thresholded prediction.
TaskResult evaluate_task(const CptSet& cpts, const Dag& dag,
                         const DiscreteTable& test, int target,
                         const std::vector<int>& evidence_vars,
                         double threshold = 0.5);

double evaluate_mse(const CptSet& cpts, const Dag& dag, const DiscreteTable& test,
                    int target, const std::vector<int>& evidence_vars);

double evaluate_accuracy(const CptSet& cpts, const Dag& dag,
                         const DiscreteTable& test, int target,
                         const std::vector<int>& evidence_vars,
                         double threshold = 0.5);

// Sum over rows and nodes of ln P(x_v | parent config); -inf if any factor
// is zero (possible only when alpha = 0).
double log_likelihood(const CptSet& cpts, const Dag& dag, const DiscreteTable& table);

} // namespace bnsl

#endif
