#include "bnsl/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "bnsl/error.hpp"
#include "bnsl/scoring.hpp"

namespace bnsl {

CptSet fit_cpts(const DiscreteTable& table, const Dag& dag, double alpha) {
  if (alpha < 0.0)
    throw ConfigError("smoothing pseudocount must be non-negative");
  const int n = table.variable_count();
  if (dag.n != n)
    throw DataError("graph and table disagree on variable count");

  CptSet out;
  out.alpha = alpha;
  out.nodes.resize(n);
  for (int v = 0; v < n; ++v) {
    const auto counts = count_contingency(table, v, dag.parents[v]);
    auto& node = out.nodes[v];
    node.cardinality = counts.child_cardinality;
    node.config_count = counts.config_count;
    node.parents.assign(dag.parents[v].members().begin(),
                        dag.parents[v].members().end());
    node.parent_cards.reserve(node.parents.size());
    for (int p : node.parents) node.parent_cards.push_back(table.cardinalities[p]);

    const int r = node.cardinality;
    node.prob.resize(static_cast<std::size_t>(node.config_count) * r);
    for (std::int64_t j = 0; j < node.config_count; ++j) {
      const double denom = static_cast<double>(counts.config_totals[j]) + alpha * r;
      for (int k = 0; k < r; ++k) {
        double p;
        if (denom == 0.0)
          p = 1.0 / r; // unobserved config, no smoothing: uniform fallback
        else
          p = (static_cast<double>(counts.at(j, k)) + alpha) / denom;
        node.prob[static_cast<std::size_t>(j) * r + k] = p;
      }
    }
  }
  return out;
}

namespace {

constexpr int kMaxEnumerationVars = 25;

// Depth-first sum over completions; `assignment` carries fixed evidence and
// -1 for free variables. Visits nodes in topological order so every factor's
// parents are assigned before the factor is multiplied in.
double enumerate(const CptSet& cpts, const std::vector<int>& topo,
                 std::size_t depth, std::vector<int>& assignment,
                 double weight) {
  if (weight == 0.0) return 0.0;
  if (depth == topo.size()) return weight;
  const int v = topo[depth];
  const auto& node = cpts.nodes[v];
  if (assignment[v] >= 0) {
    const std::int64_t j = node.config_of(assignment);
    return enumerate(cpts, topo, depth + 1, assignment,
                     weight * node.p(j, assignment[v]));
  }
  const std::int64_t j = node.config_of(assignment);
  double total = 0.0;
  for (int k = 0; k < node.cardinality; ++k) {
    assignment[v] = k;
    total += enumerate(cpts, topo, depth + 1, assignment, weight * node.p(j, k));
  }
  assignment[v] = -1;
  return total;
}

} // namespace

std::vector<double> query_posterior(const CptSet& cpts, const Dag& dag,
                                    const Query& query) {
  const int n = cpts.variable_count();
  if (n > kMaxEnumerationVars)
    throw SolverError("exact enumeration supports at most 25 variables");
  if (query.target < 0 || query.target >= n)
    throw DataError("query target out of range");
  if (query.evidence.count(query.target))
    throw DataError("query target cannot appear in the evidence");

  std::vector<int> assignment(n, -1);
  for (const auto& [v, s] : query.evidence) {
    if (v < 0 || v >= n) throw DataError("evidence variable out of range");
    if (s < 0 || s >= cpts.nodes[v].cardinality)
      throw DataError("evidence state out of range");
    assignment[v] = s;
  }

  const int r = cpts.nodes[query.target].cardinality;
  std::vector<double> joint(r, 0.0);
  for (int k = 0; k < r; ++k) {
    assignment[query.target] = k;
    joint[k] = enumerate(cpts, dag.ordering.perm, 0, assignment, 1.0);
  }
  assignment[query.target] = -1;

  double z = 0.0;
  for (double w : joint) z += w;
  if (z <= 0.0)
    throw DataError("evidence configuration has probability zero under the model");
  for (double& w : joint) w /= z;
  return joint;
}

namespace {

// Posteriors depend only on the evidence configuration, so cache them keyed
// by the evidence states in `evidence_vars` order.
class PosteriorMemo {
 public:
  PosteriorMemo(const CptSet& cpts, const Dag& dag, int target,
                const std::vector<int>& evidence_vars)
      : cpts_(cpts), dag_(dag), target_(target), evidence_vars_(evidence_vars) {}

  const std::vector<double>& posterior(const DiscreteTable& test, std::int64_t row) {
    key_.clear();
    for (int v : evidence_vars_) key_.push_back(test.at(row, v));
    auto it = memo_.find(key_);
    if (it != memo_.end()) return it->second;
    Query q;
    q.target = target_;
    for (std::size_t i = 0; i < evidence_vars_.size(); ++i)
      q.evidence[evidence_vars_[i]] = key_[i];
    return memo_.emplace(key_, query_posterior(cpts_, dag_, q)).first->second;
  }

 private:
  const CptSet& cpts_;
  const Dag& dag_;
  int target_;
  const std::vector<int>& evidence_vars_;
  std::vector<int> key_;
  std::map<std::vector<int>, std::vector<double>> memo_;
};

} // namespace

TaskResult evaluate_task(const CptSet& cpts, const Dag& dag,
                         const DiscreteTable& test, int target,
                         const std::vector<int>& evidence_vars,
                         double threshold) {
  if (target < 0 || target >= test.variable_count())
    throw DataError("evaluation target out of range");
  if (cpts.nodes[target].cardinality != 2)
    throw DataError("evaluation target must be binary");
  for (int v : evidence_vars) {
    if (v < 0 || v >= test.variable_count())
      throw DataError("evidence variable out of range");
    if (v == target) throw DataError("evaluation target cannot be evidence");
  }
  const std::int64_t m = test.row_count();
  if (m == 0) throw DataError("evaluation requires at least one test row");

  PosteriorMemo memo(cpts, dag, target, evidence_vars);
  TaskResult result;
  result.test_rows = m;
  double sq_sum = 0.0;
  for (std::int64_t row = 0; row < m; ++row) {
    const double p1 = memo.posterior(test, row)[1];
    const int observed = test.at(row, target);
    const double diff = p1 - static_cast<double>(observed);
    sq_sum += diff * diff;
    const int predicted = p1 > threshold ? 1 : 0;
    if (observed == 1)
      (predicted == 1 ? result.confusion.tp : result.confusion.fn) += 1;
    else
      (predicted == 1 ? result.confusion.fp : result.confusion.tn) += 1;
  }
  result.mse = sq_sum / static_cast<double>(m);
  result.accuracy =
      static_cast<double>(result.confusion.tp + result.confusion.tn) /
      static_cast<double>(m);
  return result;
}

double evaluate_mse(const CptSet& cpts, const Dag& dag, const DiscreteTable& test,
                    int target, const std::vector<int>& evidence_vars) {
  return evaluate_task(cpts, dag, test, target, evidence_vars).mse;
}

double evaluate_accuracy(const CptSet& cpts, const Dag& dag,
                         const DiscreteTable& test, int target,
                         const std::vector<int>& evidence_vars,
                         double threshold) {
  return evaluate_task(cpts, dag, test, target, evidence_vars, threshold).accuracy;
}

double log_likelihood(const CptSet& cpts, const Dag& dag, const DiscreteTable& table) {
  const int n = cpts.variable_count();
  if (table.variable_count() != n || dag.n != n)
    throw DataError("graph and table disagree on variable count");
  double total = 0.0;
  std::vector<int> assignment(n, 0);
  for (std::int64_t row = 0; row < table.row_count(); ++row) {
    for (int v = 0; v < n; ++v) assignment[v] = table.at(row, v);
    for (int v : dag.ordering.perm) {
      const auto& node = cpts.nodes[v];
      const double p = node.p(node.config_of(assignment), assignment[v]);
      if (p <= 0.0) return -std::numeric_limits<double>::infinity();
      total += std::log(p);
    }
  }
  return total;
}

} // namespace bnsl
