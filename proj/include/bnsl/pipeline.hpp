#ifndef BNSL_PIPELINE_HPP
#define BNSL_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bnsl/cost_oracle.hpp"
#include "bnsl/discrete_table.hpp"
#include "bnsl/hdtsp.hpp"
#include "bnsl/inference.hpp"
#include "bnsl/structure.hpp"
#include "bnsl/tsplib.hpp"

namespace bnsl {

enum class SolverKind { Dp, Kopt2, Kopt3, LkhExternal };

std::string solver_name(SolverKind solver);
SolverKind solver_from_name(const std::string& name);

struct EvalTask {
  std::string name;
  std::string target;
  std::vector<std::string> evidence;
  double threshold = 0.5;
};

// One experiment, loadable from a JSON file. Every artifact a run writes is
// a pure function of this struct, so re-running reproduces files byte for
// byte (wall-clock timing is only ever printed to the console).
struct RunConfig {
  std::string schema_path;
  std::string data_path;
  std::string out_dir = "out";
  SplitSpec split;
  ScoreMetric metric = ScoreMetric::K2;
  int max_in_degree = 3;
  SolverKind solver = SolverKind::Kopt3;
  SearchMode search = SearchMode::Greedy;
  int restarts = 10;
  std::uint64_t seed = 0;
  int max_no_improve = 2000;
  int threads = 1;
  bool zero_depot_cost = false; // drop Cost(X, {}) from the depot-out edge
  double alpha = 1.0;
  std::string lkh_path;
  std::vector<EvalTask> tasks;

  static RunConfig from_json_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text);
};

// Canonical artifact locations under a run's output directory.
struct OutPaths {
  explicit OutPaths(const std::string& dir);

  std::string dir;
  std::string meta;           // meta.json
  std::string train_csv;      // train.csv
  std::string test_csv;       // test.csv
  std::string ingest_report;  // ingest_report.txt
  std::string ordering;       // ordering.txt
  std::string network;        // network.bn
  std::string dot;            // network.dot
  std::string learn_report;   // learn_report.txt
  std::string eval_report;    // eval_report.txt
  std::string atsp;           // instance.atsp
  std::string tour;           // tour.txt
  std::string lkh_par;        // lkh.par
  std::string lkh_log;        // lkh.log
};

struct IngestOutcome {
  std::int64_t raw_rows = 0;
  std::int64_t kept_rows = 0;
  std::int64_t train_rows = 0;
  std::int64_t test_rows = 0;
  std::vector<std::string> names;
  std::vector<int> cardinalities;
};

// Load CSV -> drop incomplete rows -> discretize -> split -> write
// train/test state CSVs, meta.json and a text summary. The summary is
// written even when zero rows survive, after which a DataError is thrown.
IngestOutcome run_ingest(const RunConfig& config);

struct LearnOutcome {
  Ordering ordering;
  double tour_cost = 0.0;
  NetworkModel model;
  double wall_seconds = 0.0; // console-only; never written to artifacts
};

// Run the configured ordering solver on the ingested training data, then
// order-constrained parent selection. Writes ordering.txt, network.bn,
// network.dot and learn_report.txt.
LearnOutcome run_learn(const RunConfig& config);

struct TaskOutcome {
  EvalTask task;
  TaskResult result;
};

struct EvaluateOutcome {
  std::vector<TaskOutcome> tasks;
  double network_score = 0.0;
  double train_log_likelihood = 0.0;
};

// Fit CPTs on the training split and run every configured prediction task
// against the test split. Writes eval_report.txt.
EvaluateOutcome run_evaluate(const RunConfig& config);

struct ExportOutcome {
  TsplibScaling scaling;
  bool wrote_dot = false;
};

// Write the static-cost TSPLIB instance for the ingested training data and,
// when a learned network exists, refresh its DOT rendering.
ExportOutcome run_export(const RunConfig& config);

} // namespace bnsl

#endif
