#include "bnsl/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bnsl/error.hpp"
#include "bnsl/schema.hpp"

namespace bnsl {

namespace fs = std::filesystem;
using nlohmann::json;

std::string solver_name(SolverKind solver) {
  switch (solver) {
    case SolverKind::Dp: return "dp";
    case SolverKind::Kopt2: return "kopt2";
    case SolverKind::Kopt3: return "kopt3";
    case SolverKind::LkhExternal: return "lkh-external";
  }
  throw ConfigError("unknown solver kind");
}

SolverKind solver_from_name(const std::string& name) {
  if (name == "dp") return SolverKind::Dp;
  if (name == "kopt2") return SolverKind::Kopt2;
  if (name == "kopt3") return SolverKind::Kopt3;
  if (name == "lkh-external") return SolverKind::LkhExternal;
  throw ConfigError("unknown solver '" + name +
                    "' (expected dp, kopt2, kopt3 or lkh-external)");
}

namespace {

std::string fmt_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  for (const auto& key : {"schema", "data"})
    if (!j.contains(key))
      throw ConfigError(std::string("run config is missing required key '") +
                        key + "'");

  RunConfig cfg;
  try {
    cfg.schema_path = j.at("schema").get<std::string>();
    cfg.data_path = j.at("data").get<std::string>();
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    if (j.contains("split")) {
      const auto& s = j.at("split");
      cfg.split.test_count = s.value("test_count", cfg.split.test_count);
      cfg.split.seed = s.value("seed", cfg.split.seed);
      const std::string method = s.value("method", std::string("tail"));
      if (method == "tail")
        cfg.split.method = SplitSpec::Method::Tail;
      else if (method == "shuffled")
        cfg.split.method = SplitSpec::Method::Shuffled;
      else
        throw ConfigError("unknown split method '" + method +
                          "' (expected tail or shuffled)");
    }
    if (j.contains("metric")) cfg.metric = metric_from_name(j.at("metric"));
    cfg.max_in_degree = j.value("max_in_degree", cfg.max_in_degree);
    if (j.contains("solver")) cfg.solver = solver_from_name(j.at("solver"));
    if (j.contains("search")) cfg.search = search_mode_from_name(j.at("search"));
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.max_no_improve = j.value("max_no_improve", cfg.max_no_improve);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.zero_depot_cost = j.value("zero_depot_cost", cfg.zero_depot_cost);
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.lkh_path = j.value("lkh_path", cfg.lkh_path);
    for (const auto& t : j.value("tasks", json::array())) {
      EvalTask task;
      task.name = t.value("name", std::string());
      task.target = t.at("target").get<std::string>();
      for (const auto& e : t.value("evidence", json::array()))
        task.evidence.push_back(e.get<std::string>());
      task.threshold = t.value("threshold", task.threshold);
      if (task.name.empty()) task.name = task.target;
      cfg.tasks.push_back(std::move(task));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed run config: ") + e.what());
  }
  if (cfg.max_in_degree < 0) throw ConfigError("max_in_degree must be >= 0");
  if (cfg.alpha < 0.0) throw ConfigError("alpha must be non-negative");
  if (cfg.restarts < 1) throw ConfigError("restarts must be >= 1");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  return cfg;
}

} // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open run config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return from_json_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

OutPaths::OutPaths(const std::string& d) : dir(d) {
  const auto join = [&](const char* leaf) {
    return (fs::path(dir) / leaf).string();
  };
  meta = join("meta.json");
  train_csv = join("train.csv");
  test_csv = join("test.csv");
  ingest_report = join("ingest_report.txt");
  ordering = join("ordering.txt");
  network = join("network.bn");
  dot = join("network.dot");
  learn_report = join("learn_report.txt");
  eval_report = join("eval_report.txt");
  atsp = join("instance.atsp");
  tour = join("tour.txt");
  lkh_par = join("lkh.par");
  lkh_log = join("lkh.log");
}

namespace {

struct Meta {
  std::vector<std::string> names;
  std::vector<int> cardinalities;
  std::int64_t raw_rows = 0;
  std::int64_t kept_rows = 0;
  std::int64_t train_rows = 0;
  std::int64_t test_rows = 0;
};

void write_meta(const Meta& meta, const std::string& path) {
  json j;
  j["names"] = meta.names;
  j["cardinalities"] = meta.cardinalities;
  j["raw_rows"] = meta.raw_rows;
  j["kept_rows"] = meta.kept_rows;
  j["train_rows"] = meta.train_rows;
  j["test_rows"] = meta.test_rows;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

Meta read_meta(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open '" + path + "' (run the ingest step first)");
  json j;
  try {
    in >> j;
    Meta meta;
    meta.names = j.at("names").get<std::vector<std::string>>();
    meta.cardinalities = j.at("cardinalities").get<std::vector<int>>();
    meta.raw_rows = j.at("raw_rows").get<std::int64_t>();
    meta.kept_rows = j.at("kept_rows").get<std::int64_t>();
    meta.train_rows = j.at("train_rows").get<std::int64_t>();
    meta.test_rows = j.at("test_rows").get<std::int64_t>();
    return meta;
  } catch (const json::exception& e) {
    throw DataError(path + ": malformed metadata: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << text;
}

DiscreteTable load_split(const OutPaths& paths, const Meta& meta, bool train) {
  const std::string& path = train ? paths.train_csv : paths.test_csv;
  DiscreteTable table = read_state_csv(path, meta.cardinalities);
  if (table.names != meta.names)
    throw DataError(path + ": header does not match '" + paths.meta + "'");
  return table;
}

ScoreConfig score_config_of(const RunConfig& cfg) {
  ScoreConfig sc;
  sc.metric = cfg.metric;
  sc.max_in_degree = cfg.max_in_degree;
  return sc;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

Ordering solve_lkh(const RunConfig& cfg, const OutPaths& paths,
                   const StaticCostMatrix& matrix) {
  if (cfg.lkh_path.empty())
    throw ConfigError("solver lkh-external requires lkh_path");
  if (!fs::exists(cfg.lkh_path))
    throw SolverError("external solver not found at '" + cfg.lkh_path + "'");

  export_tsplib(matrix, paths.atsp);
  std::ostringstream par;
  par << "PROBLEM_FILE = " << paths.atsp << "\n"
      << "TOUR_FILE = " << paths.tour << "\n"
      << "RUNS = " << cfg.restarts << "\n"
      << "SEED = " << (cfg.seed == 0 ? 1 : cfg.seed) << "\n"
      << "TRACE_LEVEL = 0\n";
  write_text(paths.lkh_par, par.str());

  std::error_code ec;
  fs::remove(paths.tour, ec);
  const std::string cmd = shell_quote(cfg.lkh_path) + " " +
                          shell_quote(paths.lkh_par) + " > " +
                          shell_quote(paths.lkh_log) + " 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc != 0)
    throw SolverError("external solver exited with status " + std::to_string(rc) +
                      " (see '" + paths.lkh_log + "')");
  if (!fs::exists(paths.tour))
    throw SolverError("external solver wrote no tour file '" + paths.tour + "'");
  return import_tour(paths.tour, matrix.n);
}

} // namespace

IngestOutcome run_ingest(const RunConfig& cfg) {
  const OutPaths paths(cfg.out_dir);
  fs::create_directories(paths.dir);

  const Schema schema = Schema::from_json_file(cfg.schema_path);
  const RawTable raw = load_csv(cfg.data_path, schema);
  const RawTable complete = drop_missing(raw);
  const DiscreteTable table = discretize(complete, schema);

  IngestOutcome out;
  out.raw_rows = static_cast<std::int64_t>(raw.rows.size());
  out.kept_rows = table.row_count();
  out.names = table.names;
  out.cardinalities = table.cardinalities;

  DiscreteTable train, test;
  if (out.kept_rows > 0) {
    std::tie(train, test) = split(table, cfg.split);
    out.train_rows = train.row_count();
    out.test_rows = test.row_count();
  }

  std::ostringstream report;
  report << "# bnsl ingest report v1\n"
         << "source " << cfg.data_path << "\n"
         << "raw_rows " << out.raw_rows << "\n"
         << "kept_rows " << out.kept_rows << "\n"
         << "train_rows " << out.train_rows << "\n"
         << "test_rows " << out.test_rows << "\n"
         << "variables " << out.names.size() << "\n";
  for (std::size_t i = 0; i < out.names.size(); ++i)
    report << "var " << out.names[i] << " states " << out.cardinalities[i] << "\n";
  write_text(paths.ingest_report, report.str());

  Meta meta;
  meta.names = out.names;
  meta.cardinalities = out.cardinalities;
  meta.raw_rows = out.raw_rows;
  meta.kept_rows = out.kept_rows;
  meta.train_rows = out.train_rows;
  meta.test_rows = out.test_rows;
  write_meta(meta, paths.meta);

  if (out.kept_rows == 0)
    throw DataError(cfg.data_path +
                    ": no complete rows survive after dropping missing values");

  write_state_csv(train, paths.train_csv);
  write_state_csv(test, paths.test_csv);
  return out;
}

LearnOutcome run_learn(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const OutPaths paths(cfg.out_dir);
  const Meta meta = read_meta(paths.meta);
  const DiscreteTable train = load_split(paths, meta, /*train=*/true);
  const int n = train.variable_count();

  const ScoreConfig sc = score_config_of(cfg);
  ScoreCache cache;
  const CostOracle oracle(train, sc, cfg.search, cache);
  const TourConventions conv{cfg.zero_depot_cost};

  Ordering ordering;
  double cost = 0.0;
  switch (cfg.solver) {
    case SolverKind::Dp: {
      const DpResult r = exact_dp_ordering(oracle, n, conv);
      ordering = r.ordering;
      cost = r.cost;
      break;
    }
    case SolverKind::Kopt2:
    case SolverKind::Kopt3: {
      const StaticCostMatrix matrix = static_cost_matrix(oracle, conv);
      const Ordering start = nearest_neighbor_tour(matrix);
      KoptParams params;
      params.level = cfg.solver == SolverKind::Kopt2 ? 2 : 3;
      params.restarts = cfg.restarts;
      params.seed = cfg.seed;
      params.max_no_improve = cfg.max_no_improve;
      params.threads = cfg.threads;
      params.conventions = conv;
      const KoptResult r = kopt_local_search(start, oracle, params);
      ordering = r.ordering;
      cost = r.cost;
      break;
    }
    case SolverKind::LkhExternal: {
      const StaticCostMatrix matrix = static_cost_matrix(oracle, conv);
      ordering = solve_lkh(cfg, paths, matrix);
      cost = tour_cost(ordering, oracle, conv);
      break;
    }
  }

  const Dag dag = learn_structure(train, ordering, sc, cache, cfg.search);
  const double score = graph_score(train, dag, sc, cache);

  LearnOutcome out;
  out.ordering = ordering;
  out.tour_cost = cost;
  out.model = NetworkModel{dag, train.names, train.cardinalities, cfg.metric, score};

  write_ordering(ordering, cost, paths.ordering);
  write_network(out.model, paths.network);
  write_dot(dag, train.names, paths.dot);

  std::size_t edge_count = 0;
  for (const auto& ps : dag.parents) edge_count += ps.size();
  std::ostringstream report;
  report << "# bnsl learn report v1\n"
         << "solver " << solver_name(cfg.solver) << "\n"
         << "search " << search_mode_name(cfg.search) << "\n"
         << "metric " << metric_name(cfg.metric) << "\n"
         << "max_in_degree " << cfg.max_in_degree << "\n"
         << "seed " << cfg.seed << "\n"
         << "variables " << n << "\n"
         << "train_rows " << train.row_count() << "\n"
         << "tour_cost " << fmt_double(cost) << "\n"
         << "graph_score " << fmt_double(score) << "\n"
         << "edges " << edge_count << "\n";
  for (int v = 0; v < n; ++v)
    for (int p : dag.parents[v].members())
      report << "edge " << train.names[p] << " -> " << train.names[v] << "\n";
  write_text(paths.learn_report, report.str());

  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

EvaluateOutcome run_evaluate(const RunConfig& cfg) {
  const OutPaths paths(cfg.out_dir);
  const Meta meta = read_meta(paths.meta);
  const DiscreteTable train = load_split(paths, meta, /*train=*/true);
  const DiscreteTable test = load_split(paths, meta, /*train=*/false);
  const NetworkModel model = read_network(paths.network);
  if (model.names != train.names || model.cardinalities != train.cardinalities)
    throw DataError(paths.network + ": network does not match the ingested data");

  const CptSet cpts = fit_cpts(train, model.dag, cfg.alpha);

  EvaluateOutcome out;
  out.network_score = model.score;
  out.train_log_likelihood = log_likelihood(cpts, model.dag, train);

  std::ostringstream report;
  report << "# bnsl evaluation report v1\n"
         << "metric " << metric_name(model.metric) << "\n"
         << "network_score " << fmt_double(model.score) << "\n"
         << "train_log_likelihood " << fmt_double(out.train_log_likelihood) << "\n"
         << "train_rows " << train.row_count() << "\n"
         << "test_rows " << test.row_count() << "\n"
         << "alpha " << fmt_double(cfg.alpha) << "\n"
         << "tasks " << cfg.tasks.size() << "\n";

  for (const EvalTask& task : cfg.tasks) {
    const int target = test.index_of(task.target);
    if (target < 0)
      throw DataError("task '" + task.name + "': unknown target variable '" +
                      task.target + "'");
    std::vector<int> evidence;
    for (const std::string& name : task.evidence) {
      const int v = test.index_of(name);
      if (v < 0)
        throw DataError("task '" + task.name + "': unknown evidence variable '" +
                        name + "'");
      evidence.push_back(v);
    }
    const TaskResult res =
        evaluate_task(cpts, model.dag, test, target, evidence, task.threshold);
    out.tasks.push_back(TaskOutcome{task, res});

    report << "task " << task.name << "\n"
           << "  target " << task.target << "\n"
           << "  evidence";
    for (const std::string& name : task.evidence) report << " " << name;
    report << "\n"
           << "  threshold " << fmt_double(task.threshold) << "\n"
           << "  test_rows " << res.test_rows << "\n"
           << "  mse " << fmt_double(res.mse) << "\n"
           << "  accuracy " << fmt_double(res.accuracy) << "\n"
           << "  confusion tp " << res.confusion.tp << " fp " << res.confusion.fp
           << " tn " << res.confusion.tn << " fn " << res.confusion.fn << "\n";
  }
  write_text(paths.eval_report, report.str());
  return out;
}

ExportOutcome run_export(const RunConfig& cfg) {
  const OutPaths paths(cfg.out_dir);
  const Meta meta = read_meta(paths.meta);
  const DiscreteTable train = load_split(paths, meta, /*train=*/true);

  const ScoreConfig sc = score_config_of(cfg);
  ScoreCache cache;
  const CostOracle oracle(train, sc, cfg.search, cache);
  const StaticCostMatrix matrix =
      static_cost_matrix(oracle, TourConventions{cfg.zero_depot_cost});

  ExportOutcome out;
  out.scaling = export_tsplib(matrix, paths.atsp);
  if (fs::exists(paths.network)) {
    const NetworkModel model = read_network(paths.network);
    write_dot(model.dag, model.names, paths.dot);
    out.wrote_dot = true;
  }
  return out;
}

} // namespace bnsl
