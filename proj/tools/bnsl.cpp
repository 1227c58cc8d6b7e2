// Command-line driver: ingest | learn | evaluate | export, each taking one
// JSON run config plus a few overriding flags. Exit codes: 0 success,
// 2 config error, 3 data error, 4 solver error, 1 anything else.
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "bnsl/error.hpp"
#include "bnsl/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string solver;
  std::string out_dir;
  std::string lkh_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  // No ExistingFile check: a missing path should map to the config-error
  // exit code, not the argument parser's.
  cmd->add_option("--config", args.config_path, "JSON run config")->required();
  cmd->add_option("--seed", args.seed, "override the config seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--solver", args.solver,
                  "override the solver (dp | kopt2 | kopt3 | lkh-external)");
  cmd->add_option("--out", args.out_dir, "override the output directory");
  cmd->add_option("--lkh-path", args.lkh_path, "external solver binary");
}

bnsl::RunConfig load_config(const CommonArgs& args) {
  bnsl::RunConfig cfg = bnsl::RunConfig::from_json_file(args.config_path);
  if (args.seed_set) cfg.seed = args.seed;
  if (!args.solver.empty()) cfg.solver = bnsl::solver_from_name(args.solver);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (!args.lkh_path.empty()) cfg.lkh_path = args.lkh_path;
  return cfg;
}

int run(const std::string& command, const CommonArgs& args) {
  const bnsl::RunConfig cfg = load_config(args);
  if (command == "ingest") {
    const auto out = bnsl::run_ingest(cfg);
    std::printf("ingest: %lld rows read, %lld complete, %lld train / %lld test\n",
                static_cast<long long>(out.raw_rows),
                static_cast<long long>(out.kept_rows),
                static_cast<long long>(out.train_rows),
                static_cast<long long>(out.test_rows));
    for (std::size_t i = 0; i < out.names.size(); ++i)
      std::printf("  %-24s %d states\n", out.names[i].c_str(),
                  out.cardinalities[i]);
  } else if (command == "learn") {
    const auto out = bnsl::run_learn(cfg);
    std::printf("learn: solver %s, tour cost %.6f, graph score %.6f\n",
                bnsl::solver_name(cfg.solver).c_str(), out.tour_cost,
                out.model.score);
    std::printf("  ordering:");
    for (int v : out.ordering.perm)
      std::printf(" %s", out.model.names[v].c_str());
    std::printf("\n  wall time %.3f s\n", out.wall_seconds);
  } else if (command == "evaluate") {
    const auto out = bnsl::run_evaluate(cfg);
    std::printf("evaluate: network score %.6f, train log-likelihood %.6f\n",
                out.network_score, out.train_log_likelihood);
    for (const auto& t : out.tasks)
      std::printf("  task %-16s mse %.4f  accuracy %.4f  (n=%lld)\n",
                  t.task.name.c_str(), t.result.mse, t.result.accuracy,
                  static_cast<long long>(t.result.test_rows));
  } else if (command == "export") {
    const auto out = bnsl::run_export(cfg);
    std::printf("export: wrote TSPLIB instance (shift %.6g, scale %.6g)%s\n",
                out.scaling.shift, out.scaling.scale,
                out.wrote_dot ? " and DOT rendering" : "");
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian network structure learning via order search"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string command;
  for (const char* name : {"ingest", "learn", "evaluate", "export"}) {
    CLI::App* cmd = app.add_subcommand(
        name, std::string("run the ") + name + " step of a configured experiment");
    add_common(cmd, args);
    cmd->callback([&command, name] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run(command, args);
  } catch (const bnsl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const bnsl::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 3;
  } catch (const bnsl::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
