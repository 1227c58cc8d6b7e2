#include "bnsl/structure.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bnsl/error.hpp"

namespace bnsl {

Dag learn_structure(const DiscreteTable& table, const Ordering& ordering,
                    const ScoreConfig& config, ScoreCache& cache,
                    SearchMode mode) {
  ordering.validate();
  if (ordering.size() != table.variable_count())
    throw DataError("ordering does not cover all table variables");

  Dag dag;
  dag.n = table.variable_count();
  dag.parents.resize(dag.n);
  dag.ordering = ordering;
  for (int i = 0; i < dag.n; ++i) {
    const int v = ordering.perm[i];
    const std::span<const int> predecessors(ordering.perm.data(), i);
    dag.parents[v] =
        best_parent_score(table, v, predecessors, config, mode, cache).parents;
  }
  dag.verify();
  return dag;
}

std::string to_dot(const Dag& dag, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "digraph bn {\n";
  for (int v = 0; v < dag.n; ++v)
    out << "  \"" << names[v] << "\";\n";
  for (int v = 0; v < dag.n; ++v)
    for (int p : dag.parents[v].members())
      out << "  \"" << names[p] << "\" -> \"" << names[v] << "\";\n";
  out << "}\n";
  return out.str();
}

void write_dot(const Dag& dag, const std::vector<std::string>& names,
               const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw DataError("cannot write " + path);
  out << to_dot(dag, names);
}

void write_network(const NetworkModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw DataError("cannot write " + path);
  out << "# bnsl network v1\n";
  out << "nodes " << model.dag.n << "\n";
  out << "metric " << metric_name(model.metric) << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", model.score);
  out << "score " << buf << "\n";
  out << "ordering";
  for (int v : model.dag.ordering.perm)
    out << ' ' << v;
  out << "\n";
  for (int v = 0; v < model.dag.n; ++v)
    out << "var " << v << ' ' << model.names[v] << ' ' << model.cardinalities[v]
        << "\n";
  for (int v = 0; v < model.dag.n; ++v) {
    out << "parents " << v;
    for (int p : model.dag.parents[v].members())
      out << ' ' << p;
    out << "\n";
  }
}

NetworkModel read_network(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  if (header != "# bnsl network v1")
    throw DataError(path + ": not a bnsl network file");

  NetworkModel model;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    const auto malformed = [&]() -> DataError {
      return DataError(path + ": malformed '" + key + "' line");
    };
    if (key == "nodes") {
      if (!(ls >> model.dag.n) || model.dag.n < 0)
        throw malformed();
      model.dag.parents.resize(model.dag.n);
      model.names.resize(model.dag.n);
      model.cardinalities.resize(model.dag.n);
    } else if (key == "metric") {
      std::string name;
      if (!(ls >> name))
        throw malformed();
      model.metric = metric_from_name(name);
    } else if (key == "score") {
      if (!(ls >> model.score))
        throw malformed();
    } else if (key == "ordering") {
      model.dag.ordering.perm.assign(model.dag.n, 0);
      for (int i = 0; i < model.dag.n; ++i)
        if (!(ls >> model.dag.ordering.perm[i]))
          throw malformed();
    } else if (key == "var") {
      int v, card;
      std::string name;
      if (!(ls >> v >> name >> card))
        throw malformed();
      if (v < 0 || v >= model.dag.n)
        throw DataError(path + ": var index out of range");
      model.names[v] = name;
      model.cardinalities[v] = card;
    } else if (key == "parents") {
      int v;
      if (!(ls >> v))
        throw malformed();
      if (v < 0 || v >= model.dag.n)
        throw DataError(path + ": parents index out of range");
      std::vector<int> members;
      int p;
      while (ls >> p)
        members.push_back(p);
      if (!ls.eof())
        throw malformed();
      model.dag.parents[v] = ParentSet::of(std::move(members));
    } else {
      throw DataError(path + ": unknown key '" + key + "'");
    }
  }
  model.dag.verify();
  return model;
}

} // namespace bnsl
