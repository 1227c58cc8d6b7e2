#include "bnsl/schema.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "bnsl/error.hpp"
#include "json.hpp"

namespace bnsl {

void Schema::validate() const {
  if (variables.empty())
    throw ConfigError("schema declares no variables");
  std::set<std::string> names;
  for (const auto& v : variables) {
    if (v.name.empty())
      throw ConfigError("schema variable with empty name");
    if (!names.insert(v.name).second)
      throw ConfigError("duplicate variable name: " + v.name);
    if (v.kind == VarKind::Categorical) {
      if (v.states.size() < 2)
        throw ConfigError("categorical variable '" + v.name + "' needs >= 2 states");
      std::set<std::string> labels(v.states.begin(), v.states.end());
      if (labels.size() != v.states.size())
        throw ConfigError("duplicate state label in variable '" + v.name + "'");
    } else {
      if (v.bin_edges.empty())
        throw ConfigError("continuous variable '" + v.name + "' needs >= 1 bin edge");
      for (std::size_t i = 1; i < v.bin_edges.size(); ++i)
        if (!(v.bin_edges[i - 1] < v.bin_edges[i]))
          throw ConfigError("bin edges of '" + v.name + "' not strictly ascending");
    }
  }
}

int Schema::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (variables[i].name == name) return i;
  return -1;
}

Schema Schema::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("schema JSON parse error: ") + e.what());
  }
  Schema schema;
  const std::string default_missing = j.value("missing_token", "?");
  if (!j.contains("variables") || !j["variables"].is_array())
    throw ConfigError("schema JSON needs a 'variables' array");
  for (const auto& jv : j["variables"]) {
    VariableSpec spec;
    spec.name = jv.value("name", "");
    spec.missing_token = jv.value("missing_token", default_missing);
    const std::string kind = jv.value("kind", "");
    if (kind == "categorical") {
      spec.kind = VarKind::Categorical;
      if (!jv.contains("states"))
        throw ConfigError("categorical variable '" + spec.name + "' lacks 'states'");
      spec.states = jv["states"].get<std::vector<std::string>>();
    } else if (kind == "continuous") {
      spec.kind = VarKind::Continuous;
      if (!jv.contains("bin_edges"))
        throw ConfigError("continuous variable '" + spec.name + "' lacks 'bin_edges'");
      spec.bin_edges = jv["bin_edges"].get<std::vector<double>>();
    } else {
      throw ConfigError("variable '" + spec.name + "' has unknown kind '" + kind + "'");
    }
    schema.variables.push_back(std::move(spec));
  }
  schema.validate();
  return schema;
}

Schema Schema::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open schema file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string Schema::to_json_text() const {
  nlohmann::json j;
  j["variables"] = nlohmann::json::array();
  for (const auto& v : variables) {
    nlohmann::json jv;
    jv["name"] = v.name;
    jv["missing_token"] = v.missing_token;
    if (v.kind == VarKind::Categorical) {
      jv["kind"] = "categorical";
      jv["states"] = v.states;
    } else {
      jv["kind"] = "continuous";
      jv["bin_edges"] = v.bin_edges;
    }
    j["variables"].push_back(std::move(jv));
  }
  return j.dump(2);
}

void Schema::to_json_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out)
    throw ConfigError("cannot write schema file: " + path);
  out << to_json_text() << '\n';
}

} // namespace bnsl
