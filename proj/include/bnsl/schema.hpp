#ifndef BNSL_SCHEMA_HPP
#define BNSL_SCHEMA_HPP

#include <string>
#include <vector>

namespace bnsl {

enum class VarKind { Categorical, Continuous };

// Declaration of one column: either a categorical variable with an explicit
// state list, or a continuous variable binned by ascending edges. A variable
// with b edges yields b+1 states; a value v maps to |{e : e <= v}|.
struct VariableSpec {
  std::string name;
  VarKind kind = VarKind::Categorical;
  std::vector<std::string> states;
  std::vector<double> bin_edges;
  std::string missing_token = "?";

  int cardinality() const {
    return kind == VarKind::Categorical ? static_cast<int>(states.size())
                                        : static_cast<int>(bin_edges.size()) + 1;
  }
};

struct Schema {
  std::vector<VariableSpec> variables;

  int size() const { return static_cast<int>(variables.size()); }

  // Throws ConfigError on duplicate names, categorical variables with fewer
  // than two states or duplicate state labels, and non-ascending bin edges.
  void validate() const;

  int index_of(const std::string& name) const; // -1 if absent

  static Schema from_json_file(const std::string& path);
  static Schema from_json_text(const std::string& text);
  std::string to_json_text() const;
  void to_json_file(const std::string& path) const;
};

} // namespace bnsl

#endif
