#include "bnsl/discrete_table.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <unordered_map>

#include "bnsl/error.hpp"

namespace bnsl {

int DiscreteTable::index_of(const std::string& name) const {
  for (int i = 0; i < variable_count(); ++i)
    if (names[i] == name) return i;
  return -1;
}

void DiscreteTable::validate() const {
  if (names.size() != cardinalities.size())
    throw DataError("table names/cardinalities size mismatch");
  for (int c : cardinalities)
    if (c < 1) throw DataError("table cardinality < 1");
  const int n = variable_count();
  if (n > 0 && data.size() % static_cast<std::size_t>(n) != 0)
    throw DataError("table data size not a multiple of variable count");
  for (std::int64_t r = 0; r < row_count(); ++r)
    for (int v = 0; v < n; ++v)
      if (at(r, v) < 0 || at(r, v) >= cardinalities[v])
        throw DataError("state index out of range at row " + std::to_string(r) +
                        ", variable " + names[v]);
}

DiscreteTable discretize(const RawTable& table, const Schema& schema) {
  schema.validate();
  const int n = schema.size();

  std::vector<std::unordered_map<std::string, int>> state_index(n);
  for (int v = 0; v < n; ++v)
    if (schema.variables[v].kind == VarKind::Categorical)
      for (std::size_t s = 0; s < schema.variables[v].states.size(); ++s)
        state_index[v][schema.variables[v].states[s]] = static_cast<int>(s);

  DiscreteTable out;
  out.names.reserve(n);
  out.cardinalities.reserve(n);
  for (const auto& spec : schema.variables) {
    out.names.push_back(spec.name);
    out.cardinalities.push_back(spec.cardinality());
  }
  out.data.reserve(table.rows.size() * static_cast<std::size_t>(n));

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (int v = 0; v < n; ++v) {
      const RawCell& cell = row[v];
      const VariableSpec& spec = schema.variables[v];
      if (cell.is_missing())
        throw DataError("missing cell at row " + std::to_string(r) +
                        " (drop_missing must run first)");
      if (spec.kind == VarKind::Categorical) {
        auto it = state_index[v].find(cell.text);
        if (it == state_index[v].end())
          throw DataError("value '" + cell.text + "' not a declared state of '" +
                          spec.name + "'");
        out.data.push_back(it->second);
      } else {
        // rightmost-closed binning: state = |{e : e <= v}|
        int state = 0;
        for (double e : spec.bin_edges)
          if (e <= cell.number) ++state;
        out.data.push_back(state);
      }
    }
  }
  return out;
}

namespace {

DiscreteTable take_rows(const DiscreteTable& table, const std::vector<std::int64_t>& rows) {
  DiscreteTable out;
  out.names = table.names;
  out.cardinalities = table.cardinalities;
  const int n = table.variable_count();
  out.data.reserve(rows.size() * static_cast<std::size_t>(n));
  for (std::int64_t r : rows)
    for (int v = 0; v < n; ++v)
      out.data.push_back(table.at(r, v));
  return out;
}

} // namespace

std::pair<DiscreteTable, DiscreteTable> split(const DiscreteTable& table,
                                              const SplitSpec& spec) {
  const std::int64_t m = table.row_count();
  if (spec.test_count <= 0 || spec.test_count >= m)
    throw DataError("test_count " + std::to_string(spec.test_count) +
                    " out of range for " + std::to_string(m) + " rows");

  std::vector<std::int64_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  if (spec.method == SplitSpec::Method::Shuffled) {
    std::mt19937_64 rng(spec.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  const std::int64_t train_count = m - spec.test_count;
  std::vector<std::int64_t> train_rows(order.begin(), order.begin() + train_count);
  std::vector<std::int64_t> test_rows(order.begin() + train_count, order.end());
  return {take_rows(table, train_rows), take_rows(table, test_rows)};
}

void write_state_csv(const DiscreteTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw DataError("cannot write " + path);
  const int n = table.variable_count();
  for (int v = 0; v < n; ++v)
    out << table.names[v] << (v + 1 < n ? ',' : '\n');
  for (std::int64_t r = 0; r < table.row_count(); ++r)
    for (int v = 0; v < n; ++v)
      out << table.at(r, v) << (v + 1 < n ? ',' : '\n');
}

DiscreteTable read_state_csv(const std::string& path,
                             const std::vector<int>& cardinalities) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw DataError(path + " has no header row");

  DiscreteTable table;
  table.names = split_csv_line(line, ',');
  if (table.names.size() != cardinalities.size())
    throw DataError(path + ": column count does not match cardinalities");
  table.cardinalities = cardinalities;

  while (std::getline(in, line)) {
    if (line.empty() || line == "\r")
      continue;
    const auto fields = split_csv_line(line, ',');
    if (fields.size() != table.names.size())
      throw DataError(path + ": ragged row");
    for (const auto& f : fields)
      table.data.push_back(static_cast<std::int32_t>(std::stol(f)));
  }
  table.validate();
  return table;
}

} // namespace bnsl
