#ifndef BNSL_DISCRETE_TABLE_HPP
#define BNSL_DISCRETE_TABLE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bnsl/raw_table.hpp"

namespace bnsl {

// Fully observed categorical data: every entry is a state index in
// [0, cardinality of its column). Immutable after construction.
struct DiscreteTable {
  std::vector<std::string> names;
  std::vector<int> cardinalities;
  std::vector<std::int32_t> data; // row-major

  std::int64_t row_count() const {
    return names.empty() ? 0
                         : static_cast<std::int64_t>(data.size()) /
                               static_cast<std::int64_t>(names.size());
  }
  int variable_count() const { return static_cast<int>(names.size()); }

  std::int32_t at(std::int64_t row, int var) const {
    return data[row * variable_count() + var];
  }

  int index_of(const std::string& name) const; // -1 if absent
  void validate() const;                       // throws DataError
};

// Maps categorical labels to their state index and bins continuous values
// (value v -> number of edges <= v). Requires a table with no missing cells.
DiscreteTable discretize(const RawTable& table, const Schema& schema);

struct SplitSpec {
  enum class Method { Tail, Shuffled };
  std::int64_t test_count = 0;
  std::uint64_t seed = 0;
  Method method = Method::Tail;
};

// Disjoint (train, test) partition; Tail takes the last test_count rows,
// Shuffled permutes rows with the seed first.
std::pair<DiscreteTable, DiscreteTable> split(const DiscreteTable& table,
                                              const SplitSpec& spec);

// State-index CSV with a header row of variable names.
void write_state_csv(const DiscreteTable& table, const std::string& path);
DiscreteTable read_state_csv(const std::string& path,
                             const std::vector<int>& cardinalities);

} // namespace bnsl

#endif
