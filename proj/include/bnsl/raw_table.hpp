#ifndef BNSL_RAW_TABLE_HPP
#define BNSL_RAW_TABLE_HPP

#include <string>
#include <vector>

#include "bnsl/schema.hpp"

namespace bnsl {

// A parsed cell before discretization: the raw category label for
// categorical columns, a numeric value for continuous ones, or missing.
struct RawCell {
  enum class Kind { Missing, Number, Text };
  Kind kind = Kind::Missing;
  double number = 0.0;
  std::string text;

  static RawCell missing() { return RawCell{}; }
  static RawCell of_number(double v) { return RawCell{Kind::Number, v, {}}; }
  static RawCell of_text(std::string s) { return RawCell{Kind::Text, 0.0, std::move(s)}; }
  bool is_missing() const { return kind == Kind::Missing; }
};

// Rows in file order, columns reordered to match the schema.
struct RawTable {
  Schema schema;
  std::vector<std::vector<RawCell>> rows;

  std::size_t row_count() const { return rows.size(); }
};

// Splits one RFC-4180 record into fields (handles quoted fields containing
// the delimiter, doubled quotes, and a trailing CR).
std::vector<std::string> split_csv_line(const std::string& line, char delimiter);

// Reads a delimited text file with a header row. Header names are matched to
// schema variables by name (order-insensitive); extra file columns are
// ignored. A cell equal to its variable's missing_token is marked missing.
RawTable load_csv(const std::string& path, const Schema& schema, char delimiter = ',');

// Keeps only rows with zero missing cells; row order preserved.
RawTable drop_missing(const RawTable& table);

} // namespace bnsl

#endif
