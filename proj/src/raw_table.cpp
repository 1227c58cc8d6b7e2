#include "bnsl/raw_table.hpp"

#include <cstdlib>
#include <fstream>

#include "bnsl/error.hpp"

namespace bnsl {

std::vector<std::string> split_csv_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' && i + 1 == line.size()) {
      // trailing CR from CRLF files
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

namespace {

RawCell parse_cell(const std::string& text, const VariableSpec& spec) {
  if (text == spec.missing_token)
    return RawCell::missing();
  if (spec.kind == VarKind::Categorical)
    return RawCell::of_text(text);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw DataError("cannot parse '" + text + "' as a number for variable '" +
                    spec.name + "'");
  return RawCell::of_number(v);
}

} // namespace

RawTable load_csv(const std::string& path, const Schema& schema, char delimiter) {
  schema.validate();
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open data file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw DataError("data file has no header row: " + path);
  const std::vector<std::string> header = split_csv_line(line, delimiter);

  // file column index for each schema variable
  std::vector<int> column(schema.size(), -1);
  for (int v = 0; v < schema.size(); ++v) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == schema.variables[v].name) {
        column[v] = static_cast<int>(c);
        break;
      }
    }
    if (column[v] < 0)
      throw DataError("header of " + path + " lacks schema variable '" +
                      schema.variables[v].name + "'");
  }

  RawTable table;
  table.schema = schema;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r")
      continue;
    const std::vector<std::string> fields = split_csv_line(line, delimiter);
    std::vector<RawCell> row(schema.size());
    for (int v = 0; v < schema.size(); ++v) {
      if (static_cast<std::size_t>(column[v]) >= fields.size())
        throw DataError(path + ":" + std::to_string(line_no) +
                        ": row has too few fields");
      try {
        row[v] = parse_cell(fields[column[v]], schema.variables[v]);
      } catch (const DataError& e) {
        throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

RawTable drop_missing(const RawTable& table) {
  RawTable kept;
  kept.schema = table.schema;
  kept.rows.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    bool complete = true;
    for (const auto& cell : row) {
      if (cell.is_missing()) {
        complete = false;
        break;
      }
    }
    if (complete)
      kept.rows.push_back(row);
  }
  return kept;
}

} // namespace bnsl
