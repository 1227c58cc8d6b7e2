#include "doctest.h"

#include <set>

#include "bnsl/discrete_table.hpp"
#include "bnsl/error.hpp"
#include "bnsl/raw_table.hpp"
#include "bnsl/schema.hpp"
#include "support/temp_files.hpp"

using namespace bnsl;
using testsupport::TempDir;
using testsupport::write_file;

namespace {

Schema two_col_schema() {
  return Schema::from_json_text(R"({
    "variables": [
      {"name": "color", "kind": "categorical", "states": ["red", "green", "blue"]},
      {"name": "size", "kind": "continuous", "bin_edges": [10.0]}
    ]
  })");
}

} // namespace

TEST_CASE("schema JSON round trip and validation") {
  const Schema schema = two_col_schema();
  CHECK(schema.size() == 2);
  CHECK(schema.variables[0].cardinality() == 3);
  CHECK(schema.variables[1].cardinality() == 2); // one edge -> two states
  CHECK(schema.index_of("size") == 1);
  CHECK(schema.index_of("absent") == -1);

  const Schema reparsed = Schema::from_json_text(schema.to_json_text());
  CHECK(reparsed.size() == schema.size());
  for (int i = 0; i < schema.size(); ++i) {
    CHECK(reparsed.variables[i].name == schema.variables[i].name);
    CHECK(reparsed.variables[i].states == schema.variables[i].states);
    CHECK(reparsed.variables[i].bin_edges == schema.variables[i].bin_edges);
  }

  SUBCASE("rejects duplicate variable names") {
    CHECK_THROWS_AS(Schema::from_json_text(R"({"variables": [
      {"name": "a", "kind": "categorical", "states": ["x", "y"]},
      {"name": "a", "kind": "categorical", "states": ["x", "y"]}]})"),
                    ConfigError);
  }
  SUBCASE("rejects single-state categorical variables") {
    CHECK_THROWS_AS(Schema::from_json_text(R"({"variables": [
      {"name": "a", "kind": "categorical", "states": ["only"]}]})"),
                    ConfigError);
  }
  SUBCASE("rejects non-ascending bin edges") {
    CHECK_THROWS_AS(Schema::from_json_text(R"({"variables": [
      {"name": "a", "kind": "continuous", "bin_edges": [2.0, 2.0]}]})"),
                    ConfigError);
  }
  SUBCASE("rejects unknown kinds and broken JSON") {
    CHECK_THROWS_AS(Schema::from_json_text(R"({"variables": [
      {"name": "a", "kind": "ordinal", "states": ["x", "y"]}]})"),
                    ConfigError);
    CHECK_THROWS_AS(Schema::from_json_text("{nope"), ConfigError);
  }
}

TEST_CASE("split_csv_line handles quoting") {
  CHECK(split_csv_line("a,b,c", ',') == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_csv_line(R"("a,b",c)", ',') == std::vector<std::string>{"a,b", "c"});
  CHECK(split_csv_line(R"("he said ""hi""",x)", ',') ==
        std::vector<std::string>{R"(he said "hi")", "x"});
  CHECK(split_csv_line("a,b\r", ',') == std::vector<std::string>{"a", "b"});
  CHECK(split_csv_line("", ',') == std::vector<std::string>{""});
  CHECK(split_csv_line("a,,c", ',') == std::vector<std::string>{"a", "", "c"});
  CHECK(split_csv_line("a;b", ';') == std::vector<std::string>{"a", "b"});
}

TEST_CASE("load_csv matches header by name and flags missing cells") {
  TempDir tmp("csv");
  const Schema schema = two_col_schema();

  SUBCASE("columns may be reordered and extra columns are ignored") {
    const auto path = write_file(tmp.file("data.csv"),
                                 "size,junk,color\n"
                                 "12.5,zzz,red\n"
                                 "3.0,zzz,blue\n");
    const RawTable t = load_csv(path, schema);
    REQUIRE(t.row_count() == 2);
    CHECK(t.rows[0][0].text == "red");
    CHECK(t.rows[0][1].number == doctest::Approx(12.5));
    CHECK(t.rows[1][0].text == "blue");
  }

  SUBCASE("missing token marks the cell, not the row") {
    const auto path = write_file(tmp.file("missing.csv"),
                                 "color,size\n"
                                 "red,?\n"
                                 "?,1.0\n"
                                 "green,2.0\n");
    const RawTable t = load_csv(path, schema);
    REQUIRE(t.row_count() == 3);
    CHECK(t.rows[0][1].is_missing());
    CHECK(t.rows[1][0].is_missing());
    CHECK_FALSE(t.rows[2][0].is_missing());

    const RawTable kept = drop_missing(t);
    CHECK(kept.row_count() == 1);
    CHECK(kept.rows[0][0].text == "green");

    // idempotent
    CHECK(drop_missing(kept).row_count() == 1);
  }

  SUBCASE("quoted fields reach the schema columns intact") {
    const auto path = write_file(tmp.file("quoted.csv"),
                                 "color,size\r\n"
                                 "\"red\",\"42\"\r\n");
    const RawTable t = load_csv(path, schema);
    REQUIRE(t.row_count() == 1);
    CHECK(t.rows[0][0].text == "red");
    CHECK(t.rows[0][1].number == doctest::Approx(42.0));
  }

  SUBCASE("empty data file with a valid header yields zero rows") {
    const auto path = write_file(tmp.file("empty.csv"), "color,size\n");
    CHECK(load_csv(path, schema).row_count() == 0);
  }

  SUBCASE("errors carry enough context to act on") {
    CHECK_THROWS_AS(load_csv(tmp.file("nope.csv"), schema), DataError);
    const auto bad_header =
        write_file(tmp.file("bad_header.csv"), "color,weight\n");
    CHECK_THROWS_AS(load_csv(bad_header, schema), DataError);
    const auto bad_number = write_file(tmp.file("bad_number.csv"),
                                       "color,size\nred,tall\n");
    CHECK_THROWS_WITH_AS(load_csv(bad_number, schema),
                         doctest::Contains("bad_number.csv:2"), DataError);
  }
}

TEST_CASE("discretize maps labels and bins continuous values") {
  const Schema schema = two_col_schema();
  RawTable raw;
  raw.schema = schema;
  const auto row = [](const char* label, double v) {
    return std::vector<RawCell>{RawCell::of_text(label), RawCell::of_number(v)};
  };
  raw.rows = {row("red", 5.0), row("green", 10.0), row("blue", 10.5)};

  const DiscreteTable t = discretize(raw, schema);
  CHECK(t.names == std::vector<std::string>{"color", "size"});
  CHECK(t.cardinalities == std::vector<int>{3, 2});
  CHECK(t.row_count() == 3);
  // state = number of edges at or below the value: the boundary moves up
  CHECK(t.at(0, 1) == 0);
  CHECK(t.at(1, 1) == 1);
  CHECK(t.at(2, 1) == 1);
  CHECK(t.at(0, 0) == 0);
  CHECK(t.at(1, 0) == 1);
  CHECK(t.at(2, 0) == 2);

  SUBCASE("multiple edges index by count of edges at or below the value") {
    Schema s3 = Schema::from_json_text(R"({"variables": [
      {"name": "x", "kind": "continuous", "bin_edges": [1.0, 5000.0]}]})");
    RawTable r3;
    r3.schema = s3;
    for (double v : {0.0, 1.0, 1.5, 5000.0, 5001.0})
      r3.rows.push_back({RawCell::of_number(v)});
    const DiscreteTable t3 = discretize(r3, s3);
    CHECK(t3.at(0, 0) == 0);
    CHECK(t3.at(1, 0) == 1);
    CHECK(t3.at(2, 0) == 1);
    CHECK(t3.at(3, 0) == 2);
    CHECK(t3.at(4, 0) == 2);
  }

  SUBCASE("unknown categorical label is a data error") {
    RawTable bad;
    bad.schema = schema;
    bad.rows = {row("magenta", 1.0)};
    CHECK_THROWS_AS(discretize(bad, schema), DataError);
  }

  SUBCASE("missing cells are a precondition violation") {
    RawTable bad;
    bad.schema = schema;
    bad.rows = {{RawCell::missing(), RawCell::of_number(1.0)}};
    CHECK_THROWS_AS(discretize(bad, schema), DataError);
  }
}

TEST_CASE("split partitions rows") {
  DiscreteTable t;
  t.names = {"v"};
  t.cardinalities = {10};
  for (int i = 0; i < 10; ++i) t.data.push_back(i);

  SUBCASE("tail split keeps order and takes the last rows as test") {
    SplitSpec spec;
    spec.test_count = 3;
    const auto [train, test] = split(t, spec);
    REQUIRE(train.row_count() == 7);
    REQUIRE(test.row_count() == 3);
    for (int i = 0; i < 7; ++i) CHECK(train.at(i, 0) == i);
    for (int i = 0; i < 3; ++i) CHECK(test.at(i, 0) == 7 + i);
  }

  SUBCASE("shuffled split is a seeded disjoint partition") {
    SplitSpec spec;
    spec.test_count = 4;
    spec.seed = 99;
    spec.method = SplitSpec::Method::Shuffled;
    const auto [train, test] = split(t, spec);
    REQUIRE(train.row_count() == 6);
    REQUIRE(test.row_count() == 4);
    std::set<int> seen;
    for (int i = 0; i < 6; ++i) seen.insert(train.at(i, 0));
    for (int i = 0; i < 4; ++i) seen.insert(test.at(i, 0));
    CHECK(seen.size() == 10); // disjoint and exhaustive

    const auto [train2, test2] = split(t, spec);
    CHECK(train2.data == train.data); // same seed, same partition
    CHECK(test2.data == test.data);

    spec.seed = 100;
    const auto [train3, test3] = split(t, spec);
    CHECK(train3.data != train.data); // different seed moves rows
  }

  SUBCASE("test_count must leave at least one training row") {
    SplitSpec spec;
    spec.test_count = 10;
    CHECK_THROWS_AS(split(t, spec), DataError);
    spec.test_count = 0;
    CHECK_THROWS_AS(split(t, spec), DataError);
  }
}

TEST_CASE("state CSV round trip") {
  TempDir tmp("statecsv");
  DiscreteTable t;
  t.names = {"a", "b"};
  t.cardinalities = {2, 3};
  t.data = {0, 2, 1, 0, 1, 1};

  const auto path = tmp.file("states.csv");
  write_state_csv(t, path);
  const DiscreteTable back = read_state_csv(path, t.cardinalities);
  CHECK(back.names == t.names);
  CHECK(back.cardinalities == t.cardinalities);
  CHECK(back.data == t.data);

  SUBCASE("out-of-range states are rejected on read") {
    write_file(path, "a,b\n0,3\n");
    CHECK_THROWS_AS(read_state_csv(path, t.cardinalities), DataError);
  }
}
