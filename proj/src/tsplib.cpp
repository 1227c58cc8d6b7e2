#include "bnsl/tsplib.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "bnsl/error.hpp"

namespace bnsl {

TsplibScaling export_tsplib(const StaticCostMatrix& matrix, const std::string& path,
                            const std::string& name) {
  const int side = matrix.side();

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const double c = matrix.at(i, j);
      if (!std::isfinite(c)) {
        if (i != j)
          throw DataError("non-finite off-diagonal cost at (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
        continue;
      }
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }

  TsplibScaling scaling;
  scaling.shift = lo;
  scaling.scale = hi > lo ? static_cast<double>(kTsplibMaxWeight) / (hi - lo) : 1.0;

  std::ofstream out(path);
  if (!out)
    throw DataError("cannot write " + path);
  out << "NAME: " << name << "\n";
  out << "TYPE: ATSP\n";
  out << "COMMENT: static cost approximation, node 1 = depot\n";
  out << "DIMENSION: " << side << "\n";
  out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
  out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
  out << "EDGE_WEIGHT_SECTION\n";
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double c = matrix.at(i, j);
      const std::int64_t w =
          std::isfinite(c)
              ? std::llround((c - scaling.shift) * scaling.scale)
              : kTsplibInfinity;
      out << w << (j + 1 < side ? ' ' : '\n');
    }
  }
  out << "EOF\n";
  return scaling;
}

Ordering import_tour(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open tour file: " + path);

  const int dimension = n + 1;
  std::vector<int> cycle;
  bool in_tour = false;
  bool tour_closed = false;
  std::string line;
  while (!tour_closed && std::getline(in, line)) {
    std::istringstream ls(line);
    if (!in_tour) {
      std::string head;
      if (!(ls >> head))
        continue;
      if (head == "TOUR_SECTION") {
        in_tour = true;
        continue;
      }
      if (head.rfind("DIMENSION", 0) == 0) {
        const auto pos = line.find(':');
        const int dim = std::stoi(pos == std::string::npos
                                      ? line.substr(head.size())
                                      : line.substr(pos + 1));
        if (dim != dimension)
          throw DataError(path + ": tour dimension " + std::to_string(dim) +
                          " does not match expected " + std::to_string(dimension));
      }
      continue;
    }
    // inside TOUR_SECTION: whitespace-separated 1-based node ids; -1 or EOF ends
    std::string token;
    while (ls >> token) {
      if (token == "-1" || token == "EOF") {
        tour_closed = true;
        break;
      }
      try {
        cycle.push_back(std::stoi(token));
      } catch (const std::exception&) {
        throw DataError(path + ": malformed tour entry '" + token + "'");
      }
    }
  }
  if (!in_tour)
    throw DataError(path + ": no TOUR_SECTION found");
  if (static_cast<int>(cycle.size()) != dimension)
    throw DataError(path + ": tour lists " + std::to_string(cycle.size()) +
                    " nodes, expected " + std::to_string(dimension));

  std::vector<bool> seen(dimension + 1, false);
  for (int id : cycle) {
    if (id < 1 || id > dimension || seen[id])
      throw DataError(path + ": tour is not a permutation of 1.." +
                      std::to_string(dimension));
    seen[id] = true;
  }

  // rotate the cycle so the depot (node 1) comes first, then strip it
  const auto depot = std::find(cycle.begin(), cycle.end(), 1);
  std::rotate(cycle.begin(), depot, cycle.end());
  Ordering ordering;
  ordering.perm.reserve(n);
  for (std::size_t i = 1; i < cycle.size(); ++i)
    ordering.perm.push_back(cycle[i] - 2); // node id -> variable index
  ordering.validate();
  return ordering;
}

std::vector<std::vector<std::int64_t>> read_atsp_matrix(const std::string& path,
                                                        int* dimension) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open " + path);

  int dim = -1;
  bool explicit_weights = false;
  bool full_matrix = false;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "EDGE_WEIGHT_SECTION")
      break;
    auto value_after_colon = [&ls, &line]() {
      const auto pos = line.find(':');
      return pos == std::string::npos ? std::string() : line.substr(pos + 1);
    };
    if (head.rfind("DIMENSION", 0) == 0) {
      dim = std::stoi(value_after_colon());
    } else if (head.rfind("EDGE_WEIGHT_TYPE", 0) == 0) {
      explicit_weights = value_after_colon().find("EXPLICIT") != std::string::npos;
    } else if (head.rfind("EDGE_WEIGHT_FORMAT", 0) == 0) {
      full_matrix = value_after_colon().find("FULL_MATRIX") != std::string::npos;
    }
  }
  if (dim <= 0 || !explicit_weights || !full_matrix)
    throw DataError(path + ": not an explicit full-matrix TSPLIB instance");

  std::vector<std::vector<std::int64_t>> matrix(dim, std::vector<std::int64_t>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!(in >> matrix[i][j]))
        throw DataError(path + ": truncated EDGE_WEIGHT_SECTION");
  if (dimension)
    *dimension = dim;
  return matrix;
}

} // namespace bnsl
