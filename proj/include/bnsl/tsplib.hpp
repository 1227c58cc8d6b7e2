#ifndef BNSL_TSPLIB_HPP
#define BNSL_TSPLIB_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bnsl/hdtsp.hpp"
#include "bnsl/ordering.hpp"

namespace bnsl {

// Affine map used to turn real edge costs into the non-negative integers a
// TSPLIB file carries: integer = round((cost - shift) * scale). Every tour
// has the same edge count, so the map preserves the argmin tour whenever
// cost gaps exceed the accumulated rounding error.
struct TsplibScaling {
  double shift = 0.0;
  double scale = 1.0;
};

inline constexpr std::int64_t kTsplibMaxWeight = 10'000'000;   // scaled max
inline constexpr std::int64_t kTsplibInfinity = 100'000'000;   // forbidden edges

// Writes a TYPE: ATSP instance (EDGE_WEIGHT_TYPE: EXPLICIT, FULL_MATRIX).
// Node 1 is the depot; node j >= 2 is variable j - 2. Infinite entries
// (the diagonal) become kTsplibInfinity. Returns the scaling applied.
TsplibScaling export_tsplib(const StaticCostMatrix& matrix, const std::string& path,
                            const std::string& name = "bnsl");

// Parses a TSPLIB TOUR file for an instance with n variables (dimension
// n + 1), rotates the cycle so the depot comes first, strips the depot, and
// maps the remaining 1-based node ids to variable indices.
Ordering import_tour(const std::string& path, int n);

// Reads back an explicit full-matrix ATSP file (verification and testing).
std::vector<std::vector<std::int64_t>> read_atsp_matrix(const std::string& path,
                                                        int* dimension = nullptr);

} // namespace bnsl

#endif
