#ifndef BNSL_HDTSP_HPP
#define BNSL_HDTSP_HPP

#include <cstdint>
#include <vector>

#include "bnsl/cost_oracle.hpp"
#include "bnsl/ordering.hpp"

namespace bnsl {

// With phi_zero = false (default), the depot-out edge carries Cost(X, {})
// so the tour cost telescopes to the value function of the full ordering.
// With phi_zero = true the depot-out edge is 0 and the first variable's
// marginal cost is dropped from every total.
struct TourConventions {
  bool phi_zero = false;
};

// Cost of each position: Cost(perm[i], {perm[0], ..., perm[i-1]}).
std::vector<double> position_costs(const Ordering& ordering, const CostOracle& oracle,
                                   const TourConventions& conv = {});

// Sum of position costs; the depot-closing edge contributes 0.
double tour_cost(const Ordering& ordering, const CostOracle& oracle,
                 const TourConventions& conv = {});

// Held-Karp style recursion over subsets:
//   V(S) = min over X in S of V(S \ X) + Cost(X, S \ X),  V({}) = 0.
// Exact but O(n^2 2^n) oracle queries; guarded at n <= 20. Argmin ties go
// to the smallest variable index.
struct DpResult {
  Ordering ordering;
  double cost = 0.0;
};
DpResult exact_dp_ordering(const CostOracle& oracle, int n,
                           const TourConventions& conv = {});

// (n+1) x (n+1) history-free cost matrix over the depot (index 0) and the
// variables (index v+1): c(i,j) = Cost(j, {i}), c(depot,j) = Cost(j, {}),
// c(i,depot) = 0, diagonal = +infinity sentinel.
struct StaticCostMatrix {
  int n = 0; // number of variables; matrix side is n + 1
  std::vector<double> cost;

  int side() const { return n + 1; }
  double at(int i, int j) const { return cost[static_cast<std::size_t>(i) * side() + j]; }
  double& at(int i, int j) { return cost[static_cast<std::size_t>(i) * side() + j]; }
};

StaticCostMatrix static_cost_matrix(const CostOracle& oracle,
                                    const TourConventions& conv = {});

// Depot-rooted nearest-neighbor tour on the static matrix (ties toward the
// smallest variable index). The standard cheap starting tour.
Ordering nearest_neighbor_tour(const StaticCostMatrix& matrix);

struct KoptParams {
  int level = 3; // 2 or 3
  int restarts = 10;
  std::uint64_t seed = 0;
  int max_no_improve = 2000; // consecutive rejected proposals per restart
  int threads = 1;
  TourConventions conventions;
};

struct RestartTrace {
  double initial_cost = 0.0;
  std::vector<double> accepted_costs; // incumbent cost after each accepted move
  double final_cost = 0.0;
};

struct KoptResult {
  Ordering ordering;
  double cost = 0.0;
  std::vector<RestartTrace> traces; // one per restart
};

// Randomized k-opt local search on the depot-rooted path with
// history-dependent acceptance: a proposed move is accepted iff the fully
// re-evaluated tour cost strictly decreases. Restart 0 starts from
// `initial`; restart r >= 1 from a random permutation seeded with
// params.seed + r. Restarts are independent and may run on
// params.threads threads; the result is identical for any thread count.
KoptResult kopt_local_search(const Ordering& initial, const CostOracle& oracle,
                             const KoptParams& params);

} // namespace bnsl

#endif
