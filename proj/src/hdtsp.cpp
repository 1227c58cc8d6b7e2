#include "bnsl/hdtsp.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "bnsl/error.hpp"

namespace bnsl {

namespace {

double position_cost(const std::vector<int>& perm, int pos, const CostOracle& oracle,
                     const TourConventions& conv) {
  if (pos == 0 && conv.phi_zero)
    return 0.0;
  return oracle.cost(perm[pos], std::span<const int>(perm.data(), pos));
}

// Index-order summation keeps totals bitwise reproducible, so strict-decrease
// acceptance cannot be faked by reassociation drift.
double sum_costs(const std::vector<double>& costs) {
  double total = 0.0;
  for (double c : costs)
    total += c;
  return total;
}

} // namespace

std::vector<double> position_costs(const Ordering& ordering, const CostOracle& oracle,
                                   const TourConventions& conv) {
  ordering.validate();
  const int n = ordering.size();
  std::vector<double> costs(n);
  for (int i = 0; i < n; ++i)
    costs[i] = position_cost(ordering.perm, i, oracle, conv);
  return costs;
}

double tour_cost(const Ordering& ordering, const CostOracle& oracle,
                 const TourConventions& conv) {
  return sum_costs(position_costs(ordering, oracle, conv));
}

DpResult exact_dp_ordering(const CostOracle& oracle, int n,
                           const TourConventions& conv) {
  if (n < 1 || n > 20)
    throw SolverError("exact DP supports 1..20 variables, got " + std::to_string(n));

  const std::uint32_t size = 1u << n;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> value(size, inf);
  std::vector<std::int8_t> choice(size, -1);
  value[0] = 0.0;

  std::vector<int> preds;
  preds.reserve(n);
  for (std::uint32_t mask = 1; mask < size; ++mask) {
    for (int x = 0; x < n; ++x) {
      if (!(mask & (1u << x)))
        continue;
      const std::uint32_t prev = mask ^ (1u << x);
      preds.clear();
      for (int v = 0; v < n; ++v)
        if (prev & (1u << v))
          preds.push_back(v);
      const double step = (prev == 0 && conv.phi_zero)
                              ? 0.0
                              : oracle.cost(x, std::span<const int>(preds));
      const double candidate = value[prev] + step;
      if (candidate < value[mask]) {
        value[mask] = candidate;
        choice[mask] = static_cast<std::int8_t>(x);
      }
    }
  }

  DpResult result;
  std::uint32_t mask = size - 1;
  while (mask != 0) {
    const int x = choice[mask];
    result.ordering.perm.push_back(x);
    mask ^= (1u << x);
  }
  std::reverse(result.ordering.perm.begin(), result.ordering.perm.end());
  result.cost = value[size - 1];
  return result;
}

StaticCostMatrix static_cost_matrix(const CostOracle& oracle,
                                    const TourConventions& conv) {
  const int n = oracle.variable_count();
  const double inf = std::numeric_limits<double>::infinity();
  StaticCostMatrix m;
  m.n = n;
  m.cost.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);

  m.at(0, 0) = inf;
  for (int j = 0; j < n; ++j)
    m.at(0, j + 1) = conv.phi_zero ? 0.0 : oracle.cost(j, {});
  for (int i = 0; i < n; ++i) {
    m.at(i + 1, 0) = 0.0; // returning to the depot is free
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        m.at(i + 1, j + 1) = inf;
      } else {
        const int pred[1] = {i};
        m.at(i + 1, j + 1) = oracle.cost(j, std::span<const int>(pred, 1));
      }
    }
  }
  return m;
}

Ordering nearest_neighbor_tour(const StaticCostMatrix& matrix) {
  const int n = matrix.n;
  Ordering tour;
  tour.perm.reserve(n);
  std::vector<bool> visited(n + 1, false);
  int current = 0; // depot
  for (int step = 0; step < n; ++step) {
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n; ++j) {
      if (visited[j])
        continue;
      if (matrix.at(current, j) < best_cost) {
        best_cost = matrix.at(current, j);
        best = j;
      }
    }
    visited[best] = true;
    tour.perm.push_back(best - 1);
    current = best;
  }
  return tour;
}

namespace {

struct MoveSpan {
  int lo; // first changed position
  int hi; // last changed position
};

// Apply one reconnection of the two inner segments A = [a, b) and B = [b, c)
// to `perm`, writing into `out`. Variants 1 and 2 are the plain 2-opt
// reversals; 3..7 are the remaining standard 3-opt reconnections.
MoveSpan apply_move(const std::vector<int>& perm, std::vector<int>& out, int a,
                    int b, int c, int variant) {
  out = perm;
  auto reverse_into = [&out](int lo, int hi) {
    std::reverse(out.begin() + lo, out.begin() + hi);
  };
  switch (variant) {
    case 1:
      reverse_into(a, b);
      return {a, b - 1};
    case 2:
      reverse_into(b, c);
      return {b, c - 1};
    case 3:
      reverse_into(a, b);
      reverse_into(b, c);
      return {a, c - 1};
    default: {
      // segment exchange: B (4,5) or reversed B (6,7), then A (4,6) or
      // reversed A (5,7)
      int pos = a;
      const bool reverse_b = (variant == 6 || variant == 7);
      const bool reverse_a = (variant == 5 || variant == 7);
      if (reverse_b)
        for (int i = c - 1; i >= b; --i) out[pos++] = perm[i];
      else
        for (int i = b; i < c; ++i) out[pos++] = perm[i];
      if (reverse_a)
        for (int i = b - 1; i >= a; --i) out[pos++] = perm[i];
      else
        for (int i = a; i < b; ++i) out[pos++] = perm[i];
      return {a, c - 1};
    }
  }
}

RestartTrace run_restart(std::vector<int> perm, const CostOracle& oracle,
                         const KoptParams& params, std::uint64_t rng_seed,
                         std::vector<int>& best_perm, double& best_cost) {
  const int n = static_cast<int>(perm.size());
  std::mt19937_64 rng(rng_seed);

  std::vector<double> costs(n);
  for (int i = 0; i < n; ++i)
    costs[i] = position_cost(perm, i, oracle, params.conventions);
  double total = sum_costs(costs);

  RestartTrace trace;
  trace.initial_cost = total;

  std::vector<int> cand(n);
  std::vector<double> cand_costs(n);
  int no_improve = 0;
  while (n >= 2 && no_improve < params.max_no_improve) {
    int a, b, c, variant;
    if (params.level == 2) {
      // 2-opt: reverse positions [a..b], i.e. variant 1 on segment [a, b+1)
      std::uniform_int_distribution<int> pos(0, n - 1);
      a = pos(rng);
      b = pos(rng);
      if (a == b) {
        ++no_improve;
        continue;
      }
      if (a > b) std::swap(a, b);
      b = b + 1;
      c = b;
      variant = 1;
    } else {
      // three distinct cut points in 0..n
      std::uniform_int_distribution<int> cut(0, n);
      a = cut(rng);
      b = cut(rng);
      c = cut(rng);
      if (a == b || b == c || a == c) {
        ++no_improve;
        continue;
      }
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
      std::uniform_int_distribution<int> var(1, 7);
      variant = var(rng);
    }

    const MoveSpan span = apply_move(perm, cand, a, b, c, variant);
    cand_costs = costs;
    bool identical = true;
    for (int p = span.lo; p <= span.hi; ++p)
      if (cand[p] != perm[p]) {
        identical = false;
        break;
      }
    if (identical) {
      ++no_improve;
      continue;
    }
    for (int p = span.lo; p <= span.hi; ++p)
      cand_costs[p] = position_cost(cand, p, oracle, params.conventions);
    const double cand_total = sum_costs(cand_costs);

    if (cand_total < total) { // strict decrease; ties rejected
      perm.swap(cand);
      costs.swap(cand_costs);
      total = cand_total;
      trace.accepted_costs.push_back(total);
      no_improve = 0;
    } else {
      ++no_improve;
    }
  }

  trace.final_cost = total;
  best_perm = std::move(perm);
  best_cost = total;
  return trace;
}

} // namespace

KoptResult kopt_local_search(const Ordering& initial, const CostOracle& oracle,
                             const KoptParams& params) {
  initial.validate();
  if (params.level != 2 && params.level != 3)
    throw ConfigError("k-opt level must be 2 or 3");
  if (params.restarts < 1)
    throw ConfigError("k-opt needs at least one restart");
  const int n = initial.size();

  struct RestartOutcome {
    std::vector<int> perm;
    double cost = 0.0;
    RestartTrace trace;
  };
  std::vector<RestartOutcome> outcomes(params.restarts);

  auto run_one = [&](int r) {
    std::vector<int> start;
    if (r == 0) {
      start = initial.perm;
    } else {
      start.resize(n);
      std::iota(start.begin(), start.end(), 0);
      std::mt19937_64 shuffle_rng(params.seed + static_cast<std::uint64_t>(r));
      std::shuffle(start.begin(), start.end(), shuffle_rng);
    }
    outcomes[r].trace =
        run_restart(std::move(start), oracle, params,
                    params.seed + static_cast<std::uint64_t>(r),
                    outcomes[r].perm, outcomes[r].cost);
  };

  const int workers = std::max(1, std::min(params.threads, params.restarts));
  if (workers == 1) {
    for (int r = 0; r < params.restarts; ++r)
      run_one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < params.restarts; r = next.fetch_add(1))
          run_one(r);
      });
    for (auto& t : pool)
      t.join();
  }

  KoptResult result;
  int best = 0;
  for (int r = 1; r < params.restarts; ++r)
    if (outcomes[r].cost < outcomes[best].cost)
      best = r; // ties keep the lower restart index
  result.ordering.perm = std::move(outcomes[best].perm);
  result.cost = outcomes[best].cost;
  result.traces.reserve(params.restarts);
  for (auto& o : outcomes)
    result.traces.push_back(std::move(o.trace));
  return result;
}

} // namespace bnsl
