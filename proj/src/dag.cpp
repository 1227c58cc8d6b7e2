#include "bnsl/dag.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "bnsl/error.hpp"

namespace bnsl {

Dag Dag::empty(int n) {
  Dag dag;
  dag.n = n;
  dag.parents.resize(n);
  dag.ordering = Ordering::identity(n);
  return dag;
}

std::vector<std::pair<int, int>> Dag::skeleton() const {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v)
    for (int p : parents[v].members())
      edges.emplace_back(std::min(p, v), std::max(p, v));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void Dag::verify() const {
  ordering.validate();
  if (static_cast<int>(parents.size()) != n || ordering.size() != n)
    throw DataError("dag has inconsistent sizes");

  std::vector<int> position(n);
  for (int i = 0; i < n; ++i)
    position[ordering.perm[i]] = i;
  for (int v = 0; v < n; ++v)
    for (int p : parents[v].members()) {
      if (p < 0 || p >= n || p == v)
        throw DataError("dag has invalid parent index");
      if (position[p] >= position[v])
        throw DataError("parent " + std::to_string(p) + " does not precede child " +
                        std::to_string(v) + " in the ordering");
    }

  // Kahn's algorithm as an independent acyclicity check.
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> children(n);
  for (int v = 0; v < n; ++v)
    for (int p : parents[v].members()) {
      ++indegree[v];
      children[p].push_back(v);
    }
  std::queue<int> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  int emitted = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop();
    ++emitted;
    for (int c : children[v])
      if (--indegree[c] == 0) ready.push(c);
  }
  if (emitted != n)
    throw DataError("dag contains a cycle");
}

} // namespace bnsl
