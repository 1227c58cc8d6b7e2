#ifndef BNSL_DAG_HPP
#define BNSL_DAG_HPP

#include <vector>

#include "bnsl/ordering.hpp"
#include "bnsl/parent_set.hpp"

namespace bnsl {

// Learned network structure. Every parent precedes its child in `ordering`,
// which implies acyclicity; verify() additionally checks it by topological
// sort so the two routes stay independent.
struct Dag {
  int n = 0;
  std::vector<ParentSet> parents;
  Ordering ordering;

  static Dag empty(int n);

  // Undirected edge set as sorted (lo, hi) pairs.
  std::vector<std::pair<int, int>> skeleton() const;

  // Throws DataError if any parent does not precede its child in the
  // ordering, or if an independent topological sort finds a cycle.
  void verify() const;

  bool operator==(const Dag&) const = default;
};

} // namespace bnsl

#endif
