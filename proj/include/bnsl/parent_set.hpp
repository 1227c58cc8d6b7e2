#ifndef BNSL_PARENT_SET_HPP
#define BNSL_PARENT_SET_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <vector>

namespace bnsl {

// Sorted list of distinct parent variable indices. Canonical order makes
// cache keys and tie-breaking (lexicographic comparison) well defined.
class ParentSet {
public:
  ParentSet() = default;

  // Sorts and deduplicates; callers never need pre-sorted input.
  static ParentSet of(std::vector<int> members);

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int v) const;

  ParentSet with(int v) const; // copy plus one member

  bool operator==(const ParentSet&) const = default;
  auto operator<=>(const ParentSet&) const = default; // lexicographic

private:
  std::vector<int> members_;
};

struct ParentSetHash {
  std::size_t operator()(const ParentSet& ps) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int v : ps.members())
      h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    return h;
  }
};

} // namespace bnsl

#endif
