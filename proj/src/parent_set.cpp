#include "bnsl/parent_set.hpp"

#include <algorithm>

namespace bnsl {

ParentSet ParentSet::of(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  ParentSet ps;
  ps.members_ = std::move(members);
  return ps;
}

bool ParentSet::contains(int v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

ParentSet ParentSet::with(int v) const {
  std::vector<int> m = members_;
  m.push_back(v);
  return of(std::move(m));
}

} // namespace bnsl
