#ifndef BNSL_ORDERING_HPP
#define BNSL_ORDERING_HPP

#include <string>
#include <vector>

namespace bnsl {

// Permutation of the n variables; the virtual depot sits implicitly before
// perm[0] and after perm[n-1], turning the ordering into a closed tour.
struct Ordering {
  std::vector<int> perm;

  int size() const { return static_cast<int>(perm.size()); }

  static Ordering identity(int n);
  void validate() const; // throws DataError unless perm is a bijection

  bool operator==(const Ordering&) const = default;
};

void write_ordering(const Ordering& ordering, double tour_cost, const std::string& path);
Ordering read_ordering(const std::string& path, double* tour_cost = nullptr);

} // namespace bnsl

#endif
