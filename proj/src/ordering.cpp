#include "bnsl/ordering.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "bnsl/error.hpp"

namespace bnsl {

Ordering Ordering::identity(int n) {
  Ordering o;
  o.perm.resize(n);
  std::iota(o.perm.begin(), o.perm.end(), 0);
  return o;
}

void Ordering::validate() const {
  const int n = size();
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v])
      throw DataError("ordering is not a permutation of 0.." + std::to_string(n - 1));
    seen[v] = true;
  }
}

void write_ordering(const Ordering& ordering, double tour_cost, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw DataError("cannot write " + path);
  out << "# bnsl ordering v1\n";
  out << "n " << ordering.size() << "\n";
  out << "perm";
  for (int v : ordering.perm)
    out << ' ' << v;
  out << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", tour_cost);
  out << "tour_cost " << buf << "\n";
}

Ordering read_ordering(const std::string& path, double* tour_cost) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  if (header != "# bnsl ordering v1")
    throw DataError(path + ": not a bnsl ordering file");
  Ordering o;
  std::string key;
  int n = 0;
  while (in >> key) {
    if (key == "n") {
      in >> n;
    } else if (key == "perm") {
      o.perm.resize(n);
      for (int i = 0; i < n; ++i)
        in >> o.perm[i];
    } else if (key == "tour_cost") {
      double c;
      in >> c;
      if (tour_cost) *tour_cost = c;
    } else {
      throw DataError(path + ": unknown key '" + key + "'");
    }
  }
  o.validate();
  return o;
}

} // namespace bnsl
