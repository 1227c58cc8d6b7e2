#ifndef BNSL_SCORE_CACHE_HPP
#define BNSL_SCORE_CACHE_HPP

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "bnsl/parent_set.hpp"

namespace bnsl {

// Memo of (child, parent set) -> log node score. Lookups take a shared lock,
// insertion an exclusive one; readers observe either absence or the final
// value. Never evicts within a learning run. A cache is bound to one
// (table, metric) context; save/load carries a fingerprint so a warm-start
// file cannot be replayed against different data.
class ScoreCache {
public:
  ScoreCache() = default;

  std::optional<double> find(int child, const ParentSet& parents) const;
  void insert(int child, const ParentSet& parents, double score);

  std::size_t size() const;
  void clear();

  // Text format, one entry per line, scores as hex floats (round-trip exact).
  void save(const std::string& path, const std::string& context) const;
  void load(const std::string& path, const std::string& context);

private:
  struct Key {
    int child;
    ParentSet parents;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return ParentSetHash{}(k.parents) * 31 + static_cast<std::size_t>(k.child);
    }
  };

  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, double, KeyHash> entries_;
};

} // namespace bnsl

#endif
