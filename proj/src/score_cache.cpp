#include "bnsl/score_cache.hpp"

#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "bnsl/error.hpp"

namespace bnsl {

std::optional<double> ScoreCache::find(int child, const ParentSet& parents) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(Key{child, parents});
  if (it == entries_.end())
    return std::nullopt;
  return it->second;
}

void ScoreCache::insert(int child, const ParentSet& parents, double score) {
  std::unique_lock lock(mutex_);
  entries_.emplace(Key{child, parents}, score);
}

std::size_t ScoreCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void ScoreCache::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

void ScoreCache::save(const std::string& path, const std::string& context) const {
  std::ofstream out(path);
  if (!out)
    throw DataError("cannot write " + path);
  out << "# bnsl score cache v1\n";
  out << "context " << context << "\n";
  std::shared_lock lock(mutex_);
  char buf[64];
  for (const auto& [key, score] : entries_) {
    out << key.child << ' ' << key.parents.size();
    for (int p : key.parents.members())
      out << ' ' << p;
    std::snprintf(buf, sizeof buf, "%a", score);
    out << ' ' << buf << '\n';
  }
}

void ScoreCache::load(const std::string& path, const std::string& context) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open " + path);
  std::string header;
  std::getline(in, header);
  if (header != "# bnsl score cache v1")
    throw DataError(path + ": not a bnsl score cache file");
  std::string key, file_context;
  in >> key;
  std::getline(in, file_context);
  if (key != "context")
    throw DataError(path + ": missing context line");
  if (!file_context.empty() && file_context.front() == ' ')
    file_context.erase(0, 1);
  if (file_context != context)
    throw DataError(path + ": cache context '" + file_context +
                    "' does not match '" + context + "'");

  std::unique_lock lock(mutex_);
  int child, count;
  while (in >> child >> count) {
    std::vector<int> members(count);
    for (int i = 0; i < count; ++i)
      in >> members[i];
    std::string hex;
    in >> hex;
    const double score = std::strtod(hex.c_str(), nullptr);
    entries_.emplace(Key{child, ParentSet::of(std::move(members))}, score);
  }
}

} // namespace bnsl
