#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "twist/kernels.hpp"

namespace twist::cli {

/// Persistent kernel-coefficient cache in JSON-lines form.
///
/// The first line is {"schema_version": N}; every other line holds one
/// coefficient keyed by (kind, K, ell, D, char, n). Unreadable lines are
/// skipped with a warning and recomputed on demand.
class CoeffCache {
 public:
  static constexpr int schema_version = 1;

  explicit CoeffCache(std::string path);

  /// Provider that serves hits from memory and appends misses to the file.
  CoeffProvider provider();

  std::size_t size() const;
  std::size_t skipped_lines() const { return skipped_; }
  std::size_t hits() const { return hits_; }

 private:
  using Key = std::tuple<int, int, int, long, long, int>;

  void load();
  std::vector<Cyclotomic> fetch(const KernelSpec& spec, int n_max);

  std::string path_;
  mutable std::mutex mutex_;
  std::map<Key, Cyclotomic> entries_;
  std::size_t skipped_ = 0;
  std::size_t hits_ = 0;
};

}  // namespace twist::cli
