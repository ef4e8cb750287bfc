#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "rvq/induction.hpp"

namespace rvq {

// JSON-lines: one header object, then one object per vertex in index order.
void save_class(const RauzyClass& cls, const std::filesystem::path& file);
// The file is memory-mapped while it is parsed. Throws CacheCorrupt.
std::shared_ptr<const RauzyClass> load_class(const std::filesystem::path& file);

// RVQ_CACHE_DIR, or ./.rvq-cache.
std::filesystem::path default_cache_dir();

class ClassStore {
 public:
  // Without a directory the store only memoizes in memory.
  explicit ClassStore(std::optional<std::filesystem::path> dir = std::nullopt);

  // Loads a complete cached class or enumerates and persists it.
  std::shared_ptr<const RauzyClass> get(const GeneralizedPermutation& seed,
                                        const ClassOptions& options);
  std::filesystem::path file_for(const GeneralizedPermutation& seed, const ClassOptions& options) const;

 private:
  std::optional<std::filesystem::path> dir_;
  std::vector<std::pair<std::string, std::shared_ptr<const RauzyClass>>> memo_;
};

}  // namespace rvq
