#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace viq {

// Content-addressed evaluation cache: one JSON file per (module hash,
// coefficient ring, item) under the cache directory. Writes go through a
// temp file and rename, so concurrent readers never observe partial files
// and repeated writes of the same key are idempotent.
class EvalCache {
 public:
  EvalCache(std::string dir, bool enabled);

  bool enabled() const { return enabled_; }
  std::optional<nlohmann::json> get(const std::string& module_hash, const std::string& coeff,
                                    const std::string& item);
  void put(const std::string& module_hash, const std::string& coeff, const std::string& item,
           const nlohmann::json& value);

  int hits() const { return hits_; }
  int misses() const { return misses_; }

 private:
  std::string path_for(const std::string& module_hash, const std::string& coeff,
                       const std::string& item) const;

  std::string dir_;
  bool enabled_;
  int hits_ = 0;
  int misses_ = 0;
};

}  // namespace viq
