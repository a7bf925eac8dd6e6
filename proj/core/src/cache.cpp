#include "viq/cache.hpp"

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace viq {

namespace fs = std::filesystem;

EvalCache::EvalCache(std::string dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

std::string EvalCache::path_for(const std::string& module_hash, const std::string& coeff,
                                const std::string& item) const {
  std::string coeff_dir = coeff;
  for (char& c : coeff_dir)
    if (c == ' ') c = '_';
  return dir_ + "/" + module_hash + "/" + coeff_dir + "/" + item + ".json";
}

std::optional<nlohmann::json> EvalCache::get(const std::string& module_hash,
                                             const std::string& coeff, const std::string& item) {
  if (!enabled_) return std::nullopt;
  std::ifstream in(path_for(module_hash, coeff, item));
  if (!in.good()) {
    ++misses_;
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto parsed = nlohmann::json::parse(buf.str(), nullptr, false);
  if (parsed.is_discarded()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return parsed;
}

void EvalCache::put(const std::string& module_hash, const std::string& coeff,
                    const std::string& item, const nlohmann::json& value) {
  if (!enabled_) return;
  std::string path = path_for(module_hash, coeff, item);
  std::error_code ec;
  fs::create_directories(fs::path(path).parent_path(), ec);
  if (ec) return;  // cache is best-effort
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out.good()) return;
    out << value.dump();
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace viq
