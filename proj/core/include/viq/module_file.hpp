#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <json.hpp>

#include "viq/rat.hpp"
#include "viq/vi_module.hpp"

namespace viq {

struct CoeffSpec {
  bool rational = true;
  std::uint64_t p = 0;  // when modular

  std::string str() const { return rational ? "rational" : "mod " + std::to_string(p); }
};

// A module definition parsed from a .vimod document: the presentation over
// the selected coefficient ring plus the canonical form used for hashing.
struct ParsedModule {
  std::uint64_t q = 2;
  CoeffSpec coeff;
  std::string name;
  std::variant<PresentedModule<RatRing>, PresentedModule<FpRing>> value;
  std::string canonical;  // canonical serialization of the semantic fields
  std::string hash;       // content hash, hex
};

ParsedModule parse_module_json(const nlohmann::json& doc);
ParsedModule parse_module_file(const std::string& path);

std::string content_hash(const std::string& data);

}  // namespace viq
