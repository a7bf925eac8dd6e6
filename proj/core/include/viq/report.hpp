#pragma once

#include <string>

#include <json.hpp>

namespace viq {

// Command output. `body` is a deterministic function of inputs and flags;
// `meta` (timestamp, cache statistics) is excluded when reports are compared.
struct Report {
  std::string command;
  nlohmann::json body = nlohmann::json::object();
  nlohmann::json meta = nlohmann::json::object();
  int exit_code = 0;

  std::string to_json() const;
  std::string to_tsv() const;
  std::string to_human() const;
  std::string comparison_key() const;  // body only, canonical dump
};

// Body helpers: tables are {degrees: [..], values: ["str", ..]} so exact
// integers and rationals survive as strings.
nlohmann::json dims_json(const std::vector<int>& degrees, const std::vector<std::string>& values);
nlohmann::json verdict_json(const std::string& name, bool pass, const std::string& detail);

}  // namespace viq
