#include "viq/report.hpp"

#include <sstream>

namespace viq {

using nlohmann::json;

std::string Report::to_json() const {
  json out;
  out["schema"] = 1;
  out["command"] = command;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  out["meta"] = meta;
  return out.dump(2) + "\n";
}

std::string Report::comparison_key() const {
  json out;
  out["schema"] = 1;
  out["command"] = command;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out.dump();
}

std::string Report::to_tsv() const {
  std::ostringstream os;
  os << "command\t" << command << "\n";
  if (body.contains("tables"))
    for (auto it = body["tables"].begin(); it != body["tables"].end(); ++it) {
      const json& t = it.value();
      os << "table\t" << it.key() << "\n";
      const auto& degs = t.at("degrees");
      const auto& vals = t.at("values");
      for (std::size_t i = 0; i < degs.size(); ++i)
        os << degs[i].get<int>() << "\t" << vals[i].get<std::string>() << "\n";
    }
  if (body.contains("verdicts"))
    for (const json& v : body["verdicts"])
      os << "verdict\t" << v.at("name").get<std::string>() << "\t"
         << (v.at("pass").get<bool>() ? "PASS" : "FAIL") << "\n";
  if (body.contains("values"))
    for (auto it = body["values"].begin(); it != body["values"].end(); ++it)
      os << "value\t" << it.key() << "\t"
         << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
  return os.str();
}

std::string Report::to_human() const {
  std::ostringstream os;
  os << "== " << command;
  if (body.contains("module")) os << "  (" << body["module"].value("name", "") << ")";
  os << " ==\n";
  if (body.contains("module")) {
    const json& m = body["module"];
    os << "q = " << m.value("q", 0) << ", coeff = " << m.value("coeff", "rational");
    if (body.contains("window")) os << ", window 0.." << body["window"].get<int>();
    os << "\n";
  }
  if (body.contains("values"))
    for (auto it = body["values"].begin(); it != body["values"].end(); ++it)
      os << "  " << it.key() << " = "
         << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
  if (body.contains("tables"))
    for (auto it = body["tables"].begin(); it != body["tables"].end(); ++it) {
      const json& t = it.value();
      os << "  " << it.key() << ":";
      const auto& degs = t.at("degrees");
      const auto& vals = t.at("values");
      os << "\n    n   : ";
      for (std::size_t i = 0; i < degs.size(); ++i) os << degs[i].get<int>() << "\t";
      os << "\n    dim : ";
      for (std::size_t i = 0; i < vals.size(); ++i) os << vals[i].get<std::string>() << "\t";
      os << "\n";
    }
  if (body.contains("verdicts"))
    for (const json& v : body["verdicts"]) {
      os << "  [" << (v.at("pass").get<bool>() ? "PASS" : "FAIL") << "] "
         << v.at("name").get<std::string>();
      if (v.contains("detail") && !v["detail"].get<std::string>().empty())
        os << " — " << v["detail"].get<std::string>();
      os << "\n";
    }
  if (meta.contains("cache"))
    os << "  cache: " << meta["cache"].value("hits", 0) << " hits, "
       << meta["cache"].value("misses", 0) << " misses\n";
  return os.str();
}

json dims_json(const std::vector<int>& degrees, const std::vector<std::string>& values) {
  json t;
  t["degrees"] = degrees;
  t["values"] = values;
  return t;
}

json verdict_json(const std::string& name, bool pass, const std::string& detail) {
  json v;
  v["name"] = name;
  v["pass"] = pass;
  v["detail"] = detail;
  return v;
}

}  // namespace viq
