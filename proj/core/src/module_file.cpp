#include "viq/module_file.hpp"

#include <fstream>
#include <sstream>

namespace viq {

namespace {

using nlohmann::json;

CoeffSpec parse_coeff(const json& doc, std::uint64_t q) {
  CoeffSpec spec;
  std::string s = doc.value("coeff", "rational");
  if (s == "rational") return spec;
  if (s.rfind("mod ", 0) == 0) {
    spec.rational = false;
    try {
      spec.p = std::stoull(s.substr(4));
    } catch (const std::exception&) {
      raise(Err::Parse, "bad coeff field: " + s);
    }
    require(is_prime(spec.p), Err::UnsupportedField, "coefficient modulus must be prime");
    require(spec.p != q, Err::UnsupportedField,
            "coefficient characteristic must not divide q (non-describing characteristic)");
    return spec;
  }
  raise(Err::Parse, "coeff must be \"rational\" or \"mod <p>\"");
}

template <class R>
GlRep<R> parse_rep(const R& ring, std::uint64_t q, int degree, const json& rep) {
  if (rep.is_string()) return builtin_rep(ring, q, rep.get<std::string>(), degree);
  require(rep.is_object() && rep.contains("dim") && rep.contains("matrices"), Err::Parse,
          "rep must be a builtin name or {dim, matrices}");
  int dim = rep.at("dim").get<int>();
  require(dim >= 0, Err::Parse, "rep dim must be nonnegative");
  auto gens = gl_generators(q, degree);
  const auto& mats = rep.at("matrices");
  require(mats.is_array() && mats.size() == gens.size(), Err::Parse,
          "rep needs one matrix per GL generator (" + std::to_string(gens.size()) + ")");
  std::vector<Mat<R>> actions;
  for (const auto& jm : mats) {
    require(jm.is_array() && static_cast<int>(jm.size()) == dim, Err::Parse,
            "action matrix has wrong row count");
    Mat<R> m(ring, dim, dim);
    for (int i = 0; i < dim; ++i) {
      require(jm[i].is_array() && static_cast<int>(jm[i].size()) == dim, Err::Parse,
              "action matrix has wrong column count");
      for (int j = 0; j < dim; ++j) m.at(i, j) = ring.parse(jm[i][j].template get<std::string>());
    }
    actions.push_back(std::move(m));
  }
  return GlRep<R>::explicit_rep(ring, q, degree, dim, std::move(actions));
}

template <class R>
Mat<R> parse_matrix(const R& ring, const json& jm, int rows, int cols) {
  require(jm.is_array() && static_cast<int>(jm.size()) == rows, Err::Parse,
          "relation map has wrong row count (expected " + std::to_string(rows) + ")");
  Mat<R> m(ring, rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(jm[i].is_array() && static_cast<int>(jm[i].size()) == cols, Err::Parse,
            "relation map has wrong column count");
    for (int j = 0; j < cols; ++j) m.at(i, j) = ring.parse(jm[i][j].template get<std::string>());
  }
  return m;
}

template <class R>
PresentedModule<R> parse_presentation(R ring, std::uint64_t q, const json& doc) {
  PresentedModule<R> p;
  p.ring = ring;
  p.q = q;
  p.v = VBModule<R>(ring, q);
  p.w = VBModule<R>(ring, q);
  p.name = doc.value("name", "");
  require(doc.contains("generators") && doc.at("generators").is_array(), Err::Parse,
          "generators array required");
  for (const auto& g : doc.at("generators")) {
    int degree = g.at("degree").get<int>();
    require(degree >= 0, Err::Parse, "generator degree must be nonnegative");
    p.v.add(degree, parse_rep(ring, q, degree, g.at("rep")));
  }
  require(p.v.deg() >= 0, Err::Parse, "module needs at least one generator");
  std::map<int, std::vector<std::pair<GlRep<R>, json>>> rel_groups;
  if (doc.contains("relations")) {
    require(doc.at("relations").is_array(), Err::Parse, "relations must be an array");
    for (const auto& r : doc.at("relations")) {
      int degree = r.at("degree").get<int>();
      require(degree >= 0, Err::Parse, "relation degree must be nonnegative");
      rel_groups[degree].push_back({parse_rep(ring, q, degree, r.at("rep")), r.at("map")});
    }
  }
  for (auto& [e, group] : rel_groups) {
    InducedWindow<R> iv(p.v, e);
    const int rows = iv.dim(e);
    Mat<R> joined(ring, rows, 0);
    for (auto& [rep, jm] : group) {
      joined = hcat(joined, parse_matrix(ring, jm, rows, rep.dim()));
      p.w.add(e, rep);
    }
    p.rel_maps.emplace(e, std::move(joined));
  }
  check_equivariance(p);
  return p;
}

}  // namespace

std::string content_hash(const std::string& data) {
  // FNV-1a, 64-bit: content addressing at desk scale, not cryptographic.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

ParsedModule parse_module_json_impl(const nlohmann::json& doc) {
  require(doc.is_object(), Err::Parse, "module document must be a JSON object");
  ParsedModule out;
  require(doc.contains("q"), Err::Parse, "q field required");
  long long q = doc.at("q").get<long long>();
  require(q >= 2 && is_prime(static_cast<std::uint64_t>(q)), Err::UnsupportedField,
          "q must be a prime");
  out.q = static_cast<std::uint64_t>(q);
  out.coeff = parse_coeff(doc, out.q);
  out.name = doc.value("name", "");

  nlohmann::json canonical;
  canonical["q"] = q;
  canonical["coeff"] = out.coeff.str();
  canonical["generators"] = doc.at("generators");
  canonical["relations"] = doc.contains("relations") ? doc.at("relations") : nlohmann::json::array();
  out.canonical = canonical.dump();
  out.hash = content_hash(out.canonical);

  if (out.coeff.rational)
    out.value = parse_presentation(RatRing{}, out.q, doc);
  else
    out.value = parse_presentation(FpRing(out.coeff.p), out.q, doc);
  return out;
}

}  // namespace

ParsedModule parse_module_json(const nlohmann::json& doc) {
  try {
    return parse_module_json_impl(doc);
  } catch (const nlohmann::json::exception& e) {
    raise(Err::Parse, "module document is missing or mistypes fields: " + std::string(e.what()));
  }
}

ParsedModule parse_module_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::Parse, "cannot open module file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    raise(Err::Parse, "module file is not valid JSON: " + std::string(e.what()));
  }
  try {
    return parse_module_json(doc);
  } catch (const nlohmann::json::exception& e) {
    raise(Err::Parse, "module file is missing fields: " + std::string(e.what()));
  }
}

}  // namespace viq
