#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "viq/examples.hpp"
#include "viq/module_file.hpp"
#include "viq/session.hpp"

using namespace viq;

namespace {

std::string modules_dir() { return VIQ_MODULES_DIR; }

nlohmann::json base_doc() {
  return nlohmann::json::parse(R"({
    "q": 2,
    "coeff": "rational",
    "generators": [ { "degree": 0, "rep": "trivial" } ],
    "relations": [ { "degree": 1, "rep": "trivial", "map": [["1"]] } ]
  })");
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("viq-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("bundled modules load and match the programmatic presentations") {
  RatRing ring;
  for (const std::string& which : example_module_names()) {
    auto parsed = parse_module_file(modules_dir() + "/" + which + ".vimod");
    CHECK(parsed.name == which);
    CHECK(parsed.q == 2);
    const auto& file_p = std::get<PresentedModule<RatRing>>(parsed.value);
    auto code_p = example_module(ring, 2, which);
    auto wf = build_windows(file_p, 4);
    auto wc = build_windows(code_p, 4);
    for (int n = 0; n <= 4; ++n) CHECK(wf.module->dim(n) == wc.module->dim(n));
  }
}

TEST_CASE("field validation") {
  auto doc = base_doc();
  doc["coeff"] = "mod 2";  // p = q violates the invertibility assumption
  CHECK_THROWS_AS(parse_module_json(doc), Error);
  try {
    parse_module_json(doc);
  } catch (const Error& e) {
    CHECK(e.code() == Err::UnsupportedField);
  }

  doc = base_doc();
  doc["coeff"] = "mod 9";
  CHECK_THROWS_AS(parse_module_json(doc), Error);

  doc = base_doc();
  doc["q"] = 6;
  CHECK_THROWS_AS(parse_module_json(doc), Error);

  doc = base_doc();
  doc["coeff"] = "mod 3";
  auto parsed = parse_module_json(doc);
  CHECK_FALSE(parsed.coeff.rational);
  CHECK(parsed.coeff.p == 3);
  CHECK(std::holds_alternative<PresentedModule<FpRing>>(parsed.value));
}

TEST_CASE("parse errors carry the right code") {
  auto check_code = [](const nlohmann::json& doc, Err expected) {
    try {
      parse_module_json(doc);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == expected);
    }
  };
  auto doc = base_doc();
  doc.erase("generators");
  check_code(doc, Err::Parse);

  doc = base_doc();
  doc["relations"][0]["map"] = nlohmann::json::parse(R"([["1.5"]])");
  check_code(doc, Err::Parse);

  doc = base_doc();
  doc["relations"][0]["map"] = nlohmann::json::parse(R"([["1"],["0"]])");  // wrong shape
  check_code(doc, Err::Parse);

  CHECK_THROWS_AS(parse_module_file("/nonexistent/file.vimod"), Error);
}

TEST_CASE("non-equivariant relation maps are rejected at load") {
  auto doc = nlohmann::json::parse(R"({
    "q": 3,
    "coeff": "rational",
    "generators": [ { "degree": 1, "rep": "regular" } ],
    "relations": [ { "degree": 1, "rep": "trivial", "map": [["1"],["0"]] } ]
  })");
  try {
    parse_module_json(doc);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::Equivariance);
  }
}

TEST_CASE("content hash is stable and content-addressed") {
  auto a = parse_module_json(base_doc());
  auto b = parse_module_json(base_doc());
  CHECK(a.hash == b.hash);
  auto doc = base_doc();
  doc["name"] = "renamed";  // names do not change the content address
  CHECK(parse_module_json(doc).hash == a.hash);
  doc = base_doc();
  doc["q"] = 3;
  CHECK(parse_module_json(doc).hash != a.hash);
}

TEST_CASE("reports are deterministic") {
  Invocation inv;
  inv.command = "dims";
  inv.module_path = modules_dir() + "/itriv1_plus_k0.vimod";
  inv.no_cache = true;
  auto r1 = run_command(inv);
  auto r2 = run_command(inv);
  CHECK(r1.comparison_key() == r2.comparison_key());
  CHECK(r1.exit_code == 0);
  // json body parses and carries the schema marker
  auto parsed = nlohmann::json::parse(r1.to_json());
  CHECK(parsed.at("schema") == 1);
  CHECK(parsed.contains("meta"));
  // tsv has the table rows
  CHECK(r1.to_tsv().find("table\tdims") != std::string::npos);
}

TEST_CASE("cache transparency") {
  TempDir tmp;
  Invocation inv;
  inv.command = "dims";
  inv.module_path = modules_dir() + "/k0.vimod";
  inv.cache_dir = tmp.path.string();
  auto cold = run_command(inv);
  auto warm = run_command(inv);
  inv.no_cache = true;
  auto uncached = run_command(inv);
  CHECK(cold.comparison_key() == warm.comparison_key());
  CHECK(cold.comparison_key() == uncached.comparison_key());
  CHECK(warm.meta["cache"]["hits"].get<int>() > 0);
  CHECK(cold.meta["cache"]["hits"].get<int>() == 0);
  CHECK(uncached.meta["cache"]["enabled"].get<bool>() == false);

  // h0 and torsion also run off the cached snapshot
  inv.no_cache = false;
  inv.command = "h0";
  auto h0_cached = run_command(inv);
  CHECK(h0_cached.meta["cache"]["hits"].get<int>() > 0);
  inv.no_cache = true;
  CHECK(run_command(inv).comparison_key() == h0_cached.comparison_key());
}

TEST_CASE("certificate failures exit with the verification status") {
  Invocation inv;
  inv.command = "certify";
  inv.module_path = modules_dir() + "/k0.vimod";
  inv.no_cache = true;
  CHECK(run_command(inv).exit_code == 4);
  inv.module_path = modules_dir() + "/itriv2.vimod";
  CHECK(run_command(inv).exit_code == 0);
}

TEST_CASE("explicit representations load from files") {
  // the sign character of GL_1(F_3): the generator diag(2) acts by -1
  auto doc = nlohmann::json::parse(R"({
    "q": 3,
    "coeff": "rational",
    "generators": [ { "degree": 1, "rep": { "dim": 1, "matrices": [ [["-1"]] ] } } ]
  })");
  auto parsed = parse_module_json(doc);
  const auto& p = std::get<PresentedModule<RatRing>>(parsed.value);
  auto w = build_windows(p, 3);
  for (int n = 0; n <= 3; ++n)
    CHECK(w.module->dim(n) == gaussian_binomial(3, n, 1));
  // the character is genuinely nontrivial on the window
  bool nontrivial = false;
  for (const FqMat& g : gl_generators(3, 1))
    if (w.module->act(1, g) != Mat<RatRing>::identity(RatRing{}, 1)) nontrivial = true;
  CHECK(nontrivial);

  // a non-representation is rejected: diag(2) has order 2, so a matrix of
  // infinite multiplicative order cannot represent it
  doc["generators"][0]["rep"]["matrices"] = nlohmann::json::parse(R"([ [["2"]] ])");
  CHECK_THROWS_AS(parse_module_json(doc), Error);
}

TEST_CASE("modular coefficient runs agree with rational ones on dimensions") {
  TempDir tmp;
  std::filesystem::path file = tmp.path / "k0mod3.vimod";
  auto doc = base_doc();
  doc["coeff"] = "mod 3";
  doc["name"] = "k0mod3";
  std::ofstream(file) << doc.dump();
  Invocation inv;
  inv.command = "dims";
  inv.module_path = file.string();
  inv.no_cache = true;
  auto modular = run_command(inv);
  inv.module_path = modules_dir() + "/k0.vimod";
  auto rational = run_command(inv);
  CHECK(modular.body["tables"]["dims"]["values"] == rational.body["tables"]["dims"]["values"]);
}
