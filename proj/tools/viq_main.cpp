#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "viq/session.hpp"
#include "viq/error.hpp"

namespace {

int exit_code_for(viq::Err code) {
  switch (code) {
    case viq::Err::Parse:
    case viq::Err::UnsupportedField:
    case viq::Err::Equivariance:
    case viq::Err::BadDims:
    case viq::Err::WindowTooSmall:
      return 2;
    case viq::Err::TooLarge:
      return 3;
    case viq::Err::NoExactFit:
      return 4;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"viq — exact computations with finitely generated VI-modules over F_q"};
  app.require_subcommand(1);

  viq::Invocation inv;
  std::string cache_dir_flag;

  auto add_common = [&](CLI::App* cmd, bool with_module) {
    if (with_module)
      cmd->add_option("module", inv.module_path, "module definition file (.vimod)")
          ->required();
    cmd->add_option("--max", inv.max_degree, "top window degree (default depends on q)");
    cmd->add_flag("--no-cache", inv.no_cache, "disable the evaluation cache");
    cmd->add_option("--cache-dir", cache_dir_flag, "cache directory (env VIQ_CACHE_DIR overrides)");
    cmd->add_option("--enum-cap", inv.enum_cap, "enumeration cap per call");
    cmd->add_option("--format", inv.format, "output format: human, json, tsv")
        ->check(CLI::IsMember({"human", "json", "tsv"}));
  };

  const char* commands[] = {"dims", "h0", "h1", "torsion", "certify", "localcoh",
                            "delta", "regularity"};
  for (const char* name : commands) add_common(app.add_subcommand(name), true);

  auto* shift = app.add_subcommand("shift", "shifted dimension table");
  add_common(shift, true);
  shift->add_flag("--bar", inv.bar, "use the coinvariants shift");
  shift->add_option("--count", inv.count, "number of shifts");

  auto* fit = app.add_subcommand("fit", "exact polynomial fit of the dimension table");
  add_common(fit, true);
  fit->add_option("--from", inv.from, "window start (default: torsion degree + 1)");

  auto* selftest = app.add_subcommand("selftest", "run the structural identity suites");
  add_common(selftest, false);
  selftest->add_option("--q", inv.selftest_qs, "field sizes to test (repeatable)");

  auto* delta_cmd = app.get_subcommand("delta");
  delta_cmd->add_option("--shift-budget", inv.y_max, "max number of bar-sigma iterations");
  app.get_subcommand("localcoh")
      ->add_option("--shift-budget", inv.y_max, "max number of bar-sigma iterations");
  app.get_subcommand("regularity")
      ->add_option("--shift-budget", inv.y_max, "max number of bar-sigma iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits cleanly, usage errors are input errors
  }
  inv.command = app.get_subcommands().front()->get_name();

  if (const char* env = std::getenv("VIQ_CACHE_DIR"))
    inv.cache_dir = env;
  else if (!cache_dir_flag.empty())
    inv.cache_dir = cache_dir_flag;

  try {
    viq::Report rep = viq::run_command(inv);
    if (inv.format == "json")
      std::cout << rep.to_json();
    else if (inv.format == "tsv")
      std::cout << rep.to_tsv();
    else
      std::cout << rep.to_human();
    return rep.exit_code;
  } catch (const viq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
