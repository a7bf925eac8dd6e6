#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viq/report.hpp"

namespace viq {

// One CLI invocation, already flag-parsed.
struct Invocation {
  std::string command;
  std::string module_path;
  int max_degree = -1;  // window top; -1 picks the per-q default
  int from = -1;        // fit window start; -1 derives it from the torsion degree
  bool bar = false;     // shift: use the unipotent-coinvariants shift
  int count = 1;        // shift iteration count
  int y_max = -1;       // shift budget for delta/localcoh/regularity; -1 = auto
  std::vector<std::uint64_t> selftest_qs;
  bool no_cache = false;
  std::string cache_dir = ".viq-cache";
  long long enum_cap = 1'000'000;
  std::string format = "human";  // human | json | tsv
};

int default_window(std::uint64_t q);

// Execute a command and produce its report; raises viq::Error for input
// problems (the CLI maps error codes to exit status).
Report run_command(const Invocation& inv);

}  // namespace viq
