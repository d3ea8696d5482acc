#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace swc {

// Settings shared by the subcommands. A JSON config file fills these first;
// flags given on the command line then override individual fields.
struct RunConfig {
  std::string problem_file;            // either a problem file ...
  std::string benchmark = "inventory"; // ... or a builtin benchmark
  int stages = 5;
  std::string variant = "continuous";
  std::vector<double> epsilons;
  double beta = 0.001;
  int n0 = 0;  // 0: benchmark constant, or n_1 for problem files
  int instances = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string solver = "builtin";  // builtin | external
  std::string solver_cmd;
  std::string out;
  long batches = 100;  // validation L
  long max_samples = 0;
  bool timing = false;
  bool bounds = true;
};

RunConfig run_config_from_json(const nlohmann::json& doc);
nlohmann::json run_config_to_json(const RunConfig& config);

// Exit codes: 0 success, 2 usage or input errors, 3 solver failures,
// 1 anything else. Failures print one JSON object on `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swc
