#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "swc/lp.hpp"

namespace swc::lp {

// Writes the LP in the CPLEX-style text format (Minimize / Subject To /
// Bounds / End). Every variable appears in the objective line, in index
// order, so reading the file back restores the original column order and the
// output is byte-stable.
void write_interchange(const LpInstance& lp, std::ostream& out);
std::string write_interchange(const LpInstance& lp);

// Reads the subset emitted by write_interchange. Throws InvalidArgument on
// malformed input.
LpInstance parse_interchange(std::istream& in);
LpInstance parse_interchange(const std::string& text);

// Name used for column j in interchange files.
std::string column_name(const LpInstance& lp, int j);
std::string row_label(const LpInstance& lp, int i);

class ExternalSolverError : public SolverError {
 public:
  enum class Kind { MissingExecutable, NonzeroExit, UnparsableSolution };
  ExternalSolverError(Kind kind, const std::string& what) : SolverError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ExternalSolverConfig {
  // Command template; "{lp}" and "{sol}" are replaced by file paths. When
  // neither placeholder is present the paths are appended in that order.
  std::string command;
  std::filesystem::path work_dir;  // empty: system temp directory
  bool keep_files = false;
};

// Value of SWC_EXTERNAL_SOLVER, if set and nonempty.
std::optional<std::string> external_solver_from_env();

// Parses a plain-text solution dump in the HiGHS layout ("Model status"
// block, then "# Columns K" followed by K "name value" lines).
SolveResult parse_solution(std::istream& in, const LpInstance& lp);

SolveResult solve_external(const LpInstance& lp, const ExternalSolverConfig& config);

}  // namespace swc::lp

namespace swc::lp {

// Builtin simplex unless an external command is configured.
struct SolverChoice {
  SimplexOptions simplex;
  std::optional<ExternalSolverConfig> external;
};

SolveResult solve(const LpInstance& lp, const SolverChoice& choice);

}  // namespace swc::lp
