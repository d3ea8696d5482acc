#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "swc/common.hpp"

namespace swc::lp {

struct RowView {
  std::span<const int> cols;
  std::span<const double> values;
  RowSense sense;
  double rhs;
};

// Minimization LP in row-wise sparse form with per-variable bounds.
class LpInstance {
 public:
  int add_variable(double lower, double upper, double cost, std::string name = {});

  // Duplicate column indices within a row are summed.
  int add_row(std::span<const int> cols, std::span<const double> values, RowSense sense,
              double rhs, std::string name = {});

  int num_vars() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_nonzeros() const { return static_cast<int>(row_cols_.size()); }

  double lower(int j) const { return lower_[j]; }
  double upper(int j) const { return upper_[j]; }
  double cost(int j) const { return cost_[j]; }
  void set_bounds(int j, double lower, double upper);
  void set_cost(int j, double cost) { cost_[j] = cost; }

  RowView row(int i) const;
  const std::string& var_name(int j) const { return var_names_[j]; }
  const std::string& row_name(int i) const { return row_names_[i]; }
  void set_var_name(int j, std::string name) { var_names_[j] = std::move(name); }

  // Empty when the instance is well formed.
  std::vector<std::string> check() const;

  double objective_value(std::span<const double> x) const;
  // Largest bound or row violation of x (absolute).
  double max_violation(std::span<const double> x) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<std::string> var_names_;
  std::vector<int> row_start_{0};
  std::vector<int> row_cols_;
  std::vector<double> row_values_;
  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
  std::vector<std::string> row_names_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;
  long iterations = 0;
  double wall_seconds = 0.0;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

enum class PricingRule {
  Bland,              // smallest eligible index throughout
  DantzigThenBland,   // most negative reduced cost; Bland once pivots stall
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  long max_iterations = 0;  // 0 selects 50 * (rows + cols)
  int refactor_interval = 64;
  PricingRule pricing = PricingRule::DantzigThenBland;
  int stall_limit = 50;     // consecutive degenerate pivots before switching to Bland
  int max_rows = 5000;      // dense basis inverse; larger instances need `force`
  bool force = false;
};

class SizeLimitError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Two-phase bounded revised simplex on a dense explicit basis inverse.
// The object owns scratch buffers, so reusing one instance across many
// small solves avoids reallocation. Not thread safe; use one per thread.
class SimplexSolver {
 public:
  explicit SimplexSolver(SimplexOptions options = {}) : options_(options) {}

  SolveResult solve(const LpInstance& lp);

  const SimplexOptions& options() const { return options_; }

 private:
  struct Workspace;
  SimplexOptions options_;
  std::shared_ptr<Workspace> work_;
};

SolveResult solve_builtin(const LpInstance& lp, const SimplexOptions& options = {});

}  // namespace swc::lp
