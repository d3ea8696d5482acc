#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "swc/lp.hpp"

namespace swc {

std::string to_string(RowSense sense) {
  switch (sense) {
    case RowSense::LessEqual:
      return "<=";
    case RowSense::Equal:
      return "=";
    case RowSense::GreaterEqual:
      return ">=";
  }
  return "?";
}

}  // namespace swc

namespace swc::lp {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal:
      return "Optimal";
    case SolveStatus::Infeasible:
      return "Infeasible";
    case SolveStatus::Unbounded:
      return "Unbounded";
    case SolveStatus::IterationLimit:
      return "IterationLimit";
  }
  return "?";
}

int LpInstance::add_variable(double lower, double upper, double cost, std::string name) {
  lower_.push_back(lower);
  upper_.push_back(upper);
  cost_.push_back(cost);
  var_names_.push_back(std::move(name));
  return num_vars() - 1;
}

void LpInstance::set_bounds(int j, double lower, double upper) {
  lower_[j] = lower;
  upper_[j] = upper;
}

int LpInstance::add_row(std::span<const int> cols, std::span<const double> values,
                        RowSense sense, double rhs, std::string name) {
  if (cols.size() != values.size()) {
    throw InvalidArgument("add_row: column and value spans differ in length");
  }
  const std::size_t first = row_cols_.size();
  // Strictly increasing columns need no merging.
  if (std::adjacent_find(cols.begin(), cols.end(), std::greater_equal<int>()) == cols.end()) {
    row_cols_.insert(row_cols_.end(), cols.begin(), cols.end());
    row_values_.insert(row_values_.end(), values.begin(), values.end());
  } else {
    std::vector<int> order(cols.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return cols[a] < cols[b]; });
    for (int k : order) {
      if (row_cols_.size() > first && row_cols_.back() == cols[k]) {
        row_values_.back() += values[k];
      } else {
        row_cols_.push_back(cols[k]);
        row_values_.push_back(values[k]);
      }
    }
  }
  // Drop entries that cancelled to exactly zero.
  std::size_t w = first;
  for (std::size_t r = first; r < row_cols_.size(); ++r) {
    if (row_values_[r] != 0.0) {
      row_cols_[w] = row_cols_[r];
      row_values_[w] = row_values_[r];
      ++w;
    }
  }
  row_cols_.resize(w);
  row_values_.resize(w);
  row_start_.push_back(static_cast<int>(row_cols_.size()));
  senses_.push_back(sense);
  rhs_.push_back(rhs);
  row_names_.push_back(std::move(name));
  return num_rows() - 1;
}

RowView LpInstance::row(int i) const {
  const auto begin = static_cast<std::size_t>(row_start_[i]);
  const auto len = static_cast<std::size_t>(row_start_[i + 1] - row_start_[i]);
  return RowView{std::span<const int>(row_cols_).subspan(begin, len),
                 std::span<const double>(row_values_).subspan(begin, len), senses_[i], rhs_[i]};
}

std::vector<std::string> LpInstance::check() const {
  std::vector<std::string> issues;
  for (int j = 0; j < num_vars(); ++j) {
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) || lower_[j] > upper_[j]) {
      std::ostringstream os;
      os << "variable " << j << ": bounds [" << lower_[j] << ", " << upper_[j] << "] invalid";
      issues.push_back(os.str());
    }
    if (!std::isfinite(cost_[j])) {
      issues.push_back("variable " + std::to_string(j) + ": non-finite cost");
    }
  }
  for (int i = 0; i < num_rows(); ++i) {
    const RowView r = row(i);
    for (std::size_t k = 0; k < r.cols.size(); ++k) {
      if (r.cols[k] < 0 || r.cols[k] >= num_vars()) {
        issues.push_back("row " + std::to_string(i) + ": column index " +
                         std::to_string(r.cols[k]) + " out of range");
      }
      if (!std::isfinite(r.values[k])) {
        issues.push_back("row " + std::to_string(i) + ": non-finite coefficient");
      }
    }
    if (!std::isfinite(r.rhs)) {
      issues.push_back("row " + std::to_string(i) + ": non-finite rhs");
    }
  }
  return issues;
}

double LpInstance::objective_value(std::span<const double> x) const {
  double v = 0.0;
  for (int j = 0; j < num_vars(); ++j) v += cost_[j] * x[j];
  return v;
}

double LpInstance::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
  }
  for (int i = 0; i < num_rows(); ++i) {
    const RowView r = row(i);
    double act = 0.0;
    for (std::size_t k = 0; k < r.cols.size(); ++k) act += r.values[k] * x[r.cols[k]];
    const double diff = act - r.rhs;
    switch (r.sense) {
      case RowSense::LessEqual:
        worst = std::max(worst, diff);
        break;
      case RowSense::GreaterEqual:
        worst = std::max(worst, -diff);
        break;
      case RowSense::Equal:
        worst = std::max(worst, std::abs(diff));
        break;
    }
  }
  return worst;
}

}  // namespace swc::lp
