#pragma once

#include <vector>

#include <filesystem>
#include <string>

#include "swc/experiment.hpp"
#include "swc/problem_io.hpp"

namespace swc {

// Inventory management with cumulative orders. Periods t = 1..H; orders
// x_o^t are placed for t < H, demand xi^t of period t is revealed before
// stage t + 1.
struct InventoryData {
  int stages = 5;
  double backlog_cost = 11.0;  // p
  double order_cost = 1.0;     // d
  double holding_cost = 10.0;  // h
  double initial_inventory = 0.0;
  std::vector<double> order_lower;  // x_o^t, t = 1..H-1
  std::vector<double> order_upper;  // +inf for no bound
  std::vector<double> cum_lower;    // s_co^t, t = 1..H-1
  std::vector<double> cum_upper;
  double rho = 0.3;
  std::vector<double> demand_nominal;  // xi_bar^t, t = 1..H-1

  std::vector<std::string> check() const;
};

// 100 (1 + sin(pi (t - 2) / 6) / 2).
double nominal_demand(int t);

// Design dimension used in the sample-size formula for this benchmark.
inline constexpr int kInventoryN0 = 4;

// Table data for 2 <= H <= 5.
InventoryData paper_inventory_data(int stages);

// Column of each quantity inside a stage block (-1 when absent).
struct InventoryColumns {
  int order = -1;         // x_o
  int cost = -1;          // x_c
  int inventory = -1;     // s_inv (free)
  int cumulative = -1;    // s_co
};
InventoryColumns inventory_columns(int t, int stages);

// Model plus the box demand set Box(xi_bar^t, rho).
ProblemData build_coc(const InventoryData& data);

// Integer demand on [53,97], [70,130], [88,163], [100,186] for t = 1..H-1.
UncertaintySet integer_demand_set(int stages);

enum class InventoryVariant { Continuous, IntegerDemand };

std::string to_string(InventoryVariant variant);
InventoryVariant parse_inventory_variant(const std::string& text);

// Paper data with the box set, or with the integer demand set.
ProblemData inventory_problem(int stages, InventoryVariant variant);

// The nine accuracy levels of the sample-size table, 0.3 down to 0.00025.
std::vector<double> paper_epsilons();

// Runs the experiment for one benchmark cell and writes its CSVs to `out`
// (skipped when empty). n0 is forced to the benchmark constant; empty
// epsilon lists select paper_epsilons().
ExperimentReport run_paper_grid(InventoryVariant variant, int stages, const std::filesystem::path& out,
                                ExperimentConfig config);

}  // namespace swc
