#include <array>
#include <cmath>
#include <numbers>

#include "swc/inventory.hpp"

namespace swc {

namespace {

const double kCumLower[] = {47, 134, 188, 429};
const double kCumUpper[] = {94, 248, 370, 586};
const long kIntLower[] = {53, 70, 88, 100};
const long kIntUpper[] = {97, 130, 163, 186};

void check_paper_stages(int stages) {
  if (stages < 2 || stages > 5) {
    throw InvalidArgument("inventory benchmark data covers 2 to 5 stages, got " +
                          std::to_string(stages));
  }
}

}  // namespace

double nominal_demand(int t) { return 100.0 * (1.0 + 0.5 * std::sin(std::numbers::pi * (t - 2) / 6.0)); }

std::vector<std::string> InventoryData::check() const {
  std::vector<std::string> out;
  const auto periods = static_cast<std::size_t>(stages - 1);
  if (stages < 2) out.push_back("stages must be >= 2");
  if (order_lower.size() != periods || order_upper.size() != periods) {
    out.push_back("order bounds need one entry per period 1..H-1");
  }
  if (cum_lower.size() != periods || cum_upper.size() != periods) {
    out.push_back("cumulative-order bounds need one entry per period 1..H-1");
  }
  if (demand_nominal.size() != periods) out.push_back("nominal demand needs one entry per period 1..H-1");
  if (!out.empty()) return out;
  for (std::size_t t = 0; t < periods; ++t) {
    if (cum_lower[t] > cum_upper[t]) {
      out.push_back("cumulative-order bounds inverted at period " + std::to_string(t + 1));
    }
    if (order_lower[t] > order_upper[t]) {
      out.push_back("order bounds inverted at period " + std::to_string(t + 1));
    }
    if (!(demand_nominal[t] > 0.0)) {
      out.push_back("nominal demand must be positive at period " + std::to_string(t + 1));
    }
  }
  if (!(rho >= 0.0 && rho <= 1.0)) out.push_back("rho must lie in [0,1]");
  return out;
}

InventoryData paper_inventory_data(int stages) {
  check_paper_stages(stages);
  InventoryData d;
  d.stages = stages;
  for (int t = 1; t < stages; ++t) {
    d.order_lower.push_back(0.0);
    d.order_upper.push_back(kInf);
    d.cum_lower.push_back(kCumLower[t - 1]);
    d.cum_upper.push_back(kCumUpper[t - 1]);
    d.demand_nominal.push_back(nominal_demand(t));
  }
  return d;
}

InventoryColumns inventory_columns(int t, int stages) {
  if (t == 1) return {0, 1, -1, 2};
  if (t < stages) return {0, 1, 2, 3};
  return {-1, 0, 1, 2};
}

ProblemData build_coc(const InventoryData& data) {
  const auto issues = data.check();
  if (!issues.empty()) throw InvalidArgument("inventory data: " + issues.front());
  const int H = data.stages;
  const double p = data.backlog_cost;
  const double d = data.order_cost;
  const double h = data.holding_cost;

  ProblemData out;
  MultistageRobustLP& m = out.model;
  m.uncertainty_dims.assign(H - 1, 1);

  // Order bounds become rows: lower only when nonzero, upper only when finite.
  auto add_bound_rows = [](std::vector<std::array<double, 3>>& rows, int col, double lo, double up) {
    if (lo != 0.0) rows.push_back({double(col), 1.0, lo});
    if (std::isfinite(up)) rows.push_back({double(col), -1.0, -up});
  };

  // Stage 1.
  {
    const InventoryColumns c = inventory_columns(1, H);
    std::vector<std::array<double, 3>> bounds;  // col, sign, rhs as sign*x >= rhs
    add_bound_rows(bounds, c.order, data.order_lower[0], data.order_upper[0]);
    add_bound_rows(bounds, c.cumulative, data.cum_lower[0], data.cum_upper[0]);
    const int rows = 2 + static_cast<int>(bounds.size());
    m.dims.n.push_back(3);
    m.dims.m.push_back(rows);
    FirstStage& f = m.first;
    f.A = AffineMap(rows, 3);
    f.h = AffineMap(rows, 1);
    f.c = AffineMap(3, 1);
    f.A.add_base(0, c.cost, 1.0);
    f.A.add_base(0, c.order, -d);
    f.h.add_base(0, 0, h * data.initial_inventory);
    f.A.add_base(1, c.cost, 1.0);
    f.A.add_base(1, c.order, -d);
    f.h.add_base(1, 0, -p * data.initial_inventory);
    f.senses = {RowSense::GreaterEqual, RowSense::GreaterEqual};
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      const int r = 2 + static_cast<int>(k);
      f.A.add_base(r, int(bounds[k][0]), bounds[k][1]);
      f.h.add_base(r, 0, bounds[k][2]);
      f.senses.push_back(RowSense::GreaterEqual);
    }
    f.c.add_base(c.cost, 0, 1.0);
    f.signs.assign(3, VarSign::NonNegative);
  }

  for (int t = 2; t <= H; ++t) {
    const InventoryColumns c = inventory_columns(t, H);
    const InventoryColumns pc = inventory_columns(t - 1, H);
    const int n = t < H ? 4 : 3;
    const int np = m.dims.n.back();
    std::vector<std::array<double, 3>> bounds;
    if (t < H) {
      add_bound_rows(bounds, c.order, data.order_lower[t - 1], data.order_upper[t - 1]);
      add_bound_rows(bounds, c.cumulative, data.cum_lower[t - 1], data.cum_upper[t - 1]);
    }
    const int rows = 4 + static_cast<int>(bounds.size());
    m.dims.n.push_back(n);
    m.dims.m.push_back(rows);
    RecourseStage s;
    s.T = AffineMap(rows, np);
    s.W = AffineMap(rows, n);
    s.h = AffineMap(rows, 1);
    s.c = AffineMap(n, 1);
    // s_inv^t - s_inv^{t-1} - x_o^{t-1} = -xi^{t-1}
    s.W.add_base(0, c.inventory, 1.0);
    if (t == 2) {
      s.h.add_base(0, 0, data.initial_inventory);
    } else {
      s.T.add_base(0, pc.inventory, -1.0);
    }
    s.T.add_base(0, pc.order, -1.0);
    s.h.add_term(t - 2, 0, 0, -1.0);
    // s_co^t - s_co^{t-1} - x_o^{t-1} = 0
    s.W.add_base(1, c.cumulative, 1.0);
    s.T.add_base(1, pc.cumulative, -1.0);
    s.T.add_base(1, pc.order, -1.0);
    // x_c >= d x_o + h s_inv and x_c >= d x_o - p s_inv
    s.W.add_base(2, c.cost, 1.0);
    s.W.add_base(2, c.inventory, -h);
    s.W.add_base(3, c.cost, 1.0);
    s.W.add_base(3, c.inventory, p);
    if (c.order >= 0) {
      s.W.add_base(2, c.order, -d);
      s.W.add_base(3, c.order, -d);
    }
    s.senses = {RowSense::Equal, RowSense::Equal, RowSense::GreaterEqual, RowSense::GreaterEqual};
    for (std::size_t k = 0; k < bounds.size(); ++k) {
      const int r = 4 + static_cast<int>(k);
      s.W.add_base(r, int(bounds[k][0]), bounds[k][1]);
      s.h.add_base(r, 0, bounds[k][2]);
      s.senses.push_back(RowSense::GreaterEqual);
    }
    s.c.add_base(c.cost, 0, 1.0);
    s.signs.assign(n, VarSign::NonNegative);
    s.signs[c.inventory] = VarSign::Free;
    m.recourse.push_back(std::move(s));
  }

  for (int t = 1; t < H; ++t) {
    out.uncertainty.supports.push_back(BoxSupport{{data.demand_nominal[t - 1]}, data.rho});
  }
  return out;
}

UncertaintySet integer_demand_set(int stages) {
  check_paper_stages(stages);
  UncertaintySet set;
  for (int t = 1; t < stages; ++t) {
    set.supports.push_back(IntegerBoxSupport{{kIntLower[t - 1]}, {kIntUpper[t - 1]}});
  }
  return set;
}

}  // namespace swc

namespace swc {

std::string to_string(InventoryVariant variant) {
  return variant == InventoryVariant::Continuous ? "continuous" : "integer";
}

InventoryVariant parse_inventory_variant(const std::string& text) {
  if (text == "continuous") return InventoryVariant::Continuous;
  if (text == "integer" || text == "integerDemand") return InventoryVariant::IntegerDemand;
  throw InvalidArgument("unknown inventory variant '" + text + "' (expected continuous or integer)");
}

ProblemData inventory_problem(int stages, InventoryVariant variant) {
  ProblemData pd = build_coc(paper_inventory_data(stages));
  if (variant == InventoryVariant::IntegerDemand) pd.uncertainty = integer_demand_set(stages);
  return pd;
}

std::vector<double> paper_epsilons() {
  return {0.3, 0.2, 0.1, 0.05, 0.01, 0.005, 0.001, 0.0005, 0.00025};
}

ExperimentReport run_paper_grid(InventoryVariant variant, int stages, const std::filesystem::path& out,
                                ExperimentConfig config) {
  const ProblemData pd = inventory_problem(stages, variant);
  config.n0 = kInventoryN0;
  if (config.epsilons.empty()) config.epsilons = paper_epsilons();
  ExperimentReport report = run_experiment(pd.model, pd.uncertainty, config);
  if (!out.empty()) write_report(report, out);
  return report;
}

}  // namespace swc
