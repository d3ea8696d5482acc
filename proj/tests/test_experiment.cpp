#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "swc/experiment.hpp"
#include "swc/inventory.hpp"

namespace swc {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile({7.0}, 0.3), 7.0);
  EXPECT_THROW(quantile({}, 0.5), InvalidArgument);
}

TEST(Summarize, Fields) {
  const SummaryStats s = summarize("x", {1.0, 2.0, 3.0, 4.0, 5.0});
  EXPECT_EQ(s.count, 5);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.q1, 2.0);
  EXPECT_DOUBLE_EQ(s.median, 3.0);
  EXPECT_DOUBLE_EQ(s.q3, 4.0);
  EXPECT_EQ(summarize("y", {}).count, 0);
}

TEST(Formatting, Labels) {
  EXPECT_EQ(format_number(2207.554108123), "2207.55411");
  EXPECT_EQ(epsilon_label(0.3), "0.3");
  EXPECT_EQ(epsilon_label(0.00025), "0.00025");
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.epsilons = {0.3, 0.2};
  c.instances = 4;
  c.base_seed = 11;
  c.n0 = kInventoryN0;
  c.validation_batches = 3;
  return c;
}

TEST(Experiment, RecordsSeedsAndChain) {
  const ProblemData d = inventory_problem(3, InventoryVariant::Continuous);
  const ExperimentReport r = run_experiment(d.model, d.uncertainty, small_config());
  ASSERT_EQ(r.rows.size(), 8u);
  EXPECT_TRUE(r.notices.empty());
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    const InstanceRecord& row = r.rows[k];
    EXPECT_TRUE(row.ok) << row.error;
    EXPECT_EQ(row.seed, 11u + k % 4);
    EXPECT_EQ(row.N, k < 4 ? 63 : 95);
    EXPECT_LE(row.swc_value, r.references.ro + 1e-6);
    EXPECT_LE(*row.sws, *row.swct + 1e-6);
    EXPECT_LE(*row.swct, row.swc_value + 1e-6);
    EXPECT_NEAR(row.gap, (row.swc_value - r.references.ro) / r.references.ro, 1e-12);
    ASSERT_TRUE(row.violation.has_value());
    EXPECT_GE(*row.violation, 0.0);
  }
  ASSERT_EQ(r.summaries.size(), 2u);
  EXPECT_EQ(r.summaries[0].metrics[0].metric, "swc_value");
}

TEST(Experiment, SampleCapSkipsLevels) {
  const ProblemData d = inventory_problem(2, InventoryVariant::Continuous);
  ExperimentConfig c = small_config();
  c.max_samples = 80;
  c.compute_violation = false;
  c.compute_bounds = false;
  const ExperimentReport r = run_experiment(d.model, d.uncertainty, c);
  EXPECT_EQ(r.rows.size(), 4u);
  ASSERT_EQ(r.notices.size(), 1u);
  EXPECT_NE(r.notices[0].find("skipped"), std::string::npos);
  EXPECT_FALSE(r.rows[0].violation.has_value());
  EXPECT_FALSE(r.rows[0].sws.has_value());
}

TEST(Experiment, CsvBytesIdenticalAcrossRunsAndJobs) {
  const ProblemData d = inventory_problem(3, InventoryVariant::Continuous);
  const fs::path base = fs::temp_directory_path() / "swc_experiment_test";
  fs::remove_all(base);
  ExperimentConfig c = small_config();
  write_report(run_experiment(d.model, d.uncertainty, c), base / "a");
  write_report(run_experiment(d.model, d.uncertainty, c), base / "b");
  c.jobs = 3;
  write_report(run_experiment(d.model, d.uncertainty, c), base / "c");
  for (const char* name : {"instances.csv", "summary_eps_0.3.csv", "summary_eps_0.2.csv",
                           "references.csv"}) {
    const std::string a = slurp(base / "a" / name);
    EXPECT_FALSE(a.empty()) << name;
    EXPECT_EQ(a, slurp(base / "b" / name)) << name;
    EXPECT_EQ(a, slurp(base / "c" / name)) << name;
  }
  const std::string inst = slurp(base / "a" / "instances.csv");
  EXPECT_EQ(inst.substr(0, inst.find('\n')), "seed,N,swc_value,gap,violation,sws,swct,ro_exact,runtime_ms");
  // runtime_ms stays blank without timing.
  EXPECT_EQ(inst[inst.find('\n', inst.find('\n') + 1) - 1], ',');
  fs::remove_all(base);
}

TEST(Experiment, TimingFillsRuntime) {
  const ProblemData d = inventory_problem(2, InventoryVariant::Continuous);
  ExperimentConfig c = small_config();
  c.epsilons = {0.3};
  c.instances = 2;
  c.record_timing = true;
  const ExperimentReport r = run_experiment(d.model, d.uncertainty, c);
  std::ostringstream os;
  write_instances_csv(r, os);
  const std::string s = os.str();
  const std::string line = s.substr(s.find('\n') + 1, s.find('\n', s.find('\n') + 1) - s.find('\n') - 1);
  EXPECT_NE(line.back(), ',');
  EXPECT_EQ(r.summaries[0].metrics.back().metric, "runtime_ms");
}

TEST(Experiment, Errors) {
  const ProblemData d = inventory_problem(2, InventoryVariant::Continuous);
  ExperimentConfig c = small_config();
  c.epsilons.clear();
  EXPECT_THROW(run_experiment(d.model, d.uncertainty, c), InvalidArgument);
  c = small_config();
  c.instances = 0;
  EXPECT_THROW(run_experiment(d.model, d.uncertainty, c), InvalidArgument);
  UncertaintySet wrong = d.uncertainty;
  wrong.supports.push_back(wrong.supports[0]);
  EXPECT_THROW(run_experiment(d.model, wrong, small_config()), ModelError);
}

TEST(References, CsvRows) {
  std::ostringstream os;
  write_references_csv({2207.554108, 1831.891109, 1831.891109}, os);
  EXPECT_EQ(os.str(), "quantity,value\nro,2207.55411\nrws,1831.89111\nrt,1831.89111\nrvpi,375.662999\n");
}

}  // namespace
}  // namespace swc
