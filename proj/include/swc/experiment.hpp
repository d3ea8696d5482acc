#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swc/validation.hpp"

namespace swc {

struct ExperimentConfig {
  std::vector<double> epsilons;
  double beta = 0.001;
  int instances = 100;
  std::uint64_t base_seed = 1;
  int n0 = 1;                     // design dimension in the sample-size formula
  long validation_batches = 100;  // L; validation draws L * N paths
  bool compute_violation = true;
  bool compute_bounds = true;  // SWS and SwCT on the training paths
  bool record_timing = false;  // runtime_ms is left blank otherwise
  long max_samples = 0;        // skip epsilon levels with larger N; 0 = no cap
  int jobs = 1;                // instance workers; 0 = all threads
  SwcOptions swc;
  std::function<void(const std::string&)> log;  // one line per finished instance
};

// Seeds: training paths use base_seed + instance; validation paths use
// derive_seed(training seed, kValidationStream).
inline constexpr std::uint64_t kValidationStream = 1;

struct ReferenceValues {
  double ro = 0.0;
  double rws = 0.0;
  double rt = 0.0;
};

ReferenceValues compute_references(const MultistageRobustLP& problem, const UncertaintySet& set,
                                   const ExactOptions& options = {});

struct InstanceRecord {
  double epsilon = 0.0;
  int instance = 0;
  std::uint64_t seed = 0;
  long N = 0;
  bool ok = false;
  std::string error;
  double swc_value = 0.0;
  double gap = 0.0;
  std::optional<double> violation;
  std::optional<double> sws;
  std::optional<double> swct;
  double ro_exact = 0.0;
  double runtime_ms = 0.0;
  std::vector<double> x1;
};

struct SummaryStats {
  std::string metric;
  long count = 0;
  double mean = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct EpsilonSummary {
  double epsilon = 0.0;
  long N = 0;
  std::vector<SummaryStats> metrics;
};

struct ExperimentReport {
  ReferenceValues references;
  std::vector<InstanceRecord> rows;  // epsilon-major, then instance index
  std::vector<EpsilonSummary> summaries;
  std::vector<std::string> notices;  // skipped levels, bound-chain flags, failures
  bool timing = false;
};

ExperimentReport run_experiment(const MultistageRobustLP& problem, const UncertaintySet& set,
                                const ExperimentConfig& config,
                                const std::optional<ReferenceValues>& references = std::nullopt);

// Quantiles by linear interpolation between order statistics (R type 7).
double quantile(std::vector<double> values, double q);
SummaryStats summarize(const std::string& metric, const std::vector<double>& values);
std::vector<EpsilonSummary> summarize_report(const ExperimentReport& report);

// 9 significant digits.
std::string format_number(double v);
std::string epsilon_label(double epsilon);

void write_instances_csv(const ExperimentReport& report, std::ostream& out);
void write_summary_csv(const EpsilonSummary& summary, std::ostream& out);
void write_references_csv(const ReferenceValues& refs, std::ostream& out);

// instances.csv, summary_eps_<epsilon>.csv per level, references.csv.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace swc
