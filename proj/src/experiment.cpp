#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>

#include "swc/experiment.hpp"

namespace swc {

ReferenceValues compute_references(const MultistageRobustLP& problem, const UncertaintySet& set,
                                   const ExactOptions& options) {
  ReferenceValues r;
  r.ro = exact_value(problem, set, ExactMode::RO, options).value;
  r.rws = exact_value(problem, set, ExactMode::RWS, options).value;
  r.rt = exact_value(problem, set, ExactMode::RT, options).value;
  return r;
}

namespace {

InstanceRecord run_instance(const MultistageRobustLP& problem, const UncertaintySet& set,
                            const ExperimentConfig& config, const ReferenceValues& refs,
                            double epsilon, long N, int index, Execution exec) {
  InstanceRecord rec;
  rec.epsilon = epsilon;
  rec.instance = index;
  rec.seed = config.base_seed + static_cast<std::uint64_t>(index);
  rec.N = N;
  rec.ro_exact = refs.ro;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    SwcOptions swc = config.swc;
    swc.execution = exec;
    const std::vector<ScenarioPath> paths = draw_paths(set, N, rec.seed);
    const SwcSolution sol = solve_swc(problem, build_prefix_tree(paths, true), swc);
    if (!sol.optimal()) throw SolverError("SwC problem " + lp::to_string(sol.status));
    rec.swc_value = sol.value;
    rec.x1 = sol.x1;
    rec.gap = optimality_gap(sol.value, refs.ro);
    if (config.compute_violation) {
      ViolationOptions vo;
      vo.execution = exec;
      vo.simplex = swc.solver.simplex;
      rec.violation = empirical_violation(problem, set, sol.x1, sol.value, config.validation_batches,
                                          N, derive_seed(rec.seed, kValidationStream), vo);
    }
    if (config.compute_bounds) {
      rec.sws = sws_value(problem, paths, exec, swc.solver.simplex).value;
      const SwcSolution t = swct_value(problem, paths, std::nullopt, swc);
      if (!t.optimal()) throw SolverError("SwCT problem " + lp::to_string(t.status));
      rec.swct = t.value;
    }
    rec.ok = true;
  } catch (const Error& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

ExperimentReport run_experiment(const MultistageRobustLP& problem, const UncertaintySet& set,
                                const ExperimentConfig& config,
                                const std::optional<ReferenceValues>& references) {
  if (config.instances < 1) throw InvalidArgument("run_experiment: instances must be >= 1");
  if (config.epsilons.empty()) throw InvalidArgument("run_experiment: no epsilon levels");
  const auto issues = validate(problem, set);
  if (!issues.empty()) throw ModelError("run_experiment: " + issues.front());

  ExperimentReport report;
  report.timing = config.record_timing;
  if (references) {
    report.references = *references;
  } else {
    ExactOptions eo;
    eo.swc = config.swc;
    report.references = compute_references(problem, set, eo);
  }
  const ReferenceValues& refs = report.references;
  const int jobs = config.jobs > 0 ? config.jobs : omp_get_max_threads();

  for (double eps : config.epsilons) {
    const long N = sample_complexity(eps, config.beta, config.n0);
    if (config.max_samples > 0 && N > config.max_samples) {
      report.notices.push_back("epsilon " + format_number(eps) + " skipped: N=" + std::to_string(N) +
                               " exceeds the sample cap " + std::to_string(config.max_samples));
      continue;
    }
    std::vector<InstanceRecord> recs(config.instances);
    if (jobs <= 1) {
      for (int i = 0; i < config.instances; ++i) {
        recs[i] = run_instance(problem, set, config, refs, eps, N, i, Execution::Parallel);
        if (config.log) {
          config.log("eps=" + format_number(eps) + " N=" + std::to_string(N) + " instance=" +
                     std::to_string(i) + (recs[i].ok ? " swc=" + format_number(recs[i].swc_value)
                                                     : " failed: " + recs[i].error));
        }
      }
    } else {
#pragma omp parallel for num_threads(jobs) schedule(dynamic, 1)
      for (int i = 0; i < config.instances; ++i) {
        recs[i] = run_instance(problem, set, config, refs, eps, N, i, Execution::Serial);
        if (config.log) {
#pragma omp critical(swc_experiment_log)
          config.log("eps=" + format_number(eps) + " N=" + std::to_string(N) + " instance=" +
                     std::to_string(i) + (recs[i].ok ? " swc=" + format_number(recs[i].swc_value)
                                                     : " failed: " + recs[i].error));
        }
      }
    }
    for (auto& r : recs) {
      const std::string tag = "epsilon " + format_number(eps) + " instance " + std::to_string(r.instance);
      if (!r.ok) {
        report.notices.push_back(tag + " failed: " + r.error);
      } else {
        const double tol = 1e-6 * std::max(1.0, std::abs(refs.ro));
        if (r.swc_value > refs.ro + tol) report.notices.push_back(tag + ": SwC above exact RO");
        if (r.sws && r.swct && *r.sws > *r.swct + tol) report.notices.push_back(tag + ": SWS above SwCT");
        if (r.swct && *r.swct > r.swc_value + tol) report.notices.push_back(tag + ": SwCT above SwC");
      }
      report.rows.push_back(std::move(r));
    }
  }
  report.summaries = summarize_report(report);
  return report;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SummaryStats summarize(const std::string& metric, const std::vector<double>& values) {
  SummaryStats s;
  s.metric = metric;
  s.count = static_cast<long>(values.size());
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q3 = quantile(values, 0.75);
  return s;
}

std::vector<EpsilonSummary> summarize_report(const ExperimentReport& report) {
  std::vector<EpsilonSummary> out;
  for (std::size_t k = 0; k < report.rows.size();) {
    const double eps = report.rows[k].epsilon;
    std::size_t e = k;
    while (e < report.rows.size() && report.rows[e].epsilon == eps) ++e;
    EpsilonSummary s;
    s.epsilon = eps;
    s.N = report.rows[k].N;
    std::vector<double> value, gap, viol, sws, swct, ms;
    for (std::size_t i = k; i < e; ++i) {
      const InstanceRecord& r = report.rows[i];
      if (!r.ok) continue;
      value.push_back(r.swc_value);
      gap.push_back(r.gap);
      if (r.violation) viol.push_back(*r.violation);
      if (r.sws) sws.push_back(*r.sws);
      if (r.swct) swct.push_back(*r.swct);
      ms.push_back(r.runtime_ms);
    }
    s.metrics.push_back(summarize("swc_value", value));
    s.metrics.push_back(summarize("gap", gap));
    if (!viol.empty()) s.metrics.push_back(summarize("violation", viol));
    if (!sws.empty()) s.metrics.push_back(summarize("sws", sws));
    if (!swct.empty()) s.metrics.push_back(summarize("swct", swct));
    if (report.timing) s.metrics.push_back(summarize("runtime_ms", ms));
    out.push_back(std::move(s));
    k = e;
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string epsilon_label(double epsilon) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", epsilon);
  return buf;
}

void write_instances_csv(const ExperimentReport& report, std::ostream& out) {
  out << "seed,N,swc_value,gap,violation,sws,swct,ro_exact,runtime_ms\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const InstanceRecord& r : report.rows) {
    out << r.seed << ',' << r.N << ',';
    if (r.ok) {
      out << format_number(r.swc_value) << ',' << format_number(r.gap) << ',' << opt(r.violation)
          << ',' << opt(r.sws) << ',' << opt(r.swct);
    } else {
      out << ",,,,";
    }
    out << ',' << format_number(r.ro_exact) << ',';
    if (report.timing) out << format_number(r.runtime_ms);
    out << '\n';
  }
}

void write_summary_csv(const EpsilonSummary& summary, std::ostream& out) {
  out << "metric,count,mean,min,q1,median,q3,max\n";
  for (const SummaryStats& s : summary.metrics) {
    out << s.metric << ',' << s.count;
    for (double v : {s.mean, s.min, s.q1, s.median, s.q3, s.max}) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_references_csv(const ReferenceValues& refs, std::ostream& out) {
  out << "quantity,value\n";
  out << "ro," << format_number(refs.ro) << '\n';
  out << "rws," << format_number(refs.rws) << '\n';
  out << "rt," << format_number(refs.rt) << '\n';
  out << "rvpi," << format_number(refs.ro - refs.rws) << '\n';
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(dir / name);
    if (!f) throw Error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("instances.csv");
    write_instances_csv(report, f);
  }
  for (const EpsilonSummary& s : report.summaries) {
    auto f = open("summary_eps_" + epsilon_label(s.epsilon) + ".csv");
    write_summary_csv(s, f);
  }
  {
    auto f = open("references.csv");
    write_references_csv(report.references, f);
  }
}

}  // namespace swc
