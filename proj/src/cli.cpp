#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "swc/cli.hpp"
#include "swc/inventory.hpp"

namespace swc {

using nlohmann::json;

RunConfig run_config_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("config: expected a JSON object");
  static const char* known[] = {"problem", "benchmark", "stages",   "variant",     "epsilons",
                                "beta",    "n0",        "instances", "seed",       "jobs",
                                "solver",  "solver_cmd", "out",      "batches",    "max_samples",
                                "timing",  "bounds"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
        std::end(known)) {
      throw InvalidArgument("config: unknown field '" + key + "'");
    }
  }
  RunConfig c;
  try {
    c.problem_file = doc.value("problem", c.problem_file);
    c.benchmark = doc.value("benchmark", c.benchmark);
    c.stages = doc.value("stages", c.stages);
    c.variant = doc.value("variant", c.variant);
    c.epsilons = doc.value("epsilons", c.epsilons);
    c.beta = doc.value("beta", c.beta);
    c.n0 = doc.value("n0", c.n0);
    c.instances = doc.value("instances", c.instances);
    c.seed = doc.value("seed", c.seed);
    c.jobs = doc.value("jobs", c.jobs);
    c.solver = doc.value("solver", c.solver);
    c.solver_cmd = doc.value("solver_cmd", c.solver_cmd);
    c.out = doc.value("out", c.out);
    c.batches = doc.value("batches", c.batches);
    c.max_samples = doc.value("max_samples", c.max_samples);
    c.timing = doc.value("timing", c.timing);
    c.bounds = doc.value("bounds", c.bounds);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return c;
}

json run_config_to_json(const RunConfig& c) {
  return json{{"problem", c.problem_file}, {"benchmark", c.benchmark}, {"stages", c.stages},
              {"variant", c.variant},      {"epsilons", c.epsilons},   {"beta", c.beta},
              {"n0", c.n0},                {"instances", c.instances}, {"seed", c.seed},
              {"jobs", c.jobs},            {"solver", c.solver},       {"solver_cmd", c.solver_cmd},
              {"out", c.out},              {"batches", c.batches},     {"max_samples", c.max_samples},
              {"timing", c.timing},        {"bounds", c.bounds}};
}

namespace {

// Scalars on stdout carry 10 significant digits so values quoted to six
// decimals at magnitude 1e3 print in full.
std::string scalar(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Records flag values next to the fields they override.
class Flags {
 public:
  void bind(CLI::Option* opt, std::function<void(RunConfig&)> apply) {
    bindings_.push_back({opt, std::move(apply)});
  }

  RunConfig resolve(const std::string& config_file) const {
    RunConfig c;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw InvalidArgument("cannot open config file " + config_file);
      json doc;
      try {
        in >> doc;
      } catch (const json::exception& e) {
        throw InvalidArgument("config file " + config_file + ": " + e.what());
      }
      c = run_config_from_json(doc);
    }
    for (const auto& b : bindings_) {
      if (b.opt->count() > 0) b.apply(c);
    }
    return c;
  }

 private:
  struct Binding {
    CLI::Option* opt;
    std::function<void(RunConfig&)> apply;
  };
  std::vector<Binding> bindings_;
};

struct Loaded {
  ProblemData data;
  int n0 = 1;
  std::string source;
};

Loaded load_problem(const RunConfig& c) {
  Loaded l;
  if (!c.problem_file.empty()) {
    l.data = read_problem_file(c.problem_file);
    l.n0 = l.data.model.dims.n.at(0);
    l.source = c.problem_file;
  } else if (c.benchmark == "inventory") {
    l.data = inventory_problem(c.stages, parse_inventory_variant(c.variant));
    l.n0 = kInventoryN0;
    l.source = "inventory stages=" + std::to_string(c.stages) + " variant=" + c.variant;
  } else {
    throw InvalidArgument("unknown benchmark '" + c.benchmark + "'");
  }
  if (c.n0 > 0) l.n0 = c.n0;
  auto issues = validate(l.data.model, l.data.uncertainty);
  if (!issues.empty()) {
    std::string msg = "invalid model:";
    for (const auto& s : issues) msg += "\n  " + s;
    throw ModelError(msg);
  }
  return l;
}

SwcOptions swc_options(const RunConfig& c) {
  SwcOptions o;
  if (c.solver == "external") {
    std::string cmd = c.solver_cmd;
    if (cmd.empty()) cmd = lp::external_solver_from_env().value_or("");
    if (cmd.empty()) {
      throw InvalidArgument("external solver selected but neither --solver-cmd nor SWC_EXTERNAL_SOLVER is set");
    }
    o.solver.external = lp::ExternalSolverConfig{cmd, {}, false};
  } else if (c.solver != "builtin") {
    throw InvalidArgument("unknown solver '" + c.solver + "' (expected builtin or external)");
  }
  return o;
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

void add_source(CLI::App* sub, RunConfig& f, Flags& flags) {
  flags.bind(sub->add_option("--problem", f.problem_file, "problem file (JSON)"),
             [&](RunConfig& c) { c.problem_file = f.problem_file; });
  flags.bind(sub->add_option("--benchmark", f.benchmark, "builtin benchmark (inventory)"),
             [&](RunConfig& c) { c.benchmark = f.benchmark; });
  flags.bind(sub->add_option("--stages", f.stages, "benchmark stages H (2..5)"),
             [&](RunConfig& c) { c.stages = f.stages; });
  flags.bind(sub->add_option("--variant", f.variant, "continuous | integer"),
             [&](RunConfig& c) { c.variant = f.variant; });
}

void add_solver(CLI::App* sub, RunConfig& f, Flags& flags) {
  flags.bind(sub->add_option("--solver", f.solver, "builtin | external"),
             [&](RunConfig& c) { c.solver = f.solver; });
  flags.bind(sub->add_option("--solver-cmd", f.solver_cmd,
                             "external solver command; {lp} and {sol} are replaced by file paths"),
             [&](RunConfig& c) {
               c.solver_cmd = f.solver_cmd;
               c.solver = "external";
             });
  flags.bind(sub->add_option("--jobs", f.jobs, "worker threads (0 = all)"),
             [&](RunConfig& c) { c.jobs = f.jobs; });
}

void set_threads(const RunConfig& c) {
  if (c.jobs > 0) omp_set_num_threads(c.jobs);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scenario-with-certificates solver for multistage robust LPs"};
  app.name("swc");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all subcommand help");

  RunConfig f;
  Flags flags;
  std::string config_file;
  double eps = 0.0;
  long samples = 0;
  std::string mode = "all";
  bool nominal_tail_flag = false;
  std::string solution_file;
  long per_batch = 0;
  bool paper_scale = false;
  bool no_bounds = false;
  bool full_grid = false;

  // complexity
  CLI::App* complexity = app.add_subcommand("complexity", "sample size for accuracy eps and confidence 1-beta");
  double c_beta = 0.001;
  int c_n0 = 1;
  complexity->add_option("--eps", eps, "accuracy level in (0,1)")->required();
  complexity->add_option("--beta", c_beta, "confidence parameter in (0,1)")->capture_default_str();
  complexity->add_option("--n0", c_n0, "number of first-stage decision variables")->required();

  // exact
  CLI::App* exact = app.add_subcommand("exact", "vertex-tree reference values");
  exact->add_option("--config", config_file, "JSON run configuration");
  add_source(exact, f, flags);
  add_solver(exact, f, flags);
  exact->add_option("--mode", mode, "ro | rws | rt | all")->capture_default_str();
  exact->add_flag("--nominal-tail", nominal_tail_flag, "rt: Xi^1 vertices with the nominal tail");

  // solve-swc
  CLI::App* solve = app.add_subcommand("solve-swc", "one sampled SwC solve");
  solve->add_option("--config", config_file, "JSON run configuration");
  add_source(solve, f, flags);
  add_solver(solve, f, flags);
  auto* eps_opt = solve->add_option("--eps", eps, "accuracy level; N from the sample-size formula");
  auto* samples_opt = solve->add_option("--samples", samples, "explicit sample count N");
  eps_opt->excludes(samples_opt);
  flags.bind(solve->add_option("--beta", f.beta, "confidence parameter"), [&](RunConfig& c) { c.beta = f.beta; });
  flags.bind(solve->add_option("--n0", f.n0, "design dimension for the sample size"),
             [&](RunConfig& c) { c.n0 = f.n0; });
  flags.bind(solve->add_option("--seed", f.seed, "sampling seed"), [&](RunConfig& c) { c.seed = f.seed; });
  flags.bind(solve->add_option("--out", f.out, "solution file (JSON)"), [&](RunConfig& c) { c.out = f.out; });

  // validate
  CLI::App* val = app.add_subcommand("validate", "empirical violation of a stored solution");
  val->add_option("--config", config_file, "JSON run configuration");
  add_source(val, f, flags);
  add_solver(val, f, flags);
  val->add_option("--solution", solution_file, "solution file written by solve-swc")->required();
  flags.bind(val->add_option("--batches", f.batches, "number of validation batches L"),
             [&](RunConfig& c) { c.batches = f.batches; });
  val->add_option("--per-batch", per_batch, "paths per batch (default: the solution's N)");
  auto* vseed_opt = val->add_option("--seed", f.seed, "validation seed (default: derived from the solution seed)");
  flags.bind(vseed_opt, [&](RunConfig& c) { c.seed = f.seed; });

  // experiment and benchmark-inventory share their options
  auto add_experiment = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON run configuration");
    add_source(sub, f, flags);
    add_solver(sub, f, flags);
    flags.bind(sub->add_option("--eps", f.epsilons, "accuracy levels")->expected(1, -1),
               [&](RunConfig& c) { c.epsilons = f.epsilons; });
    flags.bind(sub->add_option("--beta", f.beta, "confidence parameter"), [&](RunConfig& c) { c.beta = f.beta; });
    flags.bind(sub->add_option("--n0", f.n0, "design dimension for the sample size"),
               [&](RunConfig& c) { c.n0 = f.n0; });
    flags.bind(sub->add_option("--instances", f.instances, "instances per accuracy level"),
               [&](RunConfig& c) { c.instances = f.instances; });
    flags.bind(sub->add_option("--seed", f.seed, "base seed; instance i uses seed + i"),
               [&](RunConfig& c) { c.seed = f.seed; });
    flags.bind(sub->add_option("--batches", f.batches, "validation batches L"),
               [&](RunConfig& c) { c.batches = f.batches; });
    sub->add_flag("--paper-scale", paper_scale, "validation with L = 1000");
    flags.bind(sub->add_option("--max-samples", f.max_samples, "skip levels with larger N (0 = no cap)"),
               [&](RunConfig& c) { c.max_samples = f.max_samples; });
    flags.bind(sub->add_flag("--timing", f.timing, "fill the runtime_ms column"),
               [&](RunConfig& c) { c.timing = f.timing; });
    sub->add_flag("--no-bounds", no_bounds, "skip SWS and SwCT");
    flags.bind(sub->add_option("--out", f.out, "output directory"), [&](RunConfig& c) { c.out = f.out; });
  };
  CLI::App* experiment = app.add_subcommand("experiment", "multi-instance experiment, writes CSVs");
  add_experiment(experiment);
  CLI::App* bench = app.add_subcommand("benchmark-inventory", "inventory benchmark grid, writes CSVs");
  add_experiment(bench);
  bench->add_flag("--full-grid", full_grid, "keep levels beyond the builtin sample cap");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      err << app.help() << '\n';
      print_error(err, "usage", e.what());
      return 2;
    }

    if (complexity->parsed()) {
      out << "sample_complexity " << sample_complexity(eps, c_beta, c_n0) << '\n';
      out << "min_samples_exact " << min_samples_exact(eps, c_beta, c_n0 + 1) << '\n';
      return 0;
    }

    RunConfig c = flags.resolve(config_file);
    if (no_bounds) c.bounds = false;
    if (paper_scale) c.batches = 1000;
    set_threads(c);

    if (exact->parsed()) {
      const Loaded l = load_problem(c);
      ExactOptions eo;
      eo.swc = swc_options(c);
      if (nominal_tail_flag) eo.rt_tail = nominal_tail(l.data.uncertainty);
      const auto& m = l.data.model;
      const auto& s = l.data.uncertainty;
      if (mode == "all") {
        const double ro = exact_value(m, s, ExactMode::RO, eo).value;
        const double rws = exact_value(m, s, ExactMode::RWS, eo).value;
        const double rt = exact_value(m, s, ExactMode::RT, eo).value;
        out << "ro " << scalar(ro) << '\n'
            << "rws " << scalar(rws) << '\n'
            << "rt " << scalar(rt) << '\n'
            << "rvpi " << scalar(ro - rws) << '\n'
            << "gap_rws_ro " << scalar(optimality_gap(rws, ro)) << '\n';
      } else {
        const ExactMode em = parse_exact_mode(mode);
        out << to_string(em) << ' ' << scalar(exact_value(m, s, em, eo).value) << '\n';
      }
      return 0;
    }

    if (solve->parsed()) {
      const Loaded l = load_problem(c);
      long N = samples;
      if (eps_opt->count() > 0) N = sample_complexity(eps, c.beta, l.n0);
      if (N < 1) throw InvalidArgument("solve-swc needs --eps or --samples >= 1");
      const auto paths = draw_paths(l.data.uncertainty, N, c.seed);
      const SwcSolution sol = solve_swc(l.data.model, build_prefix_tree(paths), swc_options(c));
      if (!sol.optimal()) throw SolverError("SwC problem " + lp::to_string(sol.status));
      out << "value " << scalar(sol.value) << '\n';
      out << "N " << N << '\n';
      out << "x1";
      for (double v : sol.x1) out << ' ' << scalar(v);
      out << '\n';
      if (!c.out.empty()) {
        json doc{{"source", l.source}, {"N", N},           {"seed", c.seed},
                 {"status", "optimal"}, {"value", sol.value}, {"gamma", sol.value},
                 {"x1", sol.x1}};
        if (eps_opt->count() > 0) doc["epsilon"] = eps;
        std::ofstream f(c.out);
        if (!f) throw Error("cannot write " + c.out);
        f << doc.dump(2) << '\n';
      }
      return 0;
    }

    if (val->parsed()) {
      const Loaded l = load_problem(c);
      std::ifstream in(solution_file);
      if (!in) throw InvalidArgument("cannot open solution file " + solution_file);
      json doc;
      std::vector<double> x1;
      double gamma = 0.0;
      long n = 0;
      std::uint64_t seed = 0;
      try {
        in >> doc;
        x1 = doc.at("x1").get<std::vector<double>>();
        gamma = doc.at("gamma").get<double>();
        n = doc.value("N", 0L);
        seed = doc.value("seed", std::uint64_t{0});
      } catch (const json::exception& e) {
        throw InvalidArgument("solution file " + solution_file + ": " + e.what());
      }
      if (per_batch > 0) n = per_batch;
      if (n < 1) throw InvalidArgument("validate: --per-batch required when the solution has no N");
      const std::uint64_t vseed = vseed_opt->count() > 0 ? c.seed : derive_seed(seed, kValidationStream);
      ViolationOptions vo;
      const double v = empirical_violation(l.data.model, l.data.uncertainty, x1, gamma, c.batches, n, vseed, vo);
      out << "violation " << scalar(v) << '\n';
      out << "paths " << c.batches * n << '\n';
      return 0;
    }

    if (experiment->parsed() || bench->parsed()) {
      if (c.out.empty()) throw InvalidArgument("--out is required");
      const bool is_bench = bench->parsed();
      if (is_bench) {
        c.problem_file.clear();
        c.benchmark = "inventory";
      }
      const Loaded l = load_problem(c);
      ExperimentConfig ec;
      ec.epsilons = c.epsilons;
      if (ec.epsilons.empty()) {
        if (!is_bench) throw InvalidArgument("experiment needs --eps");
        ec.epsilons = paper_epsilons();
      }
      ec.beta = c.beta;
      ec.instances = c.instances;
      ec.base_seed = c.seed;
      ec.n0 = l.n0;
      ec.validation_batches = c.batches;
      ec.compute_bounds = c.bounds;
      ec.record_timing = c.timing;
      ec.max_samples = c.max_samples;
      ec.jobs = c.jobs;
      ec.swc = swc_options(c);
      if (is_bench && !full_grid && !ec.swc.solver.external && c.max_samples == 0) {
        ec.max_samples = sample_complexity(0.01, 0.001, kInventoryN0);
      }
      ec.log = [&err](const std::string& line) { err << line << '\n'; };
      ExperimentReport report = run_experiment(l.data.model, l.data.uncertainty, ec);
      write_report(report, c.out);
      for (const auto& n : report.notices) err << "notice: " << n << '\n';
      out << "references ro=" << scalar(report.references.ro) << " rws=" << scalar(report.references.rws)
          << " rt=" << scalar(report.references.rt) << '\n';
      for (const auto& s : report.summaries) {
        for (const auto& m : s.metrics) {
          if (m.metric == "gap") {
            out << "eps " << epsilon_label(s.epsilon) << " N " << s.N << " mean_gap " << scalar(m.mean)
                << '\n';
          }
        }
      }
      out << "wrote " << c.out << '\n';
      return 0;
    }
  } catch (const SolverError& e) {
    print_error(err, "solver", e.what());
    return 3;
  } catch (const InvalidArgument& e) {
    print_error(err, "usage", e.what());
    return 2;
  } catch (const ModelError& e) {
    print_error(err, "model", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace swc
