#include <algorithm>
#include <cmath>

#include "swc/bounds.hpp"

namespace swc {

SwsResult sws_value(const MultistageRobustLP& problem, std::span<const ScenarioPath> paths,
                    Execution exec, const lp::SimplexOptions& options) {
  if (paths.empty()) throw InvalidArgument("sws_value: empty path list");
  const std::vector<double> v = path_values(problem, paths, exec, options);
  SwsResult out;
  out.value = -kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == kInf) throw SolverError("sws_value: path " + std::to_string(i) + " is infeasible");
    if (v[i] > out.value) {
      out.value = v[i];
      out.worst_path = static_cast<int>(i);
    }
  }
  return out;
}

DeterministicTail nominal_tail(const UncertaintySet& set) {
  DeterministicTail tail;
  for (int t = 2; t <= set.periods(); ++t) {
    tail.push_back(std::visit(
        [](const auto& s) -> std::vector<double> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, BoxSupport>) {
            return s.nominal;
          } else if constexpr (std::is_same_v<T, IntegerBoxSupport>) {
            std::vector<double> mid(s.lower.size());
            for (std::size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * double(s.lower[k] + s.upper[k]);
            return mid;
          } else {
            std::vector<double> mean(s.values.front().size(), 0.0);
            for (const auto& v : s.values) {
              for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += v[k];
            }
            for (double& x : mean) x /= static_cast<double>(s.values.size());
            return mean;
          }
        },
        set.stage(t)));
  }
  return tail;
}

std::vector<ScenarioPath> with_tail(std::span<const ScenarioPath> paths, const DeterministicTail& tail) {
  std::vector<ScenarioPath> out;
  out.reserve(paths.size());
  for (const ScenarioPath& p : paths) {
    if (p.periods() != static_cast<int>(tail.size()) + 1) {
      throw InvalidArgument("tail covers " + std::to_string(tail.size()) + " stages, path has " +
                            std::to_string(p.periods()) + " periods");
    }
    ScenarioPath q;
    q.realizations.push_back(p.realizations.front());
    q.realizations.insert(q.realizations.end(), tail.begin(), tail.end());
    out.push_back(std::move(q));
  }
  return out;
}

SwcSolution swct_value(const MultistageRobustLP& problem, std::span<const ScenarioPath> paths,
                       const std::optional<DeterministicTail>& tail, const SwcOptions& options) {
  if (paths.empty()) throw InvalidArgument("swct_value: empty path list");
  std::vector<ScenarioPath> use =
      tail ? with_tail(paths, *tail) : std::vector<ScenarioPath>(paths.begin(), paths.end());
  const ScenarioPrefixTree tree = build_prefix_tree(std::move(use), false);
  return solve_swc(problem, tree, options);
}

std::string to_string(ExactMode mode) {
  switch (mode) {
    case ExactMode::RO:
      return "ro";
    case ExactMode::RWS:
      return "rws";
    case ExactMode::RT:
      return "rt";
  }
  return "?";
}

ExactMode parse_exact_mode(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "ro") return ExactMode::RO;
  if (t == "rws") return ExactMode::RWS;
  if (t == "rt") return ExactMode::RT;
  throw InvalidArgument("unknown mode '" + text + "' (expected ro, rws or rt)");
}

ExactResult exact_value(const MultistageRobustLP& problem, const UncertaintySet& set, ExactMode mode,
                        const ExactOptions& options) {
  const auto issues = validate(problem, set);
  if (!issues.empty()) throw ModelError("exact_value: " + issues.front());
  ExactResult out;
  std::vector<ScenarioPath> paths;
  if (mode == ExactMode::RT && options.rt_tail) {
    for (const auto& v : stage_vertices(set, 1)) {
      ScenarioPath p;
      p.realizations.push_back(v);
      p.realizations.insert(p.realizations.end(), options.rt_tail->begin(), options.rt_tail->end());
      paths.push_back(std::move(p));
    }
  } else {
    const std::size_t count = vertex_path_count(set);
    if (count > options.leaf_cap) {
      throw InvalidArgument("exact_value: vertex tree has " + std::to_string(count) +
                            " leaves, cap is " + std::to_string(options.leaf_cap));
    }
    paths = vertex_paths(set);
  }
  out.leaves = paths.size();

  SwcSolution s;
  switch (mode) {
    case ExactMode::RWS: {
      const SwsResult r = sws_value(problem, paths, options.swc.execution, options.swc.solver.simplex);
      out.value = r.value;
      out.worst_path = r.worst_path;
      return out;
    }
    case ExactMode::RO:
      s = solve_swc(problem, build_prefix_tree(std::move(paths), true), options.swc);
      break;
    case ExactMode::RT:
      s = solve_swc(problem, build_prefix_tree(std::move(paths), false), options.swc);
      break;
  }
  if (!s.optimal()) {
    throw SolverError("exact_value(" + to_string(mode) + "): " + lp::to_string(s.status));
  }
  out.value = s.value;
  out.x1 = s.x1;
  return out;
}

}  // namespace swc
