#include <algorithm>
#include <cmath>
#include <map>

#include "swc/solve.hpp"

namespace swc {

namespace {

struct Component {
  int fixed_depth = 0;    // tree stages 1..fixed_depth are in the master
  std::vector<int> paths; // ascending
  double violation = 0.0;
  int worst = -1;
};

SwcSolution from_result(const TreeLp& t, const lp::SolveResult& r) {
  SwcSolution s;
  s.status = r.status;
  s.iterations = r.iterations;
  s.lp_rows = t.lp.num_rows();
  s.lp_cols = t.lp.num_vars();
  s.rounds = 1;
  if (r.optimal()) {
    s.value = r.primal[t.map.gamma];
    s.x1.assign(r.primal.begin() + t.map.first.begin,
                r.primal.begin() + t.map.first.begin + t.map.first.size);
  }
  return s;
}

SwcSolution solve_direct(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree,
                         const SwcOptions& options) {
  const TreeLp t = build_tree_lp(problem, tree);
  SwcSolution s = from_result(t, lp::solve(t.lp, options.solver));
  s.master_paths = tree.path_count();
  return s;
}

std::vector<ScenarioPath> select_paths(const ScenarioPrefixTree& tree, const std::vector<int>& idx) {
  std::vector<ScenarioPath> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(tree.path(i));
  return out;
}

}  // namespace

long swc_row_count(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree) {
  long rows = problem.dims.m[0];
  for (int t = 2; t <= problem.stages(); ++t) {
    rows += static_cast<long>(tree.node_count(t - 1)) * problem.dims.m[t - 1];
  }
  return rows + tree.node_count(tree.periods());
}

SwcSolution solve_swc(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree,
                      const SwcOptions& options) {
  const auto issues = validate(problem);
  if (!issues.empty()) throw ModelError("solve_swc: invalid model: " + issues.front());
  if (tree.path_count() == 0) throw InvalidArgument("solve_swc: empty scenario tree");

  SwcStrategy strategy = options.strategy;
  if (strategy == SwcStrategy::Auto) {
    strategy = options.solver.external || swc_row_count(problem, tree) <= options.direct_row_limit
                   ? SwcStrategy::Direct
                   : SwcStrategy::ScenarioGeneration;
  }
  if (strategy == SwcStrategy::Direct) return solve_direct(problem, tree, options);

  const int periods = tree.periods();
  const int N = tree.path_count();
  const int per_round = std::max(1, options.paths_per_round);

  std::vector<int> master{0};
  std::vector<char> in_master(N, 0);
  in_master[0] = 1;
  long iterations = 0;

  for (int round = 1;; ++round) {
    const ScenarioPrefixTree sub = build_prefix_tree(select_paths(tree, master),
                                                     tree.shares_prefixes());
    TreeLpOptions mopt;
    mopt.names = false;
    const TreeLp mlp = build_tree_lp(problem, sub, mopt);
    const lp::SolveResult res = lp::solve(mlp.lp, options.solver);
    iterations += res.iterations;
    if (res.status == lp::SolveStatus::Unbounded) {
      // A relaxation may be unbounded while the full problem is not.
      SwcSolution s = solve_direct(problem, tree, options);
      s.iterations += iterations;
      return s;
    }
    SwcSolution sol = from_result(mlp, res);
    sol.iterations = iterations;
    sol.rounds = round;
    sol.master_paths = static_cast<int>(master.size());
    if (!res.optimal()) return sol;

    const double gamma = sol.value;
    // in_master_node[t-1][full node] -> master node id, -1 when absent.
    std::vector<std::vector<int>> master_node(periods);
    for (int t = 1; t <= periods; ++t) master_node[t - 1].assign(tree.node_count(t), -1);
    for (std::size_t s = 0; s < master.size(); ++s) {
      for (int t = 1; t <= periods; ++t) {
        master_node[t - 1][tree.node_of(master[s], t)] = sub.node_of(static_cast<int>(s), t);
      }
    }

    std::map<std::pair<int, int>, Component> groups;
    for (int i = 0; i < N; ++i) {
      if (in_master[i]) continue;
      int depth = 0;
      while (depth < periods && master_node[depth][tree.node_of(i, depth + 1)] >= 0) ++depth;
      if (depth == periods) continue;  // duplicate of a master path
      Component& c = groups[{depth + 1, tree.node_of(i, depth + 1)}];
      c.fixed_depth = depth;
      c.paths.push_back(i);
    }
    std::vector<Component> comps;
    comps.reserve(groups.size());
    for (auto& [key, c] : groups) comps.push_back(std::move(c));

    for_each_item(
        static_cast<long>(comps.size()), options.execution, options.solver.simplex,
        [&](long ci, lp::SimplexSolver& solver) {
          Component& c = comps[ci];
          TreeLpOptions copt;
          copt.names = false;
          copt.fixed.push_back(sol.x1);
          const int rep = c.paths.front();
          for (int t = 1; t <= c.fixed_depth; ++t) {
            const IndexRange r = mlp.map.blocks[t - 1][master_node[t - 1][tree.node_of(rep, t)]];
            copt.fixed.emplace_back(res.primal.begin() + r.begin,
                                    res.primal.begin() + r.begin + r.size);
          }
          const ScenarioPrefixTree ctree =
              build_prefix_tree(select_paths(tree, c.paths), tree.shares_prefixes());
          const TreeLp clp = build_tree_lp(problem, ctree, copt);
          const lp::SolveResult cr = solver.solve(clp.lp);
          if (cr.status == lp::SolveStatus::Infeasible) {
            c.violation = kInf;
            c.worst = rep;
          } else if (cr.status == lp::SolveStatus::Unbounded) {
            c.violation = -kInf;
          } else if (cr.optimal()) {
            double worst = -kInf;
            for (std::size_t k = 0; k < c.paths.size(); ++k) {
              const double v = clp.path_costs[k].evaluate(cr.primal);
              if (v > worst) {
                worst = v;
                c.worst = c.paths[k];
              }
            }
            c.violation = cr.primal[clp.map.gamma] - gamma;
          } else {
            throw SolverError("scenario generation: subproblem hit the iteration limit");
          }
        });

    const double tol = options.generation_tol * std::max(1.0, std::abs(gamma));
    std::vector<const Component*> violated;
    for (const auto& c : comps) {
      if (c.violation > tol) violated.push_back(&c);
    }
    if (violated.empty()) {
      sol.lp_rows = mlp.lp.num_rows();
      sol.lp_cols = mlp.lp.num_vars();
      return sol;
    }
    std::stable_sort(violated.begin(), violated.end(), [](const Component* a, const Component* b) {
      return a->violation > b->violation;
    });
    const std::size_t take = std::min<std::size_t>(violated.size(), per_round);
    for (std::size_t k = 0; k < take; ++k) {
      in_master[violated[k]->worst] = 1;
      master.push_back(violated[k]->worst);
    }
    std::sort(master.begin(), master.end());
  }
}

}  // namespace swc
