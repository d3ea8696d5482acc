#include "swc/builders.hpp"

namespace swc {

namespace {

double lower_bound(VarSign s) { return s == VarSign::Free ? -kInf : 0.0; }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void check_tree(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree) {
  const int H = problem.stages();
  if (tree.path_count() == 0) throw InvalidArgument("empty scenario tree");
  if (tree.periods() != H - 1) {
    throw InvalidArgument("scenario tree has " + std::to_string(tree.periods()) +
                          " stages, model needs " + std::to_string(H - 1));
  }
  for (int t = 1; t <= tree.periods(); ++t) {
    const int want = problem.uncertainty_dims.at(t - 1);
    for (int k = 0; k < tree.node_count(t); ++k) {
      const int got = static_cast<int>(tree.realization(t, k).size());
      if (got != want) {
        throw InvalidArgument("scenario realization at stage " + std::to_string(t) + " has " +
                              std::to_string(got) + " components, expected " +
                              std::to_string(want));
      }
    }
  }
}

}  // namespace

double PathCost::evaluate(std::span<const double> x) const {
  double s = constant;
  for (std::size_t k = 0; k < cols.size(); ++k) s += coefs[k] * x[cols[k]];
  return s;
}

TreeLp build_tree_lp(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree,
                     const TreeLpOptions& options) {
  check_tree(problem, tree);
  const int H = problem.stages();
  const auto& n = problem.dims.n;
  const auto& m = problem.dims.m;
  const int s = static_cast<int>(options.fixed.size());
  if (s >= H) throw InvalidArgument("build_tree_lp: every stage is fixed");
  for (int t = 1; t <= s; ++t) {
    if (static_cast<int>(options.fixed[t - 1].size()) != n[t - 1]) {
      throw InvalidArgument("build_tree_lp: fixed x" + std::to_string(t) + " has " +
                            std::to_string(options.fixed[t - 1].size()) + " entries, expected " +
                            std::to_string(n[t - 1]));
    }
  }
  if (!options.epigraph && tree.node_count(H - 1) != 1) {
    throw InvalidArgument("build_tree_lp: objective form needs a single leaf");
  }
  const bool names = options.names;

  TreeLp out;
  lp::LpInstance& lp = out.lp;
  VariableIndexMap& map = out.map;

  if (options.epigraph) map.gamma = lp.add_variable(-kInf, kInf, 1.0, names ? "gamma" : "");

  const std::vector<double> c1 = problem.first.c.evaluate_vector({});
  if (s == 0) {
    map.first.begin = lp.num_vars();
    map.first.size = n[0];
    for (int j = 0; j < n[0]; ++j) {
      lp.add_variable(lower_bound(problem.first.signs[j]), kInf, 0.0,
                      names ? "x1_" + std::to_string(j) : "");
    }
  }

  // Certificate blocks, stage by stage.
  const int t0 = std::max(2, s + 1);
  map.blocks.assign(H - 1, {});
  for (int t = t0; t <= H; ++t) {
    const RecourseStage& st = problem.stage(t);
    auto& blocks = map.blocks[t - 2];
    blocks.resize(tree.node_count(t - 1));
    for (int k = 0; k < tree.node_count(t - 1); ++k) {
      blocks[k] = {lp.num_vars(), n[t - 1]};
      for (int j = 0; j < n[t - 1]; ++j) {
        lp.add_variable(lower_bound(st.signs[j]), kInf, 0.0,
                        names ? "x" + std::to_string(t) + "_" + std::to_string(k) + "_" +
                                    std::to_string(j)
                              : "");
      }
    }
  }
  map.total = lp.num_vars();

  std::vector<int> cols;
  std::vector<double> vals;

  if (s == 0) {
    const Matrix A = problem.first.A.evaluate({});
    const std::vector<double> h1 = problem.first.h.evaluate_vector({});
    for (int r = 0; r < m[0]; ++r) {
      cols.clear();
      vals.clear();
      for (int j = 0; j < n[0]; ++j) {
        if (A(r, j) != 0.0) {
          cols.push_back(map.first.begin + j);
          vals.push_back(A(r, j));
        }
      }
      lp.add_row(cols, vals, problem.first.senses[r], h1[r],
                 names ? "first_" + std::to_string(r) : "");
    }
  }

  // stage_costs[t-2][node]: c^t under the node's history.
  std::vector<std::vector<std::vector<double>>> stage_costs(H - 1);
  for (int t = t0; t <= H; ++t) {
    const RecourseStage& st = problem.stage(t);
    stage_costs[t - 2].resize(tree.node_count(t - 1));
    for (int k = 0; k < tree.node_count(t - 1); ++k) {
      const ScenarioPath& rep = tree.path(tree.representative(t - 1, k));
      const StageCoefficients C = evaluate_coefficients(problem, rep, t);
      const bool prev_fixed = t - 1 <= s;
      int prev_begin = -1;
      if (!prev_fixed) {
        prev_begin = t == 2 ? map.first.begin : map.blocks[t - 3][tree.parent(t - 1, k)].begin;
      }
      const int own = map.blocks[t - 2][k].begin;
      for (int r = 0; r < m[t - 1]; ++r) {
        cols.clear();
        vals.clear();
        double rhs = C.h[r];
        for (int j = 0; j < n[t - 2]; ++j) {
          const double a = C.T(r, j);
          if (a == 0.0) continue;
          if (prev_fixed) {
            rhs -= a * options.fixed[t - 2][j];
          } else {
            cols.push_back(prev_begin + j);
            vals.push_back(a);
          }
        }
        for (int j = 0; j < n[t - 1]; ++j) {
          if (C.W(r, j) != 0.0) {
            cols.push_back(own + j);
            vals.push_back(C.W(r, j));
          }
        }
        lp.add_row(cols, vals, st.senses[r], rhs,
                   names ? "dyn" + std::to_string(t) + "_" + std::to_string(k) + "_" +
                               std::to_string(r)
                         : "");
      }
      stage_costs[t - 2][k] = C.c;
    }
  }

  // Path costs.
  out.path_costs.resize(tree.path_count());
  for (int i = 0; i < tree.path_count(); ++i) {
    PathCost& pc = out.path_costs[i];
    if (s == 0) {
      for (int j = 0; j < n[0]; ++j) {
        if (c1[j] != 0.0) {
          pc.cols.push_back(map.first.begin + j);
          pc.coefs.push_back(c1[j]);
        }
      }
    } else {
      pc.constant += dot(c1, options.fixed[0]);
      for (int t = 2; t <= s; ++t) {
        const auto ct = problem.stage(t).c.evaluate_vector(tree.path(i).flatten(t - 1));
        pc.constant += dot(ct, options.fixed[t - 1]);
      }
    }
    for (int t = t0; t <= H; ++t) {
      const int k = tree.node_of(i, t - 1);
      const auto& ct = stage_costs[t - 2][k];
      const int begin = map.blocks[t - 2][k].begin;
      for (int j = 0; j < n[t - 1]; ++j) {
        if (ct[j] != 0.0) {
          pc.cols.push_back(begin + j);
          pc.coefs.push_back(ct[j]);
        }
      }
    }
  }

  if (options.epigraph) {
    for (int leaf = 0; leaf < tree.node_count(H - 1); ++leaf) {
      const PathCost& pc = out.path_costs[tree.representative(H - 1, leaf)];
      cols = pc.cols;
      vals = pc.coefs;
      cols.push_back(map.gamma);
      vals.push_back(-1.0);
      lp.add_row(cols, vals, RowSense::LessEqual, -pc.constant,
                 names ? "epi_" + std::to_string(leaf) : "");
    }
  } else {
    const PathCost& pc = out.path_costs.front();
    for (std::size_t k = 0; k < pc.cols.size(); ++k) {
      lp.set_cost(pc.cols[k], lp.cost(pc.cols[k]) + pc.coefs[k]);
    }
    out.objective_offset = pc.constant;
  }
  return out;
}

TreeLp build_swc(const MultistageRobustLP& problem, const ScenarioPrefixTree& tree) {
  const auto issues = validate(problem);
  if (!issues.empty()) throw ModelError("build_swc: invalid model: " + issues.front());
  return build_tree_lp(problem, tree);
}

TreeLp build_path_lp(const MultistageRobustLP& problem, const ScenarioPath& path,
                     std::span<const double> fixed_x1, bool names) {
  const ScenarioPrefixTree tree = build_prefix_tree({path});
  TreeLpOptions opt;
  opt.epigraph = false;
  opt.names = names;
  if (!fixed_x1.empty()) opt.fixed.emplace_back(fixed_x1.begin(), fixed_x1.end());
  return build_tree_lp(problem, tree, opt);
}

}  // namespace swc
