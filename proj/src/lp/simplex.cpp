#include <algorithm>
#include <chrono>
#include <cmath>

#include "swc/lp.hpp"

namespace swc::lp {

namespace {

enum class VarState : unsigned char { Basic, AtLower, AtUpper, FreeZero, Fixed };

enum class PhaseOutcome { Optimal, Unbounded, IterationLimit };

constexpr double kPivotTol = 1e-9;

}  // namespace

struct SimplexSolver::Workspace {
  int n = 0;  // structural columns
  int m = 0;  // rows kept after presolve
  int total = 0;

  // Structural columns restricted to kept rows (CSC).
  std::vector<int> col_start;
  std::vector<int> col_row;
  std::vector<double> col_val;

  std::vector<int> art_row;
  std::vector<double> art_sign;

  std::vector<double> lo, up, x, cost, b;
  std::vector<VarState> state;
  std::vector<int> basis;
  std::vector<double> binv;  // m x m, row-major, rows follow basis positions

  std::vector<double> y, alpha, rhs_work, dense;
  std::vector<int> row_map;  // original row -> kept row (-1 removed)

  long iterations = 0;
  long iteration_cap = 0;
  int pivots_since_refactor = 0;

  template <typename F>
  void for_column(int j, F&& f) const {
    if (j < n) {
      for (int k = col_start[j]; k < col_start[j + 1]; ++k) f(col_row[k], col_val[k]);
    } else if (j < n + m) {
      f(j - n, 1.0);
    } else {
      const int a = j - n - m;
      f(art_row[a], art_sign[a]);
    }
  }

  bool refactor() {
    const auto mm = static_cast<std::size_t>(m);
    dense.assign(mm * mm, 0.0);
    binv.assign(mm * mm, 0.0);
    for (int p = 0; p < m; ++p) {
      for_column(basis[p], [&](int r, double v) { dense[static_cast<std::size_t>(r) * mm + p] = v; });
      binv[static_cast<std::size_t>(p) * mm + p] = 1.0;
    }
    // Gauss-Jordan with partial pivoting on [B | I]; row operations leave B^{-1}.
    for (std::size_t k = 0; k < mm; ++k) {
      std::size_t piv = k;
      double best = std::abs(dense[k * mm + k]);
      for (std::size_t i = k + 1; i < mm; ++i) {
        const double v = std::abs(dense[i * mm + k]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (best < 1e-13) return false;
      if (piv != k) {
        std::swap_ranges(dense.begin() + piv * mm, dense.begin() + (piv + 1) * mm,
                         dense.begin() + k * mm);
        std::swap_ranges(binv.begin() + piv * mm, binv.begin() + (piv + 1) * mm,
                         binv.begin() + k * mm);
      }
      const double inv = 1.0 / dense[k * mm + k];
      for (std::size_t c = 0; c < mm; ++c) {
        dense[k * mm + c] *= inv;
        binv[k * mm + c] *= inv;
      }
      for (std::size_t i = 0; i < mm; ++i) {
        if (i == k) continue;
        const double f = dense[i * mm + k];
        if (f == 0.0) continue;
        double* di = &dense[i * mm];
        double* bi = &binv[i * mm];
        const double* dk = &dense[k * mm];
        const double* bk = &binv[k * mm];
        for (std::size_t c = 0; c < mm; ++c) {
          di[c] -= f * dk[c];
          bi[c] -= f * bk[c];
        }
      }
    }
    pivots_since_refactor = 0;
    recompute_basic_values();
    return true;
  }

  // Short pivot runs keep the updated inverse; only the basic values are recomputed.
  bool refresh() {
    if (pivots_since_refactor < 16) {
      recompute_basic_values();
      return true;
    }
    return refactor();
  }

  void recompute_basic_values() {
    const auto mm = static_cast<std::size_t>(m);
    rhs_work.assign(b.begin(), b.end());
    for (int j = 0; j < total; ++j) {
      if (state[j] == VarState::Basic || x[j] == 0.0) continue;
      const double xj = x[j];
      for_column(j, [&](int r, double v) { rhs_work[r] -= v * xj; });
    }
    for (std::size_t p = 0; p < mm; ++p) {
      double s = 0.0;
      const double* row = &binv[p * mm];
      for (std::size_t r = 0; r < mm; ++r) s += row[r] * rhs_work[r];
      x[basis[p]] = s;
    }
  }

  PhaseOutcome run_phase(const SimplexOptions& opt) {
    const auto mm = static_cast<std::size_t>(m);
    bool bland = opt.pricing == PricingRule::Bland;
    int degenerate_run = 0;
    y.resize(mm);
    alpha.resize(mm);
    while (true) {
      if (iterations >= iteration_cap) return PhaseOutcome::IterationLimit;
      if (pivots_since_refactor >= opt.refactor_interval) {
        if (!refactor()) throw SolverError("simplex: singular basis during refactorization");
      }
      // y^T = c_B^T B^{-1}
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t p = 0; p < mm; ++p) {
        const double cb = cost[basis[p]];
        if (cb == 0.0) continue;
        const double* row = &binv[p * mm];
        for (std::size_t r = 0; r < mm; ++r) y[r] += cb * row[r];
      }

      int entering = -1;
      double best = 0.0;
      double dir = 0.0;
      for (int j = 0; j < total; ++j) {
        const VarState s = state[j];
        if (s == VarState::Basic || s == VarState::Fixed) continue;
        double d = cost[j];
        for_column(j, [&](int r, double v) { d -= y[r] * v; });
        double jdir = 0.0;
        if (s == VarState::AtLower) {
          if (d < -opt.optimality_tol) jdir = 1.0;
        } else if (s == VarState::AtUpper) {
          if (d > opt.optimality_tol) jdir = -1.0;
        } else if (std::abs(d) > opt.optimality_tol) {
          jdir = d < 0.0 ? 1.0 : -1.0;
        }
        if (jdir == 0.0) continue;
        if (bland) {
          entering = j;
          dir = jdir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          dir = jdir;
        }
      }
      if (entering < 0) return PhaseOutcome::Optimal;

      // alpha = B^{-1} a_q
      std::fill(alpha.begin(), alpha.end(), 0.0);
      for_column(entering, [&](int r, double v) {
        for (std::size_t p = 0; p < mm; ++p) alpha[p] += binv[p * mm + r] * v;
      });

      // Ratio test. Basic p moves by -dir * theta * alpha[p].
      double theta = kInf;
      for (std::size_t p = 0; p < mm; ++p) {
        const double delta = -dir * alpha[p];
        const int bv = basis[p];
        double limit = kInf;
        if (delta < -kPivotTol && std::isfinite(lo[bv])) {
          limit = (x[bv] - lo[bv]) / -delta;
        } else if (delta > kPivotTol && std::isfinite(up[bv])) {
          limit = (up[bv] - x[bv]) / delta;
        }
        if (limit < 0.0) limit = 0.0;
        theta = std::min(theta, limit);
      }
      const double own_range = up[entering] - lo[entering];
      int leave = -1;
      if (std::isfinite(theta)) {
        const double window = theta + 1e-12 * (1.0 + theta);
        double best_pivot = 0.0;
        int best_index = total;
        for (std::size_t p = 0; p < mm; ++p) {
          const double delta = -dir * alpha[p];
          const int bv = basis[p];
          double limit = kInf;
          if (delta < -kPivotTol && std::isfinite(lo[bv])) {
            limit = (x[bv] - lo[bv]) / -delta;
          } else if (delta > kPivotTol && std::isfinite(up[bv])) {
            limit = (up[bv] - x[bv]) / delta;
          }
          if (limit < 0.0) limit = 0.0;
          if (limit > window) continue;
          if (bland) {
            if (bv < best_index) {
              best_index = bv;
              leave = static_cast<int>(p);
            }
          } else if (std::abs(alpha[p]) > best_pivot) {
            best_pivot = std::abs(alpha[p]);
            leave = static_cast<int>(p);
          }
        }
      }
      const bool flip = std::isfinite(own_range) && own_range <= theta;
      if (!flip && leave < 0) return PhaseOutcome::Unbounded;

      const double step = flip ? own_range : theta;
      ++iterations;
      if (step <= opt.feasibility_tol) {
        if (++degenerate_run > opt.stall_limit) bland = true;
      } else {
        degenerate_run = 0;
      }

      x[entering] += dir * step;
      for (std::size_t p = 0; p < mm; ++p) x[basis[p]] -= dir * step * alpha[p];

      if (flip) {
        state[entering] = dir > 0.0 ? VarState::AtUpper : VarState::AtLower;
        x[entering] = dir > 0.0 ? up[entering] : lo[entering];
        continue;
      }

      const auto r = static_cast<std::size_t>(leave);
      const int leaving = basis[r];
      const double delta = -dir * alpha[r];
      if (lo[leaving] == up[leaving]) {
        x[leaving] = lo[leaving];
        state[leaving] = VarState::Fixed;
      } else if (delta < 0.0) {
        x[leaving] = lo[leaving];
        state[leaving] = VarState::AtLower;
      } else {
        x[leaving] = up[leaving];
        state[leaving] = VarState::AtUpper;
      }
      basis[r] = entering;
      state[entering] = VarState::Basic;

      // Product-form update of the explicit inverse.
      const double piv = alpha[r];
      double* br = &binv[r * mm];
      for (std::size_t c = 0; c < mm; ++c) br[c] /= piv;
      for (std::size_t p = 0; p < mm; ++p) {
        if (p == r || alpha[p] == 0.0) continue;
        const double f = alpha[p];
        double* bp = &binv[p * mm];
        for (std::size_t c = 0; c < mm; ++c) bp[c] -= f * br[c];
      }
      ++pivots_since_refactor;
    }
  }
};

SolveResult SimplexSolver::solve(const LpInstance& lp) {
  const auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](SolveResult res) {
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  };

  if (!work_) work_ = std::make_shared<Workspace>();
  Workspace& w = *work_;
  const SimplexOptions& opt = options_;
  const double ftol = opt.feasibility_tol;

  const int n = lp.num_vars();
  w.n = n;
  w.lo.assign(n, 0.0);
  w.up.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    w.lo[j] = lp.lower(j);
    w.up[j] = lp.upper(j);
  }

  SolveResult result;
  result.primal.assign(n, 0.0);

  // Presolve: drop empty rows, turn singleton rows into bounds.
  w.row_map.assign(lp.num_rows(), -1);
  int kept = 0;
  for (int i = 0; i < lp.num_rows(); ++i) {
    const RowView r = lp.row(i);
    if (r.cols.empty()) {
      const bool ok = (r.sense == RowSense::LessEqual && r.rhs >= -ftol) ||
                      (r.sense == RowSense::GreaterEqual && r.rhs <= ftol) ||
                      (r.sense == RowSense::Equal && std::abs(r.rhs) <= ftol);
      if (!ok) return finish(result);
      continue;
    }
    if (r.cols.size() == 1) {
      const int j = r.cols[0];
      const double a = r.values[0];
      const double bound = r.rhs / a;
      RowSense sense = r.sense;
      if (a < 0.0 && sense != RowSense::Equal) {
        sense = sense == RowSense::LessEqual ? RowSense::GreaterEqual : RowSense::LessEqual;
      }
      if (sense != RowSense::GreaterEqual) w.up[j] = std::min(w.up[j], bound);
      if (sense != RowSense::LessEqual) w.lo[j] = std::max(w.lo[j], bound);
      continue;
    }
    w.row_map[i] = kept++;
  }
  for (int j = 0; j < n; ++j) {
    if (w.lo[j] > w.up[j]) {
      if (w.lo[j] - w.up[j] > ftol * (1.0 + std::abs(w.lo[j]))) return finish(result);
      const double mid = 0.5 * (w.lo[j] + w.up[j]);
      w.lo[j] = w.up[j] = mid;
    }
  }

  const int m = kept;
  if (m > opt.max_rows && !opt.force) {
    throw SizeLimitError("builtin simplex: " + std::to_string(m) +
                         " rows exceed the dense-basis limit of " +
                         std::to_string(opt.max_rows) + "; use an external solver or force");
  }
  w.m = m;

  // Column-major copy of kept rows.
  w.col_start.assign(n + 1, 0);
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (w.row_map[i] < 0) continue;
    for (int j : lp.row(i).cols) ++w.col_start[j + 1];
  }
  for (int j = 0; j < n; ++j) w.col_start[j + 1] += w.col_start[j];
  w.col_row.assign(w.col_start[n], 0);
  w.col_val.assign(w.col_start[n], 0.0);
  {
    std::vector<int> fill(w.col_start.begin(), w.col_start.end() - 1);
    for (int i = 0; i < lp.num_rows(); ++i) {
      const int ki = w.row_map[i];
      if (ki < 0) continue;
      const RowView r = lp.row(i);
      for (std::size_t k = 0; k < r.cols.size(); ++k) {
        const int pos = fill[r.cols[k]]++;
        w.col_row[pos] = ki;
        w.col_val[pos] = r.values[k];
      }
    }
  }

  w.b.assign(m, 0.0);
  std::vector<RowSense> senses(m);
  for (int i = 0; i < lp.num_rows(); ++i) {
    const int ki = w.row_map[i];
    if (ki < 0) continue;
    w.b[ki] = lp.row(i).rhs;
    senses[ki] = lp.row(i).sense;
  }

  // Slack bounds: a x + s = b.
  w.lo.resize(n + m);
  w.up.resize(n + m);
  for (int i = 0; i < m; ++i) {
    switch (senses[i]) {
      case RowSense::LessEqual:
        w.lo[n + i] = 0.0;
        w.up[n + i] = kInf;
        break;
      case RowSense::GreaterEqual:
        w.lo[n + i] = -kInf;
        w.up[n + i] = 0.0;
        break;
      case RowSense::Equal:
        w.lo[n + i] = 0.0;
        w.up[n + i] = 0.0;
        break;
    }
  }

  // Initial nonbasic point.
  w.x.assign(n + m, 0.0);
  w.state.assign(n + m, VarState::AtLower);
  for (int j = 0; j < n + m; ++j) {
    if (w.lo[j] == w.up[j]) {
      w.state[j] = VarState::Fixed;
      w.x[j] = w.lo[j];
    } else if (std::isfinite(w.lo[j])) {
      w.state[j] = VarState::AtLower;
      w.x[j] = w.lo[j];
    } else if (std::isfinite(w.up[j])) {
      w.state[j] = VarState::AtUpper;
      w.x[j] = w.up[j];
    } else {
      w.state[j] = VarState::FreeZero;
      w.x[j] = 0.0;
    }
  }
  std::vector<double> residual(w.b);
  for (int j = 0; j < n; ++j) {
    if (w.x[j] == 0.0) continue;
    for (int k = w.col_start[j]; k < w.col_start[j + 1]; ++k) {
      residual[w.col_row[k]] -= w.col_val[k] * w.x[j];
    }
  }

  // Slack basic where it can absorb the residual, otherwise an artificial.
  w.art_row.clear();
  w.art_sign.clear();
  w.basis.assign(m, -1);
  std::vector<std::pair<int, double>> artificial_values;
  for (int i = 0; i < m; ++i) {
    const int s = n + i;
    const double r = residual[i];
    if (r >= w.lo[s] - ftol && r <= w.up[s] + ftol) {
      w.basis[i] = s;
      w.state[s] = VarState::Basic;
      w.x[s] = r;
    } else {
      w.x[s] = 0.0;  // every slack range contains zero
      w.state[s] = w.lo[s] == w.up[s] ? VarState::Fixed
                   : w.lo[s] == 0.0   ? VarState::AtLower
                                      : VarState::AtUpper;
      w.art_row.push_back(i);
      w.art_sign.push_back(r > 0.0 ? 1.0 : -1.0);
      artificial_values.emplace_back(i, std::abs(r));
    }
  }
  const int na = static_cast<int>(w.art_row.size());
  w.total = n + m + na;
  w.lo.resize(w.total, 0.0);
  w.up.resize(w.total, kInf);
  w.x.resize(w.total, 0.0);
  w.state.resize(w.total, VarState::Basic);
  for (int a = 0; a < na; ++a) {
    const int j = n + m + a;
    w.lo[j] = 0.0;
    w.up[j] = kInf;
    w.x[j] = artificial_values[a].second;
    w.basis[artificial_values[a].first] = j;
    w.state[j] = VarState::Basic;
  }

  const auto mm = static_cast<std::size_t>(m);
  w.binv.assign(mm * mm, 0.0);
  for (int p = 0; p < m; ++p) {
    const int j = w.basis[p];
    w.binv[static_cast<std::size_t>(p) * mm + p] = j >= n + m ? w.art_sign[j - n - m] : 1.0;
  }
  w.pivots_since_refactor = 0;
  w.iterations = 0;
  w.iteration_cap = opt.max_iterations > 0 ? opt.max_iterations : 50L * (m + n);

  if (na > 0) {
    w.cost.assign(w.total, 0.0);
    for (int a = 0; a < na; ++a) w.cost[n + m + a] = 1.0;
    const PhaseOutcome phase1 = w.run_phase(opt);
    if (phase1 == PhaseOutcome::IterationLimit) {
      result.status = SolveStatus::IterationLimit;
      result.iterations = w.iterations;
      return finish(result);
    }
    if (!w.refresh()) throw SolverError("simplex: singular basis after phase 1");
    double infeas = 0.0;
    double scale = 1.0;
    for (int a = 0; a < na; ++a) infeas += std::max(0.0, w.x[n + m + a]);
    for (double v : w.b) scale = std::max(scale, std::abs(v));
    if (infeas > 1e-8 * scale) {
      result.status = SolveStatus::Infeasible;
      result.iterations = w.iterations;
      return finish(result);
    }
    for (int a = 0; a < na; ++a) {
      const int j = n + m + a;
      w.up[j] = 0.0;
      if (w.state[j] != VarState::Basic) {
        w.state[j] = VarState::Fixed;
        w.x[j] = 0.0;
      }
    }
  }

  w.cost.assign(w.total, 0.0);
  for (int j = 0; j < n; ++j) w.cost[j] = lp.cost(j);
  const PhaseOutcome phase2 = w.run_phase(opt);
  if (!w.refresh()) throw SolverError("simplex: singular final basis");

  for (int j = 0; j < n; ++j) result.primal[j] = w.x[j];
  result.iterations = w.iterations;
  result.objective = lp.objective_value(result.primal);
  switch (phase2) {
    case PhaseOutcome::Optimal:
      result.status = SolveStatus::Optimal;
      break;
    case PhaseOutcome::Unbounded:
      result.status = SolveStatus::Unbounded;
      break;
    case PhaseOutcome::IterationLimit:
      result.status = SolveStatus::IterationLimit;
      break;
  }
  return finish(result);
}

SolveResult solve_builtin(const LpInstance& lp, const SimplexOptions& options) {
  SimplexSolver solver(options);
  return solver.solve(lp);
}

}  // namespace swc::lp
