#include <algorithm>
#include <cmath>
#include <sstream>

#include "swc/core_model.hpp"

namespace swc {

void AffineMap::add_term(int component, int row, int col, double value) {
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const AffineTerm& t) { return t.component == component; });
  if (it == terms_.end()) {
    terms_.push_back({component, {}});
    it = terms_.end() - 1;
  }
  it->entries.push_back({row, col, value});
}

int AffineMap::max_component() const {
  int mx = -1;
  for (const AffineTerm& t : terms_) mx = std::max(mx, t.component);
  return mx;
}

Matrix AffineMap::evaluate(std::span<const double> xi) const {
  Matrix out(rows_, cols_);
  for (const Triplet& e : base_) out(e.row, e.col) += e.value;
  for (const AffineTerm& t : terms_) {
    if (t.component < 0 || static_cast<std::size_t>(t.component) >= xi.size()) {
      throw ModelError("affine map references uncertainty component " +
                       std::to_string(t.component) + " beyond the revealed " +
                       std::to_string(xi.size()));
    }
    const double s = xi[t.component];
    if (s == 0.0) continue;
    for (const Triplet& e : t.entries) out(e.row, e.col) += s * e.value;
  }
  return out;
}

std::vector<double> AffineMap::evaluate_vector(std::span<const double> xi) const {
  const Matrix mtx = evaluate(xi);
  std::vector<double> v(static_cast<std::size_t>(rows_), 0.0);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) v[r] += mtx(r, c);
  }
  return v;
}

int MultistageRobustLP::revealed_components(int t) const {
  int total = 0;
  for (int s = 1; s < t && s - 1 < static_cast<int>(uncertainty_dims.size()); ++s) {
    total += uncertainty_dims[s - 1];
  }
  return total;
}

double BoxSupport::lower(std::size_t k) const {
  return nominal[k] - radius * std::abs(nominal[k]);
}

double BoxSupport::upper(std::size_t k) const {
  return nominal[k] + radius * std::abs(nominal[k]);
}

int support_dimension(const StageSupport& s) {
  return std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoxSupport>) {
          return static_cast<int>(v.nominal.size());
        } else if constexpr (std::is_same_v<T, IntegerBoxSupport>) {
          return static_cast<int>(v.lower.size());
        } else {
          return v.values.empty() ? 0 : static_cast<int>(v.values.front().size());
        }
      },
      s);
}

std::vector<std::string> UncertaintySet::check() const {
  std::vector<std::string> issues;
  for (int t = 1; t <= periods(); ++t) {
    const std::string where = "uncertainty stage " + std::to_string(t) + ": ";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, BoxSupport>) {
            if (v.nominal.empty()) issues.push_back(where + "empty box");
            if (!(v.radius >= 0.0 && v.radius <= 1.0)) {
              issues.push_back(where + "box radius outside [0,1]");
            }
          } else if constexpr (std::is_same_v<T, IntegerBoxSupport>) {
            if (v.lower.size() != v.upper.size() || v.lower.empty()) {
              issues.push_back(where + "integer box bounds differ in size or are empty");
            } else {
              for (std::size_t k = 0; k < v.lower.size(); ++k) {
                if (v.lower[k] > v.upper[k]) issues.push_back(where + "integer box lower > upper");
              }
            }
          } else {
            if (v.values.empty()) {
              issues.push_back(where + "discrete support is empty");
            } else {
              for (const auto& val : v.values) {
                if (val.size() != v.values.front().size()) {
                  issues.push_back(where + "discrete values differ in dimension");
                  break;
                }
              }
            }
          }
        },
        stage(t));
  }
  return issues;
}

std::vector<double> ScenarioPath::flatten(int upto) const {
  std::vector<double> out;
  for (int t = 0; t < upto && t < periods(); ++t) {
    out.insert(out.end(), realizations[t].begin(), realizations[t].end());
  }
  return out;
}

StageCoefficients evaluate_coefficients(const MultistageRobustLP& problem, const ScenarioPath& path,
                                        int t) {
  const int H = problem.stages();
  if (t < 2 || t > H) {
    throw InvalidArgument("evaluate_coefficients: stage " + std::to_string(t) +
                          " outside [2, " + std::to_string(H) + "]");
  }
  if (path.periods() < t - 1) {
    throw InvalidArgument("evaluate_coefficients: path has " + std::to_string(path.periods()) +
                          " periods, stage " + std::to_string(t) + " needs " +
                          std::to_string(t - 1));
  }
  const RecourseStage& st = problem.stage(t);
  const int nt = problem.dims.n[t - 1];
  const int np = problem.dims.n[t - 2];
  const int mt = problem.dims.m[t - 1];
  if (st.T.rows() != mt || st.T.cols() != np || st.W.rows() != mt || st.W.cols() != nt ||
      st.h.rows() != mt || st.c.rows() != nt) {
    throw ModelError("evaluate_coefficients: stage " + std::to_string(t) + " shape mismatch");
  }
  const std::vector<double> xi = path.flatten(t - 1);
  return StageCoefficients{st.T.evaluate(xi), st.W.evaluate(xi), st.h.evaluate_vector(xi),
                           st.c.evaluate_vector(xi)};
}

namespace {

std::vector<std::vector<double>> box_corners(const std::vector<double>& lo,
                                             const std::vector<double>& hi) {
  std::vector<std::vector<double>> out{{}};
  for (std::size_t k = 0; k < lo.size(); ++k) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out) {
      auto a = prefix;
      a.push_back(lo[k]);
      next.push_back(std::move(a));
      if (hi[k] != lo[k]) {
        auto b = prefix;
        b.push_back(hi[k]);
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> stage_vertices(const UncertaintySet& set, int t) {
  return std::visit(
      [](const auto& v) -> std::vector<std::vector<double>> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoxSupport>) {
          std::vector<double> lo(v.nominal.size()), hi(v.nominal.size());
          for (std::size_t k = 0; k < lo.size(); ++k) {
            lo[k] = v.lower(k);
            hi[k] = v.upper(k);
          }
          return box_corners(lo, hi);
        } else if constexpr (std::is_same_v<T, IntegerBoxSupport>) {
          std::vector<double> lo(v.lower.begin(), v.lower.end());
          std::vector<double> hi(v.upper.begin(), v.upper.end());
          return box_corners(lo, hi);
        } else {
          return v.values;
        }
      },
      set.stage(t));
}

std::size_t vertex_path_count(const UncertaintySet& set) {
  std::size_t count = 1;
  for (int t = 1; t <= set.periods(); ++t) count *= stage_vertices(set, t).size();
  return count;
}

std::vector<ScenarioPath> vertex_paths(const UncertaintySet& set) {
  std::vector<ScenarioPath> paths{ScenarioPath{}};
  for (int t = 1; t <= set.periods(); ++t) {
    const auto verts = stage_vertices(set, t);
    std::vector<ScenarioPath> next;
    next.reserve(paths.size() * verts.size());
    for (const ScenarioPath& p : paths) {
      for (const auto& v : verts) {
        ScenarioPath q = p;
        q.realizations.push_back(v);
        next.push_back(std::move(q));
      }
    }
    paths = std::move(next);
  }
  return paths;
}

bool contains(const UncertaintySet& set, const ScenarioPath& path, double tol) {
  if (path.periods() != set.periods()) return false;
  for (int t = 1; t <= set.periods(); ++t) {
    const auto& xi = path.realizations[t - 1];
    if (static_cast<int>(xi.size()) != support_dimension(set.stage(t))) return false;
    const bool ok = std::visit(
        [&](const auto& v) -> bool {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, BoxSupport>) {
            for (std::size_t k = 0; k < xi.size(); ++k) {
              if (xi[k] < v.lower(k) - tol || xi[k] > v.upper(k) + tol) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, IntegerBoxSupport>) {
            for (std::size_t k = 0; k < xi.size(); ++k) {
              if (xi[k] != std::round(xi[k])) return false;
              if (xi[k] < static_cast<double>(v.lower[k]) || xi[k] > static_cast<double>(v.upper[k])) {
                return false;
              }
            }
            return true;
          } else {
            return std::find(v.values.begin(), v.values.end(), xi) != v.values.end();
          }
        },
        set.stage(t));
    if (!ok) return false;
  }
  return true;
}

namespace {

void check_map(const AffineMap& map, int rows, int cols, int revealed, const std::string& what,
               std::vector<std::string>& issues) {
  if (map.rows() != rows || map.cols() != cols) {
    std::ostringstream os;
    os << what << ": expected " << rows << "x" << cols << ", got " << map.rows() << "x"
       << map.cols();
    issues.push_back(os.str());
    return;
  }
  auto check_entries = [&](const std::vector<Triplet>& entries, const std::string& part) {
    for (const Triplet& e : entries) {
      if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
        std::ostringstream os;
        os << what << ": " << part << " entry (" << e.row << "," << e.col
           << ") outside " << rows << "x" << cols;
        issues.push_back(os.str());
      }
    }
  };
  check_entries(map.base(), "base");
  for (const AffineTerm& t : map.terms()) {
    if (t.component < 0 || t.component >= revealed) {
      std::ostringstream os;
      os << what << ": depends on uncertainty component " << t.component
         << " but only components [0, " << revealed
         << ") are revealed (nonanticipativity of data)";
      issues.push_back(os.str());
    }
    check_entries(t.entries, "term " + std::to_string(t.component));
  }
}

}  // namespace

std::vector<std::string> validate(const MultistageRobustLP& p) {
  std::vector<std::string> issues;
  const int H = p.stages();
  if (H < 2) issues.push_back("dims: at least 2 stages required, got " + std::to_string(H));
  if (p.dims.m.size() != p.dims.n.size()) {
    issues.push_back("dims: n and m lists differ in length");
    return issues;
  }
  for (int t = 1; t <= H; ++t) {
    if (p.dims.n[t - 1] < 1) issues.push_back("dims: n_" + std::to_string(t) + " < 1");
    if (p.dims.m[t - 1] < 0) issues.push_back("dims: m_" + std::to_string(t) + " < 0");
  }
  if (static_cast<int>(p.uncertainty_dims.size()) != H - 1) {
    issues.push_back("uncertainty_dims: expected " + std::to_string(H - 1) + " entries, got " +
                     std::to_string(p.uncertainty_dims.size()));
  }
  if (!issues.empty() || H < 2) return issues;

  const int n1 = p.dims.n[0];
  const int m1 = p.dims.m[0];
  check_map(p.first.A, m1, n1, 0, "stage 1 A", issues);
  check_map(p.first.h, m1, 1, 0, "stage 1 h", issues);
  check_map(p.first.c, n1, 1, 0, "stage 1 c", issues);
  if (static_cast<int>(p.first.senses.size()) != m1) issues.push_back("stage 1: senses size");
  if (static_cast<int>(p.first.signs.size()) != n1) issues.push_back("stage 1: signs size");

  if (static_cast<int>(p.recourse.size()) != H - 1) {
    issues.push_back("recourse: expected " + std::to_string(H - 1) + " stages, got " +
                     std::to_string(p.recourse.size()));
    return issues;
  }
  for (int t = 2; t <= H; ++t) {
    const RecourseStage& s = p.stage(t);
    const int nt = p.dims.n[t - 1];
    const int np = p.dims.n[t - 2];
    const int mt = p.dims.m[t - 1];
    const int revealed = p.revealed_components(t);
    const std::string st = "stage " + std::to_string(t) + " ";
    check_map(s.T, mt, np, revealed, st + "T", issues);
    check_map(s.W, mt, nt, revealed, st + "W", issues);
    check_map(s.h, mt, 1, revealed, st + "h", issues);
    check_map(s.c, nt, 1, revealed, st + "c", issues);
    if (static_cast<int>(s.senses.size()) != mt) issues.push_back(st + "senses size");
    if (static_cast<int>(s.signs.size()) != nt) issues.push_back(st + "signs size");
  }
  return issues;
}

std::vector<std::string> validate(const MultistageRobustLP& problem, const UncertaintySet& set) {
  std::vector<std::string> issues = validate(problem);
  for (auto& s : set.check()) issues.push_back(std::move(s));
  if (set.periods() != problem.stages() - 1) {
    issues.push_back("uncertainty set has " + std::to_string(set.periods()) +
                     " periods, model expects " + std::to_string(problem.stages() - 1));
    return issues;
  }
  for (int t = 1; t <= set.periods(); ++t) {
    if (t - 1 < static_cast<int>(problem.uncertainty_dims.size()) &&
        support_dimension(set.stage(t)) != problem.uncertainty_dims[t - 1]) {
      issues.push_back("uncertainty stage " + std::to_string(t) + ": dimension " +
                       std::to_string(support_dimension(set.stage(t))) + ", model expects " +
                       std::to_string(problem.uncertainty_dims[t - 1]));
    }
  }
  return issues;
}

}  // namespace swc
