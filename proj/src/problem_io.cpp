#include <cmath>
#include <fstream>
#include <functional>

#include "swc/problem_io.hpp"

namespace swc {

using nlohmann::json;

namespace {

RowSense sense_from(const std::string& s) {
  if (s == "<=" || s == "L") return RowSense::LessEqual;
  if (s == ">=" || s == "G") return RowSense::GreaterEqual;
  if (s == "=" || s == "==" || s == "E") return RowSense::Equal;
  throw InvalidArgument("problem file: unknown row sense '" + s + "'");
}

json triplets_to_json(const std::vector<Triplet>& entries) {
  json arr = json::array();
  for (const Triplet& e : entries) arr.push_back({e.row, e.col, e.value});
  return arr;
}

void triplets_from_json(const json& arr, const std::function<void(int, int, double)>& add) {
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 3) {
      throw InvalidArgument("problem file: entries must be [row, col, value]");
    }
    add(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
  }
}

json map_to_json(const AffineMap& map) {
  json j;
  j["base"] = triplets_to_json(map.base());
  json terms = json::array();
  for (const AffineTerm& t : map.terms()) {
    terms.push_back({{"component", t.component}, {"entries", triplets_to_json(t.entries)}});
  }
  j["terms"] = terms;
  return j;
}

AffineMap map_from_json(const json& j, int rows, int cols) {
  AffineMap map(rows, cols);
  if (j.is_null()) return map;
  if (j.is_array()) {  // bare triplet list: constant map
    triplets_from_json(j, [&](int r, int c, double v) { map.add_base(r, c, v); });
    return map;
  }
  if (j.contains("base")) {
    triplets_from_json(j.at("base"), [&](int r, int c, double v) { map.add_base(r, c, v); });
  }
  if (j.contains("terms")) {
    for (const json& t : j.at("terms")) {
      const int comp = t.at("component").get<int>();
      triplets_from_json(t.at("entries"),
                         [&](int r, int c, double v) { map.add_term(comp, r, c, v); });
    }
  }
  return map;
}

AffineMap dense_vector_map(const json& arr, int size, const char* what) {
  if (!arr.is_array()) throw InvalidArgument(std::string("problem file: ") + what + " must be an array");
  if (static_cast<int>(arr.size()) != size) {
    throw InvalidArgument(std::string("problem file: ") + what + " has " +
                          std::to_string(arr.size()) + " entries, expected " + std::to_string(size));
  }
  AffineMap map(size, 1);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const double v = arr[k].get<double>();
    if (v != 0.0) map.add_base(static_cast<int>(k), 0, v);
  }
  return map;
}

json dense_from_map(const AffineMap& map) {
  std::vector<double> v(static_cast<std::size_t>(map.rows()), 0.0);
  for (const Triplet& e : map.base()) v[e.row] += e.value;
  return v;
}

std::vector<RowSense> senses_from(const json& j, int rows) {
  if (j.is_null()) return std::vector<RowSense>(rows, RowSense::Equal);
  std::vector<RowSense> out;
  for (const json& s : j) out.push_back(sense_from(s.get<std::string>()));
  return out;
}

std::vector<VarSign> signs_from(const json& free, int cols) {
  std::vector<VarSign> out(cols, VarSign::NonNegative);
  if (free.is_null()) return out;
  for (const json& k : free) {
    const int idx = k.get<int>();
    if (idx < 0 || idx >= cols) throw InvalidArgument("problem file: free index out of range");
    out[idx] = VarSign::Free;
  }
  return out;
}

json senses_to_json(const std::vector<RowSense>& senses) {
  json arr = json::array();
  for (RowSense s : senses) arr.push_back(to_string(s));
  return arr;
}

json free_to_json(const std::vector<VarSign>& signs) {
  json arr = json::array();
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] == VarSign::Free) arr.push_back(k);
  }
  return arr;
}

StageSupport support_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "box") {
    return BoxSupport{j.at("nominal").get<std::vector<double>>(), j.at("rho").get<double>()};
  }
  if (type == "integer_box") {
    return IntegerBoxSupport{j.at("lower").get<std::vector<long>>(),
                             j.at("upper").get<std::vector<long>>()};
  }
  if (type == "discrete") {
    return DiscreteSupport{j.at("values").get<std::vector<std::vector<double>>>()};
  }
  throw InvalidArgument("problem file: unknown support type '" + type + "'");
}

json support_to_json(const StageSupport& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BoxSupport>) {
          return {{"type", "box"}, {"nominal", v.nominal}, {"rho", v.radius}};
        } else if constexpr (std::is_same_v<T, IntegerBoxSupport>) {
          return {{"type", "integer_box"}, {"lower", v.lower}, {"upper", v.upper}};
        } else {
          return {{"type", "discrete"}, {"values", v.values}};
        }
      },
      s);
}

}  // namespace

ProblemData problem_from_json(const json& doc) {
  try {
    ProblemData data;
    MultistageRobustLP& p = data.model;
    const json& dims = doc.at("dims");
    p.dims.n = dims.at("n").get<std::vector<int>>();
    p.dims.m = dims.at("m").get<std::vector<int>>();
    const int H = p.dims.stages();
    if (static_cast<int>(p.dims.m.size()) != H || H < 2) {
      throw InvalidArgument("problem file: dims.n and dims.m must list H >= 2 stages");
    }
    for (const json& s : doc.at("uncertainty")) data.uncertainty.supports.push_back(support_from_json(s));
    if (doc.contains("uncertainty_dims")) {
      p.uncertainty_dims = doc.at("uncertainty_dims").get<std::vector<int>>();
    } else {
      for (const StageSupport& s : data.uncertainty.supports) {
        p.uncertainty_dims.push_back(support_dimension(s));
      }
    }

    const int n1 = p.dims.n[0];
    const int m1 = p.dims.m[0];
    p.first.A = map_from_json(doc.value("A", json::array()), m1, n1);
    p.first.h = dense_vector_map(doc.value("h1", json(std::vector<double>(m1, 0.0))), m1, "h1");
    p.first.c = dense_vector_map(doc.value("c1", json(std::vector<double>(n1, 0.0))), n1, "c1");
    p.first.senses = senses_from(doc.value("senses1", json()), m1);
    p.first.signs = signs_from(doc.value("free1", json()), n1);

    const json& stages = doc.at("stages");
    if (static_cast<int>(stages.size()) != H - 1) {
      throw InvalidArgument("problem file: 'stages' must hold H-1 entries");
    }
    for (int t = 2; t <= H; ++t) {
      const json& s = stages[t - 2];
      const int nt = p.dims.n[t - 1];
      const int np = p.dims.n[t - 2];
      const int mt = p.dims.m[t - 1];
      RecourseStage st;
      st.T = map_from_json(s.value("T", json()), mt, np);
      st.W = map_from_json(s.value("W", json()), mt, nt);
      st.h = map_from_json(s.value("h", json()), mt, 1);
      st.c = map_from_json(s.value("c", json()), nt, 1);
      st.senses = senses_from(s.value("senses", json()), mt);
      st.signs = signs_from(s.value("free", json()), nt);
      p.recourse.push_back(std::move(st));
    }
    return data;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("problem file: ") + e.what());
  }
}

json problem_to_json(const ProblemData& data) {
  const MultistageRobustLP& p = data.model;
  json doc;
  doc["dims"] = {{"n", p.dims.n}, {"m", p.dims.m}};
  doc["uncertainty_dims"] = p.uncertainty_dims;
  doc["A"] = triplets_to_json(p.first.A.base());
  doc["h1"] = dense_from_map(p.first.h);
  doc["c1"] = dense_from_map(p.first.c);
  doc["senses1"] = senses_to_json(p.first.senses);
  doc["free1"] = free_to_json(p.first.signs);
  json stages = json::array();
  for (const RecourseStage& s : p.recourse) {
    stages.push_back({{"T", map_to_json(s.T)},
                      {"W", map_to_json(s.W)},
                      {"h", map_to_json(s.h)},
                      {"c", map_to_json(s.c)},
                      {"senses", senses_to_json(s.senses)},
                      {"free", free_to_json(s.signs)}});
  }
  doc["stages"] = stages;
  json unc = json::array();
  for (const StageSupport& s : data.uncertainty.supports) unc.push_back(support_to_json(s));
  doc["uncertainty"] = unc;
  return doc;
}

ProblemData read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open problem file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InvalidArgument("problem file " + path.string() + ": " + e.what());
  }
  return problem_from_json(doc);
}

void write_problem_file(const ProblemData& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write problem file " + path.string());
  out << problem_to_json(data).dump(1) << '\n';
}

}  // namespace swc
