#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "swc/common.hpp"

namespace swc {

// Stage t = 1..H. Vectors are indexed by t - 1.
struct StageDims {
  std::vector<int> n;  // decision dimension per stage
  std::vector<int> m;  // constraint rows per stage

  int stages() const { return static_cast<int>(n.size()); }
};

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// Small dense row-major matrix used for evaluated stage blocks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0.0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
  std::span<const double> row(int r) const {
    return std::span<const double>(data_).subspan(std::size_t(r) * cols_, cols_);
  }
  const std::vector<double>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct AffineTerm {
  int component = 0;  // index into the flattened uncertainty vector
  std::vector<Triplet> entries;
};

// base + sum_k xi[component_k] * term_k, all with the same shape. Vectors are
// stored as rows x 1 maps.
class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(int rows, int cols) : rows_(rows), cols_(cols) {}

  void add_base(int row, int col, double value) { base_.push_back({row, col, value}); }
  void add_term(int component, int row, int col, double value);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Triplet>& base() const { return base_; }
  const std::vector<AffineTerm>& terms() const { return terms_; }
  bool constant() const { return terms_.empty(); }
  int max_component() const;  // -1 when constant

  // xi must cover every referenced component; throws ModelError otherwise.
  Matrix evaluate(std::span<const double> xi) const;
  std::vector<double> evaluate_vector(std::span<const double> xi) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Triplet> base_;
  std::vector<AffineTerm> terms_;
};

enum class VarSign { NonNegative, Free };

struct FirstStage {
  AffineMap A;  // m_1 x n_1, constant
  AffineMap h;  // m_1 x 1, constant
  AffineMap c;  // n_1 x 1, constant
  std::vector<RowSense> senses;
  std::vector<VarSign> signs;
};

// Data of stage t >= 2: T x^{t-1} + W x^t (sense) h, stage cost c^T x^t.
struct RecourseStage {
  AffineMap T;  // m_t x n_{t-1}
  AffineMap W;  // m_t x n_t
  AffineMap h;  // m_t x 1
  AffineMap c;  // n_t x 1
  std::vector<RowSense> senses;
  std::vector<VarSign> signs;
};

// Multistage robust LP with coefficients affine in the uncertainty. Treated as
// immutable once built; every algorithm takes it by const reference.
struct MultistageRobustLP {
  StageDims dims;
  std::vector<int> uncertainty_dims;  // d_1..d_{H-1}: components of xi^t
  FirstStage first;
  std::vector<RecourseStage> recourse;  // recourse[t - 2] holds stage t

  int stages() const { return dims.stages(); }
  const RecourseStage& stage(int t) const { return recourse.at(t - 2); }
  // Number of flattened uncertainty components revealed before stage t.
  int revealed_components(int t) const;
};

struct BoxSupport {
  std::vector<double> nominal;
  double radius = 0.0;  // relative: |xi - nominal| <= radius * |nominal|

  double lower(std::size_t k) const;
  double upper(std::size_t k) const;
};

struct IntegerBoxSupport {
  std::vector<long> lower;
  std::vector<long> upper;
};

struct DiscreteSupport {
  std::vector<std::vector<double>> values;
};

using StageSupport = std::variant<BoxSupport, IntegerBoxSupport, DiscreteSupport>;

int support_dimension(const StageSupport& s);

// Supports of xi^1..xi^{H-1}; stage(t) for t = 1..H-1.
struct UncertaintySet {
  std::vector<StageSupport> supports;

  int periods() const { return static_cast<int>(supports.size()); }
  const StageSupport& stage(int t) const { return supports.at(t - 1); }
  std::vector<std::string> check() const;
};

// Realizations xi^1..xi^{H-1}.
struct ScenarioPath {
  std::vector<std::vector<double>> realizations;

  int periods() const { return static_cast<int>(realizations.size()); }
  // xi^1..xi^{upto} concatenated.
  std::vector<double> flatten(int upto) const;
  bool operator==(const ScenarioPath&) const = default;
};

struct StageCoefficients {
  Matrix T;
  Matrix W;
  std::vector<double> h;
  std::vector<double> c;
};

// Coefficients of stage t (2 <= t <= H) under the given path.
StageCoefficients evaluate_coefficients(const MultistageRobustLP& problem, const ScenarioPath& path,
                                        int t);

// Vertex set of the stage-t support (t = 1..H-1).
std::vector<std::vector<double>> stage_vertices(const UncertaintySet& set, int t);

// Cartesian product of stage vertex sets, stage 1 varying slowest.
std::vector<ScenarioPath> vertex_paths(const UncertaintySet& set);
std::size_t vertex_path_count(const UncertaintySet& set);

bool contains(const UncertaintySet& set, const ScenarioPath& path, double tol = 1e-12);

// Every shape or nonanticipativity violation, empty when the model is well formed.
std::vector<std::string> validate(const MultistageRobustLP& problem);
// Model and uncertainty set together (dimensions must agree).
std::vector<std::string> validate(const MultistageRobustLP& problem, const UncertaintySet& set);

}  // namespace swc
