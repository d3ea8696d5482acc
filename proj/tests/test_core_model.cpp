#include <gtest/gtest.h>

#include <random>

#include "swc/core_model.hpp"
#include "swc/inventory.hpp"
#include "swc/problem_io.hpp"
#include "test_support.hpp"

namespace swc {
namespace {

TEST(AffineMap, EvaluatesBasePlusTerms) {
  AffineMap m(2, 2);
  m.add_base(0, 0, 1.0);
  m.add_base(1, 1, 2.0);
  m.add_term(0, 0, 1, 3.0);
  m.add_term(1, 1, 1, -1.0);
  m.add_term(0, 1, 0, 0.5);
  EXPECT_EQ(m.max_component(), 1);
  EXPECT_EQ(m.terms().size(), 2u);
  const std::vector<double> xi{2.0, 4.0};
  const Matrix v = m.evaluate(xi);
  EXPECT_DOUBLE_EQ(v(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(v(0, 1), 6.0);
  EXPECT_DOUBLE_EQ(v(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(v(1, 1), -2.0);
}

TEST(AffineMap, MissingComponentIsModelError) {
  AffineMap m(1, 1);
  m.add_term(2, 0, 0, 1.0);
  const std::vector<double> xi{1.0};
  EXPECT_THROW(m.evaluate(xi), ModelError);
}

TEST(AffineMap, ConstantWithoutTerms) {
  AffineMap m(3, 1);
  m.add_base(2, 0, 7.0);
  EXPECT_TRUE(m.constant());
  EXPECT_EQ(m.max_component(), -1);
  EXPECT_EQ(m.evaluate_vector({}), (std::vector<double>{0.0, 0.0, 7.0}));
}

UncertaintySet fig1_like() {
  UncertaintySet set;
  set.supports.push_back(BoxSupport{{10.0, 20.0}, 0.5});
  set.supports.push_back(IntegerBoxSupport{{1}, {3}});
  set.supports.push_back(DiscreteSupport{{{1.0}, {2.0}, {3.0}}});
  return set;
}

TEST(Uncertainty, StageVertices) {
  const UncertaintySet set = fig1_like();
  const auto v1 = stage_vertices(set, 1);
  ASSERT_EQ(v1.size(), 4u);
  EXPECT_EQ(v1[0], (std::vector<double>{5.0, 10.0}));
  EXPECT_EQ(v1[3], (std::vector<double>{15.0, 30.0}));
  EXPECT_EQ(stage_vertices(set, 2), (std::vector<std::vector<double>>{{1.0}, {3.0}}));
  EXPECT_EQ(stage_vertices(set, 3).size(), 3u);
  EXPECT_EQ(vertex_path_count(set), 24u);
}

TEST(Uncertainty, VertexPathsStageOneSlowest) {
  const UncertaintySet set = fig1_like();
  const auto paths = vertex_paths(set);
  ASSERT_EQ(paths.size(), 24u);
  EXPECT_EQ(paths[0].realizations[0], paths[5].realizations[0]);
  EXPECT_NE(paths[0].realizations[0], paths[6].realizations[0]);
  EXPECT_EQ(paths[0].realizations[2], (std::vector<double>{1.0}));
  EXPECT_EQ(paths[1].realizations[2], (std::vector<double>{2.0}));
  for (const auto& p : paths) EXPECT_TRUE(contains(set, p));
}

TEST(Uncertainty, Contains) {
  const UncertaintySet set = fig1_like();
  ScenarioPath p{{{10.0, 20.0}, {2.0}, {3.0}}};
  EXPECT_TRUE(contains(set, p));
  p.realizations[1] = {2.5};
  EXPECT_FALSE(contains(set, p));  // not a lattice point
  p.realizations[1] = {2.0};
  p.realizations[2] = {2.5};
  EXPECT_FALSE(contains(set, p));
  p.realizations[2] = {3.0};
  p.realizations[0] = {16.0, 20.0};
  EXPECT_FALSE(contains(set, p));
  EXPECT_FALSE(contains(set, ScenarioPath{{{10.0, 20.0}}}));
}

TEST(ScenarioPath, FlattenConcatenatesPrefix) {
  const ScenarioPath p{{{1.0, 2.0}, {3.0}, {4.0}}};
  EXPECT_EQ(p.flatten(2), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_TRUE(p.flatten(0).empty());
}

TEST(Validate, InventoryModelIsClean) {
  for (int H = 2; H <= 5; ++H) {
    const ProblemData d = inventory_problem(H, InventoryVariant::Continuous);
    EXPECT_TRUE(validate(d.model, d.uncertainty).empty()) << H;
  }
}

TEST(Validate, ReportsNonanticipativeData) {
  ProblemData d = inventory_problem(3, InventoryVariant::Continuous);
  // Stage 2 may only see xi^1 (component 0).
  d.model.recourse[0].h.add_term(1, 0, 0, 1.0);
  const auto issues = validate(d.model);
  ASSERT_FALSE(issues.empty());
  EXPECT_NE(issues[0].find("nonanticipativity"), std::string::npos);
}

TEST(Validate, ReportsShapeAndSetMismatch) {
  ProblemData d = inventory_problem(3, InventoryVariant::Continuous);
  MultistageRobustLP bad = d.model;
  bad.recourse[1].W = AffineMap(1, 1);
  EXPECT_FALSE(validate(bad).empty());
  UncertaintySet short_set = d.uncertainty;
  short_set.supports.pop_back();
  EXPECT_FALSE(validate(d.model, short_set).empty());
  UncertaintySet wide = d.uncertainty;
  wide.supports[0] = BoxSupport{{1.0, 2.0}, 0.1};
  EXPECT_FALSE(validate(d.model, wide).empty());
}

TEST(EvaluateCoefficients, UsesRevealedPrefix) {
  const ProblemData d = inventory_problem(3, InventoryVariant::Continuous);
  const ScenarioPath p{{{80.0}, {120.0}}};
  const StageCoefficients s2 = evaluate_coefficients(d.model, p, 2);
  const StageCoefficients s3 = evaluate_coefficients(d.model, p, 3);
  EXPECT_EQ(s2.W.rows(), d.model.dims.m[1]);
  EXPECT_NE(s2.h, s3.h);
  EXPECT_THROW(evaluate_coefficients(d.model, p, 1), InvalidArgument);
  EXPECT_THROW(evaluate_coefficients(d.model, ScenarioPath{{{80.0}}}, 3), InvalidArgument);
}

TEST(ProblemIo, RoundTripPreservesModel) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 5; ++k) {
    const ProblemData d = testing::random_discrete_problem(rng, 2 + k % 2);
    const nlohmann::json doc = problem_to_json(d);
    const ProblemData back = problem_from_json(doc);
    EXPECT_EQ(problem_to_json(back), doc);
    EXPECT_TRUE(validate(back.model, back.uncertainty).empty());
  }
  const ProblemData inv = inventory_problem(4, InventoryVariant::Continuous);
  EXPECT_EQ(problem_to_json(problem_from_json(problem_to_json(inv))), problem_to_json(inv));
}

TEST(ProblemIo, MinimalDocumentDefaults) {
  const auto doc = nlohmann::json::parse(R"({
    "dims": {"n": [1, 1], "m": [1, 1]},
    "A": [[0, 0, 1]], "h1": [4], "c1": [1], "senses1": ["<="],
    "stages": [{"T": [[0, 0, 1]], "W": [[0, 0, 1]],
                "h": {"base": [], "terms": [{"component": 0, "entries": [[0, 0, 1]]}]},
                "c": [[0, 0, 2]], "senses": [">="]}],
    "uncertainty": [{"type": "box", "nominal": [3], "rho": 0.5}]
  })");
  const ProblemData d = problem_from_json(doc);
  EXPECT_TRUE(validate(d.model, d.uncertainty).empty());
  EXPECT_EQ(d.model.uncertainty_dims, (std::vector<int>{1}));
  EXPECT_EQ(d.model.first.signs[0], VarSign::NonNegative);
}

TEST(ProblemIo, MalformedInputIsInvalidArgument) {
  EXPECT_THROW(problem_from_json(nlohmann::json::parse("{}")), InvalidArgument);
  auto doc = problem_to_json(inventory_problem(2, InventoryVariant::Continuous));
  doc["senses1"] = {"<>"};
  EXPECT_THROW(problem_from_json(doc), InvalidArgument);
  doc = problem_to_json(inventory_problem(2, InventoryVariant::Continuous));
  doc["uncertainty"][0]["type"] = "ellipsoid";
  EXPECT_THROW(problem_from_json(doc), InvalidArgument);
  EXPECT_THROW(read_problem_file("/nonexistent/problem.json"), InvalidArgument);
}

}  // namespace
}  // namespace swc
