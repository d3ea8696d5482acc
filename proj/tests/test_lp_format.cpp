#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "swc/lp_format.hpp"
#include "test_support.hpp"

namespace swc::lp {
namespace {

LpInstance two_by_two() {
  LpInstance lp;
  lp.add_variable(0.0, kInf, 1.0, "x");
  lp.add_variable(0.0, kInf, 1.0, "y");
  lp.add_row(std::vector<int>{0, 1}, std::vector<double>{1.0, 2.0}, RowSense::GreaterEqual, 4.0, "a");
  lp.add_row(std::vector<int>{0, 1}, std::vector<double>{3.0, 1.0}, RowSense::GreaterEqual, 6.0, "b");
  return lp;
}

int count_rows(const std::string& text) {
  std::istringstream is(text);
  bool in = false;
  int rows = 0;
  for (std::string l; std::getline(is, l);) {
    if (l == "Subject To") {
      in = true;
    } else if (l == "Bounds" || l == "End") {
      in = false;
    } else if (in) {
      ++rows;
    }
  }
  return rows;
}

TEST(Interchange, TwoRowDocument) {
  const std::string text = write_interchange(two_by_two());
  EXPECT_EQ(count_rows(text), 2);
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find(" a: "), std::string::npos);
}

TEST(Interchange, FreeVariableDeclared) {
  LpInstance lp;
  lp.add_variable(-kInf, kInf, 1.0, "z");
  lp.add_variable(-kInf, 3.0, 0.0, "w");
  lp.add_variable(2.0, 2.0, 0.0, "f");
  const std::string text = write_interchange(lp);
  EXPECT_NE(text.find(" z free\n"), std::string::npos);
  const LpInstance back = parse_interchange(text);
  EXPECT_EQ(back.lower(0), -kInf);
  EXPECT_EQ(back.upper(1), 3.0);
  EXPECT_EQ(back.lower(1), -kInf);
  EXPECT_EQ(back.lower(2), 2.0);
  EXPECT_EQ(back.upper(2), 2.0);
}

TEST(Interchange, RoundTripIsByteIdentical) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 100; ++k) {
    LpInstance lp = testing::random_lp(rng);
    if (k % 2 == 0) lp.set_var_name(0, "gamma");
    const std::string first = write_interchange(lp);
    const LpInstance back = parse_interchange(first);
    EXPECT_EQ(write_interchange(back), first);
    ASSERT_EQ(back.num_vars(), lp.num_vars());
    for (int j = 0; j < lp.num_vars(); ++j) {
      EXPECT_EQ(back.cost(j), lp.cost(j));
      EXPECT_EQ(back.lower(j), lp.lower(j));
      EXPECT_EQ(back.upper(j), lp.upper(j));
    }
    EXPECT_EQ(solve_builtin(back).status, solve_builtin(lp).status);
  }
}

TEST(Interchange, MalformedInput) {
  EXPECT_THROW(parse_interchange("Minimize\n obj: x\nSubject To\n c: x <= \n"), InvalidArgument);
  EXPECT_THROW(parse_interchange("Minimize\n obj: x\n"), InvalidArgument);
}

TEST(SolutionFile, ParsesColumnsAndStatuses) {
  const LpInstance lp = two_by_two();
  std::istringstream ok("Model status\nOptimal\n\n# Primal solution values\nFeasible\n"
                        "Objective 2.8\n# Columns 2\ny 1.2\nx 1.6\n");
  const SolveResult r = parse_solution(ok, lp);
  ASSERT_TRUE(r.optimal());
  EXPECT_DOUBLE_EQ(r.primal[0], 1.6);
  EXPECT_NEAR(r.objective, 2.8, 1e-12);
  std::istringstream inf("Model status\nInfeasible\n");
  EXPECT_EQ(parse_solution(inf, lp).status, SolveStatus::Infeasible);
  std::istringstream unb("Model status\nUnbounded\n");
  EXPECT_EQ(parse_solution(unb, lp).status, SolveStatus::Unbounded);
}

SolveResult parse_text(const std::string& text, const LpInstance& lp) {
  std::istringstream is(text);
  return parse_solution(is, lp);
}

TEST(SolutionFile, UnparsableVariants) {
  const LpInstance lp = two_by_two();
  for (const std::string& bad : {std::string("garbage\n"), std::string("Model status\nWeird\n"),
                                std::string("Model status\nOptimal\n# Columns 2\nx 1\n"),
                                std::string("Model status\nOptimal\n# Columns 2\nx 1\nq 2\n"),
                                std::string("Model status\nOptimal\n# Columns 1\nx 1\n")}) {
    try {
      parse_text(bad, lp);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const ExternalSolverError& e) {
      EXPECT_EQ(e.kind(), ExternalSolverError::Kind::UnparsableSolution);
    }
  }
}

ExternalSolverError::Kind external_failure(const std::string& command) {
  try {
    solve_external(two_by_two(), ExternalSolverConfig{command, {}, false});
  } catch (const ExternalSolverError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error from " << command;
  return ExternalSolverError::Kind::UnparsableSolution;
}

TEST(ExternalSolver, DistinctFailureKinds) {
  EXPECT_EQ(external_failure("/nonexistent/solver-binary"),
            ExternalSolverError::Kind::MissingExecutable);
  EXPECT_EQ(external_failure("false"), ExternalSolverError::Kind::NonzeroExit);
  // Exits 0 without writing a solution.
  EXPECT_EQ(external_failure("true"), ExternalSolverError::Kind::UnparsableSolution);
  const auto dir = std::filesystem::temp_directory_path();
  const auto script = dir / "swc_bad_solver.sh";
  {
    std::ofstream out(script);
    out << "#!/bin/sh\necho 'not a solution' > \"$2\"\n";
  }
  std::filesystem::permissions(script, std::filesystem::perms::owner_all);
  EXPECT_EQ(external_failure(script.string()), ExternalSolverError::Kind::UnparsableSolution);
  std::filesystem::remove(script);
}

TEST(ExternalSolver, EnvironmentVariable) {
  ::setenv("SWC_EXTERNAL_SOLVER", "", 1);
  EXPECT_FALSE(external_solver_from_env().has_value());
  ::setenv("SWC_EXTERNAL_SOLVER", "highs --x", 1);
  EXPECT_EQ(external_solver_from_env().value(), "highs --x");
  ::unsetenv("SWC_EXTERNAL_SOLVER");
  EXPECT_FALSE(external_solver_from_env().has_value());
}

#if defined(SWC_PYTHON) && defined(SWC_SCIPY_SOLVER)
bool scipy_available() {
  const std::string cmd = std::string(SWC_PYTHON) + " -c 'import scipy.optimize' > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

std::string scipy_command() { return std::string(SWC_PYTHON) + " " + SWC_SCIPY_SOLVER; }

TEST(ExternalSolver, ScipyAgreesWithBuiltin) {
  if (!scipy_available()) GTEST_SKIP() << "scipy not importable";
  const ExternalSolverConfig cfg{scipy_command(), {}, false};
  std::mt19937_64 rng(123);
  int compared = 0;
  for (int k = 0; k < 100; ++k) {
    const LpInstance lp = testing::random_lp(rng);
    const SolveResult a = solve_builtin(lp);
    const SolveResult b = solve_external(lp, cfg);
    if (a.optimal()) {
      ASSERT_TRUE(b.optimal()) << "instance " << k;
      EXPECT_NEAR(a.objective, b.objective, 1e-6 * std::max(1.0, std::abs(a.objective)));
      ++compared;
    } else {
      EXPECT_FALSE(b.optimal()) << "instance " << k;
    }
  }
  EXPECT_GT(compared, 10);
}

TEST(ExternalSolver, ScipyReportsInfeasible) {
  if (!scipy_available()) GTEST_SKIP() << "scipy not importable";
  LpInstance lp;
  lp.add_variable(-kInf, kInf, 1.0, "x");
  lp.add_row(std::vector<int>{0}, std::vector<double>{1.0}, RowSense::GreaterEqual, 1.0);
  lp.add_row(std::vector<int>{0}, std::vector<double>{1.0}, RowSense::LessEqual, 0.0);
  EXPECT_EQ(solve_external(lp, {scipy_command(), {}, false}).status, SolveStatus::Infeasible);
  SolverChoice choice;
  choice.external = ExternalSolverConfig{scipy_command(), {}, false};
  EXPECT_NEAR(solve(two_by_two(), choice).objective, 2.8, 1e-7);
}
#endif

}  // namespace
}  // namespace swc::lp
