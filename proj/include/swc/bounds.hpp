#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swc/solve.hpp"

namespace swc {

struct SwsResult {
  double value = 0.0;
  int worst_path = -1;
};

// Max over paths of the fully anticipative path value. Throws SolverError
// naming the first infeasible path.
SwsResult sws_value(const MultistageRobustLP& problem, std::span<const ScenarioPath> paths,
                    Execution exec = Execution::Parallel, const lp::SimplexOptions& options = {});

// Per-stage deterministic realizations xi^2..xi^{H-1}.
using DeterministicTail = std::vector<std::vector<double>>;

// Stage nominals of xi^2..xi^{H-1}: box centers, integer-box midpoints,
// discrete means.
DeterministicTail nominal_tail(const UncertaintySet& set);

// Replaces xi^2..xi^{H-1} of every path by the tail.
std::vector<ScenarioPath> with_tail(std::span<const ScenarioPath> paths, const DeterministicTail& tail);

// Two-stage relaxation: x^1 shared, certificates private to every path (no
// sharing of later-stage decisions). With a tail, stages >= 2 of every path
// are first replaced by it.
SwcSolution swct_value(const MultistageRobustLP& problem, std::span<const ScenarioPath> paths,
                       const std::optional<DeterministicTail>& tail = std::nullopt,
                       const SwcOptions& options = {});

enum class ExactMode { RO, RWS, RT };

std::string to_string(ExactMode mode);
ExactMode parse_exact_mode(const std::string& text);

struct ExactOptions {
  std::size_t leaf_cap = 4096;
  // RT only: evaluate on Xi^1 vertices with this tail instead of full vertex paths.
  std::optional<DeterministicTail> rt_tail;
  SwcOptions swc;
};

struct ExactResult {
  double value = 0.0;
  std::vector<double> x1;  // RO and RT
  int worst_path = -1;     // RWS
  std::size_t leaves = 0;
};

// Vertex-tree references. Exact when worst cases sit at vertices of the
// support, which holds for data affine in xi; user models that break this
// get a lower bound.
ExactResult exact_value(const MultistageRobustLP& problem, const UncertaintySet& set, ExactMode mode,
                        const ExactOptions& options = {});

}  // namespace swc
