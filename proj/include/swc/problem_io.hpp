#pragma once

#include <filesystem>
#include <string>

#include "swc/core_model.hpp"
#include "json.hpp"

namespace swc {

// A model together with its uncertainty set, as stored in problem files.
struct ProblemData {
  MultistageRobustLP model;
  UncertaintySet uncertainty;
};

// JSON schema documented in docs/problem_format.md. Parsing throws
// InvalidArgument on malformed documents; shape problems are reported by
// validate(), not here.
ProblemData problem_from_json(const nlohmann::json& doc);
nlohmann::json problem_to_json(const ProblemData& data);

ProblemData read_problem_file(const std::filesystem::path& path);
void write_problem_file(const ProblemData& data, const std::filesystem::path& path);

}  // namespace swc
