#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "swc/lp_format.hpp"

namespace swc::lp {

namespace {

std::atomic<unsigned long> g_file_counter{0};

bool executable_exists(const std::string& program) {
  namespace fs = std::filesystem;
  if (program.find('/') != std::string::npos) {
    return ::access(program.c_str(), X_OK) == 0 && !fs::is_directory(program);
  }
  const char* path = std::getenv("PATH");
  if (path == nullptr) return false;
  std::istringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) dir = ".";
    const fs::path candidate = fs::path(dir) / program;
    if (::access(candidate.c_str(), X_OK) == 0 && !fs::is_directory(candidate)) return true;
  }
  return false;
}

std::string first_word(const std::string& command) {
  std::istringstream is(command);
  std::string w;
  is >> w;
  return w;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::optional<std::string> external_solver_from_env() {
  const char* v = std::getenv("SWC_EXTERNAL_SOLVER");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

SolveResult parse_solution(std::istream& in, const LpInstance& lp) {
  using Kind = ExternalSolverError::Kind;
  SolveResult res;
  res.primal.assign(lp.num_vars(), 0.0);

  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    lines.push_back(l);
  }
  std::size_t k = 0;
  while (k < lines.size() && lower(lines[k]) != "model status") ++k;
  if (k + 1 >= lines.size()) {
    throw ExternalSolverError(Kind::UnparsableSolution, "solution file: no 'Model status' block");
  }
  const std::string status = lower(lines[k + 1]);
  if (status == "optimal") {
    res.status = SolveStatus::Optimal;
  } else if (status.find("infeasible") != std::string::npos) {
    res.status = SolveStatus::Infeasible;
    return res;
  } else if (status.find("unbounded") != std::string::npos) {
    res.status = SolveStatus::Unbounded;
    return res;
  } else if (status.find("limit") != std::string::npos) {
    res.status = SolveStatus::IterationLimit;
    return res;
  } else {
    throw ExternalSolverError(Kind::UnparsableSolution,
                              "solution file: unknown model status '" + lines[k + 1] + "'");
  }

  std::unordered_map<std::string, int> index;
  for (int j = 0; j < lp.num_vars(); ++j) index.emplace(column_name(lp, j), j);

  std::size_t c = k + 2;
  while (c < lines.size() && lines[c].rfind("# Columns", 0) != 0) ++c;
  if (c >= lines.size()) {
    throw ExternalSolverError(Kind::UnparsableSolution, "solution file: no '# Columns' section");
  }
  long count = 0;
  try {
    count = std::stol(lines[c].substr(9));
  } catch (const std::exception&) {
    throw ExternalSolverError(Kind::UnparsableSolution, "solution file: bad column count");
  }
  std::vector<bool> seen(lp.num_vars(), false);
  for (long r = 0; r < count; ++r) {
    if (c + 1 + r >= lines.size()) {
      throw ExternalSolverError(Kind::UnparsableSolution, "solution file: truncated columns");
    }
    std::istringstream is(lines[c + 1 + r]);
    std::string name;
    double value = 0.0;
    if (!(is >> name >> value)) {
      throw ExternalSolverError(Kind::UnparsableSolution,
                                "solution file: bad column line '" + lines[c + 1 + r] + "'");
    }
    auto it = index.find(name);
    if (it == index.end()) {
      throw ExternalSolverError(Kind::UnparsableSolution,
                                "solution file: unknown column '" + name + "'");
    }
    res.primal[it->second] = value;
    seen[it->second] = true;
  }
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (!seen[j]) {
      throw ExternalSolverError(Kind::UnparsableSolution,
                                "solution file: column '" + column_name(lp, j) + "' missing");
    }
  }
  res.objective = lp.objective_value(res.primal);
  return res;
}

SolveResult solve_external(const LpInstance& lp, const ExternalSolverConfig& config) {
  namespace fs = std::filesystem;
  using Kind = ExternalSolverError::Kind;
  const auto t0 = std::chrono::steady_clock::now();

  const std::string program = first_word(config.command);
  if (program.empty() || !executable_exists(program)) {
    throw ExternalSolverError(Kind::MissingExecutable,
                              "external solver '" + program + "' not found or not executable");
  }

  const fs::path dir = config.work_dir.empty() ? fs::temp_directory_path() : config.work_dir;
  const std::string stem = "swc_" + std::to_string(::getpid()) + "_" +
                           std::to_string(g_file_counter.fetch_add(1));
  const fs::path lp_path = dir / (stem + ".lp");
  const fs::path sol_path = dir / (stem + ".sol");
  {
    std::ofstream out(lp_path);
    if (!out) throw SolverError("cannot write " + lp_path.string());
    write_interchange(lp, out);
  }

  std::string cmd = config.command;
  if (cmd.find("{lp}") == std::string::npos && cmd.find("{sol}") == std::string::npos) {
    cmd += " {lp} {sol}";
  }
  replace_all(cmd, "{lp}", shell_quote(lp_path.string()));
  replace_all(cmd, "{sol}", shell_quote(sol_path.string()));
  cmd += " > /dev/null 2>&1";

  auto cleanup = [&] {
    if (config.keep_files) return;
    std::error_code ec;
    fs::remove(lp_path, ec);
    fs::remove(sol_path, ec);
  };

  const int raw = std::system(cmd.c_str());
  const int code = raw == -1 ? -1 : (WIFEXITED(raw) ? WEXITSTATUS(raw) : 128);
  if (code != 0) {
    cleanup();
    throw ExternalSolverError(Kind::NonzeroExit,
                              "external solver exited with status " + std::to_string(code));
  }
  std::ifstream sol(sol_path);
  if (!sol) {
    cleanup();
    throw ExternalSolverError(Kind::UnparsableSolution, "external solver wrote no solution file");
  }
  SolveResult res;
  try {
    res = parse_solution(sol, lp);
  } catch (...) {
    cleanup();
    throw;
  }
  cleanup();
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace swc::lp

namespace swc::lp {

SolveResult solve(const LpInstance& lp, const SolverChoice& choice) {
  if (choice.external) return solve_external(lp, *choice.external);
  return solve_builtin(lp, choice.simplex);
}

}  // namespace swc::lp
