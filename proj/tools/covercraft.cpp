#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "covercraft/error.hpp"
#include "covercraft/scenario.hpp"

namespace fs = std::filesystem;
using namespace covercraft;

namespace {

int write_outputs(const fs::path& dir, const RunResult& res) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "covercraft: cannot create " << dir << ": " << ec.message() << '\n';
    return exit_code(ErrorKind::kArgument);
  }
  std::ofstream(dir / "report.txt") << res.report.str();
  for (const auto& a : res.artifacts) std::ofstream(dir / a.filename) << a.contents;
  return res.exit_code;
}

int run_one(const std::string& task, const std::string& path, const fs::path& dir, const RunOptions& opts) {
  RunResult res;
  try {
    Scenario sc = load_scenario(path);
    if (sc.task != task)
      throw Error(ErrorKind::kArgument, "scenario task '" + sc.task + "' does not match '" + task + "'", path);
    res = run_scenario(sc, opts);
  } catch (const Error& e) {
    res.exit_code = exit_code(e.kind());
    res.report.add("scenario", path);
    res.report.add("status", "error");
    res.report.add("error.kind", to_string(e.kind()));
    res.report.add("error.message", e.what());
    res.report.add("error.witness", e.witness());
    res.report.add("exit_code", res.exit_code);
  }
  const int code = write_outputs(dir, res);
  std::cout << path << ": " << res.report.get("status") << " (exit " << code << ")\n";
  if (code != 0 && res.report.has("error.message")) std::cerr << path << ": " << res.report.get("error.message") << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covering-space and lattice workbench for periodic graphs"};
  std::string task;
  std::vector<std::string> scenarios;
  std::string out = "out";
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  app.add_option("task", task, "check | cover | basis | sublattice | norm | gh")->required()->check(CLI::IsMember(kTasks));
  app.add_option("--scenario,-s", scenarios, "scenario file(s)")->required()->check(CLI::ExistingFile);
  app.add_option("--out,-o", out, "output directory");
  app.add_option("--jobs,-j", jobs, "parallel scenario processes")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides the scenario)");
  auto* budget_opt = app.add_option("--budget", budget, "node budget for ball expansions")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code(ErrorKind::kArgument);
  }

  RunOptions opts;
  if (*seed_opt) opts.seed = seed;
  if (*budget_opt) opts.budget = budget;

  if (scenarios.size() == 1) return run_one(task, scenarios[0], out, opts);

  auto dir_for = [&](const std::string& path) { return fs::path(out) / fs::path(path).stem(); };
  std::vector<int> codes(scenarios.size(), 0);
  std::vector<std::pair<pid_t, std::size_t>> running;
  auto reap = [&] {
    int status = 0;
    const pid_t pid = wait(&status);
    auto it = std::find_if(running.begin(), running.end(), [&](const auto& r) { return r.first == pid; });
    if (it == running.end()) return;
    codes[it->second] = WIFEXITED(status) ? WEXITSTATUS(status) : exit_code(ErrorKind::kNumericalFailure);
    running.erase(it);
  };
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (jobs <= 1) {
      codes[i] = run_one(task, scenarios[i], dir_for(scenarios[i]), opts);
      continue;
    }
    while (running.size() >= jobs) reap();
    std::cout.flush();
    const pid_t pid = fork();
    if (pid == 0) {
      const int rc = run_one(task, scenarios[i], dir_for(scenarios[i]), opts);
      std::cout.flush();
      _exit(rc);
    }
    if (pid < 0) {
      codes[i] = run_one(task, scenarios[i], dir_for(scenarios[i]), opts);
      continue;
    }
    running.push_back({pid, i});
  }
  while (!running.empty()) reap();
  for (int c : codes)
    if (c != 0) return c;
  return 0;
}
