#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/abelian_groups.hpp"
#include "covercraft/gh_tools.hpp"
#include "covercraft/models.hpp"
#include "covercraft/report.hpp"

namespace covercraft {

inline const std::vector<std::string> kTasks{"check", "cover", "basis", "sublattice", "norm", "gh"};

struct WordSetSpec {
  enum class Kind { kL1, kList, kDisplacement } kind = Kind::kL1;
  int radius = 0;
  Rational displacement;
  std::vector<IntVec> elements;
};

struct Scenario {
  std::string name;
  std::string task;
  std::optional<models::Model> model;
  std::map<std::string, std::string> params;
  std::optional<WordSetSpec> S;
  std::optional<std::vector<DerivedVertex>> region;
  std::vector<IntVec> subgroup;
  std::vector<IntVec> vectors;
  std::map<std::string, FiniteMetricSpace> spaces;

  bool has(const std::string& key) const { return params.count(key) > 0; }
  const std::string& param(const std::string& key) const;
  Rational rational(const std::string& key) const;
  Rational rational(const std::string& key, const Rational& fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  double real(const std::string& key, double fallback) const;
  const models::Model& require_model() const;
};

Scenario parse_scenario(std::istream& in, const std::string& name = "scenario");
Scenario load_scenario(const std::string& path);

WordSet materialize(const WordSetSpec& spec, const LatticeAction& action, const DerivedVertex& p);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
};

struct Artifact {
  std::string filename;
  std::string contents;
};

struct RunResult {
  int exit_code = 0;
  Report report;
  std::vector<Artifact> artifacts;
};

RunResult run_scenario(const Scenario& sc, const RunOptions& opts = {});

// Short basis, then the diameter of the quotient by it.
Report pipeline_torus_demo(const models::Model& model, const Rational& D);

}  // namespace covercraft
