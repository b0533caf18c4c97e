#include "covercraft/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "covercraft/error.hpp"
#include "covercraft/monodromy.hpp"
#include "covercraft/short_basis.hpp"
#include "covercraft/stable_lattice.hpp"

namespace covercraft {

const std::string& Scenario::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorKind::kArgument, "missing parameter '" + key + "'");
  return it->second;
}

Rational Scenario::rational(const std::string& key) const { return parse_rational(param(key)); }

Rational Scenario::rational(const std::string& key, const Rational& fallback) const {
  return has(key) ? rational(key) : fallback;
}

long Scenario::integer(const std::string& key) const {
  const std::string& s = param(key);
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kParse, "parameter '" + key + "' is not an integer", s);
}

long Scenario::integer(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

double Scenario::real(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  try {
    return std::stod(param(key));
  } catch (const std::exception&) {
    throw Error(ErrorKind::kParse, "parameter '" + key + "' is not a number", param(key));
  }
}

const models::Model& Scenario::require_model() const {
  if (!model) throw Error(ErrorKind::kArgument, "task '" + task + "' needs a model");
  return *model;
}

namespace {

struct RawVertex {
  std::string name;
  IntVec offset;
};

struct RawGenerator {
  bool translate = true;
  IntVec shift;
  std::vector<std::pair<std::pair<std::string, std::string>, IntVec>> entries;  // src>dst@shift
};

class Parser {
public:
  Parser(std::istream& in, std::string name) : in_(in) { sc_.name = std::move(name); }

  Scenario run() {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      std::vector<std::string> tok;
      for (std::string t; ss >> t;) tok.push_back(t);
      if (tok.empty()) continue;
      try {
        directive(tok);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kParse || e.kind() == ErrorKind::kArgument)
          throw Error(ErrorKind::kParse, "line " + std::to_string(lineno_) + ": " + e.what(), e.witness());
        throw;
      }
    }
    finish();
    return std::move(sc_);
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::kParse, "line " + std::to_string(lineno_) + ": " + msg);
  }
  void need(const std::vector<std::string>& tok, std::size_t n) const {
    if (tok.size() < n) fail("'" + tok[0] + "' expects " + std::to_string(n - 1) + " argument(s)");
  }
  static long number(const std::string& s) {
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::kParse, "expected an integer", s);
  }

  void directive(const std::vector<std::string>& tok) {
    const std::string& d = tok[0];
    if (current_space_ && d != "row") close_space();
    if (d == "task") {
      need(tok, 2);
      if (std::find(kTasks.begin(), kTasks.end(), tok[1]) == kTasks.end()) fail("unknown task '" + tok[1] + "'");
      sc_.task = tok[1];
    } else if (d == "model") {
      need(tok, 2);
      named_model_ = std::vector<std::string>(tok.begin() + 1, tok.end());
    } else if (d == "voltage_group") {
      need(tok, 2);
      std::vector<std::int64_t> m;
      for (std::size_t i = 1; i < tok.size(); ++i) m.push_back(number(tok[i]));
      moduli_ = m;
    } else if (d == "vertices") {
      need(tok, 2);
      vertices_.assign(tok.begin() + 1, tok.end());
    } else if (d == "edge") {
      need(tok, 5);
      edges_.push_back({tok[1], tok[2], parse_rational(tok[3]), parse_intvec(tok[4])});
    } else if (d == "action") {
      need(tok, 2);
      action_rank_ = static_cast<std::size_t>(number(tok[1]));
    } else if (d == "generator") {
      need(tok, 3);
      RawGenerator g;
      if (tok[1] == "translate") {
        g.shift = parse_intvec(tok[2]);
      } else if (tok[1] == "vertexmap") {
        g.translate = false;
        for (std::size_t i = 2; i < tok.size(); ++i) {
          const auto gt = tok[i].find('>'), at = tok[i].find('@');
          if (gt == std::string::npos || at == std::string::npos || at < gt) fail("vertexmap entries read src>dst@shift");
          g.entries.push_back({{tok[i].substr(0, gt), tok[i].substr(gt + 1, at - gt - 1)},
                               parse_intvec(tok[i].substr(at + 1))});
        }
      } else {
        fail("generator kind must be translate or vertexmap");
      }
      generators_.push_back(std::move(g));
    } else if (d == "basepoint") {
      need(tok, 3);
      basepoint_ = RawVertex{tok[1], parse_intvec(tok[2])};
    } else if (d == "param") {
      need(tok, 3);
      std::string v = tok[2];
      for (std::size_t i = 3; i < tok.size(); ++i) v += " " + tok[i];
      sc_.params[tok[1]] = v;
    } else if (d == "wordset") {
      need(tok, 4);
      if (tok[1] != "S") fail("only the word set S is configurable");
      WordSetSpec spec;
      if (tok[2] == "l1") {
        spec.kind = WordSetSpec::Kind::kL1;
        spec.radius = static_cast<int>(number(tok[3]));
      } else if (tok[2] == "list") {
        spec.kind = WordSetSpec::Kind::kList;
        for (std::size_t i = 3; i < tok.size(); ++i) spec.elements.push_back(parse_intvec(tok[i]));
      } else if (tok[2] == "displacement") {
        spec.kind = WordSetSpec::Kind::kDisplacement;
        spec.displacement = parse_rational(tok[3]);
      } else {
        fail("word set kind must be l1, list or displacement");
      }
      sc_.S = spec;
    } else if (d == "region") {
      need(tok, 3);
      region_.push_back({tok[1], parse_intvec(tok[2])});
    } else if (d == "region_strip") {
      need(tok, 3);
      strip_ = std::make_pair(number(tok[1]), number(tok[2]));
    } else if (d == "subgroup") {
      need(tok, 2);
      sc_.subgroup.push_back(parse_intvec(tok[1]));
    } else if (d == "vector") {
      need(tok, 2);
      sc_.vectors.push_back(parse_intvec(tok[1]));
    } else if (d == "space") {
      need(tok, 2);
      current_space_ = tok[1];
      space_base_.reset();
      if (tok.size() >= 3) space_base_ = static_cast<std::size_t>(number(tok[2]));
      rows_.clear();
    } else if (d == "row") {
      if (!current_space_) fail("'row' outside a space block");
      std::vector<Rational> row;
      for (std::size_t i = 1; i < tok.size(); ++i) row.push_back(parse_rational(tok[i]));
      rows_.push_back(std::move(row));
    } else {
      fail("unknown directive '" + d + "'");
    }
  }

  void close_space() {
    try {
      sc_.spaces[*current_space_] = FiniteMetricSpace(rows_, space_base_);
    } catch (const Error& e) {
      fail("space " + *current_space_ + ": " + e.what());
    }
    current_space_.reset();
  }

  models::Model named_model() const {
    const auto& t = *named_model_;
    auto arg = [&](std::size_t i) {
      if (t.size() <= i) throw Error(ErrorKind::kParse, "model " + t[0] + " needs more arguments");
      return number(t[i]);
    };
    const std::string& n = t[0];
    if (n == "grid") return models::grid();
    if (n == "weighted_grid") return models::weighted_grid();
    if (n == "honeycomb") return models::honeycomb();
    if (n == "rank3_grid") return models::rank3_grid();
    if (n == "rose") return models::rose(static_cast<std::size_t>(arg(1)));
    if (n == "cylinder") return models::cylinder(arg(1));
    if (n == "cylinder_completion") return models::cylinder_completion(arg(1));
    if (n == "rotation_torus") return models::rotation_torus(arg(1), arg(2), arg(3));
    if (n == "line") return models::line();
    if (n == "comb") return models::comb();
    if (n == "line_doubled_action") return models::line_doubled_action();
    if (n == "subdivided_line") return models::subdivided_line(static_cast<std::size_t>(arg(1)));
    throw Error(ErrorKind::kParse, "unknown model '" + n + "'");
  }

  models::Model explicit_model() const {
    if (vertices_.empty()) throw Error(ErrorKind::kParse, "explicit model needs a 'vertices' line");
    if (action_rank_ == 0 || generators_.size() != action_rank_)
      throw Error(ErrorKind::kParse, "action rank does not match the number of generator lines");
    auto index = [&](const std::string& name) {
      auto it = std::find(vertices_.begin(), vertices_.end(), name);
      if (it == vertices_.end()) throw Error(ErrorKind::kParse, "unknown vertex '" + name + "'");
      return static_cast<VertexId>(it - vertices_.begin());
    };
    std::vector<QuotientEdge> edges;
    for (const auto& e : edges_)
      edges.push_back({index(e.tail_name), index(e.head_name), e.length, e.voltage});
    PeriodicGraph pg(VoltageGroup(*moduli_), vertices_, edges);
    std::vector<Isometry> gens;
    for (const auto& g : generators_) {
      if (g.translate) {
        gens.push_back(Isometry::translation(pg, g.shift));
        continue;
      }
      Isometry iso = Isometry::identity(pg);
      std::vector<bool> set(pg.vertex_count(), false);
      for (const auto& [map, shift] : g.entries) {
        const VertexId src = index(map.first);
        iso.perm[src] = index(map.second);
        iso.shift[src] = shift;
        set[src] = true;
      }
      if (std::find(set.begin(), set.end(), false) != set.end())
        throw Error(ErrorKind::kParse, "vertexmap must list every vertex");
      gens.push_back(std::move(iso));
    }
    DerivedVertex p{0, pg.group().zero()};
    return {sc_.name, LatticeAction(std::move(pg), std::move(gens)), p, false};
  }

  void finish() {
    if (current_space_) close_space();
    if (sc_.task.empty()) throw Error(ErrorKind::kParse, "scenario has no 'task' line");
    if (named_model_ && moduli_) throw Error(ErrorKind::kParse, "use either 'model' or an explicit voltage graph");
    if (named_model_)
      sc_.model = named_model();
    else if (moduli_)
      sc_.model = explicit_model();
    if (!sc_.model) {
      if (basepoint_ || !region_.empty() || strip_) throw Error(ErrorKind::kParse, "vertices given without a model");
      return;
    }
    const auto& pg = sc_.model->action.graph();
    auto resolve = [&](const RawVertex& v) {
      const VertexId b = pg.vertex_index(v.name);
      if (v.offset.size() != pg.group().dim()) throw Error(ErrorKind::kParse, "vertex offset has the wrong dimension");
      return pg.vertex(b, v.offset);
    };
    if (basepoint_) sc_.model->basepoint = resolve(*basepoint_);
    if (!region_.empty() || strip_) {
      std::vector<DerivedVertex> reg;
      for (const auto& v : region_) reg.push_back(resolve(v));
      if (strip_) {
        auto more = models::strip_region(*sc_.model, strip_->first, strip_->second);
        reg.insert(reg.end(), more.begin(), more.end());
      }
      sc_.region = reg;
    }
  }

  struct RawEdge {
    std::string tail_name, head_name;
    Rational length;
    IntVec voltage;
  };

  std::istream& in_;
  std::size_t lineno_ = 0;
  Scenario sc_;
  std::optional<std::vector<std::string>> named_model_;
  std::optional<std::vector<std::int64_t>> moduli_;
  std::vector<std::string> vertices_;
  std::vector<RawEdge> edges_;
  std::size_t action_rank_ = 0;
  std::vector<RawGenerator> generators_;
  std::optional<RawVertex> basepoint_;
  std::vector<RawVertex> region_;
  std::optional<std::pair<long, long>> strip_;
  std::optional<std::string> current_space_;
  std::optional<std::size_t> space_base_;
  std::vector<std::vector<Rational>> rows_;
};

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& name) { return Parser(in, name).run(); }

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::kParse, "cannot open scenario file", path);
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.rfind('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_scenario(f, name);
}

WordSet materialize(const WordSetSpec& spec, const LatticeAction& action, const DerivedVertex& p) {
  switch (spec.kind) {
    case WordSetSpec::Kind::kL1: return l1_ball(action.rank(), spec.radius);
    case WordSetSpec::Kind::kList:
      for (const auto& e : spec.elements)
        if (e.size() != action.rank()) throw Error(ErrorKind::kArgument, "word of the wrong rank", to_string(e));
      return WordSet(action.rank(), spec.elements);
    case WordSetSpec::Kind::kDisplacement: return milnor_svarc_generators(action, p, spec.displacement);
  }
  return {};
}

namespace {

std::string describe(const models::Model& m) { return m.name; }

MonodromyInput monodromy_input(const Scenario& sc) {
  const auto& m = sc.require_model();
  if (!sc.S) throw Error(ErrorKind::kArgument, "task '" + sc.task + "' needs a 'wordset S' line");
  MonodromyInput in;
  in.action = m.action;
  in.basepoint = m.basepoint;
  in.radius = sc.rational("r", Rational(0));
  if (!sc.region && in.radius <= 0) throw Error(ErrorKind::kArgument, "r must be positive");
  in.S = materialize(*sc.S, m.action, m.basepoint);
  in.M = static_cast<int>(sc.integer("M", 1));
  in.region = sc.region;
  return in;
}

void report_conditions(Report& rep, const MonodromyProblem& pr, const ConditionReport& c) {
  rep.add("r", pr.input().region ? std::string("explicit") : to_string(pr.input().radius));
  rep.add("M", pr.input().M);
  rep.add("S_size", pr.input().S.size());
  rep.add("T_size", pr.T().size());
  rep.add("T3_size", pr.T3().size());
  rep.add("T6_size", pr.T6().size());
  rep.add("T3_images", pr.T3_images().size());
  rep.add("T6_injective", c.t6_injective);
  rep.add("B_size", c.region_size);
  rep.add("meeting_set_size", c.meeting_count);
  rep.add("cond_i", c.cond_i);
  rep.add("cond_ii", c.cond_ii);
  rep.add("cond_iii", c.cond_iii);
  auto witness = [&](const char* key, const std::optional<ConditionWitness>& w) {
    if (!w) return;
    rep.add(std::string(key) + ".element", w->element);
    rep.add(std::string(key) + ".evidence", w->evidence);
  };
  witness("witness_i", c.witness_i);
  witness("witness_ii", c.witness_ii);
  witness("witness_iii", c.witness_iii);
}

int task_check(const Scenario& sc, RunResult& out) {
  MonodromyProblem pr(monodromy_input(sc));
  report_conditions(out.report, pr, check_conditions(pr));
  return 0;
}

int task_cover(const Scenario& sc, RunResult& out) {
  MonodromyProblem pr(monodromy_input(sc));
  auto& rep = out.report;
  const ConditionReport c = check_conditions(pr);
  report_conditions(rep, pr, c);
  const PresentedAbelianGroup gt = build_gamma_tilde(pr);
  rep.add("gamma_tilde", gt.iso_type().to_string());
  rep.add("gamma_tilde.labels", gt.label_count());
  rep.add("gamma_tilde.relations", gt.relation_count());
  const CoveringVerdict v = covering_verdict(pr, gt);
  rep.add("ker_phi", v.ker_phi.to_string());
  rep.add_list("ker_phi_basis", v.ker_phi_basis);
  rep.add("is_homeomorphism", v.is_homeomorphism);
  rep.add("sheet_class", to_string(v.sheet_class, v.sheets));
  rep.add("basepoint_sheets", v.basepoint_sheets ? std::to_string(*v.basepoint_sheets) : std::string("infinite"));
  if (v.violating) {
    rep.add("criterion_witness", *v.violating);
    rep.add("criterion_witness.image", *v.violating_image);
  }

  const int R = static_cast<int>(sc.integer("word_radius", 2));
  const CoverWindow cw = build_cover_window(pr, gt, R);
  rep.add("window.word_radius", R);
  rep.add("window.elements", cw.elements.size());
  rep.add("window.classes", cw.class_count());
  rep.add("window.edges", cw.edges.size());
  rep.add("window.psi_consistent", cw.psi_consistent);
  rep.add("window.psi_injective", cw.psi_injective());
  if (auto col = cw.label_collision()) {
    rep.add("window.collision", std::to_string(col->first) + "," + std::to_string(col->second));
    rep.add("window.collision_label", to_string(cw.psi[col->first]));
  }
  const LocalHomeomorphismReport lh = verify_local_homeomorphism(cw, pr);
  rep.add("local_homeomorphism", to_string(lh.status));
  rep.add("local.interior_classes", lh.interior_classes);
  rep.add("local.max_components", lh.max_components);
  if (!lh.witness.empty()) rep.add("local.witness", lh.witness);
  out.artifacts.push_back({"window.dot", to_dot(cw, pr.graph(), to_string(v.sheet_class, v.sheets))});
  return 0;
}

int task_basis(const Scenario& sc, RunResult& out) {
  Report demo = pipeline_torus_demo(sc.require_model(), sc.rational("D"));
  out.report.append(demo);
  return demo.get("separated") == "true" && demo.get("within_2D") == "true" ? 0 : 2;
}

NormModel norm_model(const Scenario& sc) {
  const std::string kind = sc.has("norm") ? sc.param("norm") : "l1";
  const std::size_t n = sc.has("n") ? static_cast<std::size_t>(sc.integer("n"))
                                    : (sc.model ? sc.model->action.rank() : 2);
  NormModel nm = [&] {
    if (kind == "l1") return NormModel::analytic(NormKind::kL1, n);
    if (kind == "l2") return NormModel::analytic(NormKind::kL2, n);
    if (kind == "linf") return NormModel::analytic(NormKind::kLinf, n);
    if (kind == "estimated") {
      const auto& m = sc.require_model();
      return NormModel::estimated(m.action, m.basepoint, static_cast<std::size_t>(sc.integer("K", 8)), Rational(0),
                                  static_cast<int>(sc.integer("direction_radius", 2)));
    }
    throw Error(ErrorKind::kArgument, "norm must be l1, l2, linf or estimated", kind);
  }();
  const std::string C = sc.has("C") ? sc.param("C") : "0";
  if (C == "empirical") {
    const auto& m = sc.require_model();
    nm.set_C(empirical_comparison_constant(nm, m.action, m.basepoint, static_cast<int>(sc.integer("C_radius", 3))),
             true);
  } else {
    nm.set_C(parse_rational(C), false);
  }
  return nm;
}

int task_sublattice(const Scenario& sc, RunResult& out, std::uint64_t seed) {
  auto& rep = out.report;
  const NormModel nm = norm_model(sc);
  const double tol = sc.real("tol", 1e-6);
  rep.add("norm", nm.name());
  rep.add("norm.source", nm.source());
  rep.add("n", nm.n());
  rep.add("C", nm.C());
  rep.add("C.empirical", nm.C_empirical());
  rep.add("seed", std::to_string(seed));
  const JohnTransform jt = john_transform(nm, static_cast<std::size_t>(sc.integer("samples", 256)), tol, seed);
  for (std::size_t i = 0; i < jt.n; ++i)
    for (std::size_t j = 0; j < jt.n; ++j)
      rep.add("alpha." + std::to_string(i) + std::to_string(j), jt.alpha[i][j]);
  const SandwichCheck fresh =
      certify_sandwich(jt, nm, static_cast<std::size_t>(sc.integer("fresh", 10000)), tol, seed + 1);
  rep.add("sandwich.fit_samples", jt.certificate.samples);
  rep.add("sandwich.fresh_samples", fresh.samples);
  rep.add("sandwich.fresh_passed", fresh.passed);
  rep.add("sandwich.worst_lower", fresh.worst_lower);
  rep.add("sandwich.worst_upper", fresh.worst_upper);

  SublatticeCertificate cert = cs_sublattice(nm, jt, sc.rational("D"));
  rep.add("D", cert.D);
  rep.add("M", cert.M);
  rep.add("D_prime", cert.D_prime);
  rep.add("rounding_bound", cert.rounding_bound);
  rep.add_list("basis", cert.basis);
  bool ok = fresh.passed && cert.independent && cert.box_separation && cert.box_separation_sqrt_n &&
            cert.analytic_separation;
  for (std::size_t i = 0; i < cert.basis.size(); ++i) {
    rep.add("rounding_error." + std::to_string(i + 1), cert.rounding_errors[i]);
    ok = ok && cert.rounding_errors[i] <= to_double(cert.rounding_bound) + 1e-9;
  }
  rep.add("independent", cert.independent);
  rep.add("index", cert.index.get_str());
  rep.add("box.min_preimage", cert.box_min_preimage);
  rep.add("box.min_norm", cert.box_min_norm);
  rep.add("box.separation", cert.box_separation);
  rep.add("box.separation_sqrt_n", cert.box_separation_sqrt_n);
  rep.add("box.norm_separation", cert.box_norm_separation);
  rep.add("analytic.perturbation", cert.perturbation);
  rep.add("analytic.lower", cert.analytic_lower);
  rep.add("analytic.separation", cert.analytic_separation);
  if (sc.model) {
    check_on_action(cert, sc.model->action, sc.model->basepoint);
    rep.add("box.min_displacement", *cert.box_min_displacement);
    rep.add("box.displacement_separation", *cert.box_displacement_separation);
    rep.add("quotient_diameter", cert.quotient_diameter ? to_string(*cert.quotient_diameter) : std::string("infinite"));
    rep.add("diameter_bound", *cert.diameter_bound);
    ok = ok && *cert.box_displacement_separation && *cert.diameter_bound;
  }
  rep.add("certified", ok);
  return ok ? 0 : 2;
}

int task_norm(const Scenario& sc, RunResult& out) {
  const auto& m = sc.require_model();
  auto& rep = out.report;
  const auto K = static_cast<std::size_t>(sc.integer("K", 8));
  rep.add("K", K);
  bool antitone = true;
  for (const auto& g : sc.vectors) {
    const auto est = stable_norm_estimate(m.action, m.basepoint, g, K);
    rep.add("norm" + to_string(g) + ".upper", est.upper);
    rep.add("norm" + to_string(g) + ".gap", est.gap);
    Rational prev = -1;
    for (std::size_t k = 1; k <= K; k *= 2) {
      Rational u = stable_norm_estimate(m.action, m.basepoint, g, k).upper;
      if (prev >= 0 && u > prev) antitone = false;
      prev = u;
    }
  }
  rep.add("doubling_antitone", antitone);
  if (sc.has("volume_r")) {
    const auto av = asymptotic_volume_estimate(m.action, m.basepoint, sc.rational("volume_r"));
    rep.add("volume.r", av.r);
    rep.add("volume.count", av.count);
    rep.add("volume.estimate", av.estimate);
  }
  return antitone ? 0 : 2;
}

int task_gh(const Scenario& sc, RunResult& out) {
  auto& rep = out.report;
  const bool pointed = !sc.has("pointed") || sc.param("pointed") != "false";
  std::vector<std::string> names;
  for (const auto& [name, space] : sc.spaces) names.push_back(name);
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      rep.add("gh." + names[i] + "." + names[j],
              gh_distance_exact(sc.spaces.at(names[i]), sc.spaces.at(names[j]), pointed));
  if (!sc.has("family")) return 0;
  if (sc.param("family") != "subdivided_line") throw Error(ErrorKind::kArgument, "unknown family", sc.param("family"));
  const long levels = sc.integer("levels", 4);
  const long period = sc.integer("period", 2);
  std::vector<FiniteMetricSpace> fam;
  for (long k = 1; k <= levels; ++k) {
    const auto m = models::subdivided_line(static_cast<std::size_t>(k));
    const QuotientSpace q = quotient_space(m.action, {{period}}, m.basepoint);
    rep.add("family." + std::to_string(k) + ".points", q.space.size());
    rep.add("family." + std::to_string(k) + ".diameter", q.space.diameter());
    out.artifacts.push_back({"family_" + std::to_string(k) + ".txt", format_distance_matrix(q.space.matrix())});
    fam.push_back(q.space);
  }
  bool monotone = true;
  Rational prev = -1;
  for (std::size_t i = 0; i + 1 < fam.size(); ++i) {
    Rational d = gh_distance_exact(fam[i], fam[i + 1], pointed);
    rep.add("family.gh." + std::to_string(i + 1) + "." + std::to_string(i + 2), d);
    if (prev >= 0 && d > prev) monotone = false;
    prev = d;
  }
  rep.add("family.nonincreasing", monotone);
  return monotone ? 0 : 2;
}

}  // namespace

Report pipeline_torus_demo(const models::Model& model, const Rational& D) {
  Report rep;
  const ShortBasisResult sb = gromov_short_basis(model.action, model.basepoint, D);
  rep.add("D", sb.D);
  rep.add("initial_radius", sb.initial_radius);
  rep.add_list("basis", sb.basis);
  std::string disp;
  for (const auto& d : sb.displacements) disp += (disp.empty() ? "" : " ") + to_string(d);
  rep.add("displacements", "[" + disp + "]");
  rep.add("index", sb.index.get_str());
  rep.add("iterations", sb.log.size());
  for (std::size_t i = 0; i < sb.log.size(); ++i) {
    const auto& s = sb.log[i];
    rep.add("step." + std::to_string(i + 1), "measure=" + std::to_string(s.measure) + " w=" + to_string(s.w) +
                                                 " d=" + to_string(s.w_displacement) + " doublings=" +
                                                 std::to_string(s.doublings) + " new=" + to_string(s.replacement) +
                                                 " d=" + to_string(s.replacement_displacement));
  }
  rep.add("measure_decreasing", sb.measure_strictly_decreasing());
  rep.add("within_2D", sb.displacements_within_2D());
  rep.add("separated", sb.separation.separated);
  rep.add_list("separation_certificate", sb.separation.certificate);
  if (sb.separation.witness) rep.add("separation_witness", *sb.separation.witness);
  const QuotientDiameter qd = quotient_diameter(model.action, sb.basis, model.basepoint);
  rep.add("quotient.infinite", qd.infinite);
  rep.add("quotient.classes", qd.classes);
  rep.add("quotient.diameter", qd.diameter);
  rep.add("quotient.continuum_gap", qd.continuum_gap);
  return rep;
}

RunResult run_scenario(const Scenario& sc, const RunOptions& opts) {
  RunResult out;
  const std::uint64_t seed =
      opts.seed ? *opts.seed : static_cast<std::uint64_t>(sc.has("seed") ? sc.integer("seed") : 0);
  if (opts.budget) set_node_budget(*opts.budget);
  out.report.add("scenario", sc.name);
  out.report.add("task", sc.task);
  if (sc.model) {
    out.report.add("model", describe(*sc.model));
    out.report.add("basepoint", to_string(sc.model->basepoint));
  }
  try {
    int code = 0;
    if (sc.task == "check")
      code = task_check(sc, out);
    else if (sc.task == "cover")
      code = task_cover(sc, out);
    else if (sc.task == "basis")
      code = task_basis(sc, out);
    else if (sc.task == "sublattice")
      code = task_sublattice(sc, out, seed);
    else if (sc.task == "norm")
      code = task_norm(sc, out);
    else if (sc.task == "gh")
      code = task_gh(sc, out);
    else
      throw Error(ErrorKind::kArgument, "unknown task", sc.task);
    out.exit_code = code;
    out.report.add("status", code == 0 ? "ok" : "certificate_failure");
  } catch (const Error& e) {
    out.exit_code = exit_code(e.kind());
    out.report.add("status", "error");
    out.report.add("error.kind", to_string(e.kind()));
    out.report.add("error.message", e.what());
    out.report.add("error.witness", e.witness());
  }
  out.report.add("exit_code", out.exit_code);
  return out;
}

}  // namespace covercraft
