#include "covercraft/monodromy.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "covercraft/error.hpp"

namespace covercraft {

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

private:
  std::vector<std::size_t> parent_;
};

}  // namespace

ImageSet::ImageSet(const LatticeAction& action, const WordSet& words) {
  for (const auto& w : words.elements()) insert({w, action.image(w)});
}

std::optional<std::size_t> ImageSet::find(const Isometry& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ImageSet::insert(ImageElement e) {
  auto [it, fresh] = index_.emplace(e.iso, elements_.size());
  if (fresh) elements_.push_back(std::move(e));
  return it->second;
}

MonodromyProblem::MonodromyProblem(MonodromyInput in) : in_(std::move(in)) {
  const auto& pg = graph();
  if (in_.M < 1) throw Error(ErrorKind::kArgument, "M must be >= 1");
  if (in_.S.rank() != action().rank()) throw Error(ErrorKind::kArgument, "S has the wrong rank");
  if (!in_.S.is_symmetric()) throw Error(ErrorKind::kPrecondition, "S must contain 0 and be closed under inverses");
  in_.basepoint = pg.vertex(in_.basepoint.base, in_.basepoint.offset);

  if (in_.region) {
    std::set<DerivedVertex> uniq;
    for (const auto& v : *in_.region) {
      if (v.base >= pg.vertex_count()) throw Error(ErrorKind::kModelInvalid, "region vertex out of range");
      uniq.insert(pg.vertex(v.base, v.offset));
    }
    region_.assign(uniq.begin(), uniq.end());
    if (region_.empty()) throw Error(ErrorKind::kModelInvalid, "region is empty");
  } else {
    require_no_radius_tie(pg, in_.basepoint, in_.radius, "radius r");
    region_ = derived_ball(pg, in_.basepoint, in_.radius).vertices;
  }
  for (std::size_t i = 0; i < region_.size(); ++i) region_index_[region_[i]] = i;

  std::vector<bool> seen(region_.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (const auto& nb : pg.neighbors(region_[i])) {
      auto it = region_index_.find(nb.vertex);
      if (it != region_index_.end() && !seen[it->second]) {
        seen[it->second] = true;
        ++reached;
        stack.push_back(it->second);
      }
    }
  }
  if (reached != region_.size()) throw Error(ErrorKind::kModelInvalid, "B is not connected");

  T_ = sumset_power(in_.S, in_.M);
  T3_ = sumset_power(T_, 3);
  T6_ = sumset_power(T3_, 2);
  S_img_ = ImageSet(action(), in_.S);
  T_img_ = ImageSet(action(), T_);
  T3_img_ = ImageSet(action(), T3_);
  T6_img_ = ImageSet(action(), T6_);

  const auto& idx = action().index();
  for (const auto& x : region_)
    for (const auto& y : region_)
      for (auto& g : idx.solutions(x, y)) {
        Isometry iso = action().image(g);
        F_.insert({std::move(g), std::move(iso)});
      }
}

namespace {

std::optional<DerivedVertex> meeting_vertex(const MonodromyProblem& pr, const Isometry& g) {
  for (const auto& x : pr.region()) {
    DerivedVertex y = g.apply(pr.group(), x);
    if (pr.in_region(y)) return x;
  }
  return std::nullopt;
}

std::set<DerivedVertex> translated_region(const MonodromyProblem& pr) {
  std::set<DerivedVertex> out;
  for (const auto& t : pr.T_images().elements())
    for (const auto& x : pr.region()) out.insert(t.iso.apply(pr.group(), x));
  return out;
}

std::optional<DerivedVertex> escaping_vertex(const MonodromyProblem& pr, const Isometry& g,
                                             const std::set<DerivedVertex>& TB) {
  for (const auto& x : pr.region())
    if (!TB.count(g.apply(pr.group(), x))) return x;
  return std::nullopt;
}

}  // namespace

ConditionReport check_conditions(const MonodromyProblem& pr) {
  ConditionReport rep;
  rep.region_size = pr.region().size();
  rep.meeting_count = pr.meeting_set().size();
  rep.t6_injective = pr.T6_images().size() == pr.T6().size();

  rep.cond_i = true;
  for (const auto& s : pr.S_images().elements())
    if (!pr.meeting_set().contains(s.iso)) {
      rep.cond_i = false;
      rep.witness_i = ConditionWitness{s.lift, "sB and B are disjoint"};
      break;
    }

  rep.cond_ii = true;
  for (const auto& t : pr.T6_images().elements()) {
    if (!pr.meeting_set().contains(t.iso) || pr.T_images().contains(t.iso)) continue;
    auto x = meeting_vertex(pr, t.iso);
    rep.cond_ii = false;
    rep.witness_ii = ConditionWitness{t.lift, "t maps " + to_string(*x) + " into B but t is not in T"};
    break;
  }

  rep.cond_iii = true;
  const auto TB = translated_region(pr);
  for (const auto& g : pr.meeting_set().elements()) {
    auto x = escaping_vertex(pr, g.iso, TB);
    if (!x) continue;
    rep.cond_iii = false;
    rep.witness_iii = ConditionWitness{
        g.lift, "g maps " + to_string(*x) + " to " + to_string(g.iso.apply(pr.group(), *x)) + " outside TB"};
    break;
  }
  return rep;
}

bool witness_fails_i(const MonodromyProblem& pr, const IntVec& s) {
  return pr.input().S.contains(s) && !meeting_vertex(pr, pr.action().image(s));
}

bool witness_fails_ii(const MonodromyProblem& pr, const IntVec& t) {
  const Isometry iso = pr.action().image(t);
  return pr.T6().contains(t) && meeting_vertex(pr, iso) && !pr.T_images().contains(iso);
}

bool witness_fails_iii(const MonodromyProblem& pr, const IntVec& g) {
  const Isometry iso = pr.action().image(g);
  return meeting_vertex(pr, iso) && escaping_vertex(pr, iso, translated_region(pr));
}

PresentedAbelianGroup build_gamma_tilde(const MonodromyProblem& pr) {
  const auto& labels = pr.T3_images();
  std::vector<IntVec> lifts;
  for (const auto& e : labels.elements()) lifts.push_back(e.lift);
  std::vector<TableEntry> table;
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a; b < labels.size(); ++b) {
      auto c = labels.find(compose(pr.group(), labels[a].iso, labels[b].iso));
      if (c) table.push_back({a, b, *c});
    }
  return presented_group_from_table(lifts, table, pr.action().kernel());
}

std::vector<std::size_t> sharp_labels_of_T(const MonodromyProblem& pr) {
  std::vector<std::size_t> out;
  for (const auto& t : pr.T_images().elements()) out.push_back(*pr.T3_images().find(t.iso));
  return out;
}

std::string to_string(SheetClass c, std::size_t n) {
  switch (c) {
    case SheetClass::kOne: return "one";
    case SheetClass::kFinite: return "finite(" + std::to_string(n) + ")";
    case SheetClass::kInfinite: return "infinite";
  }
  return "?";
}

namespace {

std::set<IntVec> sharp_set(const MonodromyProblem& pr, const PresentedAbelianGroup& gt) {
  std::set<IntVec> out;
  for (auto i : sharp_labels_of_T(pr)) out.insert(gt.canonical(gt.sharp(i)));
  return out;
}

std::size_t count_basepoint_sheets(const MonodromyProblem& pr, const PresentedAbelianGroup& gt,
                                   const std::vector<IntVec>& kernel) {
  const auto& p = pr.input().basepoint;
  const auto& idx = pr.action().index();
  std::map<std::pair<IntVec, std::size_t>, std::size_t> id;
  std::vector<std::pair<IntVec, std::size_t>> pairs;
  for (std::size_t xi = 0; xi < pr.region().size(); ++xi)
    for (const auto& lift : idx.solutions(pr.region()[xi], p)) {
      auto pre = gt.preimage(lift);
      if (!pre) continue;
      for (const auto& k : kernel) {
        std::pair<IntVec, std::size_t> key{gt.canonical(add(*pre, k)), xi};
        if (id.emplace(key, pairs.size()).second) pairs.push_back(key);
      }
    }
  UnionFind uf(pairs.size());
  const auto labels = sharp_labels_of_T(pr);
  std::size_t classes = pairs.size();
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const auto& [sigma, xi] = pairs[n];
    for (std::size_t ti = 0; ti < labels.size(); ++ti) {
      const Isometry inv = inverse(pr.group(), pr.T_images()[ti].iso);
      DerivedVertex y = inv.apply(pr.group(), pr.region()[xi]);
      if (!pr.in_region(y)) continue;
      auto it = id.find({gt.canonical(add(sigma, gt.sharp(labels[ti]))), pr.region_index(y)});
      if (it != id.end() && uf.unite(n, it->second)) --classes;
    }
  }
  return classes;
}

}  // namespace

CoveringVerdict covering_verdict(const MonodromyProblem& pr, const PresentedAbelianGroup& gt) {
  CoveringVerdict v;
  v.ker_phi = gt.kernel_iso_type();
  v.ker_phi_basis = gt.kernel_generators();
  const auto tsharp = sharp_set(pr, gt);

  bool inside = true;
  for (const auto& g : pr.meeting_set().elements()) {
    auto pre = gt.preimage(g.lift);
    if (!pre) continue;
    v.meeting_preimages.push_back(*pre);
    if (inside && !tsharp.count(*pre)) {
      inside = false;
      v.violating = *pre;
      v.violating_image = g.lift;
    }
  }
  if (inside && !gt.kernel_trivial()) {
    v.violating = gt.kernel_generators().front();
    v.violating_image = IntVec(pr.action().rank(), 0);
  }
  v.is_homeomorphism = inside && gt.kernel_trivial();

  if (v.ker_phi.free_rank > 0) {
    v.sheet_class = SheetClass::kInfinite;
    v.sheets = 0;
  } else {
    std::size_t n = 1;
    for (const auto& t : v.ker_phi.torsion) n *= t.get_ui();
    v.sheets = n;
    v.sheet_class = n == 1 ? SheetClass::kOne : SheetClass::kFinite;
    v.basepoint_sheets = count_basepoint_sheets(pr, gt, gt.enumerate_kernel(100000));
  }
  return v;
}

bool CoverWindow::psi_injective() const { return !label_collision(); }

std::optional<std::pair<std::size_t, std::size_t>> CoverWindow::label_collision() const {
  std::map<DerivedVertex, std::size_t> first;
  for (std::size_t c = 0; c < psi.size(); ++c) {
    auto [it, fresh] = first.emplace(psi[c], c);
    if (!fresh) return std::make_pair(it->second, c);
  }
  return std::nullopt;
}

CoverWindow build_cover_window(const MonodromyProblem& pr, const PresentedAbelianGroup& gt, int word_radius) {
  if (word_radius < 0) throw Error(ErrorKind::kArgument, "word radius must be >= 0");
  CoverWindow cw;
  cw.word_radius = word_radius;
  cw.region = pr.region();
  const std::size_t nb = cw.region.size();
  const auto labels = sharp_labels_of_T(pr);

  std::vector<IntVec> gens;
  {
    std::set<IntVec> uniq;
    for (auto i : labels) {
      IntVec s = gt.canonical(gt.sharp(i));
      if (!is_zero(s)) uniq.insert(s);
    }
    gens.assign(uniq.begin(), uniq.end());
  }
  std::map<IntVec, std::size_t> where;
  cw.elements.push_back(gt.zero());
  cw.depth.push_back(0);
  where[gt.zero()] = 0;
  for (std::size_t head = 0; head < cw.elements.size(); ++head) {
    if (cw.depth[head] >= word_radius) continue;
    for (const auto& s : gens) {
      IntVec h = gt.canonical(add(cw.elements[head], s));
      if (where.emplace(h, cw.elements.size()).second) {
        cw.elements.push_back(std::move(h));
        cw.depth.push_back(cw.depth[head] + 1);
      }
    }
  }

  // Single gluing steps (g t#, y) ~ (g, t y) with y and t y in B.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> moves(labels.size());
  for (std::size_t ti = 0; ti < labels.size(); ++ti)
    for (std::size_t yi = 0; yi < nb; ++yi) {
      DerivedVertex ty = pr.T_images()[ti].iso.apply(pr.group(), cw.region[yi]);
      if (pr.in_region(ty)) moves[ti].push_back({yi, pr.region_index(ty)});
    }
  UnionFind uf(cw.elements.size() * nb);
  for (std::size_t e = 0; e < cw.elements.size(); ++e)
    for (std::size_t ti = 0; ti < labels.size(); ++ti) {
      auto it = where.find(gt.canonical(add(cw.elements[e], gt.sharp(labels[ti]))));
      if (it == where.end()) continue;
      for (const auto& [yi, tyi] : moves[ti]) {
        uf.unite(it->second * nb + yi, e * nb + tyi);
        ++cw.glue_steps;
      }
    }

  cw.class_of.assign(cw.elements.size(), std::vector<std::size_t>(nb));
  std::map<std::size_t, std::size_t> class_id;
  for (std::size_t e = 0; e < cw.elements.size(); ++e) {
    const Isometry phi = pr.action().image(gt.phi(cw.elements[e]));
    for (std::size_t xi = 0; xi < nb; ++xi) {
      auto [it, fresh] = class_id.emplace(uf.find(e * nb + xi), cw.psi.size());
      DerivedVertex label = phi.apply(pr.group(), cw.region[xi]);
      if (fresh)
        cw.psi.push_back(std::move(label));
      else if (cw.psi[it->second] != label)
        cw.psi_consistent = false;
      cw.class_of[e][xi] = it->second;
    }
  }

  std::vector<std::tuple<std::size_t, std::size_t, Rational>> region_edges;
  for (std::size_t xi = 0; xi < nb; ++xi)
    for (const auto& n : pr.graph().neighbors(cw.region[xi])) {
      if (!pr.in_region(n.vertex)) continue;
      const std::size_t yi = pr.region_index(n.vertex);
      if (yi > xi) region_edges.emplace_back(xi, yi, n.length);
    }
  std::set<std::tuple<std::size_t, std::size_t, Rational>> seen;
  for (std::size_t e = 0; e < cw.elements.size(); ++e)
    for (const auto& [xi, yi, len] : region_edges) {
      std::size_t a = cw.class_of[e][xi], b = cw.class_of[e][yi];
      if (a > b) std::swap(a, b);
      if (a == b || !seen.emplace(a, b, len).second) continue;
      cw.edges.push_back({a, b, len});
    }
  cw.adjacency.assign(cw.psi.size(), {});
  for (const auto& ed : cw.edges) {
    cw.adjacency[ed.a].push_back(ed.b);
    cw.adjacency[ed.b].push_back(ed.a);
  }
  return cw;
}

std::string to_dot(const CoverWindow& cw, const PeriodicGraph& pg, const std::string& sheet_annotation) {
  std::ostringstream os;
  os << "graph window {\n";
  os << "  graph [word_radius=" << cw.word_radius;
  if (!sheet_annotation.empty()) os << ", sheets=\"" << sheet_annotation << '"';
  os << "];\n";
  for (std::size_t c = 0; c < cw.psi.size(); ++c)
    os << "  n" << c << " [label=\"" << pg.vertex_names()[cw.psi[c].base] << to_string(cw.psi[c].offset)
       << "\", psi=\"" << to_string(cw.psi[c]) << "\"];\n";
  for (const auto& e : cw.edges) os << "  n" << e.a << " -- n" << e.b << " [len=\"" << to_string(e.length) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_string(LocalStatus s) {
  switch (s) {
    case LocalStatus::kPass: return "pass";
    case LocalStatus::kFail: return "fail";
    case LocalStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

LocalHomeomorphismReport verify_local_homeomorphism(const CoverWindow& cw, const MonodromyProblem& pr) {
  LocalHomeomorphismReport rep;
  const auto& pg = pr.graph();
  if (cw.word_radius < 1) {
    rep.witness = "word radius 0 leaves no interior";
    return rep;
  }
  // A class with a representative of depth <= R-1 has all its representatives,
  // and so its whole star, inside the window.
  std::set<std::size_t> interior;
  for (std::size_t e = 0; e < cw.elements.size(); ++e) {
    if (cw.depth[e] > cw.word_radius - 1) continue;
    for (std::size_t xi = 0; xi < cw.region.size(); ++xi) interior.insert(cw.class_of[e][xi]);
  }
  rep.interior_classes = interior.size();
  if (interior.empty()) {
    rep.witness = "no class has its full star inside the window";
    return rep;
  }

  std::map<DerivedVertex, std::vector<std::size_t>> over;
  for (auto c : interior) {
    std::set<DerivedVertex> target{cw.psi[c]};
    for (const auto& n : pg.neighbors(cw.psi[c])) target.insert(n.vertex);
    std::set<DerivedVertex> image{cw.psi[c]};
    std::set<std::size_t> star{c};
    for (auto d : cw.adjacency[c]) star.insert(d);
    for (auto d : star)
      if (d != c) image.insert(cw.psi[d]);
    if (image.size() != star.size() || image != target) {
      rep.status = LocalStatus::kFail;
      rep.witness = "class " + std::to_string(c) + " over " + to_string(cw.psi[c]) +
                    ": star does not map bijectively onto the star of its label";
      return rep;
    }
    over[cw.psi[c]].push_back(c);
  }
  rep.labels_checked = over.size();
  for (const auto& [label, classes] : over) {
    rep.max_components = std::max(rep.max_components, classes.size());
    std::set<std::size_t> used;
    for (auto c : classes) {
      std::vector<std::size_t> star{c};
      star.insert(star.end(), cw.adjacency[c].begin(), cw.adjacency[c].end());
      for (auto d : star)
        if (!used.insert(d).second) {
          rep.status = LocalStatus::kFail;
          rep.witness = "preimage stars over " + to_string(label) + " overlap at class " + std::to_string(d);
          return rep;
        }
    }
  }
  rep.status = LocalStatus::kPass;
  return rep;
}

}  // namespace covercraft
