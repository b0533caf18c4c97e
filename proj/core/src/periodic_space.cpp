#include "covercraft/periodic_space.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "covercraft/error.hpp"

namespace covercraft {

VoltageGroup::VoltageGroup(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  for (auto m : moduli_)
    if (m < 0 || m == 1) throw Error(ErrorKind::kModelInvalid, "voltage moduli must be 0 (free) or >= 2");
}

std::size_t VoltageGroup::free_rank() const {
  return static_cast<std::size_t>(std::count(moduli_.begin(), moduli_.end(), 0));
}

IntVec VoltageGroup::reduce(IntVec v) const {
  if (v.size() != moduli_.size()) throw Error(ErrorKind::kArgument, "voltage of wrong dimension");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto m = moduli_[i];
    if (m == 0) continue;
    v[i] %= m;
    if (v[i] < 0) v[i] += m;
  }
  return v;
}

std::vector<IntVec> VoltageGroup::torsion_relations() const {
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    if (moduli_[i] != 0) out.push_back(scale(unit_vector(dim(), i), moduli_[i]));
  return out;
}

std::string to_string(const DerivedVertex& v) { return std::to_string(v.base) + "@" + to_string(v.offset); }

PeriodicGraph::PeriodicGraph(VoltageGroup group, std::vector<std::string> vertex_names, std::vector<QuotientEdge> edges)
    : group_(std::move(group)), names_(std::move(vertex_names)), edges_(std::move(edges)) {
  if (names_.empty()) throw Error(ErrorKind::kModelInvalid, "quotient graph has no vertices");
  {
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) throw Error(ErrorKind::kModelInvalid, "duplicate vertex name");
  }
  adjacency_.resize(names_.size());
  bool first = true;
  for (auto& e : edges_) {
    if (e.tail >= names_.size() || e.head >= names_.size())
      throw Error(ErrorKind::kModelInvalid, "edge endpoint out of range");
    if (e.length <= 0) throw Error(ErrorKind::kModelInvalid, "edge length must be positive", to_string(e.length));
    e.voltage = group_.reduce(e.voltage);
    adjacency_[e.tail].push_back({e.head, e.voltage, e.length});
    adjacency_[e.head].push_back({e.tail, group_.reduce(neg(e.voltage)), e.length});
    if (first || e.length > max_length_) max_length_ = e.length;
    if (first || e.length < min_length_) min_length_ = e.length;
    first = false;
  }

  // Potentials along a spanning tree; the derived graph is connected iff the
  // cycle voltages generate Lambda.
  std::vector<std::optional<IntVec>> potential(names_.size());
  potential[0] = group_.zero();
  std::vector<VertexId> stack{0};
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (const auto& he : adjacency_[u]) {
      if (potential[he.other]) continue;
      potential[he.other] = add(*potential[u], he.shift);
      stack.push_back(he.other);
    }
  }
  for (VertexId v = 0; v < names_.size(); ++v)
    if (!potential[v]) throw Error(ErrorKind::kModelInvalid, "quotient graph is not connected", names_[v]);
  std::vector<IntVec> cycles = group_.torsion_relations();
  for (const auto& e : edges_) cycles.push_back(sub(add(*potential[e.tail], e.voltage), *potential[e.head]));
  Lattice L(group_.dim(), cycles);
  if (!L.full_rank() || L.index() != 1)
    throw Error(ErrorKind::kModelInvalid, "derived graph is not connected (cycle voltages do not generate)");
}

VertexId PeriodicGraph::vertex_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorKind::kModelInvalid, "unknown vertex '" + name + "'");
  return static_cast<VertexId>(it - names_.begin());
}

std::vector<Neighbor> PeriodicGraph::neighbors(const DerivedVertex& x) const {
  std::vector<Neighbor> out;
  out.reserve(adjacency_[x.base].size());
  for (const auto& he : adjacency_[x.base]) out.push_back({{he.other, group_.reduce(add(x.offset, he.shift))}, he.length});
  return out;
}

bool PeriodicGraph::adjacent(const DerivedVertex& x, const DerivedVertex& y) const {
  for (const auto& nb : neighbors(x))
    if (nb.vertex == y) return true;
  return false;
}

Isometry Isometry::identity(const PeriodicGraph& pg) {
  Isometry g;
  g.perm.resize(pg.vertex_count());
  std::iota(g.perm.begin(), g.perm.end(), VertexId{0});
  g.shift.assign(pg.vertex_count(), pg.group().zero());
  return g;
}

Isometry Isometry::translation(const PeriodicGraph& pg, const IntVec& t) {
  Isometry g = identity(pg);
  for (auto& s : g.shift) s = pg.group().reduce(t);
  return g;
}

DerivedVertex Isometry::apply(const VoltageGroup& group, const DerivedVertex& x) const {
  return {perm[x.base], group.reduce(add(x.offset, shift[x.base]))};
}

bool Isometry::is_identity() const {
  for (std::size_t v = 0; v < perm.size(); ++v)
    if (perm[v] != v || !covercraft::is_zero(shift[v])) return false;
  return true;
}

std::string to_string(const Isometry& g) {
  std::ostringstream os;
  for (std::size_t v = 0; v < g.perm.size(); ++v) {
    if (v) os << ' ';
    os << v << '>' << g.perm[v] << '@' << to_string(g.shift[v]);
  }
  return os.str();
}

Isometry compose(const VoltageGroup& group, const Isometry& a, const Isometry& b) {
  Isometry c;
  const std::size_t n = b.perm.size();
  c.perm.resize(n);
  c.shift.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    c.perm[v] = a.perm[b.perm[v]];
    c.shift[v] = group.reduce(add(b.shift[v], a.shift[b.perm[v]]));
  }
  return c;
}

Isometry inverse(const VoltageGroup& group, const Isometry& a) {
  Isometry inv;
  const std::size_t n = a.perm.size();
  inv.perm.resize(n);
  inv.shift.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    inv.perm[a.perm[v]] = v;
    inv.shift[a.perm[v]] = group.reduce(neg(a.shift[v]));
  }
  return inv;
}

Isometry power(const VoltageGroup& group, const Isometry& a, std::int64_t k) {
  Isometry result;
  result.perm.resize(a.perm.size());
  std::iota(result.perm.begin(), result.perm.end(), VertexId{0});
  result.shift.assign(a.perm.size(), group.zero());
  Isometry base = k < 0 ? inverse(group, a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  while (e) {
    if (e & 1) result = compose(group, base, result);
    e >>= 1;
    if (e) base = compose(group, base, base);
  }
  return result;
}

namespace {

struct EdgeKey {
  VertexId tail, head;
  IntVec voltage;
  Rational length;
  bool operator<(const EdgeKey& o) const {
    if (tail != o.tail) return tail < o.tail;
    if (head != o.head) return head < o.head;
    if (voltage != o.voltage) return voltage < o.voltage;
    return length < o.length;
  }
  bool operator==(const EdgeKey& o) const {
    return tail == o.tail && head == o.head && voltage == o.voltage && length == o.length;
  }
};

EdgeKey edge_key(const VoltageGroup& group, VertexId t, VertexId h, const IntVec& volt, const Rational& len) {
  IntVec v = group.reduce(volt);
  if (t > h) {
    std::swap(t, h);
    v = group.reduce(neg(v));
  } else if (t == h) {
    IntVec w = group.reduce(neg(v));
    if (w < v) v = std::move(w);
  }
  return {t, h, std::move(v), len};
}

}  // namespace

bool is_graph_isometry(const PeriodicGraph& pg, const Isometry& g) {
  const auto& group = pg.group();
  const std::size_t n = pg.vertex_count();
  if (g.perm.size() != n || g.shift.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto v : g.perm) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  std::vector<EdgeKey> before, after;
  for (const auto& e : pg.edges()) {
    before.push_back(edge_key(group, e.tail, e.head, e.voltage, e.length));
    after.push_back(edge_key(group, g.perm[e.tail], g.perm[e.head],
                             sub(add(e.voltage, g.shift[e.head]), g.shift[e.tail]), e.length));
  }
  std::sort(before.begin(), before.end());
  std::sort(after.begin(), after.end());
  return before == after;
}

IsometryGroupIndex::IsometryGroupIndex(const PeriodicGraph& pg, std::vector<Isometry> generators)
    : group_(pg.group()), space_rank_(generators.size()), generators_(std::move(generators)) {
  const std::size_t m = generators_.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!(compose(group_, generators_[i], generators_[j]) == compose(group_, generators_[j], generators_[i])))
        throw Error(ErrorKind::kModelInvalid, "generator images do not commute",
                    std::to_string(i) + "," + std::to_string(j));

  // Cosets of the permutation-trivial subgroup, by breadth-first search on permutations.
  std::map<std::vector<VertexId>, std::size_t> by_perm;
  cosets_.push_back({IntVec(m, 0), Isometry::identity(pg)});
  by_perm[cosets_[0].iso.perm] = 0;
  for (std::size_t head = 0; head < cosets_.size(); ++head)
    for (std::size_t j = 0; j < m; ++j) {
      Isometry next = compose(group_, generators_[j], cosets_[head].iso);
      if (by_perm.count(next.perm)) continue;
      by_perm[next.perm] = cosets_.size();
      cosets_.push_back({add(cosets_[head].lift, unit_vector(m, j)), std::move(next)});
    }

  // Schreier generators of the permutation-trivial subgroup.
  for (const auto& c : cosets_)
    for (std::size_t j = 0; j < m; ++j) {
      Isometry moved = compose(group_, generators_[j], c.iso);
      const Coset& rep = cosets_[by_perm.at(moved.perm)];
      Isometry k_iso = compose(group_, inverse(group_, rep.iso), moved);
      for (std::size_t v = 1; v < k_iso.shift.size(); ++v)
        if (k_iso.shift[v] != k_iso.shift[0])
          throw Error(ErrorKind::kModelInvalid,
                      "unsupported action: a permutation-trivial element shifts vertices unequally",
                      to_string(k_iso));
      IntVec k = sub(add(c.lift, unit_vector(m, j)), rep.lift);
      if (covercraft::is_zero(k)) continue;
      kernel_gens_.push_back(std::move(k));
      kernel_shifts_.push_back(k_iso.shift.empty() ? group_.zero() : k_iso.shift[0]);
    }

  std::vector<IntVec> lat_gens = kernel_shifts_;
  const auto tors = group_.torsion_relations();
  lat_gens.insert(lat_gens.end(), tors.begin(), tors.end());
  translation_lattice_ = Lattice(group_.dim(), lat_gens);

  IntMatrix A(group_.dim(), lat_gens.size());
  for (std::size_t c = 0; c < lat_gens.size(); ++c)
    for (std::size_t r = 0; r < group_.dim(); ++r) A(r, c) = static_cast<long>(lat_gens[c][r]);
  translation_solver_ = IntegerSolver(A);

  std::vector<IntVec> kern;
  IntMatrix K = integer_kernel(A);
  for (std::size_t r = 0; r < K.rows(); ++r) {
    IntVec g(m, 0);
    for (std::size_t j = 0; j < kernel_gens_.size(); ++j) {
      const std::int64_t a = to_int64(K(r, j));
      if (a != 0) g = add(g, scale(kernel_gens_[j], a));
    }
    kern.push_back(std::move(g));
  }
  kernel_ = Lattice(m, kern);
}

Isometry IsometryGroupIndex::image(const IntVec& g) const {
  if (g.size() != generators_.size()) throw Error(ErrorKind::kArgument, "group element of wrong rank");
  Isometry out = cosets_.front().iso;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g[j] != 0) out = compose(group_, power(group_, generators_[j], g[j]), out);
  return out;
}

std::vector<IntVec> IsometryGroupIndex::solutions(const DerivedVertex& x, const DerivedVertex& y) const {
  std::vector<IntVec> out;
  for (const auto& c : cosets_) {
    if (c.iso.perm[x.base] != y.base) continue;
    DerivedVertex moved = c.iso.apply(group_, x);
    IntVec tau = sub(y.offset, moved.offset);
    std::vector<BigInt> rhs(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) rhs[i] = static_cast<long>(tau[i]);
    auto sol = translation_solver_.solve(rhs);
    if (!sol) continue;
    IntVec g = c.lift;
    for (std::size_t j = 0; j < kernel_gens_.size(); ++j) {
      const std::int64_t a = to_int64((*sol)[j]);
      if (a != 0) g = add(g, scale(kernel_gens_[j], a));
    }
    out.push_back(kernel_.reduce(g));
  }
  return out;
}

DerivedVertex IsometryGroupIndex::orbit_representative(const DerivedVertex& x) const {
  std::optional<DerivedVertex> best;
  for (const auto& c : cosets_) {
    DerivedVertex y = c.iso.apply(group_, x);
    y.offset = translation_lattice_.reduce(y.offset);
    if (!best || y < *best) best = std::move(y);
  }
  return *best;
}

LatticeAction::LatticeAction(PeriodicGraph pg, std::vector<Isometry> generator_images)
    : graph_(std::move(pg)), generators_(std::move(generator_images)) {
  if (generators_.empty()) throw Error(ErrorKind::kModelInvalid, "action needs rank >= 1");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    auto& g = generators_[i];
    if (g.perm.size() != graph_.vertex_count() || g.shift.size() != graph_.vertex_count())
      throw Error(ErrorKind::kModelInvalid, "generator image has wrong vertex count", std::to_string(i));
    for (auto& s : g.shift) s = graph_.group().reduce(s);
    if (!is_graph_isometry(graph_, g))
      throw Error(ErrorKind::kModelInvalid, "generator image is not an isometry of the derived graph",
                  std::to_string(i));
  }
  index_ = IsometryGroupIndex(graph_, generators_);
}

DerivedVertex LatticeAction::apply(const IntVec& g, const DerivedVertex& x) const {
  return image(g).apply(graph_.group(), x);
}

bool Ball::contains(const DerivedVertex& v) const { return lookup_.count(v) > 0; }

std::optional<Rational> Ball::distance_to(const DerivedVertex& v) const {
  auto it = lookup_.find(v);
  if (it == lookup_.end()) return std::nullopt;
  return distances[it->second];
}

namespace {

std::size_t g_node_budget = kDefaultNodeBudget;

std::size_t resolve(std::size_t budget) { return budget == 0 ? g_node_budget : budget; }

}  // namespace

std::size_t node_budget() { return g_node_budget; }

void set_node_budget(std::size_t nodes) { g_node_budget = nodes == 0 ? kDefaultNodeBudget : nodes; }

namespace {

struct Settled {
  std::vector<DerivedVertex> order;
  std::vector<Rational> dist;
};

// Dijkstra from source; keeps vertices with d < bound (or d <= bound when inclusive).
// Stops early once target is settled.
Settled dijkstra(const PeriodicGraph& pg, const DerivedVertex& source, const std::optional<Rational>& bound,
                 bool inclusive, const DerivedVertex* target, std::size_t budget) {
  using Item = std::pair<Rational, DerivedVertex>;
  auto cmp = [](const Item& a, const Item& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  std::unordered_map<DerivedVertex, Rational, DerivedVertexHash> best;
  std::unordered_set<DerivedVertex, DerivedVertexHash> done;
  auto admissible = [&](const Rational& d) {
    if (!bound) return true;
    return inclusive ? d <= *bound : d < *bound;
  };
  Settled out;
  if (!admissible(Rational(0))) return out;
  best.emplace(source, Rational(0));
  pq.push({Rational(0), source});
  while (!pq.empty()) {
    Item it = pq.top();
    pq.pop();
    if (done.count(it.second)) continue;
    done.insert(it.second);
    out.order.push_back(it.second);
    out.dist.push_back(it.first);
    if (out.order.size() > budget)
      throw Error(ErrorKind::kResourceBudget, "ball expansion exceeded the node budget",
                  std::to_string(budget));
    if (target && it.second == *target) break;
    for (auto& nb : pg.neighbors(it.second)) {
      Rational nd = it.first + nb.length;
      if (!admissible(nd) || done.count(nb.vertex)) continue;
      auto f = best.find(nb.vertex);
      if (f != best.end() && f->second <= nd) continue;
      best[nb.vertex] = nd;
      pq.push({std::move(nd), std::move(nb.vertex)});
    }
  }
  return out;
}

}  // namespace

Ball derived_ball(const PeriodicGraph& pg, const DerivedVertex& center, const Rational& radius,
                  std::size_t budget) {
  if (radius <= 0) throw Error(ErrorKind::kArgument, "ball radius must be positive");
  Settled s = dijkstra(pg, center, radius, false, nullptr, resolve(budget));
  Ball b;
  b.center = center;
  b.radius = radius;
  b.vertices = std::move(s.order);
  b.distances = std::move(s.dist);
  for (std::size_t i = 0; i < b.vertices.size(); ++i) b.lookup_[b.vertices[i]] = i;

  std::vector<bool> seen(b.vertices.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (const auto& nb : pg.neighbors(b.vertices[i])) {
      auto it = b.lookup_.find(nb.vertex);
      if (it == b.lookup_.end()) {
        b.cuts_edges = true;
        continue;
      }
      if (!seen[it->second]) {
        seen[it->second] = true;
        ++reached;
        stack.push_back(it->second);
      }
    }
  }
  b.induced_connected = reached == b.vertices.size();
  return b;
}

std::vector<Rational> attained_distances(const PeriodicGraph& pg, const DerivedVertex& center, const Rational& lo,
                                         const Rational& hi) {
  Settled s = dijkstra(pg, center, hi, true, nullptr, resolve(0));
  std::vector<Rational> out;
  for (const auto& d : s.dist)
    if (d >= lo && (out.empty() || out.back() != d)) out.push_back(d);
  return out;
}

void require_no_radius_tie(const PeriodicGraph& pg, const DerivedVertex& center, const Rational& radius,
                           const std::string& what) {
  auto hits = attained_distances(pg, center, radius, radius);
  if (!hits.empty())
    throw Error(ErrorKind::kTie, what + " = " + to_string(radius) + " is an attained distance; perturb it",
                to_string(radius));
}

namespace {

// Lower bounds c |<sigma, offset difference>| from sign vectors sigma on the free
// coordinates, where c = min over edges of length / |<sigma, voltage>|. Each one
// changes by at most the edge length across an edge, so their max is consistent.
struct OffsetPotential {
  std::vector<std::size_t> coords;
  std::vector<std::pair<std::vector<int>, Rational>> terms;

  explicit OffsetPotential(const PeriodicGraph& pg) {
    const auto& mod = pg.group().moduli();
    for (std::size_t i = 0; i < mod.size(); ++i)
      if (mod[i] == 0) coords.push_back(i);
    if (coords.empty() || coords.size() > 4) return;
    std::vector<int> sigma(coords.size(), -1);
    while (true) {
      // One of sigma, -sigma: first nonzero entry positive.
      auto first = std::find_if(sigma.begin(), sigma.end(), [](int s) { return s != 0; });
      if (first != sigma.end() && *first > 0) {
        std::optional<Rational> c;
        for (const auto& e : pg.edges()) {
          std::int64_t dot = 0;
          for (std::size_t k = 0; k < coords.size(); ++k) dot += sigma[k] * e.voltage[coords[k]];
          if (dot == 0) continue;
          Rational r = e.length / Rational(static_cast<long>(std::llabs(dot)));
          if (!c || r < *c) c = r;
        }
        if (c && *c > 0) terms.push_back({sigma, *c});
      }
      std::size_t k = 0;
      while (k < sigma.size() && sigma[k] == 1) sigma[k++] = -1;
      if (k == sigma.size()) break;
      ++sigma[k];
    }
  }

  Rational operator()(const DerivedVertex& v, const DerivedVertex& target) const {
    Rational h = 0;
    for (const auto& [sigma, c] : terms) {
      std::int64_t dot = 0;
      for (std::size_t k = 0; k < coords.size(); ++k)
        dot += sigma[k] * (target.offset[coords[k]] - v.offset[coords[k]]);
      Rational t = c * static_cast<long>(std::llabs(dot));
      if (t > h) h = t;
    }
    return h;
  }
};

}  // namespace

Rational distance(const PeriodicGraph& pg, const DerivedVertex& x, const DerivedVertex& y, std::size_t budget) {
  if (x == y) return 0;
  const OffsetPotential h(pg);
  const std::size_t limit = resolve(budget);
  // A* keyed on g + h; the potential is consistent, so settled labels are exact.
  using Item = std::tuple<Rational, Rational, DerivedVertex>;
  auto cmp = [](const Item& a, const Item& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::get<2>(a) > std::get<2>(b);
  };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
  std::unordered_map<DerivedVertex, Rational, DerivedVertexHash> best;
  std::unordered_set<DerivedVertex, DerivedVertexHash> done;
  best.emplace(x, Rational(0));
  pq.push({h(x, y), Rational(0), x});
  while (!pq.empty()) {
    auto [f, g, v] = pq.top();
    pq.pop();
    if (!done.insert(v).second) continue;
    if (v == y) return g;
    if (done.size() > limit)
      throw Error(ErrorKind::kResourceBudget, "ball expansion exceeded the node budget", std::to_string(limit));
    for (auto& nb : pg.neighbors(v)) {
      if (done.count(nb.vertex)) continue;
      Rational nd = g + nb.length;
      auto it = best.find(nb.vertex);
      if (it != best.end() && it->second <= nd) continue;
      best[nb.vertex] = nd;
      Rational key = nd + h(nb.vertex, y);
      pq.push({std::move(key), std::move(nd), std::move(nb.vertex)});
    }
  }
  throw Error(ErrorKind::kModelInvalid, "target vertex unreachable", to_string(y));
}

Rational displacement(const LatticeAction& action, const IntVec& g, const DerivedVertex& p) {
  return distance(action.graph(), action.apply(g, p), p);
}

QuotientMetric quotient_metric(const LatticeAction& action, const std::vector<IntVec>& subgroup_basis,
                               const DerivedVertex& basepoint, std::size_t class_budget) {
  const auto& pg = action.graph();
  std::vector<Isometry> gens;
  for (const auto& b : subgroup_basis) gens.push_back(action.image(b));
  IsometryGroupIndex sub(pg, gens);

  QuotientMetric q;
  q.continuum_gap = pg.max_edge_length() / 2;
  if (!sub.cocompact()) {
    q.infinite = true;
    return q;
  }

  std::map<DerivedVertex, std::size_t> index;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> adj;
  auto intern = [&](const DerivedVertex& v) {
    DerivedVertex c = sub.orbit_representative(v);
    auto [it, fresh] = index.emplace(c, q.classes.size());
    if (fresh) {
      if (q.classes.size() >= class_budget)
        throw Error(ErrorKind::kResourceBudget, "quotient has too many vertex classes",
                    std::to_string(class_budget));
      q.classes.push_back(c);
      adj.emplace_back();
    }
    return it->second;
  };
  q.basepoint = intern(basepoint);
  for (std::size_t head = 0; head < q.classes.size(); ++head) {
    const DerivedVertex rep = q.classes[head];
    for (const auto& nb : pg.neighbors(rep)) {
      std::size_t j = intern(nb.vertex);
      adj[head].push_back({j, nb.length});
    }
  }

  const std::size_t k = q.classes.size();
  q.dist.assign(k, std::vector<Rational>(k));
  q.diameter = 0;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<std::optional<Rational>> d(k);
    std::vector<bool> done(k, false);
    using Item = std::pair<Rational, std::size_t>;
    auto cmp = [](const Item& a, const Item& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second > b.second;
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    d[s] = Rational(0);
    pq.push({Rational(0), s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = true;
      for (const auto& [v, len] : adj[u]) {
        Rational nd = du + len;
        if (!d[v] || nd < *d[v]) {
          d[v] = nd;
          pq.push({nd, v});
        }
      }
    }
    for (std::size_t t = 0; t < k; ++t) {
      q.dist[s][t] = *d[t];
      if (*d[t] > q.diameter) q.diameter = *d[t];
    }
  }
  return q;
}

QuotientDiameter quotient_diameter(const LatticeAction& action, const std::vector<IntVec>& subgroup_basis,
                                   const DerivedVertex& basepoint) {
  QuotientMetric q = quotient_metric(action, subgroup_basis, basepoint);
  return {q.infinite, q.diameter, q.continuum_gap, q.classes.size()};
}

}  // namespace covercraft
