#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "covercraft/integer_matrix.hpp"
#include "covercraft/numeric.hpp"

namespace covercraft {

// Lambda = Z^k x (Z/m_1 x ...), one modulus per coordinate; modulus 0 is a free coordinate.
class VoltageGroup {
public:
  VoltageGroup() = default;
  explicit VoltageGroup(std::vector<std::int64_t> moduli);

  std::size_t dim() const { return moduli_.size(); }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t free_rank() const;
  IntVec reduce(IntVec v) const;
  IntVec zero() const { return IntVec(dim(), 0); }
  // m_i e_i for every torsion coordinate.
  std::vector<IntVec> torsion_relations() const;

private:
  std::vector<std::int64_t> moduli_;
};

using VertexId = std::size_t;

struct QuotientEdge {
  VertexId tail = 0;
  VertexId head = 0;
  Rational length;
  IntVec voltage;
};

struct DerivedVertex {
  VertexId base = 0;
  IntVec offset;
  auto operator<=>(const DerivedVertex&) const = default;
  bool operator==(const DerivedVertex&) const = default;
};

struct DerivedVertexHash {
  std::size_t operator()(const DerivedVertex& v) const noexcept {
    return IntVecHash{}(v.offset) * 31 + v.base;
  }
};

std::string to_string(const DerivedVertex& v);

struct Neighbor {
  DerivedVertex vertex;
  Rational length;
};

// Finite voltage graph; its derived graph is the periodic space.
class PeriodicGraph {
public:
  PeriodicGraph() = default;
  PeriodicGraph(VoltageGroup group, std::vector<std::string> vertex_names, std::vector<QuotientEdge> edges);

  const VoltageGroup& group() const { return group_; }
  std::size_t vertex_count() const { return names_.size(); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::vector<QuotientEdge>& edges() const { return edges_; }
  VertexId vertex_index(const std::string& name) const;
  const Rational& max_edge_length() const { return max_length_; }
  const Rational& min_edge_length() const { return min_length_; }

  std::vector<Neighbor> neighbors(const DerivedVertex& x) const;
  DerivedVertex vertex(VertexId base, IntVec offset) const { return {base, group_.reduce(std::move(offset))}; }
  bool adjacent(const DerivedVertex& x, const DerivedVertex& y) const;

private:
  struct HalfEdge {
    VertexId other;
    IntVec shift;
    Rational length;
  };
  VoltageGroup group_;
  std::vector<std::string> names_;
  std::vector<QuotientEdge> edges_;
  std::vector<std::vector<HalfEdge>> adjacency_;
  Rational max_length_;
  Rational min_length_;
};

// (v, lambda) -> (perm[v], lambda + shift[v]).
struct Isometry {
  std::vector<VertexId> perm;
  std::vector<IntVec> shift;

  static Isometry identity(const PeriodicGraph& pg);
  static Isometry translation(const PeriodicGraph& pg, const IntVec& t);
  DerivedVertex apply(const VoltageGroup& group, const DerivedVertex& x) const;
  bool is_identity() const;
  bool operator==(const Isometry&) const = default;
  auto operator<=>(const Isometry&) const = default;
};

std::string to_string(const Isometry& g);

// a after b
Isometry compose(const VoltageGroup& group, const Isometry& a, const Isometry& b);
Isometry inverse(const VoltageGroup& group, const Isometry& a);
Isometry power(const VoltageGroup& group, const Isometry& a, std::int64_t k);
// Edge-bijective and length-preserving on the derived graph.
bool is_graph_isometry(const PeriodicGraph& pg, const Isometry& g);

// Structure of the abelian group generated by commuting isometries g_1..g_m,
// viewed as the image of Z^m. Elements whose vertex permutation is trivial must act
// as a single translation of Lambda.
class IsometryGroupIndex {
public:
  IsometryGroupIndex() = default;
  IsometryGroupIndex(const PeriodicGraph& pg, std::vector<Isometry> generators);

  std::size_t rank() const { return generators_.size(); }
  Isometry image(const IntVec& g) const;
  // Z^m-elements acting trivially.
  const Lattice& kernel() const { return kernel_; }
  bool faithful() const { return kernel_.rank() == 0; }
  // One element of Z^m per distinct isometry in the group mapping x to y.
  std::vector<IntVec> solutions(const DerivedVertex& x, const DerivedVertex& y) const;
  // Canonical representative of the orbit of x.
  DerivedVertex orbit_representative(const DerivedVertex& x) const;
  // Whether the translation part has full rank in Lambda (finitely many orbits).
  bool cocompact() const { return translation_lattice_.full_rank(); }
  std::size_t coset_count() const { return cosets_.size(); }

private:
  struct Coset {
    IntVec lift;
    Isometry iso;
  };
  VoltageGroup group_;
  std::size_t space_rank_ = 0;
  std::vector<Isometry> generators_;
  std::vector<Coset> cosets_;
  std::vector<IntVec> kernel_gens_;      // Z^m elements with trivial permutation
  std::vector<IntVec> kernel_shifts_;    // their translations in Lambda
  Lattice translation_lattice_;          // in Z^dim, including torsion relations
  IntegerSolver translation_solver_;
  Lattice kernel_;
};

// Homomorphism Z^N -> Iso(derived graph).
class LatticeAction {
public:
  LatticeAction() = default;
  LatticeAction(PeriodicGraph pg, std::vector<Isometry> generator_images);

  const PeriodicGraph& graph() const { return graph_; }
  std::size_t rank() const { return index_.rank(); }
  const std::vector<Isometry>& generators() const { return generators_; }
  const IsometryGroupIndex& index() const { return index_; }
  Isometry image(const IntVec& g) const { return index_.image(g); }
  DerivedVertex apply(const IntVec& g, const DerivedVertex& x) const;
  bool faithful() const { return index_.faithful(); }
  const Lattice& kernel() const { return index_.kernel(); }

private:
  PeriodicGraph graph_;
  std::vector<Isometry> generators_;
  IsometryGroupIndex index_;
};

// Open ball {x : d(x, center) < radius}.
struct Ball {
  DerivedVertex center;
  Rational radius;
  std::vector<DerivedVertex> vertices;  // ordered by (distance, vertex)
  std::vector<Rational> distances;
  bool induced_connected = true;
  bool cuts_edges = false;  // some edge leaves the ball

  std::size_t size() const { return vertices.size(); }
  bool contains(const DerivedVertex& v) const;
  std::optional<Rational> distance_to(const DerivedVertex& v) const;

private:
  friend Ball derived_ball(const PeriodicGraph&, const DerivedVertex&, const Rational&, std::size_t);
  std::unordered_map<DerivedVertex, std::size_t, DerivedVertexHash> lookup_;
};

inline constexpr std::size_t kDefaultNodeBudget = 5'000'000;
// Budget used when a call passes 0.
std::size_t node_budget();
void set_node_budget(std::size_t nodes);

Ball derived_ball(const PeriodicGraph& pg, const DerivedVertex& center, const Rational& radius,
                  std::size_t budget = 0);

// Distances d(center, x) attained by vertices with lo <= d <= hi.
std::vector<Rational> attained_distances(const PeriodicGraph& pg, const DerivedVertex& center, const Rational& lo,
                                         const Rational& hi);
// Throws a kTie error when some vertex sits exactly at distance radius.
void require_no_radius_tie(const PeriodicGraph& pg, const DerivedVertex& center, const Rational& radius,
                           const std::string& what);

Rational distance(const PeriodicGraph& pg, const DerivedVertex& x, const DerivedVertex& y,
                  std::size_t budget = 0);
Rational displacement(const LatticeAction& action, const IntVec& g, const DerivedVertex& p);

// Vertex-level quotient of the derived graph by the image of a subgroup of Z^N.
struct QuotientMetric {
  bool infinite = false;
  std::vector<DerivedVertex> classes;  // canonical orbit representatives
  std::vector<std::vector<Rational>> dist;
  std::size_t basepoint = 0;
  Rational diameter;
  Rational continuum_gap;  // continuous diameter exceeds the vertex-level one by at most this
};

QuotientMetric quotient_metric(const LatticeAction& action, const std::vector<IntVec>& subgroup_basis,
                               const DerivedVertex& basepoint, std::size_t class_budget = 20000);

struct QuotientDiameter {
  bool infinite = false;
  Rational diameter;
  Rational continuum_gap;
  std::size_t classes = 0;
};

QuotientDiameter quotient_diameter(const LatticeAction& action, const std::vector<IntVec>& subgroup_basis,
                                   const DerivedVertex& basepoint);

}  // namespace covercraft
