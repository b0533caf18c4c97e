#include "covercraft/models.hpp"

#include "covercraft/error.hpp"

namespace covercraft::models {

namespace {

Model translations(std::string name, PeriodicGraph pg, const std::vector<IntVec>& shifts, bool tree = false) {
  std::vector<Isometry> gens;
  for (const auto& s : shifts) gens.push_back(Isometry::translation(pg, s));
  DerivedVertex p{0, pg.group().zero()};
  return {std::move(name), LatticeAction(std::move(pg), std::move(gens)), std::move(p), tree};
}

std::vector<IntVec> units(std::size_t n) {
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(unit_vector(n, i));
  return out;
}

}  // namespace

Model rose(std::size_t n) {
  std::vector<QuotientEdge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({0, 0, Rational(1), unit_vector(n, i)});
  PeriodicGraph pg(VoltageGroup(std::vector<std::int64_t>(n, 0)), {"o"}, edges);
  return translations("rose" + std::to_string(n), std::move(pg), units(n));
}

Model grid() {
  Model m = rose(2);
  m.name = "grid";
  return m;
}

Model weighted_grid() {
  PeriodicGraph pg(VoltageGroup({0, 0}), {"o"},
                   {{0, 0, Rational(1), {1, 0}}, {0, 0, Rational(3, 2), {0, 1}}});
  return translations("weighted_grid", std::move(pg), units(2));
}

Model honeycomb() {
  const Rational h(1, 2);
  PeriodicGraph pg(VoltageGroup({0, 0}), {"a", "b"}, {{0, 1, h, {0, 0}}, {0, 1, h, {1, 0}}, {0, 1, h, {0, 1}}});
  return translations("honeycomb", std::move(pg), units(2));
}

namespace {

PeriodicGraph cylinder_graph(std::int64_t m) {
  return PeriodicGraph(VoltageGroup({m, 0}), {"o"}, {{0, 0, Rational(1), {1, 0}}, {0, 0, Rational(1), {0, 1}}});
}

}  // namespace

Model cylinder(std::int64_t m) {
  return translations("cylinder" + std::to_string(m), cylinder_graph(m), units(2));
}

Model cylinder_completion(std::int64_t m) {
  return translations("cylinder_completion" + std::to_string(m), cylinder_graph(m), {{0, 1}});
}

Model rank3_grid() {
  Model m = rose(3);
  m.name = "rank3_grid";
  return m;
}

Model rotation_torus(std::int64_t m, std::int64_t h, std::int64_t step) {
  PeriodicGraph pg(VoltageGroup({m, h}), {"o"}, {{0, 0, Rational(1), {1, 0}}, {0, 0, Rational(1), {0, 1}}});
  return translations("rotation_torus", std::move(pg), {{step, 0}});
}

std::vector<DerivedVertex> strip_region(const Model& model, std::int64_t wide, std::int64_t narrow_rows) {
  const auto& pg = model.action.graph();
  const auto& mod = pg.group().moduli();
  if (pg.vertex_count() != 1 || mod.size() != 2 || mod[0] == 0 || mod[1] == 0)
    throw Error(ErrorKind::kArgument, "strip regions need the one-vertex torus model");
  if (wide < 0 || narrow_rows < 0 || narrow_rows >= mod[1] || 2 * wide + 1 > mod[0])
    throw Error(ErrorKind::kArgument, "strip region does not fit the torus");
  std::vector<DerivedVertex> out;
  for (std::int64_t z = 0; z < mod[1]; ++z) {
    const std::int64_t w = z < mod[1] - narrow_rows ? wide : 0;
    for (std::int64_t th = -w; th <= w; ++th) out.push_back(pg.vertex(0, {th, z}));
  }
  return out;
}

Model line() {
  PeriodicGraph pg(VoltageGroup({0}), {"o"}, {{0, 0, Rational(1), {1}}});
  return translations("line", std::move(pg), {{1}}, true);
}

Model comb() {
  PeriodicGraph pg(VoltageGroup({0}), {"a", "b"}, {{0, 0, Rational(1), {1}}, {0, 1, Rational(1), {0}}});
  return translations("comb", std::move(pg), {{1}}, true);
}

Model line_doubled_action() {
  PeriodicGraph pg(VoltageGroup({0}), {"o"}, {{0, 0, Rational(1), {1}}});
  return translations("line_doubled_action", std::move(pg), {{1}, {1}}, true);
}

Model subdivided_line(std::size_t k) {
  if (k == 0) throw Error(ErrorKind::kArgument, "subdivision count must be >= 1");
  std::vector<std::string> names;
  std::vector<QuotientEdge> edges;
  const Rational len(1, static_cast<long>(k));
  for (std::size_t i = 0; i < k; ++i) {
    names.push_back("v" + std::to_string(i));
    edges.push_back({i, (i + 1) % k, len, {i + 1 == k ? 1 : 0}});
  }
  PeriodicGraph pg(VoltageGroup({0}), names, edges);
  return translations("subdivided_line" + std::to_string(k), std::move(pg), {{1}}, true);
}

std::vector<Model> short_basis_suite() {
  return {grid(), honeycomb(), weighted_grid(), cylinder_completion(5), rank3_grid()};
}

std::vector<Model> tree_suite() { return {line(), comb(), line_doubled_action(), subdivided_line(3)}; }

}  // namespace covercraft::models
