#pragma once

#include <string>
#include <vector>

#include "covercraft/periodic_space.hpp"

namespace covercraft::models {

struct Model {
  std::string name;
  LatticeAction action;
  DerivedVertex basepoint;
  bool tree = false;  // derived graph is a tree
};

// One vertex with a unit loop per coordinate of Z^n; Z^n acts by translation.
Model rose(std::size_t n);
Model grid();
Model weighted_grid();
// Two vertices a, b joined by three edges of length 1/2 with voltages 0, e1, e2.
Model honeycomb();
// Z/m x Z voltages on the two-loop rose; Z^2 acts by the two unit translations.
Model cylinder(std::int64_t m);
// Same space with only the free direction acting.
Model cylinder_completion(std::int64_t m);
Model rank3_grid();

// Z/m x Z/h voltages on the two-loop rose, Z acting by the rotation (step, 0).
Model rotation_torus(std::int64_t m, std::int64_t h, std::int64_t step);
// Every row of the torus; angular width 2*wide+1 except on the last narrow_rows rows,
// where it is 1.
std::vector<DerivedVertex> strip_region(const Model& model, std::int64_t wide, std::int64_t narrow_rows);

Model line();
Model comb();
// Z^2 acting on the line through (a, b) -> a + b.
Model line_doubled_action();
// Line subdivided into k edges of length 1/k per period.
Model subdivided_line(std::size_t k);

std::vector<Model> short_basis_suite();
std::vector<Model> tree_suite();

}  // namespace covercraft::models
