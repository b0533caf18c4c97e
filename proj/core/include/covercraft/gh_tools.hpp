#pragma once

#include <optional>
#include <vector>

#include "covercraft/periodic_space.hpp"

namespace covercraft {

class FiniteMetricSpace {
public:
  FiniteMetricSpace() = default;
  explicit FiniteMetricSpace(std::vector<std::vector<Rational>> dist, std::optional<std::size_t> basepoint = {});

  std::size_t size() const { return dist_.size(); }
  const Rational& d(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  const std::vector<std::vector<Rational>>& matrix() const { return dist_; }
  const std::optional<std::size_t>& basepoint() const { return basepoint_; }
  Rational diameter() const;

private:
  std::vector<std::vector<Rational>> dist_;
  std::optional<std::size_t> basepoint_;
};

inline constexpr std::size_t kMaxGhPoints = 14;

// Half the least distortion over correspondences; basepoints are paired when both
// spaces carry one and pointed is set.
Rational gh_distance_exact(const FiniteMetricSpace& A, const FiniteMetricSpace& B, bool pointed = true);

struct QuotientSpace {
  bool infinite = false;
  FiniteMetricSpace space;
  std::vector<DerivedVertex> classes;
};

// Vertex-level quotient by the subgroup, restricted to classes of vertices within
// window_radius of p (all classes when window_radius is 0); basepoint [p].
QuotientSpace quotient_space(const LatticeAction& action, const std::vector<IntVec>& subgroup_basis,
                             const DerivedVertex& p, const Rational& window_radius = 0);

}  // namespace covercraft
