#pragma once

#include <optional>
#include <vector>

#include "covercraft/abelian_groups.hpp"
#include "covercraft/periodic_space.hpp"

namespace covercraft {

// {g : d(gp, p) < R}, one lift per distinct isometry, closed under negation.
// Requires R > 2 diam(X/G) and that the set generates.
WordSet milnor_svarc_generators(const LatticeAction& action, const DerivedVertex& p, const Rational& R);

struct SeparationResult {
  bool separated = true;
  std::vector<IntVec> certificate;  // sublattice elements with d(gp, p) < D
  std::optional<IntVec> witness;
  Rational witness_displacement;
};

SeparationResult verify_separation(const LatticeAction& action, const DerivedVertex& p,
                                   const std::vector<IntVec>& basis, const Rational& D);

struct DoublingStep {
  std::size_t measure = 0;  // |F| before the step
  IntVec w;
  Rational w_displacement;
  int doublings = 0;
  IntVec replacement;
  Rational replacement_displacement;
};

struct ShortBasisResult {
  Rational D;
  Rational initial_radius;
  std::vector<IntVec> basis;
  std::vector<Rational> displacements;
  BigInt index;
  SeparationResult separation;
  std::vector<DoublingStep> log;
  bool displacements_within_2D() const;
  bool measure_strictly_decreasing() const;
};

ShortBasisResult gromov_short_basis(const LatticeAction& action, const DerivedVertex& p, const Rational& D,
                                    std::size_t max_iterations = 10000);

}  // namespace covercraft
