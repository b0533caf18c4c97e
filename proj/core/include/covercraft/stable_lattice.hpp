#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/periodic_space.hpp"

namespace covercraft {

using RealVec = std::vector<double>;

struct StableNormEstimate {
  Rational upper;  // d(g^K p, p) / K
  Rational gap;    // against K/2; zero when K = 1
  std::size_t K = 1;
};

StableNormEstimate stable_norm_estimate(const LatticeAction& action, const DerivedVertex& p, const IntVec& g,
                                        std::size_t K);

enum class NormKind { kL1, kL2, kLinf, kPolyhedral };

class NormModel {
public:
  static NormModel analytic(NormKind kind, std::size_t n, Rational C = 0);
  // Polyhedral gauge through the points g / ||g||_st for primitive g with max |g_i| <= direction_radius.
  static NormModel estimated(const LatticeAction& action, const DerivedVertex& p, std::size_t K, Rational C = 0,
                             int direction_radius = 2);
  // Same gauge built from explicit (direction, value) data.
  static NormModel polyhedral(std::size_t n, const std::vector<std::pair<IntVec, double>>& values, Rational C = 0);

  std::size_t n() const { return n_; }
  NormKind kind() const { return kind_; }
  const Rational& C() const { return C_; }
  void set_C(Rational C, bool empirical);
  bool C_empirical() const { return C_empirical_; }
  const std::string& source() const { return source_; }
  std::size_t K() const { return K_; }
  std::string name() const;

  double operator()(const RealVec& v) const;
  double operator()(const IntVec& v) const;
  double dual(const RealVec& u) const;
  // Vertices of the dual unit ball when known exactly.
  std::vector<RealVec> dual_vertices() const;
  const std::vector<RealVec>& facets() const { return facets_; }

private:
  std::size_t n_ = 0;
  NormKind kind_ = NormKind::kL2;
  Rational C_;
  bool C_empirical_ = false;
  std::string source_ = "analytic";
  std::size_t K_ = 0;
  std::vector<RealVec> facets_;  // ||v|| = max <a, v>
  std::vector<RealVec> points_;  // boundary points of the unit ball
};

// max |d(gp, p) - ||g||| over g with max |g_i| <= radius.
Rational empirical_comparison_constant(const NormModel& nm, const LatticeAction& action, const DerivedVertex& p,
                                       int radius);

struct SandwichCheck {
  bool passed = true;
  std::size_t samples = 0;
  double worst_lower = 0;  // min of ||alpha v|| - |v|/sqrt(n)
  double worst_upper = 0;  // min of |v| - ||alpha v||
  RealVec worst_direction;
};

struct JohnTransform {
  std::size_t n = 0;
  std::vector<RealVec> alpha;  // rows
  std::vector<RealVec> alpha_inv;
  std::vector<RealVec> certified_samples;
  SandwichCheck certificate;
  std::size_t iterations = 0;

  RealVec apply(const RealVec& v) const;
  RealVec apply_inverse(const RealVec& v) const;
  double operator_norm() const;
};

JohnTransform john_transform(const NormModel& nm, std::size_t samples, double tol, std::uint64_t seed = 1);

// Sandwich |v|/sqrt(n) <= ||alpha v|| <= |v| on `count` random unit directions.
SandwichCheck certify_sandwich(const JohnTransform& jt, const NormModel& nm, std::size_t count, double tol,
                               std::uint64_t seed);

struct SublatticeCertificate {
  std::size_t n = 0;
  Rational D, C, M, D_prime;
  Rational rounding_bound;  // n (2D + C)
  std::vector<RealVec> targets;  // alpha v_i
  std::vector<IntVec> basis;
  std::vector<double> rounding_errors;
  bool independent = false;
  BigInt index;
  // Over nonzero coefficient vectors in {-2..2}^n.
  double box_min_preimage = 0;  // min |alpha^-1 g|_2
  double box_min_norm = 0;      // min ||g||
  bool box_separation = false;  // |alpha^-1 g|_2 >= D + C
  bool box_separation_sqrt_n = false;  // |alpha^-1 g|_2 >= sqrt(n) (D + C)
  bool box_norm_separation = false;    // ||g|| >= D + C
  // Linear lower bound for coefficients outside the box.
  double perturbation = 0;        // max |alpha^-1 g_i - M e_i|_2
  double analytic_lower = 0;      // 3 (M - sqrt(n) perturbation)
  bool analytic_separation = false;  // analytic_lower >= sqrt(n) (D + C)

  // Filled by check_on_action.
  std::optional<bool> box_displacement_separation;  // d(gp, p) >= D on the box
  std::optional<Rational> box_min_displacement;
  std::optional<Rational> quotient_diameter;
  std::optional<bool> diameter_bound;  // quotient diameter <= D'
};

SublatticeCertificate cs_sublattice(const NormModel& nm, const JohnTransform& jt, const Rational& D);
void check_on_action(SublatticeCertificate& cert, const LatticeAction& action, const DerivedVertex& p);

Rational cs_M(std::size_t n, const Rational& D, const Rational& C);
Rational cs_D_prime(std::size_t n, const Rational& D, const Rational& C);

struct AsymptoticVolume {
  std::size_t count = 0;
  Rational r;
  double estimate = 0;
};

AsymptoticVolume asymptotic_volume_estimate(const LatticeAction& action, const DerivedVertex& p, const Rational& r);

}  // namespace covercraft
