#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/abelian_groups.hpp"
#include "covercraft/periodic_space.hpp"

namespace covercraft {

struct MonodromyInput {
  LatticeAction action;
  DerivedVertex basepoint;
  Rational radius;  // B = open ball of this radius, unless region is given
  WordSet S;
  int M = 1;
  std::optional<std::vector<DerivedVertex>> region;
};

// Elements of the abstract group, identified by the isometry they induce.
struct ImageElement {
  IntVec lift;
  Isometry iso;
};

class ImageSet {
public:
  ImageSet() = default;
  ImageSet(const LatticeAction& action, const WordSet& words);

  std::size_t size() const { return elements_.size(); }
  const std::vector<ImageElement>& elements() const { return elements_; }
  const ImageElement& operator[](std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> find(const Isometry& g) const;
  bool contains(const Isometry& g) const { return find(g).has_value(); }
  // Adds g when new; returns its index.
  std::size_t insert(ImageElement e);

private:
  std::vector<ImageElement> elements_;
  std::map<Isometry, std::size_t> index_;
};

// Everything derived once from an input: B, the word sets and their images, and
// the finite set F = {gamma : gamma B meets B}.
class MonodromyProblem {
public:
  explicit MonodromyProblem(MonodromyInput in);

  const MonodromyInput& input() const { return in_; }
  const LatticeAction& action() const { return in_.action; }
  const PeriodicGraph& graph() const { return in_.action.graph(); }
  const VoltageGroup& group() const { return graph().group(); }

  const std::vector<DerivedVertex>& region() const { return region_; }
  bool in_region(const DerivedVertex& v) const { return region_index_.count(v) > 0; }
  std::size_t region_index(const DerivedVertex& v) const { return region_index_.at(v); }

  const WordSet& T() const { return T_; }
  const WordSet& T3() const { return T3_; }
  const WordSet& T6() const { return T6_; }
  const ImageSet& S_images() const { return S_img_; }
  const ImageSet& T_images() const { return T_img_; }
  const ImageSet& T3_images() const { return T3_img_; }
  const ImageSet& T6_images() const { return T6_img_; }
  const ImageSet& meeting_set() const { return F_; }

private:
  MonodromyInput in_;
  std::vector<DerivedVertex> region_;
  std::map<DerivedVertex, std::size_t> region_index_;
  WordSet T_, T3_, T6_;
  ImageSet S_img_, T_img_, T3_img_, T6_img_, F_;
};

struct ConditionWitness {
  IntVec element;
  std::string evidence;
};

struct ConditionReport {
  bool cond_i = false;
  bool cond_ii = false;
  bool cond_iii = false;
  std::optional<ConditionWitness> witness_i, witness_ii, witness_iii;
  bool t6_injective = false;  // distinct words of T^6 induce distinct isometries
  std::size_t region_size = 0;
  std::size_t meeting_count = 0;
  bool all() const { return cond_i && cond_ii && cond_iii; }
};

ConditionReport check_conditions(const MonodromyProblem& problem);

// Re-checks a witness: true when it demonstrates the failure it claims.
bool witness_fails_i(const MonodromyProblem& problem, const IntVec& s);
bool witness_fails_ii(const MonodromyProblem& problem, const IntVec& t);
bool witness_fails_iii(const MonodromyProblem& problem, const IntVec& g);

// Gamma-tilde on the distinct images of T^3, with the image multiplication.
PresentedAbelianGroup build_gamma_tilde(const MonodromyProblem& problem);

// Label index in Gamma-tilde of each element of T_images().
std::vector<std::size_t> sharp_labels_of_T(const MonodromyProblem& problem);

enum class SheetClass { kOne, kFinite, kInfinite };
std::string to_string(SheetClass c, std::size_t n);

struct CoveringVerdict {
  std::vector<IntVec> ker_phi_basis;
  IsoType ker_phi;
  bool is_homeomorphism = false;
  SheetClass sheet_class = SheetClass::kOne;
  std::size_t sheets = 1;                      // meaningful unless infinite
  std::optional<std::size_t> basepoint_sheets;  // classes of X-tilde over p
  std::vector<IntVec> meeting_preimages;        // one per element of F
  std::optional<IntVec> violating;              // Gamma-tilde element outside T#
  std::optional<IntVec> violating_image;
};

CoveringVerdict covering_verdict(const MonodromyProblem& problem, const PresentedAbelianGroup& gt);

struct WindowEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  Rational length;
};

struct CoverWindow {
  int word_radius = 0;
  std::vector<IntVec> elements;  // canonical Gamma-tilde coordinates
  std::vector<int> depth;
  std::vector<DerivedVertex> region;
  std::vector<std::vector<std::size_t>> class_of;  // [element][region vertex]
  std::vector<DerivedVertex> psi;                  // per class
  std::vector<WindowEdge> edges;
  std::vector<std::vector<std::size_t>> adjacency;
  std::size_t glue_steps = 0;
  bool psi_consistent = true;

  std::size_t class_count() const { return psi.size(); }
  bool psi_injective() const;
  // Two distinct classes with the same label, if any.
  std::optional<std::pair<std::size_t, std::size_t>> label_collision() const;
};

CoverWindow build_cover_window(const MonodromyProblem& problem, const PresentedAbelianGroup& gt, int word_radius);

std::string to_dot(const CoverWindow& cw, const PeriodicGraph& pg, const std::string& sheet_annotation = {});

enum class LocalStatus { kPass, kFail, kInconclusive };
std::string to_string(LocalStatus s);

struct LocalHomeomorphismReport {
  LocalStatus status = LocalStatus::kInconclusive;
  std::size_t interior_classes = 0;
  std::size_t labels_checked = 0;
  std::size_t max_components = 0;
  std::string witness;
};

LocalHomeomorphismReport verify_local_homeomorphism(const CoverWindow& cw, const MonodromyProblem& problem);

}  // namespace covercraft
