#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/integer_matrix.hpp"
#include "covercraft/numeric.hpp"

namespace covercraft {

// Finite set of elements of Z^N, kept sorted and duplicate-free.
class WordSet {
public:
  WordSet() = default;
  WordSet(std::size_t rank, std::vector<IntVec> elements);

  std::size_t rank() const { return rank_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<IntVec>& elements() const { return elements_; }
  bool contains(const IntVec& g) const;
  // Contains 0 and is closed under negation.
  bool is_symmetric() const;
  std::optional<std::size_t> index_of(const IntVec& g) const;

  bool operator==(const WordSet& rhs) const = default;

private:
  std::size_t rank_ = 0;
  std::vector<IntVec> elements_;
};

// {g : |g|_1 <= radius} in Z^rank.
WordSet l1_ball(std::size_t rank, int radius);

// M-fold sumset S + ... + S. S must be symmetric.
WordSet sumset_power(const WordSet& S, int M);

// floor((relator_length + 2) / 3)
int defining_exponent(int relator_length);

// One multiplication-table fact: labels[a] * labels[b] = labels[c].
struct TableEntry {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
  bool operator==(const TableEntry&) const = default;
};

// Partial multiplication oracle on the label set: index of a*b when it is a label.
using MultiplicationOracle = std::function<std::optional<std::size_t>(std::size_t, std::size_t)>;

std::vector<TableEntry> table_from_oracle(std::size_t label_count, const MultiplicationOracle& oracle);

// Rows e_a + e_b - e_c, one per table entry.
IntMatrix full_relation_matrix(std::size_t label_count, const std::vector<TableEntry>& table);

struct IsoType {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  bool operator==(const IsoType&) const = default;
};

IsoType iso_type_of_cokernel(const IntMatrix& relations);

// Abelian group generated by label symbols subject to the table relations,
// together with its evaluation map Phi into Z^N / evaluation_kernel.
//
// Elements are coordinate vectors over generators surviving elimination, reduced
// modulo the relation lattice.
class PresentedAbelianGroup {
public:
  std::size_t coordinate_count() const { return relations_.dim(); }
  const std::vector<IntVec>& generator_index() const { return labels_; }
  std::size_t label_count() const { return labels_.size(); }
  std::size_t relation_count() const { return relation_count_; }
  const Lattice& relations() const { return relations_; }
  const IsoType& iso_type() const { return iso_; }

  // Coordinates of the symbol of labels[i].
  const IntVec& sharp(std::size_t i) const { return sharp_[i]; }
  IntVec canonical(const IntVec& coords) const { return relations_.reduce(coords); }
  bool equal(const IntVec& x, const IntVec& y) const { return canonical(x) == canonical(y); }
  IntVec zero() const { return IntVec(coordinate_count(), 0); }

  // The lift in Z^N; the image in the target group is this modulo evaluation_kernel().
  IntVec phi(const IntVec& coords) const;
  // Columns of the matrix of Phi (N x coordinate_count).
  const std::vector<IntVec>& phi_columns() const { return phi_columns_; }
  const Lattice& evaluation_kernel() const { return evaluation_kernel_; }

  // Ker Phi = kernel_lattice / relations.
  const IsoType& kernel_iso_type() const { return kernel_iso_; }
  const std::vector<IntVec>& kernel_generators() const { return kernel_generators_; }
  const std::vector<BigInt>& kernel_generator_orders() const { return kernel_orders_; }  // 0 = infinite
  bool kernel_trivial() const { return kernel_iso_.trivial(); }
  const Lattice& kernel_lattice() const { return kernel_lattice_; }

  // Some element with phi(x) = target modulo evaluation_kernel(), if any.
  std::optional<IntVec> preimage(const IntVec& target) const;
  // Every element of a finite kernel; throws when the kernel is infinite or larger than limit.
  std::vector<IntVec> enumerate_kernel(std::size_t limit) const;

private:
  friend PresentedAbelianGroup presented_group_from_table(const std::vector<IntVec>&,
                                                          const std::vector<TableEntry>&, const Lattice&);
  std::vector<IntVec> labels_;
  std::vector<IntVec> sharp_;
  std::size_t relation_count_ = 0;
  Lattice relations_;
  IsoType iso_;
  std::vector<IntVec> phi_columns_;
  Lattice evaluation_kernel_;
  Lattice kernel_lattice_;
  IsoType kernel_iso_;
  std::vector<IntVec> kernel_generators_;
  std::vector<BigInt> kernel_orders_;
};

// labels: lifts in Z^N of the label elements (pairwise distinct modulo evaluation_kernel).
// table: the multiplication facts. evaluation_kernel: lifts that evaluate to the identity.
PresentedAbelianGroup presented_group_from_table(const std::vector<IntVec>& labels,
                                                 const std::vector<TableEntry>& table,
                                                 const Lattice& evaluation_kernel);

}  // namespace covercraft
