#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/numeric.hpp"

namespace covercraft {

// Dense matrix over exact integers, row-major.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& rhs) const;

  IntVec row_as_intvec(std::size_t r) const;
  std::vector<IntVec> to_rows() const;
  bool is_zero() const;
  std::string to_string() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k);
  void negate_row(std::size_t r);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

struct SmithForm {
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix D;  // diagonal, d1 | d2 | ...
  IntMatrix V;  // unimodular, cols x cols
  IntMatrix V_inv;
  std::vector<BigInt> diagonal;  // nonzero invariant factors in order
  std::size_t rank = 0;
};

// U * A * V = D. Pivot on the minimal nonzero absolute value; ties broken row-major.
SmithForm smith_normal_form(const IntMatrix& A);

// Rows of the result form a basis of {x in Z^cols : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& A);

// Some x with A x = b, or nullopt when no integer solution exists.
std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& A, const std::vector<BigInt>& b);

// Repeated solves against one matrix; caches its Smith form.
class IntegerSolver {
public:
  IntegerSolver() = default;
  explicit IntegerSolver(IntMatrix A);
  std::optional<std::vector<BigInt>> solve(const std::vector<BigInt>& b) const;
  std::size_t unknowns() const { return cols_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  SmithForm snf_;
};

BigInt determinant(const IntMatrix& A);

// Sublattice of Z^d spanned by a finite set of generators. The basis is kept in
// row-style Hermite normal form, so reduce() returns a canonical coset representative.
class Lattice {
public:
  Lattice() = default;
  Lattice(std::size_t dim, const std::vector<IntVec>& generators);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  bool full_rank() const { return rank() == dim_; }
  const std::vector<std::vector<BigInt>>& basis() const { return basis_; }
  std::vector<IntVec> basis_rows() const;
  const std::vector<std::size_t>& pivots() const { return pivot_cols_; }

  IntVec reduce(const IntVec& v) const;
  bool contains(const IntVec& v) const { return is_zero(reduce(v)); }
  // Index [Z^d : L] when full rank; 0 otherwise.
  BigInt index() const;

private:
  std::size_t dim_ = 0;
  std::vector<std::vector<BigInt>> basis_;
  std::vector<std::size_t> pivot_cols_;
};

// Row-style Hermite normal form of the row span (zero rows dropped).
std::vector<std::vector<BigInt>> hermite_rows(std::vector<std::vector<BigInt>> rows, std::size_t cols,
                                              std::vector<std::size_t>* pivot_cols = nullptr);

}  // namespace covercraft
