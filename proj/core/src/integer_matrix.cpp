#include "covercraft/integer_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "covercraft/error.hpp"

namespace covercraft {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMatrix M(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::kArgument, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) M(r, c) = static_cast<long>(rows[r][c]);
  }
  return M;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::kArgument, "matrix shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

IntVec IntMatrix::row_as_intvec(std::size_t r) const {
  IntVec v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = to_int64((*this)(r, c));
  return v;
}

std::vector<IntVec> IntMatrix::to_rows() const {
  std::vector<IntVec> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_as_intvec(r));
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ';';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << (*this)(r, c).get_str();
    }
  }
  os << ']';
  return os.str();
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt trunc_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Minimal nonzero |D(i,j)| over i >= t, j >= t, first in row-major order.
bool find_min_pivot(const IntMatrix& D, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  BigInt best;
  for (std::size_t i = t; i < D.rows(); ++i)
    for (std::size_t j = t; j < D.cols(); ++j) {
      if (D(i, j) == 0) continue;
      BigInt a = abs_big(D(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pr = i;
        pc = j;
      }
    }
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  IntMatrix D = A;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);
  IntMatrix Vi = IntMatrix::identity(n);
  auto col_swap = [&](std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
    Vi.swap_rows(a, b);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    D.add_col_multiple(dst, src, q);
    V.add_col_multiple(dst, src, q);
    Vi.add_row_multiple(src, dst, -q);
  };

  std::size_t t = 0;
  while (t < std::min(m, n)) {
    std::size_t pr = 0, pc = 0;
    if (!find_min_pivot(D, t, pr, pc)) break;
    D.swap_rows(t, pr);
    U.swap_rows(t, pr);
    col_swap(t, pc);

    for (;;) {
      bool remainder = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        BigInt q = -trunc_div(D(i, t), D(t, t));
        D.add_row_multiple(i, t, q);
        U.add_row_multiple(i, t, q);
        if (D(i, t) != 0) remainder = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        BigInt q = -trunc_div(D(t, j), D(t, t));
        col_add(j, t, q);
        if (D(t, j) != 0) remainder = true;
      }
      if (remainder) {
        // Re-pivot on the smallest remainder left in row t or column t.
        std::size_t bi = t, bj = t;
        BigInt best = abs_big(D(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && abs_big(D(i, t)) < best) {
            best = abs_big(D(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && abs_big(D(t, j)) < best) {
            best = abs_big(D(t, j));
            bi = t;
            bj = j;
          }
        D.swap_rows(t, bi);
        U.swap_rows(t, bi);
        col_swap(t, bj);
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (D(i, j) % D(t, t) != 0) {
            D.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            fixed = true;
            break;
          }
        }
      if (!fixed) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
    ++t;
  }

  SmithForm out;
  for (std::size_t i = 0; i < std::min(m, n); ++i) {
    if (D(i, i) == 0) break;
    out.diagonal.push_back(D(i, i));
  }
  out.rank = out.diagonal.size();
  out.U = std::move(U);
  out.D = std::move(D);
  out.V = std::move(V);
  out.V_inv = std::move(Vi);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& A) {
  SmithForm s = smith_normal_form(A);
  const std::size_t n = A.cols();
  IntMatrix K(n - s.rank, n);
  for (std::size_t k = s.rank; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) K(k - s.rank, i) = s.V(i, k);
  return K;
}

IntegerSolver::IntegerSolver(IntMatrix A) : rows_(A.rows()), cols_(A.cols()), snf_(smith_normal_form(A)) {}

std::optional<std::vector<BigInt>> IntegerSolver::solve(const std::vector<BigInt>& b) const {
  if (b.size() != rows_) throw Error(ErrorKind::kArgument, "solve: rhs size mismatch");
  std::vector<BigInt> c(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < rows_; ++k)
      if (b[k] != 0) c[i] += snf_.U(i, k) * b[k];
  std::vector<BigInt> z(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < snf_.rank) {
      if (c[i] % snf_.diagonal[i] != 0) return std::nullopt;
      z[i] = c[i] / snf_.diagonal[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(cols_);
  for (std::size_t i = 0; i < cols_; ++i)
    for (std::size_t k = 0; k < snf_.rank; ++k) x[i] += snf_.V(i, k) * z[k];
  return x;
}

std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& A, const std::vector<BigInt>& b) {
  return IntegerSolver(A).solve(b);
}

BigInt determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::kArgument, "determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix M = A;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

std::vector<std::vector<BigInt>> hermite_rows(std::vector<std::vector<BigInt>> rows, std::size_t cols,
                                              std::vector<std::size_t>* pivot_cols) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  auto sub_mult = [cols](std::vector<BigInt>& dst, const std::vector<BigInt>& src, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < cols; ++c) dst[c] -= q * src[c];
  };
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs_big(rows[i][c]) < abs_big(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        sub_mult(rows[i], rows[r], trunc_div(rows[i][c], rows[r][c]));
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) sub_mult(rows[i], rows[r], floor_div(rows[i][c], rows[r][c]));
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  if (pivot_cols) *pivot_cols = std::move(pivots);
  return rows;
}

Lattice::Lattice(std::size_t dim, const std::vector<IntVec>& generators) : dim_(dim) {
  std::vector<std::vector<BigInt>> rows;
  rows.reserve(generators.size());
  for (const auto& g : generators) {
    if (g.size() != dim) throw Error(ErrorKind::kArgument, "lattice generator dimension mismatch");
    std::vector<BigInt> row(dim);
    for (std::size_t c = 0; c < dim; ++c) row[c] = static_cast<long>(g[c]);
    rows.push_back(std::move(row));
  }
  basis_ = hermite_rows(std::move(rows), dim, &pivot_cols_);
}

std::vector<IntVec> Lattice::basis_rows() const {
  std::vector<IntVec> out;
  for (const auto& row : basis_) {
    IntVec v(dim_);
    for (std::size_t c = 0; c < dim_; ++c) v[c] = to_int64(row[c]);
    out.push_back(std::move(v));
  }
  return out;
}

IntVec Lattice::reduce(const IntVec& v) const {
  if (v.size() != dim_) throw Error(ErrorKind::kArgument, "lattice reduce dimension mismatch");
  std::vector<BigInt> w(dim_);
  for (std::size_t c = 0; c < dim_; ++c) w[c] = static_cast<long>(v[c]);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const std::size_t pc = pivot_cols_[k];
    BigInt q = floor_div(w[pc], basis_[k][pc]);
    if (q == 0) continue;
    for (std::size_t c = pc; c < dim_; ++c) w[c] -= q * basis_[k][c];
  }
  IntVec out(dim_);
  for (std::size_t c = 0; c < dim_; ++c) out[c] = to_int64(w[c]);
  return out;
}

BigInt Lattice::index() const {
  if (!full_rank()) return 0;
  BigInt p = 1;
  for (std::size_t k = 0; k < basis_.size(); ++k) p *= basis_[k][pivot_cols_[k]];
  return p;
}

}  // namespace covercraft
