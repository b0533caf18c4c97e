#include <random>

#include <gtest/gtest.h>

#include "covercraft/error.hpp"
#include "covercraft/integer_matrix.hpp"
#include "oracles.hpp"

using namespace covercraft;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

oracle::BigMatrix rows_of(const IntMatrix& m) {
  oracle::BigMatrix out(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

void expect_smith_properties(const IntMatrix& A) {
  const SmithForm s = smith_normal_form(A);
  EXPECT_EQ(s.U * A * s.V, s.D);
  const BigInt du = oracle::det(rows_of(s.U));
  const BigInt dv = oracle::det(rows_of(s.V));
  EXPECT_TRUE(abs(du) == 1) << du;
  EXPECT_TRUE(abs(dv) == 1) << dv;
  EXPECT_EQ(s.V * s.V_inv, IntMatrix::identity(A.cols()));
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) {
        EXPECT_EQ(s.D(i, j), 0);
      }
  for (std::size_t k = 0; k + 1 < s.diagonal.size(); ++k)
    EXPECT_TRUE(mpz_divisible_p(s.diagonal[k + 1].get_mpz_t(), s.diagonal[k].get_mpz_t()));
  EXPECT_EQ(s.diagonal, oracle::invariant_factors(rows_of(A)));
  EXPECT_EQ(s.rank, s.diagonal.size());
}

}  // namespace

TEST(Smith, Identity) {
  const auto s = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(s.D, IntMatrix::identity(2));
}

TEST(Smith, TwoByTwoExample) {
  const auto A = IntMatrix::from_rows({{2, 4}, {6, 8}}, 2);
  const auto s = smith_normal_form(A);
  ASSERT_EQ(s.diagonal.size(), 2u);
  EXPECT_EQ(s.diagonal[0], 2);
  EXPECT_EQ(s.diagonal[1], 4);
  EXPECT_EQ(s.diagonal, oracle::invariant_factors(oracle::to_big({{2, 4}, {6, 8}})));
  expect_smith_properties(A);
}

TEST(Smith, ZeroMatrix) {
  const auto s = smith_normal_form(IntMatrix(2, 2));
  EXPECT_TRUE(s.D.is_zero());
  EXPECT_EQ(s.rank, 0u);
}

TEST(Smith, Deterministic) {
  std::mt19937_64 rng(7);
  const auto A = random_matrix(rng, 4, 5, -6, 6);
  const auto a = smith_normal_form(A);
  const auto b = smith_normal_form(A);
  EXPECT_EQ(a.U, b.U);
  EXPECT_EQ(a.V, b.V);
  EXPECT_EQ(a.D, b.D);
}

TEST(Smith, RandomMatricesAgainstDeterminantalDivisors) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    std::uniform_int_distribution<int> dim(1, 4);
    const auto A = random_matrix(rng, dim(rng), dim(rng), -9, 9);
    SCOPED_TRACE(A.to_string());
    expect_smith_properties(A);
  }
}

TEST(Smith, RankDeficientAndSparse) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    auto B = random_matrix(rng, 2, 4, -3, 3);
    auto C = random_matrix(rng, 4, 2, -3, 3);
    const auto A = C * B;  // rank <= 2
    SCOPED_TRACE(A.to_string());
    expect_smith_properties(A);
  }
}

TEST(IntegerKernel, RowsAreKernelAndSpanIt) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto A = random_matrix(rng, 2, 4, -4, 4);
    const auto K = integer_kernel(A);
    const auto s = smith_normal_form(A);
    EXPECT_EQ(K.rows(), A.cols() - s.rank);
    for (std::size_t r = 0; r < K.rows(); ++r) {
      for (std::size_t i = 0; i < A.rows(); ++i) {
        BigInt acc = 0;
        for (std::size_t j = 0; j < A.cols(); ++j) acc += A(i, j) * K(r, j);
        EXPECT_EQ(acc, 0);
      }
    }
    // Saturation: every kernel vector in a small box is an integer combination.
    if (K.rows() == 0) continue;
    Lattice L(A.cols(), K.to_rows());
    for (int t = 0; t < 200; ++t) {
      std::uniform_int_distribution<int> d(-3, 3);
      IntVec x(A.cols());
      for (auto& v : x) v = d(rng);
      bool in_kernel = true;
      for (std::size_t i = 0; i < A.rows(); ++i) {
        BigInt acc = 0;
        for (std::size_t j = 0; j < A.cols(); ++j) acc += A(i, j) * static_cast<long>(x[j]);
        if (acc != 0) in_kernel = false;
      }
      if (in_kernel) {
        EXPECT_TRUE(L.contains(x)) << to_string(x);
      }
    }
  }
}

TEST(SolveInteger, AgreesWithBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    const auto A = random_matrix(rng, 2, 2, -3, 3);
    std::uniform_int_distribution<int> d(-5, 5);
    std::vector<BigInt> b{d(rng), d(rng)};
    const auto sol = solve_integer(A, b);
    // Brute force over a box large enough for |det| <= 18 and |b| <= 5 when det != 0.
    bool found = false;
    for (int x = -100; x <= 100 && !found; ++x)
      for (int y = -100; y <= 100 && !found; ++y)
        found = A(0, 0) * x + A(0, 1) * y == b[0] && A(1, 0) * x + A(1, 1) * y == b[1];
    if (sol) {
      EXPECT_EQ(A(0, 0) * (*sol)[0] + A(0, 1) * (*sol)[1], b[0]);
      EXPECT_EQ(A(1, 0) * (*sol)[0] + A(1, 1) * (*sol)[1], b[1]);
    }
    if (determinant(A) != 0) {
      EXPECT_EQ(sol.has_value(), found);
    }
    if (found) {
      EXPECT_TRUE(sol.has_value());
    }
  }
}

TEST(Determinant, MatchesLaplace) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto A = random_matrix(rng, 4, 4, -7, 7);
    EXPECT_EQ(determinant(A), oracle::det(rows_of(A)));
  }
}

TEST(Lattice, ReduceIsCanonicalAndIndexIsDeterminant) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<IntVec> gens{{d(rng), d(rng)}, {d(rng), d(rng)}};
    Lattice L(2, gens);
    const BigInt det = oracle::det(oracle::to_big(gens));
    EXPECT_EQ(L.index(), abs(det));
    for (int t = 0; t < 20; ++t) {
      IntVec v{d(rng), d(rng)};
      IntVec w = v;
      for (const auto& g : gens) w = add(w, scale(g, d(rng)));
      EXPECT_EQ(L.reduce(v), L.reduce(w));
      EXPECT_TRUE(L.contains(sub(v, L.reduce(v))));
    }
  }
}

TEST(Lattice, DimensionMismatchThrows) {
  Lattice L(2, {{1, 0}});
  EXPECT_THROW(L.reduce({1, 2, 3}), Error);
}
