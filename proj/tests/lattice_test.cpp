#include <gtest/gtest.h>

#include "testing.hpp"
#include "toriscope/errors.hpp"
#include "toriscope/lattice.hpp"

using namespace toriscope;
using namespace toriscope::testing;

namespace {

LatMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  LatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(-bound, bound);
  return m;
}

std::vector<IVec> to_rows(const LatMatrix& m) { return to_ivecs(m.row_vectors()); }

void expect_hermite_shape(const HermiteResult& h) {
  // Lower-triangular convention: the pivot is the last nonzero entry of its row.
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < h.rank; ++r) {
    std::size_t p = h.H.cols();
    while (p > 0 && h.H(r, p - 1) == 0) --p;
    ASSERT_GT(p, 0u);
    --p;
    if (!pivots.empty()) EXPECT_GT(p, pivots.back());
    pivots.push_back(p);
    EXPECT_GT(h.H(r, p), 0);
  }
  for (std::size_t r = 0; r < h.rank; ++r)
    for (std::size_t other = 0; other < h.rank; ++other) {
      if (other == r) continue;
      EXPECT_GE(h.H(other, pivots[r]), 0);
      EXPECT_LT(h.H(other, pivots[r]), h.H(r, pivots[r]));
    }
  for (std::size_t r = h.rank; r < h.H.rows(); ++r) EXPECT_TRUE(h.H.row(r).is_zero());
}

}  // namespace

TEST(Hermite, IdentityIsFixed) {
  auto h = hermite_normal_form(LatMatrix::identity(3));
  EXPECT_EQ(h.H, LatMatrix::identity(3));
  EXPECT_EQ(h.U, LatMatrix::identity(3));
  EXPECT_EQ(h.rank, 3u);
}

TEST(Hermite, SmallExample) {
  LatMatrix m{{2, 0}, {1, 1}};
  auto h = hermite_normal_form(m);
  EXPECT_EQ(h.U * m, h.H);
  EXPECT_EQ(std::abs(cofactor_det(to_rows(h.U))), 1);
  EXPECT_EQ(std::abs(cofactor_det(to_rows(h.H))), 2);
  expect_hermite_shape(h);
}

TEST(Hermite, HexagonCornerIsUnimodular) {
  auto h = hermite_normal_form(LatMatrix{{-1, 1}, {1, -2}});
  EXPECT_EQ(std::abs(cofactor_det(to_rows(h.H))), 1);
  EXPECT_EQ(h.H, LatMatrix::identity(2));
}

TEST(Hermite, RandomMatricesSatisfyInvariants) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.index(4), cols = 1 + rng.index(4);
    auto m = random_matrix(rng, rows, cols, 6);
    auto h = hermite_normal_form(m);
    EXPECT_EQ(h.U * m, h.H);
    EXPECT_EQ(std::abs(cofactor_det(to_rows(h.U))), 1);
    EXPECT_EQ(h.rank, rank(m));
    expect_hermite_shape(h);
    // Canonical: the form depends only on the row lattice.
    auto again = hermite_normal_form(h.U * m);
    EXPECT_EQ(again.H, h.H);
  }
}

TEST(Determinant, Examples) {
  EXPECT_EQ(determinant(LatMatrix::identity(4)), 1);
  EXPECT_EQ(determinant(LatMatrix{{1, 0}, {1, 2}}), 2);
  EXPECT_EQ(determinant(LatMatrix{{-1, 1}, {1, -2}}), 1);
  EXPECT_THROW(determinant(LatMatrix{{1, 2, 3}}), ContractViolation);
}

TEST(Determinant, AgreesWithCofactorOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(5);
    auto m = random_matrix(rng, n, n, 9);
    EXPECT_EQ(determinant(m), cofactor_det(to_rows(m)));
    EXPECT_EQ(determinant_by_cofactors(m), cofactor_det(to_rows(m)));
  }
}

TEST(Determinant, AdjugateIdentity) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    auto m = random_matrix(rng, n, n, 7);
    auto adj = adjugate(m);
    LatMatrix scaled = LatMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) scaled(i, i) = determinant(m);
    EXPECT_EQ(adj * m, scaled);
    EXPECT_EQ(m * adj, scaled);
  }
}

TEST(Unimodular, Examples) {
  EXPECT_TRUE(is_unimodular_basis({LatVec{1, 0, 0}, LatVec{0, 1, 0}, LatVec{0, 0, 1}}));
  EXPECT_FALSE(is_unimodular_basis({LatVec{1, 0}, LatVec{1, 2}}));
  EXPECT_TRUE(is_unimodular_basis({LatVec{-1, 1}, LatVec{1, -2}}));
  EXPECT_TRUE(generates_lattice({LatVec{2, 0}, LatVec{3, 0}, LatVec{0, 1}}, 2));
  EXPECT_FALSE(generates_lattice({LatVec{2, 0}, LatVec{0, 1}, LatVec{4, 3}}, 2));
}

TEST(Unimodular, ManyGenerators) {
  // The index-2 sublattice of even coordinate sum, as thousands of vectors.
  std::vector<LatVec> all;
  for (long a = -10; a <= 10; ++a)
    for (long b = -10; b <= 10; ++b)
      for (long c = -10; c <= 10; ++c)
        if ((a + b + c) % 2 == 0) all.push_back(LatVec{a, b, c});
  EXPECT_FALSE(generates_lattice(all, 3));
  all.push_back(LatVec{3, 0, 0});
  EXPECT_TRUE(generates_lattice(all, 3));
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive(LatVec{2, 4, 6}), (LatVec{1, 2, 3}));
  EXPECT_EQ(primitive(LatVec{0, -3}), (LatVec{0, -1}));
  EXPECT_EQ(primitive(LatVec{5, 7}), (LatVec{5, 7}));
  EXPECT_THROW(primitive(LatVec{0, 0}), ContractViolation);
  EXPECT_EQ(content(LatVec{-4, 6}), 2);
}

TEST(Kernel, RandomKernelsAreSaturatedAndAnnihilated) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + rng.index(3), cols = 2 + rng.index(3);
    auto m = random_matrix(rng, rows, cols, 5);
    auto k = integer_kernel(m);
    EXPECT_EQ(k.rows(), cols - rank(m));
    for (const auto& v : k.row_vectors())
      for (const auto& r : m.row_vectors()) EXPECT_EQ(dot(v, r), 0);
    // The kernel lattice equals its own saturation.
    if (k.rows() > 0) {
      auto h = hermite_normal_form(k);
      EXPECT_EQ(saturated_span(k.row_vectors(), cols), h.H);
    }
  }
}

TEST(Coordinates, RoundTrip) {
  auto basis = lattice_basis({LatVec{2, 0}, LatVec{0, 3}}, 2);
  auto c = coordinates_in(basis, LatVec{4, 9});
  ASSERT_TRUE(c);
  EXPECT_EQ(*c * basis, (LatVec{4, 9}));
  EXPECT_FALSE(coordinates_in(basis, LatVec{1, 0}));
}

TEST(Arithmetic, FloorDivision) {
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(mod_floor(-7, 2), 1);
  EXPECT_EQ(floor_div(7, 2), 3);
  auto x = solve_rational(LatMatrix{{2, 0}, {0, 3}}, {Rational(1), Rational(1)});
  EXPECT_EQ(x[0], Rational(1, 2));
  EXPECT_EQ(x[1], Rational(1, 3));
}
