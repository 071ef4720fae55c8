#include <gtest/gtest.h>

#include <random>

#include "hopfforge/linalg.hpp"

using namespace hopfforge;

namespace {

Mat random_mat(std::mt19937& rng, std::size_t r, std::size_t c, int density_pct = 50) {
  std::uniform_int_distribution<int> val(-3, 3), pct(0, 99), root(0, 5);
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) < density_pct) m(i, j) = Cyc(val(rng)) + (root(rng) == 0 ? Cyc::zeta(6) : Cyc(0));
  return m;
}

Subspace random_subspace(std::mt19937& rng, std::size_t n, std::size_t k) {
  Mat m = random_mat(rng, n, k, 40);
  return image(m);
}

// KC_2 comultiplication as a map of columns: e_i -> e_i (x) e_i.
std::vector<SparseVec> group_comult_columns(std::size_t n) {
  std::vector<SparseVec> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(SparseVec::unit(i * n + i));
  return cols;
}

}  // namespace

TEST(Solve, IdentityReturnsRhs) {
  Vec b{Cyc(3), Cyc::zeta(6), Cyc(Rational(-1, 2))};
  auto x = solve(Mat::identity(3), b);
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, b);
}

TEST(Solve, InconsistentIsNone) {
  Mat a(2, 1);
  a(0, 0) = 1;
  a(1, 0) = 1;
  EXPECT_FALSE(solve(a, Vec{Cyc(1), Cyc(2)}));
  EXPECT_THROW(solve(a, Vec{Cyc(1)}), Error);
}

TEST(Kernel, OneByTwo) {
  Mat a(1, 2);
  a(0, 0) = 1;
  a(0, 1) = -1;
  Subspace k = kernel(a);
  EXPECT_EQ(k.dim(), 1u);
  EXPECT_TRUE(k.contains(Vec{Cyc(1), Cyc(1)}));
}

TEST(Kernel, AugmentationIdealOfKC6) {
  Mat counit(1, 6);
  for (std::size_t i = 0; i < 6; ++i) counit(0, i) = 1;
  Subspace k = kernel(counit);
  EXPECT_EQ(k.dim(), 5u);
  for (std::size_t i = 1; i < 6; ++i) {
    Vec v = zero_vec(6);
    v[0] = 1;
    v[i] = -1;
    EXPECT_TRUE(k.contains(v));
  }
  EXPECT_FALSE(k.contains(unit_vec(6, 0)));
}

TEST(Subspace, IntersectSelfAndPreimageOfIdentity) {
  std::mt19937 rng(7);
  for (int t = 0; t < 10; ++t) {
    Subspace V = random_subspace(rng, 8, 4);
    EXPECT_EQ(intersect(V, V), V);
    EXPECT_EQ(preimage(Mat::identity(8), V), V);
  }
}

// Delta(e_i) = e_i (x) e_i lies in K1 (x) C + C (x) K1 for both group elements of C_2.
TEST(Subspace, PreimageOfGroupComultiplication) {
  const std::size_t n = 2;
  Subspace one = Subspace::span(n, std::vector<SparseVec>{SparseVec::unit(0)});
  std::vector<SparseVec> gens;
  for (std::size_t j = 0; j < n; ++j) {
    gens.push_back(SparseVec::unit(0 * n + j));
    gens.push_back(SparseVec::unit(j * n + 0));
  }
  Subspace target = Subspace::span(n * n, gens);
  Subspace pre = preimage_of_columns(n, group_comult_columns(n), target);
  // Oracle: direct 4-dimensional membership of each Delta(e_i).
  std::size_t expected = 0;
  for (const auto& col : group_comult_columns(n)) expected += target.contains(col) ? 1 : 0;
  EXPECT_EQ(expected, 1u);
  EXPECT_EQ(pre.dim(), expected);
  EXPECT_EQ(pre, one);
}

TEST(Subspace, DimensionFormula) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dim(1, 20);
  for (int t = 0; t < 25; ++t) {
    std::size_t n = static_cast<std::size_t>(dim(rng));
    std::uniform_int_distribution<int> k(0, static_cast<int>(n));
    Subspace U = random_subspace(rng, n, static_cast<std::size_t>(k(rng)));
    Subspace W = random_subspace(rng, n, static_cast<std::size_t>(k(rng)));
    EXPECT_EQ(subspace_sum(U, W).dim() + intersect(U, W).dim(), U.dim() + W.dim());
    EXPECT_TRUE(contains(subspace_sum(U, W), U));
    EXPECT_TRUE(contains(U, intersect(U, W)));
  }
}

TEST(Subspace, EchelonCanonicity) {
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    Subspace U = random_subspace(rng, 9, 5);
    EXPECT_EQ(Subspace::span(9, U.basis()), U);
    std::vector<SparseVec> shuffled = U.basis();
    std::reverse(shuffled.begin(), shuffled.end());
    for (auto& v : shuffled) v.scale(Cyc(3));
    EXPECT_EQ(Subspace::span(9, shuffled), U);
  }
}

TEST(Subspace, PreimageProperties) {
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) {
    Mat f = random_mat(rng, 6, 7, 30);
    EXPECT_EQ(preimage(f, image(f)).dim(), 7u);
    Subspace W = random_subspace(rng, 6, 2);
    EXPECT_TRUE(contains(preimage(f, W), kernel(f)));
  }
}

TEST(Subspace, CoordinatesReconstruct) {
  std::mt19937 rng(9);
  Subspace U = random_subspace(rng, 7, 4);
  SparseVec v;
  for (std::size_t i = 0; i < U.dim(); ++i) v.axpy(Cyc(static_cast<long>(i) + 2), U.basis()[i]);
  auto c = U.coordinates(v);
  ASSERT_TRUE(c);
  SparseVec back;
  for (std::size_t i = 0; i < U.dim(); ++i) back.axpy((*c)[i], U.basis()[i]);
  EXPECT_EQ(back, v);
  if (U.dim() < 7) {
    SparseVec outside;
    for (std::size_t j = 0; j < 7; ++j)
      if (!U.contains(SparseVec::unit(j))) outside = SparseVec::unit(j);
    EXPECT_FALSE(U.coordinates(outside));
  }
}

TEST(Tensor, ContractUnitOfKC2GivesIdentity) {
  Tensor3::Builder b(2, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) b.add(i, j, (i + j) % 2, Cyc(1));
  Tensor3 mult = b.build();
  EXPECT_EQ(tensor_contract(mult, 1, unit_vec(2, 0)), Mat::identity(2));
  EXPECT_EQ(tensor_contract(mult, 2, unit_vec(2, 0)), Mat::identity(2));
}

TEST(Tensor, CounitContractionOfKC6) {
  Tensor3::Builder b(6, 6, 6);
  for (std::size_t k = 0; k < 6; ++k) b.add(k, k, k, Cyc(1));
  Tensor3 comult = b.build();
  Vec counit(6, Cyc(1));
  // Contracting the middle axis leaves (k, right factor).
  EXPECT_EQ(tensor_contract(comult, 2, counit), Mat::identity(6));
  EXPECT_EQ(tensor_contract(comult, 3, counit), Mat::identity(6));
}

TEST(Tensor, BuilderDropsZerosAndSorts) {
  Tensor3::Builder b(3, 3, 3);
  b.add(2, 1, 0, Cyc(1));
  b.add(0, 0, 2, Cyc(5));
  b.add(2, 1, 0, Cyc(-1));
  Tensor3 t = b.build();
  EXPECT_EQ(t.nnz(), 1u);
  EXPECT_EQ(t.at(0, 0, 2), Cyc(5));
  EXPECT_TRUE(t.fiber(2, 1).empty());
  EXPECT_THROW(b.add(3, 0, 0, Cyc(1)), Error);
}

TEST(Tensor, MapTensorProductIdentity) {
  EXPECT_EQ(map_tensor_product(Mat::identity(2), Mat::identity(3)), Mat::identity(6));
}

TEST(Tensor, KroneckerOrderingContract) {
  std::mt19937 rng(13);
  for (int t = 0; t < 5; ++t) {
    Mat f = random_mat(rng, 3, 2), g = random_mat(rng, 2, 4);
    Mat fg = map_tensor_product(f, g);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        SparseVec lhs = fg.apply(SparseVec::unit(i * 4 + j));
        SparseVec rhs = kron(f.column(i), g.column(j), 2);
        EXPECT_EQ(lhs, rhs);
      }
  }
}

TEST(Echelon, IncrementalMatchesBatch) {
  std::mt19937 rng(17);
  Mat m = random_mat(rng, 12, 10, 35);
  Echelon e(10);
  for (std::size_t i = 0; i < 12; ++i) e.add_row(m.row(i));
  EXPECT_EQ(e.rank(), image(m.transpose()).dim());
  // Rows are reduced: each pivot column appears in exactly one row.
  for (std::size_t r = 0; r < e.rank(); ++r)
    for (std::size_t s = 0; s < e.rank(); ++s)
      if (r != s) EXPECT_TRUE(e.rows()[s].get(e.pivot_of_row(r)).is_zero());
  // Kernel vectors annihilate every row.
  for (const auto& k : e.kernel_basis()) EXPECT_TRUE(is_zero(m.apply(k.dense(10))));
}
