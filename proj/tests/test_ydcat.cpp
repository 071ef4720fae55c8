#include <gtest/gtest.h>

#include "hopfforge/ydcat.hpp"
#include "oracles.hpp"

using namespace hopfforge;

namespace {

std::shared_ptr<const HopfSC> kc6() { return std::make_shared<const HopfSC>(cyclic_group_algebra(6)); }
std::shared_ptr<const HopfSC> b0() { return std::make_shared<const HopfSC>(oracle::b0()); }

// One-dimensional module over B0: g acts by -1, x by 0, coaction g^s (x) y.
YDModule b0_line(std::shared_ptr<const HopfSC> B, std::size_t s) {
  YDModule V;
  V.base = B;
  V.dim = 1;
  V.labels = {"y"};
  Tensor3::Builder a(12, 1, 1), c(1, 12, 1);
  for (std::size_t j = 0; j < 6; ++j) a.add(j, 0, 0, Cyc(j % 2 ? -1 : 1));
  c.add(0, s, 0, Cyc(1));
  V.action = a.build();
  V.coaction = c.build();
  return V;
}

}  // namespace

TEST(YD, TrivialModulePasses) {
  for (auto H : {kc6(), b0()}) EXPECT_TRUE(check_yd(trivial_module(H)).ok());
}

TEST(YD, SignLineOverKC6) {
  auto H = kc6();
  auto L = oracle::line_module(H, 6, 3, Cyc(-1), 2);
  EXPECT_TRUE(check_yd(L.module).ok());
  // Any group-like degree is compatible over a commutative, cocommutative base.
  auto L2 = oracle::line_module(H, 6, 2, Cyc(-1), 2);
  EXPECT_TRUE(check_yd(L2.module).ok());
}

TEST(YD, WrongDegreeFailsOverB0) {
  auto B = b0();
  CheckReport good = check_yd(b0_line(B, 3));
  EXPECT_TRUE(good.ok()) << good.summary();
  CheckReport bad = check_yd(b0_line(B, 2));
  EXPECT_FALSE(bad.passed("yd_compatibility"));
  EXPECT_FALSE(bad.passed("yd_compatibility_alt"));
  const auto& w = bad.find("yd_compatibility")->witnesses;
  EXPECT_NE(std::find(w.begin(), w.end(), "(x,y)"), w.end());
}

TEST(YD, BrokenModuleAxioms) {
  auto H = kc6();
  auto L = oracle::line_module(H, 6, 1, Cyc::zeta(6), 3);
  Tensor3::Builder a(6, 3, 3);
  for (const auto& e : L.module.action.entries()) a.add(e.i, e.j, e.k, e.i == 1 ? e.v * Cyc(2) : e.v);
  L.module.action = a.build();
  CheckReport rep = check_yd(L.module);
  EXPECT_FALSE(rep.passed("module_associativity"));
}

TEST(Braiding, TrivialObjectIsFlip) {
  auto H = kc6();
  auto L = oracle::line_module(H, 6, 1, Cyc::zeta(6), 4);
  EXPECT_EQ(braiding(trivial_module(H), L.module), Mat::identity(4));
  EXPECT_EQ(braiding(L.module, trivial_module(H)), Mat::identity(4));
}

TEST(Braiding, LineScalar) {
  auto H = kc6();
  for (std::size_t s : {1u, 3u}) {
    Cyc chi = s == 3 ? Cyc(-1) : Cyc::zeta(6);
    auto L = oracle::line_module(H, 6, s, chi, 2);
    Mat c = braiding(L.module, L.module);
    // y (x) y sits at index 1 * 2 + 1; q = chi(g^s)
    Cyc q = chi.pow(static_cast<long>(s));
    EXPECT_EQ(c.column(3), q * basis_vec(3));
  }
}

TEST(Braiding, InvertibleOnQuantumLine) {
  auto H = kc6();
  auto L = oracle::line_module(H, 6, 1, Cyc::zeta(6), 6);
  Mat c = braiding(L.module, L.module);
  EXPECT_EQ(rank(c), 36u);
}

TEST(Braiding, SymmetricOnSignLine) {
  auto H = kc6();
  auto L = oracle::line_module(H, 6, 3, Cyc(-1), 2);
  Mat c = braiding(L.module, L.module);
  EXPECT_EQ(c * c, Mat::identity(4));
}

TEST(Braiding, Hexagon) {
  auto H = kc6();
  std::vector<YDModule> objs{trivial_module(H), oracle::line_module(H, 6, 3, Cyc(-1), 2).module,
                             oracle::line_module(H, 6, 1, Cyc::zeta(6), 3).module};
  for (const auto& V : objs)
    for (const auto& W : objs)
      for (const auto& U : objs) {
        Mat lhs = braiding(tensor_module(V, W), U, false);
        Mat rhs = map_tensor_product(braiding(V, U, false), Mat::identity(W.dim)) *
                  map_tensor_product(Mat::identity(V.dim), braiding(W, U, false));
        EXPECT_EQ(lhs, rhs);
      }
}

TEST(Braiding, RejectsNonYD) {
  auto B = b0();
  try {
    braiding(b0_line(B, 2), b0_line(B, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::YDViolation);
  }
}

TEST(TensorModule, IsYD) {
  auto B = b0();
  YDModule T = tensor_module(b0_line(B, 3), adjoint_action_module(B));
  EXPECT_TRUE(check_yd(T).ok());
}

TEST(BraidedTensor, WithUnitObjectIsCopy) {
  auto H = kc6();
  auto L = oracle::line_module(H, 6, 1, Cyc::zeta(6), 6);
  AlgebraSC K{1, [] {
                Tensor3::Builder b(1, 1, 1);
                b.add(0, 0, 0, Cyc(1));
                return b.build();
              }(),
              basis_vec(0)};
  AlgebraSC A = braided_tensor_algebra(L.module, L.algebra, trivial_module(H), K);
  EXPECT_EQ(A.mult, L.algebra.mult);
}

TEST(BraidedTensor, LineTimesLineIsAssociative) {
  auto H = kc6();
  auto L = oracle::line_module(H, 6, 1, Cyc::zeta(6), 3);
  AlgebraSC A = braided_tensor_algebra(L.module, L.algebra, L.module, L.algebra);
  EXPECT_TRUE(check_algebra(A).ok());
}

// Smash product and smash coproduct against the explicit formulas r(h1 s) # h2 k and r1 # r2_{-1} h1 (x) r2_0 # h2.
TEST(Smash, ProductAndCoproductFormulas) {
  auto H = kc6();
  const std::size_t N = 6, n = 6;
  auto L = oracle::line_module(H, n, 1, Cyc::zeta(6), N);
  AlgebraSC sm = braided_tensor_algebra(L.module, L.algebra, adjoint_action_module(H), H->algebra);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t s = 0; s < N; ++s)
        for (std::size_t k = 0; k < n; ++k) {
          // group algebra: h1 = h2 = h
          SparseVec hs = act(L.module, h, basis_vec(s));
          SparseVec expected;
          for (const auto& [s2, x] : hs)
            if (r + s2 < N) expected.axpy(x, basis_vec((r + s2) * n + (h + k) % n));
          EXPECT_EQ(multiply(sm, r * n + h, s * n + k), expected);
        }
  // Quantum-binomial comultiplication on the line.
  Cyc q = Cyc::zeta(6);
  Tensor3::Builder cb(N, N, N);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t i = 0; i <= a; ++i) cb.add(a, a - i, i, q_binomial(static_cast<long>(a), static_cast<long>(i), q));
  CoalgebraSC lc{N, cb.build(), unit_vec(N, 0)};
  EXPECT_TRUE(check_coalgebra(lc).ok());
  CoalgebraSC sc = braided_tensor_coalgebra(L.module, lc, adjoint_coaction_module(H), H->coalgebra);
  EXPECT_TRUE(check_coalgebra(sc).ok());
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t h = 0; h < n; ++h) {
      Accum acc;
      for (std::size_t i = 0; i <= a; ++i) {
        // r1 = y^{a-i}, r2 = y^i with coaction g^i
        std::size_t left = (a - i) * n + (i + h) % n, right = i * n + h;
        acc.add(left * (N * n) + right, q_binomial(static_cast<long>(a), static_cast<long>(i), q));
      }
      EXPECT_EQ(comultiply(sc, a * n + h), acc.finish());
    }
}

TEST(Adjoint, ActionAndCoaction) {
  auto H = kc6();
  YDModule ad = adjoint_action_module(H);
  for (std::size_t h = 0; h < 6; ++h)
    for (std::size_t x = 0; x < 6; ++x) EXPECT_EQ(act(ad, h, basis_vec(x)), H->coalgebra.counit[h] * basis_vec(x));
  auto B = b0();
  YDModule adB = adjoint_action_module(B);
  EXPECT_EQ(act(adB, 1, basis_vec(6)), Cyc(-1) * basis_vec(6));
  EXPECT_TRUE(check_yd(adB).ok());
  YDModule coB = adjoint_coaction_module(B);
  EXPECT_TRUE(check_yd(coB).ok());
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(coact(coB, basis_vec(k)), basis_vec(0 * 12 + k));
}
