#include <gtest/gtest.h>

#include "hopfforge/cocyclebos.hpp"
#include "oracles.hpp"

using namespace hopfforge;

namespace {

std::shared_ptr<const HopfSC> kc(int n) { return std::make_shared<const HopfSC>(cyclic_group_algebra(n)); }

PreBialgebra line6() { return oracle::quantum_line(kc(6), 6, 1, Cyc::zeta(6), 6); }

// R = span{1, y} over KC_4 with g.y = -y, rho(y) = g (x) y, y^2 = 0.
PreBialgebra line_dim2() { return oracle::quantum_line(kc(4), 4, 1, Cyc(-1), 2); }

// xi(y (x) y) = lambda (1 - g^2), trivial elsewhere.
Cocycle dim8_cocycle(const PreBialgebra& P, const Cyc& lambda) {
  Cocycle t = trivial_cocycle(P);
  Tensor3::Builder b(2, 2, 4);
  for (const auto& e : t.xi.entries()) b.add(e.i, e.j, e.k, e.v);
  b.add(1, 1, 0, lambda);
  b.add(1, 1, 2, -lambda);
  return Cocycle{b.build()};
}

bool has_witness(const CheckReport& rep, const std::string& item, const std::string& w) {
  const CheckItem* it = rep.find(item);
  return it && std::find(it->witnesses.begin(), it->witnesses.end(), w) != it->witnesses.end();
}

}  // namespace

TEST(PreBialgebra, QuantumLinePasses) {
  PreBialgebra P = line6();
  CheckReport rep = check_prebialgebra(P);
  EXPECT_TRUE(rep.ok()) << rep.summary();
  EXPECT_TRUE(rep.passed("info:associative"));
  EXPECT_TRUE(rep.passed("info:colinear"));
}

TEST(PreBialgebra, DoubledUnitBreaksYD1) {
  PreBialgebra P = line6();
  P.unit = Cyc(2) * P.unit;
  CheckReport rep = check_prebialgebra(P);
  EXPECT_FALSE(rep.passed("YD1'"));
  EXPECT_FALSE(rep.ok());
}

TEST(PreBialgebra, NonColinearProductIsOnlyInformative) {
  // y * y = 1 is H-linear since chi^2 = 1, but g^2 != 1 so it is not colinear.
  auto H = kc(4);
  PreBialgebra P = oracle::quantum_line(H, 4, 1, Cyc(-1), 2);
  Tensor3::Builder m(2, 2, 2);
  for (const auto& e : P.mult.entries()) m.add(e.i, e.j, e.k, e.v);
  m.add(1, 1, 0, Cyc(1));
  P.mult = m.build();
  CheckReport rep = check_prebialgebra(P);
  EXPECT_FALSE(rep.passed("info:colinear"));
  EXPECT_TRUE(rep.find("info:colinear")->informative);
  EXPECT_TRUE(rep.passed("YD2'"));
  // delta(y^2) = delta(1) = 1 (x) 1 but (m (x) m) delta_RR(y (x) y) has no 1 (x) 1 term
  EXPECT_FALSE(rep.passed("YD4'"));
}

TEST(Cocycle, TrivialOnBraidedBialgebra) {
  PreBialgebra P = line6();
  Cocycle xi = trivial_cocycle(P);
  CheckReport rep = check_cocycle(P, xi);
  EXPECT_TRUE(rep.ok()) << rep.summary();
  EXPECT_TRUE(is_radford_majid(P, xi));
}

TEST(Cocycle, Dim8LambdaOnePasses) {
  PreBialgebra P = line_dim2();
  ASSERT_TRUE(check_prebialgebra(P).ok());
  Cocycle xi = dim8_cocycle(P, Cyc(1));
  CheckReport rep = check_cocycle(P, xi);
  EXPECT_TRUE(rep.ok()) << rep.summary();
  EXPECT_FALSE(is_radford_majid(P, xi));
}

TEST(Cocycle, BrokenCocycleDetected) {
  PreBialgebra P = line_dim2();
  // xi(y (x) y) = 1 alone is not a skew-primitive value.
  Cocycle t = trivial_cocycle(P);
  Tensor3::Builder b(2, 2, 4);
  for (const auto& e : t.xi.entries()) b.add(e.i, e.j, e.k, e.v);
  b.add(1, 1, 0, Cyc(1));
  CheckReport rep = check_cocycle(P, Cocycle{b.build()});
  EXPECT_FALSE(rep.passed("YD5'"));
  EXPECT_TRUE(has_witness(rep, "YD5'", "(y,y) Delta"));
  Tensor3::Builder u(2, 2, 4);
  for (const auto& e : t.xi.entries()) u.add(e.i, e.j, e.k, Cyc(3) * e.v);
  EXPECT_FALSE(check_cocycle(P, Cocycle{u.build()}).passed("YD10'"));
}

TEST(MTilde, UnitAndDim8Square) {
  PreBialgebra P = line_dim2();
  Cocycle xi = dim8_cocycle(P, Cyc(1));
  Mat mt = m_tilde(P, xi);
  const std::size_t n = 4;
  for (std::size_t r = 0; r < 2; ++r) EXPECT_EQ(mt.column(r * 2 + 0), basis_vec(r * n + 0));
  // y (x) y -> 1 (x) (1 - g^2)
  EXPECT_EQ(mt.column(3), basis_vec(0) - basis_vec(2));
}

TEST(MTilde, DividedPowerFormulaOnQuantumLine) {
  // With xi trivial, m~(d_a (x) d_b) = sum q^{j(a-i)} d_i d_j (x) xi(d_{a-i} (x) d_{b-j}) collapses to i=a, j=b.
  // Here the check is the brute-force sum over all (i, j) with d_a = y^a / (a)!_q.
  PreBialgebra P = line6();
  Cocycle xi = trivial_cocycle(P);
  Mat mt = m_tilde(P, xi);
  Cyc q = Cyc::zeta(6);
  const std::size_t N = 6, n = 6;
  auto d = [&](std::size_t a) { return q_factorial(static_cast<long>(a), q).inv() * basis_vec(a); };
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      SparseVec lhs = mt.apply(kron(d(a), d(b), N));
      Accum rhs;
      for (std::size_t i = 0; i <= a; ++i)
        for (std::size_t j = 0; j <= b; ++j) {
          SparseVec prod = multiply(P.algebra(), d(i), d(j));
          SparseVec x = PreBialgebraOps(P, &xi).xi(kron(d(a - i), d(b - j), N));
          rhs.add(kron(prod, x, n), q.pow(static_cast<long>(j * (a - i))));
        }
      EXPECT_EQ(lhs, rhs.finish()) << a << "," << b;
    }
}

TEST(Bosonize, RadfordMajidSmashDim36) {
  PreBialgebra P = line6();
  Bosonization bos = bosonize(P, trivial_cocycle(P));
  EXPECT_EQ(bos.B.dim(), 36u);
  EXPECT_TRUE(bos.hopf);
  EXPECT_TRUE(check_hopf(bos.B).ok());
  auto H = kc(6);
  AlgebraSC sm = braided_tensor_algebra(P.yd, P.algebra(), adjoint_action_module(H), H->algebra);
  EXPECT_EQ(bos.B.algebra.mult, sm.mult);
  CoalgebraSC sc = braided_tensor_coalgebra(P.yd, P.coalgebra(), adjoint_coaction_module(H), H->coalgebra);
  EXPECT_EQ(bos.B.coalgebra.comult, sc.comult);
  RetractionDiagnostics rd = retraction_diagnostics(bos.B, *H, bos.pi, bos.sigma);
  EXPECT_TRUE(rd.retraction && rd.coalgebra_map && rd.algebra_map && rd.H_bilinear);
}

TEST(Bosonize, Dim8HopfAlgebra) {
  PreBialgebra P = line_dim2();
  Bosonization bos = bosonize(P, dim8_cocycle(P, Cyc(1)));
  EXPECT_EQ(bos.B.dim(), 8u);
  EXPECT_TRUE(bos.hopf);
  EXPECT_TRUE(check_hopf(bos.B).ok());
  // (y#1)^2 = 1#(1 - g^2)
  EXPECT_EQ(multiply(bos.B.algebra, 4, 4), basis_vec(0) - basis_vec(2));
  RetractionDiagnostics rd = retraction_diagnostics(bos.B, *kc(4), bos.pi, bos.sigma);
  EXPECT_TRUE(rd.retraction);
  EXPECT_TRUE(rd.coalgebra_map);
  EXPECT_TRUE(rd.H_bilinear);
  EXPECT_FALSE(rd.algebra_map);
  EXPECT_TRUE(has_witness(rd.report, "algebra_map", "(y#1,y#1)"));
}

TEST(Bosonize, RejectsInvalidCocycle) {
  PreBialgebra P = line_dim2();
  Cocycle t = trivial_cocycle(P);
  Tensor3::Builder b(2, 2, 4);
  for (const auto& e : t.xi.entries()) b.add(e.i, e.j, e.k, e.v);
  b.add(1, 1, 1, Cyc(1));
  try {
    bosonize(P, Cocycle{b.build()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AxiomViolation);
  }
}

TEST(Bosonize, SigmaIsInjectiveBialgebraMap) {
  PreBialgebra P = line_dim2();
  Bosonization bos = bosonize(P, dim8_cocycle(P, Cyc(1)));
  HopfSC H = cyclic_group_algebra(4);
  EXPECT_EQ(rank(bos.sigma), 4u);
  for (std::size_t h = 0; h < 4; ++h) {
    EXPECT_EQ(apply_tensor(bos.sigma, bos.sigma, comultiply(H.coalgebra, h), 4), comultiply(bos.B.coalgebra, bos.sigma.column(h)));
    for (std::size_t k = 0; k < 4; ++k)
      EXPECT_EQ(bos.sigma.apply(multiply(H.algebra, h, k)), multiply(bos.B.algebra, bos.sigma.column(h), bos.sigma.column(k)));
  }
}

TEST(Bosonize, CoradicalLayersMatchR) {
  PreBialgebra P = line6();
  Bosonization bos = bosonize(P, trivial_cocycle(P));
  std::vector<SparseVec> cols;
  for (std::size_t h = 0; h < 6; ++h) cols.push_back(bos.sigma.column(h));
  Filtration f = filtration_from(bos.B.coalgebra, Subspace::span(36, cols));
  std::vector<std::size_t> expected;
  for (std::size_t k = 1; k <= 6; ++k) expected.push_back(6 * k);
  EXPECT_EQ(f.dims(), expected);
}
