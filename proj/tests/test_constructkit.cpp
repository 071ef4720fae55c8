#include <gtest/gtest.h>

#include <chrono>

#include "hopfforge/constructkit.hpp"
#include "oracles.hpp"

using namespace hopfforge;

namespace {

std::shared_ptr<const HopfSC> kc(int n) { return std::make_shared<const HopfSC>(cyclic_group_algebra(n)); }

CompatibleDatum datum(std::shared_ptr<const HopfSC> H, const SparseVec& g, const Vec& chi, const Cyc& lambda) {
  auto d = validate_yd_datum(H, g, chi);
  EXPECT_TRUE(d.ok()) << d.report.summary();
  auto c = validate_compatible_datum(*d, lambda);
  EXPECT_TRUE(c.ok()) << c.report.summary();
  return *c;
}

// O(KC6, g^3, chi(g) = -1, 0)
OreHopf b0_ore() { return build_ore_hopf(datum(kc(6), basis_vec(3), cyclic_character(6, Cyc(-1)), Cyc(0)), "x"); }

OreHopf dim8() { return build_ore_hopf(datum(kc(4), basis_vec(1), cyclic_character(4, Cyc(-1)), Cyc(1))); }

std::shared_ptr<const HopfSC> shared(const HopfSC& H) { return std::make_shared<const HopfSC>(H); }

}  // namespace

TEST(Datum, ValidOverKC6) {
  auto d = validate_yd_datum(kc(6), basis_vec(1), cyclic_character(6, Cyc::zeta(6)));
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->N, 6);
  EXPECT_EQ(d->q, Cyc::zeta(6));
}

TEST(Datum, RejectsNonGroupLike) {
  auto d = validate_yd_datum(kc(6), basis_vec(1) + basis_vec(2), cyclic_character(6, Cyc(-1)));
  EXPECT_FALSE(d.ok());
  EXPECT_FALSE(d.report.passed("group_like"));
}

TEST(Datum, RejectsNonCharacter) {
  Vec chi = cyclic_character(6, Cyc(-1));
  chi[2] = Cyc(2);
  EXPECT_FALSE(validate_yd_datum(kc(6), basis_vec(1), chi).report.passed("character"));
}

TEST(Datum, CompatibilityOverB0) {
  auto B = shared(oracle::b0());
  auto good = validate_yd_datum(B, basis_vec(1), oracle::b0_character(Cyc::zeta(6)));
  EXPECT_TRUE(good.ok()) << good.report.summary();
  // phi(x) = -x and psi(x) = x, so g^2 phi(x) = -x g^2 differs from psi(x) g^2.
  auto bad = validate_yd_datum(B, basis_vec(2), oracle::b0_character(Cyc::zeta(6)));
  EXPECT_FALSE(bad.report.passed("compatibility"));
  EXPECT_TRUE(bad.report.passed("center:grouplikes"));
}

TEST(Datum, LambdaGate) {
  // g^3 over KC6 with q = -1: g^6 = 1 closes the gate.
  auto d = validate_yd_datum(kc(6), basis_vec(3), cyclic_character(6, Cyc(-1)));
  ASSERT_TRUE(d.ok());
  auto bad = validate_compatible_datum(*d, Cyc(1));
  EXPECT_FALSE(bad.ok());
  EXPECT_FALSE(bad.report.passed("lambda_gate"));
  EXPECT_TRUE(validate_compatible_datum(*d, Cyc(0)).ok());

  // g over KC4 with q = -1: g^2 != 1 central and chi^2 = eps.
  auto H = kc(4);
  Vec integral = group_algebra_integral(*H);
  auto d4 = validate_yd_datum(H, basis_vec(1), cyclic_character(4, Cyc(-1)));
  auto ok = validate_compatible_datum(*d4, Cyc(1), &integral);
  EXPECT_TRUE(ok.ok()) << ok.report.summary();
  EXPECT_TRUE(ok.report.passed("gate_criteria_agree"));

  // chi(g) = i: q = i, N = 4, g^4 = 1.
  auto di = validate_yd_datum(H, basis_vec(1), cyclic_character(4, Cyc::zeta(4)));
  EXPECT_FALSE(validate_compatible_datum(*di, Cyc(1), &integral).ok());
}

TEST(Datum, GateCriteriaAgreeOnCyclicGroups) {
  for (int n : {2, 4, 6, 8}) {
    auto H = kc(n);
    Vec integral = group_algebra_integral(*H);
    for (int s = 0; s < n; ++s)
      for (int j = 0; j < n; ++j) {
        auto d = validate_yd_datum(H, basis_vec(s), cyclic_character(n, Cyc::zeta(n, j)));
        ASSERT_TRUE(d.ok());
        CompatibilityGate gate = compatibility_gate(*d, true, &integral);
        EXPECT_EQ(*gate.raw, *gate.integral) << n << " " << s << " " << j;
      }
  }
}

TEST(QuantumLine, MatchesOracle) {
  auto H = kc(6);
  auto d = validate_yd_datum(H, basis_vec(1), cyclic_character(6, Cyc::zeta(6)));
  QuantumLine L = build_quantum_line(*d);
  PreBialgebra ref = oracle::quantum_line(H, 6, 1, Cyc::zeta(6), 6);
  EXPECT_EQ(L.P.mult, ref.mult);
  EXPECT_EQ(L.P.comult, ref.comult);
  EXPECT_EQ(L.P.yd.action, ref.yd.action);
  EXPECT_EQ(L.P.yd.coaction, ref.yd.coaction);
  EXPECT_TRUE(L.braided_hopf);
}

TEST(QuantumLine, TrivialCharacterGivesGroundField) {
  auto d = validate_yd_datum(kc(6), basis_vec(1), cyclic_character(6, Cyc(1)));
  QuantumLine L = build_quantum_line(*d);
  EXPECT_EQ(L.P.dim(), 1u);
}

TEST(QuantumLine, InfiniteOrderThrows) {
  YDDatum d{kc(2), basis_vec(1), cyclic_character(2, Cyc(1)), Cyc(2), 0};
  try {
    build_quantum_line(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfiniteOrder);
  }
}

TEST(Ore, ReproducesB0) {
  OreHopf O = b0_ore();
  HopfSC ref = oracle::b0();
  EXPECT_EQ(O.O.labels, ref.labels);
  EXPECT_EQ(O.O.algebra.mult, ref.algebra.mult);
  EXPECT_EQ(O.O.coalgebra.comult, ref.coalgebra.comult);
  EXPECT_EQ(O.O.coalgebra.counit, ref.coalgebra.counit);
  EXPECT_EQ(*O.O.antipode, *ref.antipode);
  EXPECT_EQ(O.y, basis_vec(6));
}

TEST(Ore, Dim8SquareAndAgreementWithBosonization) {
  OreHopf O = dim8();
  EXPECT_EQ(O.O.dim(), 8u);
  EXPECT_EQ(multiply(O.O.algebra, O.y, O.y), basis_vec(0) - basis_vec(2));
  EXPECT_TRUE(check_hopf(O.O).ok());
  // Same structure via the cocycle route.
  PreBialgebra P = oracle::quantum_line(kc(4), 4, 1, Cyc(-1), 2);
  Cocycle xi = trivial_cocycle(P);
  Tensor3::Builder b(2, 2, 4);
  for (const auto& e : xi.xi.entries()) b.add(e.i, e.j, e.k, e.v);
  b.add(1, 1, 0, Cyc(1));
  b.add(1, 1, 2, Cyc(-1));
  Bosonization bos = bosonize(P, Cocycle{b.build()});
  EXPECT_EQ(bos.B.algebra.mult, O.O.algebra.mult);
  EXPECT_EQ(bos.B.coalgebra.comult, O.O.coalgebra.comult);
  EXPECT_EQ(*bos.B.antipode, *O.O.antipode);
}

TEST(Ore, DegenerateN1IsH) {
  OreHopf O = build_ore_hopf(datum(kc(3), basis_vec(1), cyclic_character(3, Cyc(1)), Cyc(0)));
  EXPECT_EQ(O.O.dim(), 3u);
  EXPECT_TRUE(O.y.empty());
  EXPECT_EQ(O.p, Mat::identity(3));
}

TEST(Ore, ProjectionIsCoalgebraRetraction) {
  OreHopf O = dim8();
  RetractionDiagnostics rd = retraction_diagnostics(O.O, *O.H, O.p, O.sigma);
  EXPECT_TRUE(rd.retraction && rd.coalgebra_map && rd.H_bilinear);
  EXPECT_FALSE(rd.algebra_map);
}

TEST(Ore, CoproductOfPowers) {
  // Xmas: O(B0, g, chi(g) = zeta6, 0); Delta(y^n) = sum binom(n,i)_q y^{n-i} Gamma^i (x) y^i.
  auto B = shared(oracle::b0());
  auto t0 = std::chrono::steady_clock::now();
  OreHopf O = build_ore_hopf(datum(B, basis_vec(1), oracle::b0_character(Cyc::zeta(6)), Cyc(0)));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(O.O.dim(), 72u);
  EXPECT_LT(secs, 300.0);
  Cyc q = Cyc::zeta(6);
  const std::size_t dim = 72;
  SparseVec yn = O.O.algebra.unit;
  for (long n = 0; n < 6; ++n) {
    Accum acc;
    SparseVec Gi = O.O.algebra.unit;
    for (long i = 0; i <= n; ++i) {
      SparseVec left = multiply(O.O.algebra, power(O.O.algebra, O.y, static_cast<unsigned>(n - i)), Gi);
      acc.add(kron(left, power(O.O.algebra, O.y, static_cast<unsigned>(i)), dim), q_binomial(n, i, q));
      Gi = multiply(O.O.algebra, Gi, O.Gamma);
    }
    EXPECT_EQ(comultiply(O.O.coalgebra, yn), acc.finish()) << n;
    yn = multiply(O.O.algebra, yn, O.y);
  }
  EXPECT_TRUE(power(O.O.algebra, O.y, 6).empty());
}

TEST(Ore, ClosedFormAntipode) {
  OreHopf O = b0_ore();
  EXPECT_EQ(ore_closed_form_antipode(O), *O.O.antipode);
}

TEST(Characters, EveryCharacterKillsY) {
  OreHopf O = dim8();
  // Candidates eta(g) = i^k, eta(y) in {0, 1, -1}.
  int found = 0;
  for (long k = 0; k < 4; ++k)
    for (int yv : {0, 1, -1}) {
      Vec eta = zero_vec(8);
      for (std::size_t j = 0; j < 4; ++j) {
        eta[j] = Cyc::zeta(4, k * static_cast<long>(j));
        eta[4 + j] = Cyc(yv) * eta[j];
      }
      if (!verify_character(O.O, eta)) continue;
      ++found;
      CheckReport rep = check_characters_of_ore(O, eta);
      EXPECT_TRUE(rep.ok()) << rep.summary();
    }
  // eta(g) = +-1, eta(y) = 0
  EXPECT_EQ(found, 2);
}

TEST(Universal, ExtendsToBosonization) {
  OreHopf O = dim8();
  PreBialgebra P = oracle::quantum_line(kc(4), 4, 1, Cyc(-1), 2);
  Cocycle xi = trivial_cocycle(P);
  Tensor3::Builder b(2, 2, 4);
  for (const auto& e : xi.xi.entries()) b.add(e.i, e.j, e.k, e.v);
  b.add(1, 1, 0, Cyc(1));
  b.add(1, 1, 2, Cyc(-1));
  Bosonization bos = bosonize(P, Cocycle{b.build()});
  Mat fh = universal_map(O, bos.B, bos.sigma, basis_vec(4));
  EXPECT_EQ(fh, Mat::identity(8));
  try {
    universal_map(O, bos.B, bos.sigma, Cyc(2) * basis_vec(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolation);
  }
}

TEST(Iterated, XmasDatumBothSides) {
  OreHopf O1 = b0_ore();
  IteratedDatumReport r = iterated_datum_check(O1, basis_vec(1), oracle::b0_character(Cyc::zeta(6)), Cyc(0));
  EXPECT_TRUE(r.side1);
  EXPECT_TRUE(r.side2);
  EXPECT_TRUE(r.report.ok()) << r.report.summary();
}

TEST(Iterated, EquivalenceOverAllCyclicData) {
  OreHopf O1 = b0_ore();
  int positive = 0;
  for (long s = 0; s < 6; ++s)
    for (long j = 0; j < 6; ++j)
      for (int lam : {0, 1}) {
        IteratedDatumReport r =
            iterated_datum_check(O1, basis_vec(static_cast<std::size_t>(s)), oracle::b0_character(Cyc::zeta(6, j)), Cyc(lam));
        EXPECT_TRUE(r.agree()) << s << " " << j << " " << lam;
        EXPECT_EQ(r.datum1_lhs, r.datum1_rhs);
        EXPECT_EQ(r.datum2_lhs, r.datum2_rhs);
        EXPECT_EQ(r.datum3_lhs, r.datum3_rhs);
        positive += r.side1;
      }
  EXPECT_GT(positive, 0);
}

TEST(Restrict, ToGroupLikes) {
  auto B = shared(oracle::b0());
  CompatibleDatum c = datum(B, basis_vec(1), oracle::b0_character(Cyc::zeta(6)), Cyc(0));
  std::vector<SparseVec> E;
  for (std::size_t j = 0; j < 6; ++j) E.push_back(basis_vec(j));
  CompatibleDatum r = restrict_datum(c, E);
  EXPECT_EQ(r.d.H->dim(), 6u);
  EXPECT_EQ(r.d.chi, cyclic_character(6, Cyc::zeta(6)));
  EXPECT_EQ(r.d.N, 6);
}

TEST(Restrict, RejectsNonSubHopf) {
  auto B = shared(oracle::b0());
  CompatibleDatum c = datum(B, basis_vec(1), oracle::b0_character(Cyc::zeta(6)), Cyc(0));
  for (std::vector<SparseVec> E : {std::vector<SparseVec>{basis_vec(0), basis_vec(2), basis_vec(4)},
                                   std::vector<SparseVec>{basis_vec(0), basis_vec(6)}}) {
    try {
      restrict_datum(c, E);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotSubHopf);
    }
  }
}
