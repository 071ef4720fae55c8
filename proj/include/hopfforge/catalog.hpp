#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfforge/projanalyze.hpp"

namespace hopfforge::catalog {

inline CompatibleDatum must_datum(std::shared_ptr<const HopfSC> H, const SparseVec& g, const Vec& chi, const Cyc& lambda) {
  auto d = validate_yd_datum(std::move(H), g, chi);
  if (!d.ok()) throw Error(ErrorCode::HypothesisViolation, "catalog datum: " + d.report.failures().front());
  auto c = validate_compatible_datum(*d, lambda);
  if (!c.ok()) throw Error(ErrorCode::HypothesisViolation, "catalog datum: " + c.report.failures().front());
  return *c;
}

inline std::shared_ptr<const HopfSC> cyclic(int n) { return std::make_shared<const HopfSC>(cyclic_group_algebra(n)); }

// O(KC6, g^3, chi(g) = -1, 0): basis x^e g^j.
inline OreHopf b0() {
  OreHopf O = build_ore_hopf(must_datum(cyclic(6), basis_vec(3), cyclic_character(6, Cyc(-1)), Cyc(0)), "x");
  O.O.name = "B0";
  return O;
}

// chi on B0 with g -> value and x -> 0.
inline Vec b0_character(const Cyc& value) {
  Vec chi = zero_vec(12);
  for (std::size_t j = 0; j < 6; ++j) chi[j] = value.pow(static_cast<long>(j));
  return chi;
}

// O(B0, g, chi(g) = zeta_6, 0) of dimension 72.
inline OreHopf xmas() {
  auto B = std::make_shared<const HopfSC>(b0().O);
  OreHopf O = build_ore_hopf(must_datum(B, basis_vec(1), b0_character(Cyc::zeta(6)), Cyc(0)), "y");
  O.O.name = "A_xmas";
  return O;
}

// pi(y^i h) = delta_{i,0} h + delta_{i,3} x h
inline Mat xmas_pi(const OreHopf& O) {
  const HopfSC& H = *O.H;
  const std::size_t n = H.dim();
  Mat pi = O.p;
  const SparseVec x = basis_vec(6);
  for (std::size_t h = 0; h < n; ++h)
    for (const auto& [t, c] : multiply(H.algebra, x, basis_vec(h))) pi(t, 3 * n + h) = c;
  return pi;
}

// O(KC4, g, chi(g) = -1, 1): y^2 = 1 - g^2.
inline OreHopf c4min() {
  OreHopf O = build_ore_hopf(must_datum(cyclic(4), basis_vec(1), cyclic_character(4, Cyc(-1)), Cyc(1)));
  O.O.name = "C4min";
  return O;
}

// O(KC12, g, chi(g) = zeta_6, 1)
inline OreHopf kc12_lambda() {
  OreHopf O = build_ore_hopf(must_datum(cyclic(12), basis_vec(1), cyclic_character(12, Cyc::zeta(6)), Cyc(1)));
  O.O.name = "KC12_lambda";
  return O;
}

inline QuantumLine qline6() {
  auto d = validate_yd_datum(cyclic(6), basis_vec(1), cyclic_character(6, Cyc::zeta(6)));
  QuantumLine L = build_quantum_line(*d);
  L.P.name = "Rq6";
  return L;
}

inline Bosonization smash36() {
  QuantumLine L = qline6();
  Bosonization b = bosonize(L.P, trivial_cocycle(L.P));
  b.B.name = "Smash36";
  return b;
}

// KC6 = KC2 x KC3 over KC3: the coinvariants are KC2, which is not thin.
inline ProjectionSetup non_thin() {
  auto A = std::make_shared<const HopfSC>(abelian_group_algebra({2, 3}));
  auto H = cyclic(3);
  Mat sigma(6, 3), pi(3, 6);
  for (std::size_t b = 0; b < 3; ++b) {
    sigma(b, b) = Cyc(1);
    pi(b, b) = Cyc(1);
    pi(b, 3 + b) = Cyc(1);
  }
  return ProjectionSetup::make(A, H, sigma, pi);
}

struct Entry {
  std::string name;
  ProjectionSetup setup;
};

// Every catalog projection (A, H, sigma, pi).
inline std::vector<Entry> setups() {
  std::vector<Entry> out;
  out.push_back({"b0", ProjectionSetup::from_ore(b0())});
  OreHopf X = xmas();
  out.push_back({"xmas_p", ProjectionSetup::from_ore(X)});
  ProjectionSetup xs = ProjectionSetup::from_ore(X);
  xs.pi = xmas_pi(X);
  out.push_back({"xmas_pi", xs});
  out.push_back({"c4min", ProjectionSetup::from_ore(c4min())});
  out.push_back({"smash36", ProjectionSetup::from_bosonization(smash36(), cyclic(6))});
  return out;
}

}  // namespace hopfforge::catalog
