#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfforge/cocyclebos.hpp"

namespace hopfforge {

struct YDDatum {
  std::shared_ptr<const HopfSC> H;
  SparseVec g;
  Vec chi;
  Cyc q;
  int N = 0;  // o(q); 0 when q has infinite order
};

struct CompatibleDatum {
  YDDatum d;
  Cyc lambda;
  bool trivial() const { return lambda.is_zero(); }
};

template <class T>
struct Validated {
  std::optional<T> value;
  CheckReport report;
  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

inline Validated<YDDatum> validate_yd_datum(std::shared_ptr<const HopfSC> Hp, const SparseVec& g, const Vec& chi) {
  Validated<YDDatum> out;
  CheckReport& rep = out.report;
  const HopfSC& H = *Hp;
  const std::size_t n = H.dim();
  rep.record("group_like", verify_group_like(H, g), "g");
  rep.record("character", chi.size() == n && verify_character(H, chi), "chi");
  if (!rep.ok()) return out;
  Cyc q = evaluate(chi, g);
  std::optional<int> N = q.is_zero() ? std::nullopt : multiplicative_order(q);
  rep.record("q_root_of_unity", N.has_value(), "q = " + q.str());
  // g phi(h) = psi(h) g
  Mat phi = phi_map(H, chi), psi = psi_map(H, chi);
  rep.pass("compatibility");
  for (std::size_t h = 0; h < n; ++h)
    if (multiply(H.algebra, g, phi.column(h)) != multiply(H.algebra, psi.column(h), g))
      rep.fail("compatibility", "(" + H.label(h) + ")");
  rep.pass("center:grouplikes");
  for (const auto& [name, a] : H.grouplikes)
    if (multiply(H.algebra, g, a) != multiply(H.algebra, a, g)) rep.fail("center:grouplikes", name);
  rep.pass("center:characters");
  for (const auto& [name, gamma] : H.characters)
    if (convolve_covectors(chi, gamma, H.coalgebra) != convolve_covectors(gamma, chi, H.coalgebra))
      rep.fail("center:characters", name);
  if (rep.ok()) out.value = YDDatum{Hp, g, chi, q, N.value_or(0)};
  return out;
}

struct CompatibilityGate {
  bool gN_is_one = false;
  std::optional<bool> raw;       // g^N != 1 and chi^N(h)(1-g^N) = sum h1 (1-g^N) S(h2) for all h
  std::optional<bool> integral;  // chi^N = eps and g^N in Z(H) \ {1}
  bool open() const { return integral ? *integral : raw.value_or(false); }
};

inline SparseVec group_power(const HopfSC& H, const SparseVec& g, int e) { return power(H.algebra, g, static_cast<unsigned>(e)); }

inline CompatibilityGate compatibility_gate(const YDDatum& d, bool use_raw = true, const Vec* integral = nullptr) {
  const HopfSC& H = *d.H;
  const std::size_t n = H.dim();
  CompatibilityGate gate;
  SparseVec gN = group_power(H, d.g, d.N);
  gate.gN_is_one = gN == H.algebra.unit;
  Vec chiN = convolution_power(d.chi, d.N, H.coalgebra);
  if (use_raw) {
    bool all = !gate.gN_is_one;
    SparseVec w = H.algebra.unit - gN;
    for (std::size_t h = 0; h < n && all; ++h)
      if (chiN[h] * w != adjoint(H, h, w)) all = false;
    gate.raw = all;
  }
  if (integral) {
    bool central = true;
    for (std::size_t h = 0; h < n && central; ++h)
      if (multiply(H.algebra, gN, basis_vec(h)) != multiply(H.algebra, basis_vec(h), gN)) central = false;
    gate.integral = chiN == H.coalgebra.counit && central && !gate.gN_is_one;
  }
  return gate;
}

inline Validated<CompatibleDatum> validate_compatible_datum(const YDDatum& d, const Cyc& lambda, const Vec* integral = nullptr) {
  Validated<CompatibleDatum> out;
  CheckReport& rep = out.report;
  if (d.N < 1) {
    rep.fail("q_root_of_unity", "q = " + d.q.str());
    return out;
  }
  rep.pass("lambda_gate");
  if (!lambda.is_zero()) {
    bool have_integral = integral && verify_ad_integral(*d.H, *integral);
    if (integral) rep.record("integral", have_integral, "supplied functional is not an ad-invariant integral");
    CompatibilityGate gate = compatibility_gate(d, true, have_integral ? integral : nullptr);
    rep.record("info:raw_gate", *gate.raw, "closed", true);
    if (gate.integral) {
      rep.record("info:integral_gate", *gate.integral, "closed", true);
      rep.record("gate_criteria_agree", *gate.raw == *gate.integral, "raw and integral criteria differ");
    }
    if (!gate.open()) rep.fail("lambda_gate", gate.gN_is_one ? "g^N = 1" : "adjoint condition fails");
  }
  if (rep.ok()) out.value = CompatibleDatum{d, lambda};
  return out;
}

// Restriction of a compatible datum to the Hopf subalgebra spanned by `E` (elements of H).
inline CompatibleDatum restrict_datum(const CompatibleDatum& c, const std::vector<SparseVec>& E) {
  const HopfSC& H = *c.d.H;
  const std::size_t n = H.dim();
  const std::size_t k = E.size();
  const Mat ME = Mat::from_columns(n, E);
  if (rank(ME) != k) throw Error(ErrorCode::NotSubHopf, "spanning set is not linearly independent");
  // Left inverse P with P E_j = e_j; v lies in span E iff E (P v) = v.
  const Mat MEt = ME.transpose();
  Mat P(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    auto row = solve(MEt, unit_vec(k, i));
    for (std::size_t j = 0; j < n; ++j) P(i, j) = (*row)[j];
  }
  auto inE = [&](const SparseVec& v, const std::string& what) {
    SparseVec x = P.apply(v);
    if (ME.apply(x) != v) throw Error(ErrorCode::NotSubHopf, what + " leaves E");
    return x;
  };
  HopfSC sub_h;
  sub_h.name = H.name + "|E";
  sub_h.flags = H.flags;
  bool unit_vectors = true;
  for (const auto& e : E) unit_vectors = unit_vectors && e.size() == 1 && e.terms().front().second.is_one();
  for (std::size_t i = 0; i < k; ++i)
    sub_h.labels.push_back(unit_vectors ? H.label(E[i].terms().front().first) : "e" + std::to_string(i));
  Tensor3::Builder mb(k, k, k), cb(k, k, k);
  Mat S(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& [t, v] : inE(multiply(H.algebra, E[i], E[j]), "product")) mb.add(i, j, t, v);
    SparseVec d = comultiply(H.coalgebra, E[i]);
    SparseVec x = apply_tensor(P, P, d, n);
    if (apply_tensor(ME, ME, x, k) != d) throw Error(ErrorCode::NotSubHopf, "coproduct leaves E (x) E");
    for (const auto& [ab, v] : x) cb.add(i, ab / k, ab % k, v);
    for (const auto& [t, v] : inE(H.S().apply(E[i]), "antipode")) S(t, i) = v;
  }
  Vec eps(k), chi(k);
  for (std::size_t i = 0; i < k; ++i) {
    eps[i] = evaluate(H.coalgebra.counit, E[i]);
    chi[i] = evaluate(c.d.chi, E[i]);
  }
  sub_h.algebra = AlgebraSC{k, mb.build(), inE(H.algebra.unit, "unit")};
  sub_h.coalgebra = CoalgebraSC{k, cb.build(), eps};
  sub_h.antipode = S;
  for (const auto& [name, a] : H.grouplikes) sub_h.grouplikes[name] = inE(a, "group-like " + name);
  SparseVec g = inE(c.d.g, "g");
  auto Hp = std::make_shared<const HopfSC>(std::move(sub_h));
  auto yd = validate_yd_datum(Hp, g, chi);
  if (!yd.ok()) throw Error(ErrorCode::NotSubHopf, "restricted datum invalid: " + yd.report.failures().front());
  auto cd = validate_compatible_datum(*yd, c.lambda);
  if (!cd.ok()) throw Error(ErrorCode::NotSubHopf, "restricted datum not compatible: " + cd.report.failures().front());
  return *cd;
}

struct QuantumLine {
  PreBialgebra P;
  bool braided_hopf = false;
};

inline std::string power_label(const std::string& base, std::size_t a) {
  if (a == 0) return "1";
  return a == 1 ? base : base + "^" + std::to_string(a);
}

inline QuantumLine build_quantum_line(const YDDatum& d, const std::string& gen = "y") {
  if (d.N < 1) throw Error(ErrorCode::InfiniteOrder, "q = " + d.q.str() + " has infinite order");
  const HopfSC& H = *d.H;
  const std::size_t N = static_cast<std::size_t>(d.N), n = H.dim();
  QuantumLine out;
  PreBialgebra& P = out.P;
  P.name = "R_q";
  P.yd.base = d.H;
  P.yd.dim = N;
  for (std::size_t a = 0; a < N; ++a) P.yd.labels.push_back(power_label(gen, a));
  Tensor3::Builder act(n, N, N), co(N, n, N), m(N, N, N), c(N, N, N);
  for (std::size_t a = 0; a < N; ++a) {
    Vec chia = convolution_power(d.chi, static_cast<long>(a), H.coalgebra);
    for (std::size_t h = 0; h < n; ++h)
      if (!chia[h].is_zero()) act.add(h, a, a, chia[h]);
    for (const auto& [t, v] : group_power(H, d.g, static_cast<int>(a))) co.add(a, t, a, v);
    for (std::size_t b = 0; a + b < N; ++b) m.add(a, b, a + b, Cyc(1));
    for (std::size_t i = 0; i <= a; ++i) c.add(a, a - i, i, q_binomial(static_cast<long>(a), static_cast<long>(i), d.q));
  }
  P.yd.action = act.build();
  P.yd.coaction = co.build();
  P.mult = m.build();
  P.unit = basis_vec(0);
  P.comult = c.build();
  P.counit = unit_vec(N, 0);
  CheckReport rep = check_prebialgebra(P);
  out.braided_hopf = rep.ok() && rep.passed("info:associative") && rep.passed("info:colinear");
  return out;
}

struct OreHopf {
  HopfSC O;
  std::shared_ptr<const HopfSC> H;
  CompatibleDatum datum;
  SparseVec y;
  SparseVec Gamma;
  Mat sigma;  // H -> O
  Mat p;      // O -> H
  std::size_t N = 1;
};

// Closed form S(y^a h) = S_H(h) (-Gamma^{-1} y)^a.
inline Mat ore_closed_form_antipode(const OreHopf& O) {
  const HopfSC& H = *O.H;
  const std::size_t n = H.dim(), dim = O.O.dim();
  SparseVec ginv = O.sigma.apply(H.S().apply(O.datum.d.g));
  SparseVec b = Cyc(-1) * multiply(O.O.algebra, ginv, O.y);
  Mat S(dim, dim);
  SparseVec ba = O.O.algebra.unit;
  for (std::size_t a = 0; a < O.N; ++a) {
    for (std::size_t h = 0; h < n; ++h) {
      SparseVec col = multiply(O.O.algebra, O.sigma.apply(H.S().column(h)), ba);
      for (const auto& [t, v] : col) S(t, a * n + h) = v;
    }
    ba = multiply(O.O.algebra, ba, b);
  }
  return S;
}

inline OreHopf build_ore_hopf(const CompatibleDatum& c, const std::string& gen = "y", bool verify = true) {
  const YDDatum& d = c.d;
  if (d.N < 1) throw Error(ErrorCode::InfiniteOrder, "q = " + d.q.str() + " has infinite order");
  const HopfSC& H = *d.H;
  const std::size_t N = static_cast<std::size_t>(d.N), n = H.dim(), dim = N * n;
  OreHopf out;
  out.H = d.H;
  out.datum = c;
  out.N = N;
  HopfSC& O = out.O;
  O.name = "O(" + H.name + ")";
  O.flags.finite_dim = true;
  O.flags.cosemisimple = N == 1 && H.flags.cosemisimple;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string h = H.label(j);
      O.labels.push_back(i == 0 ? h : power_label(gen, i) + (h == "1" ? "" : h));
    }

  // phi^b as matrices; w = lambda (1 - g^N).
  std::vector<Mat> phis{Mat::identity(n)};
  Mat phi = phi_map(H, d.chi);
  for (std::size_t b = 1; b < N; ++b) phis.push_back(phis.back() * phi);
  SparseVec w = c.lambda * (H.algebra.unit - group_power(H, d.g, d.N));

  // (y^a h)(y^b k) = y^{a+b} phi^b(h) k, and y^{a+b} = y^{a+b-N} w once a+b >= N.
  Tensor3::Builder mb(dim, dim, dim);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t b = 0; b < N; ++b) {
        SparseVec ph = phis[b].column(h);
        std::size_t e = a + b;
        if (e >= N) {
          ph = multiply(H.algebra, w, ph);
          e -= N;
        }
        if (ph.empty()) continue;
        for (std::size_t k = 0; k < n; ++k)
          for (const auto& [t, v] : multiply(H.algebra, ph, basis_vec(k))) mb.add(a * n + h, b * n + k, e * n + t, v);
      }
  O.algebra = AlgebraSC{dim, mb.build(), kron(basis_vec(0), H.algebra.unit, n)};

  out.sigma = Mat(dim, n);
  out.p = Mat(n, dim);
  for (std::size_t h = 0; h < n; ++h) {
    out.sigma(h, h) = Cyc(1);
    out.p(h, h) = Cyc(1);
  }
  out.Gamma = out.sigma.apply(d.g);
  if (N > 1)
    for (const auto& [t, v] : H.algebra.unit) out.y.axpy(v, basis_vec(n + t));

  // Delta(y^a h) = Delta(y) Delta(y^{a-1} h), Delta(y) = y (x) 1 + Gamma (x) y.
  SparseVec one = O.algebra.unit;
  SparseVec dy = kron(out.y, one, dim) + kron(out.Gamma, out.y, dim);
  std::vector<SparseVec> deltas(dim);
  for (std::size_t h = 0; h < n; ++h) {
    Accum acc;
    for (const auto& e : H.coalgebra.comult.slice(h)) acc.add(e.j * dim + e.k, e.v);
    deltas[h] = acc.finish();
  }
  for (std::size_t a = 1; a < N; ++a)
    for (std::size_t h = 0; h < n; ++h) {
      Accum acc;
      for (const auto& [l, x] : dy)
        for (const auto& [r, v] : deltas[(a - 1) * n + h]) {
          SparseVec left = multiply(O.algebra, l / dim, r / dim), right = multiply(O.algebra, l % dim, r % dim);
          for (const auto& [p1, c1] : left)
            for (const auto& [p2, c2] : right) acc.add(p1 * dim + p2, x * v * c1 * c2);
        }
      deltas[a * n + h] = acc.finish();
    }
  Tensor3::Builder cb(dim, dim, dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (const auto& [idx, v] : deltas[k]) cb.add(k, idx / dim, idx % dim, v);
  Vec eps = zero_vec(dim);
  for (std::size_t h = 0; h < n; ++h) eps[h] = H.coalgebra.counit[h];
  O.coalgebra = CoalgebraSC{dim, cb.build(), eps};
  for (const auto& [name, a] : H.grouplikes) O.grouplikes[name] = out.sigma.apply(a);

  Mat closed = ore_closed_form_antipode(out);
  if (!verify) {
    O.antipode = closed;
    return out;
  }
  CheckReport bi = check_bialgebra(O);
  if (!bi.ok()) throw Error(ErrorCode::AxiomViolation, "Ore quotient is not a bialgebra: " + bi.failures().front());
  auto S = compute_antipode(O, false);
  if (!S) throw Error(ErrorCode::AxiomViolation, "Ore quotient has no antipode");
  if (*S != closed) throw Error(ErrorCode::AxiomViolation, "solved antipode differs from S(y) = -Gamma^{-1} y");
  O.antipode = *S;
  RetractionDiagnostics rd = retraction_diagnostics(O, H, out.p, out.sigma);
  if (!(rd.retraction && rd.coalgebra_map && rd.H_bilinear))
    throw Error(ErrorCode::AxiomViolation, "p is not an H-bilinear coalgebra retraction");
  return out;
}

// Checks f(h) b = b f(phi(h)), b^N = lambda (1 - f(g)^N) and Delta(b) = b (x) 1 + f(g) (x) b, then returns the extension.
inline Mat universal_map(const OreHopf& O, const HopfSC& B, const Mat& f, const SparseVec& b) {
  const HopfSC& H = *O.H;
  const std::size_t n = H.dim(), dim = O.O.dim(), m = B.dim();
  const YDDatum& d = O.datum.d;
  if (f.rows() != m || f.cols() != n) throw Error(ErrorCode::ShapeMismatch, "f has the wrong shape");
  Mat phi = phi_map(H, d.chi);
  for (std::size_t h = 0; h < n; ++h)
    if (multiply(B.algebra, f.column(h), b) != multiply(B.algebra, b, f.apply(phi.column(h))))
      throw Error(ErrorCode::HypothesisViolation, "f(h) b != b f(phi(h)) at h = " + H.label(h));
  SparseVec fg = f.apply(d.g);
  SparseVec bN = power(B.algebra, b, static_cast<unsigned>(O.N));
  SparseVec rhs = O.datum.lambda * (B.algebra.unit - power(B.algebra, fg, static_cast<unsigned>(O.N)));
  if (bN != rhs) throw Error(ErrorCode::HypothesisViolation, "b^N != lambda (1 - f(g)^N)");
  if (comultiply(B.coalgebra, b) != kron(b, B.algebra.unit, m) + kron(fg, b, m))
    throw Error(ErrorCode::HypothesisViolation, "Delta(b) != b (x) 1 + f(g) (x) b");
  Mat fh(m, dim);
  SparseVec ba = B.algebra.unit;
  for (std::size_t a = 0; a < O.N; ++a) {
    for (std::size_t h = 0; h < n; ++h)
      for (const auto& [t, v] : multiply(B.algebra, ba, f.column(h))) fh(t, a * n + h) = v;
    ba = multiply(B.algebra, ba, b);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    SparseVec fi = fh.column(i);
    if (apply_tensor(fh, fh, comultiply(O.O.coalgebra, i), dim) != comultiply(B.coalgebra, fi) ||
        evaluate(B.coalgebra.counit, fi) != O.O.coalgebra.counit[i])
      throw Error(ErrorCode::AxiomViolation, "extension is not a coalgebra map at " + O.O.label(i));
    for (std::size_t j = 0; j < dim; ++j)
      if (fh.apply(multiply(O.O.algebra, i, j)) != multiply(B.algebra, fi, fh.column(j)))
        throw Error(ErrorCode::AxiomViolation, "extension is not multiplicative at (" + O.O.label(i) + "," + O.O.label(j) + ")");
  }
  return fh;
}

// Every character eta of O kills y, and eta(Gamma)^N = 1 when lambda != 0.
inline CheckReport check_characters_of_ore(const OreHopf& O, const Vec& eta) {
  CheckReport rep;
  if (!verify_character(O.O, eta)) {
    rep.fail("character", "eta");
    return rep;
  }
  rep.pass("character");
  rep.record("eta(y) = 0", O.N == 1 || evaluate(eta, O.y).is_zero(), "eta(y)");
  if (!O.datum.lambda.is_zero())
    rep.record("eta(Gamma)^N = 1", evaluate(eta, O.Gamma).pow(static_cast<long>(O.N)).is_one(), "eta(Gamma)");
  return rep;
}

struct IteratedDatumReport {
  bool side1 = false;  // (O, Gamma2, chi2, lambda2) compatible
  bool side2 = false;  // restriction compatible plus the three side conditions
  bool chi2_kills_y = false;
  bool gamma_condition = false;  // chi2(Gamma1) chi1(Gamma2) = 1
  bool commute_condition = true;  // y1 Gamma2^N2 = Gamma2^N2 y1 (required only when lambda2 != 0)
  // Subsidiary equivalences, each side evaluated separately.
  bool datum1_lhs = false, datum1_rhs = false;
  bool datum2_lhs = false, datum2_rhs = false;
  bool datum3_lhs = false, datum3_rhs = false;
  bool is_character = false;
  CheckReport report;
  bool agree() const { return side1 == side2; }
};

inline IteratedDatumReport iterated_datum_check(const OreHopf& O1, const SparseVec& Gamma2, const Vec& chi2, const Cyc& lambda2) {
  IteratedDatumReport r;
  const HopfSC& A = O1.O;
  const HopfSC& H1 = *O1.H;
  const std::size_t dim = A.dim();
  auto Ap = std::make_shared<const HopfSC>(A);
  r.is_character = chi2.size() == dim && verify_character(A, chi2);

  auto d1 = validate_yd_datum(Ap, Gamma2, chi2);
  if (d1.ok() && d1->N >= 1) r.side1 = validate_compatible_datum(*d1, lambda2).ok();
  r.report.merge(d1.report, "side1:");

  // Gamma2 as an element of H1 and the restricted character.
  SparseVec g2 = O1.p.apply(Gamma2);
  bool in_h1 = O1.sigma.apply(g2) == Gamma2;
  Vec chi2r = zero_vec(H1.dim());
  if (chi2.size() == dim)
    for (std::size_t h = 0; h < H1.dim(); ++h) chi2r[h] = evaluate(chi2, O1.sigma.column(h));
  bool restricted = false;
  int N2 = 0;
  if (in_h1) {
    auto d2 = validate_yd_datum(O1.H, g2, chi2r);
    if (d2.ok() && d2->N >= 1) {
      N2 = d2->N;
      restricted = validate_compatible_datum(*d2, lambda2).ok();
    }
    r.report.merge(d2.report, "side2:");
  }
  const Vec& chi1 = O1.datum.d.chi;
  r.chi2_kills_y = chi2.size() == dim && (O1.N == 1 || evaluate(chi2, O1.y).is_zero());
  Cyc c21 = chi2.size() == dim ? evaluate(chi2, O1.Gamma) * evaluate(chi1, g2) : Cyc(0);
  r.gamma_condition = in_h1 && c21.is_one();
  if (N2 >= 1 && O1.N > 1) {
    SparseVec gN = power(A.algebra, Gamma2, static_cast<unsigned>(N2));
    r.commute_condition = multiply(A.algebra, O1.y, gN) == multiply(A.algebra, gN, O1.y);
    r.datum3_lhs = r.commute_condition;
    r.datum3_rhs = evaluate(chi1, g2).pow(N2).is_one();
    // sum y_1 (1 - Gamma2^N2) S(y_2) = 0
    SparseVec wv = A.algebra.unit - gN;
    r.datum2_lhs = adjoint(A, O1.y, wv).empty();
    r.datum2_rhs = r.commute_condition;
  }
  bool need_commute = !lambda2.is_zero();
  r.side2 = in_h1 && restricted && r.chi2_kills_y && r.gamma_condition && (!need_commute || r.commute_condition);
  if (chi2.size() == dim && O1.N > 1) {
    Mat phi = phi_map(A, chi2), psi = psi_map(A, chi2);
    r.datum1_lhs = multiply(A.algebra, Gamma2, phi.apply(O1.y)) == multiply(A.algebra, psi.apply(O1.y), Gamma2);
    r.datum1_rhs = c21.is_one();
  }
  r.report.record("equivalence", r.agree(), "sides differ");
  if (r.is_character && O1.N > 1) {
    r.report.record("datum1", r.datum1_lhs == r.datum1_rhs, "Gamma2 phi(y1) = psi(y1) Gamma2");
    r.report.record("datum3", r.datum3_lhs == r.datum3_rhs, "y1 Gamma2^N2 = Gamma2^N2 y1");
    if (N2 >= 1) r.report.record("datum2", r.datum2_lhs == r.datum2_rhs, "adjoint form");
    r.report.merge(check_characters_of_ore(O1, chi2), "eta:");
  }
  return r;
}

}  // namespace hopfforge
