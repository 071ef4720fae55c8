#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfforge/constructkit.hpp"

namespace hopfforge {

struct ProjectionSetup {
  std::shared_ptr<const HopfSC> A;
  std::shared_ptr<const HopfSC> H;
  Mat sigma;  // H -> A
  Mat pi;     // A -> H
  HopfFlags flags;

  static ProjectionSetup make(std::shared_ptr<const HopfSC> A, std::shared_ptr<const HopfSC> H, Mat sigma, Mat pi) {
    HopfFlags f = H->flags;
    return ProjectionSetup{std::move(A), std::move(H), std::move(sigma), std::move(pi), f};
  }
  static ProjectionSetup from_ore(const OreHopf& O) {
    return make(std::make_shared<const HopfSC>(O.O), O.H, O.sigma, O.p);
  }
  static ProjectionSetup from_bosonization(const Bosonization& B, std::shared_ptr<const HopfSC> H) {
    return make(std::make_shared<const HopfSC>(B.B), std::move(H), B.sigma, B.pi);
  }
};

namespace detail {

inline std::vector<SparseVec> columns(const Mat& M) {
  std::vector<SparseVec> c(M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j) c[j] = M.column(j);
  return c;
}

// Left inverse of a full-column-rank matrix.
inline Mat left_inverse(const Mat& B) {
  const std::size_t m = B.cols(), n = B.rows();
  Mat Bt = B.transpose(), P(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    auto row = solve(Bt, unit_vec(m, i));
    if (!row) throw Error(ErrorCode::ShapeMismatch, "columns are dependent");
    for (std::size_t j = 0; j < n; ++j) P(i, j) = (*row)[j];
  }
  return P;
}

}  // namespace detail

inline CheckReport validate_setup(const ProjectionSetup& s);

// {a : sum a1 (x) pi(a2) = a (x) 1}
inline Subspace coinvariants(const ProjectionSetup& s) {
  const HopfSC& A = *s.A;
  const std::size_t N = A.dim(), n = s.H->dim();
  std::vector<SparseVec> images(N);
  for (std::size_t k = 0; k < N; ++k) {
    SparseVec v = apply_tensor(Mat::identity(N), s.pi, comultiply(A.coalgebra, k), N);
    v.axpy(Cyc(-1), kron(basis_vec(k), s.H->algebra.unit, n));
    images[k] = std::move(v);
  }
  return kernel_of_columns(N, N * n, images);
}

// tau(a) = sum a1 sigma S pi(a2), as a matrix on A.
inline Mat tau_matrix(const ProjectionSetup& s) {
  const HopfSC& A = *s.A;
  const std::size_t N = A.dim();
  Mat sSp = s.sigma * s.H->S() * s.pi;
  std::vector<SparseVec> u = detail::columns(sSp);
  Mat T(N, N);
  for (std::size_t k = 0; k < N; ++k) {
    Accum acc;
    for (const auto& e : A.coalgebra.comult.slice(k))
      for (const auto& [t, c] : u[e.k]) acc.add(multiply(A.algebra, e.j, t), e.v * c);
    for (const auto& [i, c] : acc.finish()) T(i, k) = c;
  }
  return T;
}

inline SparseVec tau(const ProjectionSetup& s, const SparseVec& a) { return tau_matrix(s).apply(a); }

struct InducedPreBialgebra {
  PreBialgebra P;
  Cocycle xi;
  Mat basis;   // dim A x dim R, columns r_a
  Mat coords;  // dim R x dim A, coords * basis = id
  Mat tau;
  Subspace R{0};  // coinvariants by direct solve

  std::size_t dim() const { return P.dim(); }
  SparseVec in_A(const SparseVec& r) const { return basis.apply(r); }
  SparseVec in_R(const SparseVec& a) const {
    SparseVec r = coords.apply(a);
    if (basis.apply(r) != a) throw Error(ErrorCode::InducedAxiomFailure, "element is not coinvariant");
    return r;
  }
};

// Structures of the pre-bialgebra and cocycle induced on the coinvariants.
inline InducedPreBialgebra induced_structures(const ProjectionSetup& s, bool verify = true) {
  const HopfSC& A = *s.A;
  const HopfSC& H = *s.H;
  const std::size_t N = A.dim(), n = H.dim();
  InducedPreBialgebra out;
  out.tau = tau_matrix(s);
  out.R = coinvariants(s);
  // Basis tau(e_k), greedily in the order of A's basis.
  std::vector<SparseVec> cols;
  std::vector<std::size_t> source;
  Echelon ech(N);
  for (std::size_t k = 0; k < N && cols.size() < out.R.dim(); ++k) {
    SparseVec t = out.tau.column(k);
    if (t.empty() || ech.add_row(t) != Echelon::Outcome::Independent) continue;
    cols.push_back(t);
    source.push_back(k);
  }
  for (const auto& c : cols)
    if (!out.R.contains(c)) throw Error(ErrorCode::InducedAxiomFailure, "tau leaves the coinvariants");
  if (cols.size() != out.R.dim()) throw Error(ErrorCode::InducedAxiomFailure, "tau is not onto the coinvariants");
  const std::size_t m = cols.size();
  out.basis = Mat::from_columns(N, cols);
  out.coords = detail::left_inverse(out.basis);

  PreBialgebra& P = out.P;
  P.name = "R";
  P.yd.base = s.H;
  P.yd.dim = m;
  for (std::size_t k : source) P.yd.labels.push_back(A.label(k));
  const Mat I = Mat::identity(N);
  const Mat CT = out.coords * out.tau;
  std::vector<SparseVec> sig = detail::columns(s.sigma), sigS = detail::columns(s.sigma * H.S());

  Tensor3::Builder act(n, m, m), co(m, n, m), dl(m, m, m), mu(m, m, m), xb(m, m, n);
  Vec eps(m);
  for (std::size_t a = 0; a < m; ++a) {
    const SparseVec& r = cols[a];
    SparseVec dr = comultiply(A.coalgebra, r);
    SparseVec d = apply_tensor(CT, out.coords, dr, N);
    if (apply_tensor(out.basis, out.basis, d, m) != apply_tensor(out.tau, I, dr, N))
      throw Error(ErrorCode::InducedAxiomFailure, "delta(" + P.label(a) + ") leaves R (x) R");
    for (const auto& [idx, v] : d) dl.add(a, idx / m, idx % m, v);
    SparseVec rho = apply_tensor(s.pi, out.coords, dr, N);
    if (apply_tensor(Mat::identity(n), out.basis, rho, m) != apply_tensor(s.pi, I, dr, N))
      throw Error(ErrorCode::InducedAxiomFailure, "rho(" + P.label(a) + ") leaves H (x) R");
    for (const auto& [idx, v] : rho) co.add(a, idx / m, idx % m, v);
    eps[a] = evaluate(A.coalgebra.counit, r);
    for (std::size_t h = 0; h < n; ++h) {
      Accum acc;
      for (const auto& e : H.coalgebra.comult.slice(h))
        acc.add(multiply(A.algebra, multiply(A.algebra, sig[e.j], r), sigS[e.k]), e.v);
      for (const auto& [b, v] : out.in_R(acc.finish())) act.add(h, a, b, v);
    }
    for (std::size_t b = 0; b < m; ++b) {
      SparseVec rs = multiply(A.algebra, r, cols[b]);
      for (const auto& [c, v] : out.in_R(out.tau.apply(rs))) mu.add(a, b, c, v);
      for (const auto& [h, v] : s.pi.apply(rs)) xb.add(a, b, h, v);
    }
  }
  P.yd.action = act.build();
  P.yd.coaction = co.build();
  P.comult = dl.build();
  P.mult = mu.build();
  P.counit = eps;
  P.unit = out.in_R(out.tau.apply(A.algebra.unit));
  out.xi = Cocycle{xb.build()};
  if (verify) {
    CheckReport pre = check_prebialgebra(P);
    if (!pre.ok()) throw Error(ErrorCode::InducedAxiomFailure, "pre-bialgebra relation " + pre.failures().front());
    CheckReport coc = check_cocycle(P, out.xi);
    if (!coc.ok()) throw Error(ErrorCode::InducedAxiomFailure, "cocycle relation " + coc.failures().front());
  }
  return out;
}

// omega(r # h) = r sigma(h)
inline Mat omega_matrix(const ProjectionSetup& s, const InducedPreBialgebra& ind) {
  const std::size_t N = s.A->dim(), n = s.H->dim(), m = ind.dim();
  Mat W(N, m * n);
  for (std::size_t r = 0; r < m; ++r) {
    SparseVec rv = ind.basis.column(r);
    for (std::size_t h = 0; h < n; ++h)
      for (const auto& [i, c] : multiply(s.A->algebra, rv, s.sigma.column(h))) W(i, r * n + h) = c;
  }
  return W;
}

// Does omega carry B's structure tensors onto A's?
inline CheckReport omega_transport(const ProjectionSetup& s, const InducedPreBialgebra& ind, const HopfSC& B) {
  CheckReport rep;
  const HopfSC& A = *s.A;
  const std::size_t N = A.dim();
  Mat W = omega_matrix(s, ind);
  rep.record("bijective", W.cols() == N && rank(W) == N, "rank");
  if (!rep.ok()) return rep;
  std::vector<SparseVec> w = detail::columns(W);
  rep.pass("multiplication");
  rep.pass("comultiplication");
  rep.record("unit", W.apply(B.algebra.unit) == A.algebra.unit, "unit");
  for (std::size_t u = 0; u < N; ++u) {
    if (apply_tensor(W, W, comultiply(B.coalgebra, u), N) != comultiply(A.coalgebra, w[u]))
      rep.fail("comultiplication", B.label(u));
    if (evaluate(A.coalgebra.counit, w[u]) != B.coalgebra.counit[u]) rep.fail("counit", B.label(u));
    for (std::size_t v = 0; v < N; ++v)
      if (W.apply(multiply(B.algebra, u, v)) != multiply(A.algebra, w[u], w[v]))
        rep.fail("multiplication", "(" + B.label(u) + "," + B.label(v) + ")");
  }
  if (!rep.find("counit")) rep.pass("counit");
  return rep;
}

inline CheckReport omega_roundtrip_report(const ProjectionSetup& s, const InducedPreBialgebra& ind) {
  Bosonization bos = bosonize(ind.P, ind.xi, false);
  return omega_transport(s, ind, bos.B);
}

inline bool omega_roundtrip(const ProjectionSetup& s) { return omega_roundtrip_report(s, induced_structures(s)).ok(); }

// tau(a sigma(h)) = tau(a) eps(h), tau(sigma(h) a) = h . tau(a), tau(a) . tau(b) = tau(tau(a) b).
inline CheckReport check_tau_identities(const ProjectionSetup& s, const InducedPreBialgebra& ind) {
  CheckReport rep;
  const HopfSC& A = *s.A;
  const HopfSC& H = *s.H;
  const std::size_t N = A.dim(), n = H.dim(), m = ind.dim();
  for (const char* name : {"tau:right", "tau:left", "tau:product"}) rep.pass(name);
  std::vector<SparseVec> t = detail::columns(ind.tau), sig = detail::columns(s.sigma);
  std::vector<SparseVec> tR(N);
  for (std::size_t a = 0; a < N; ++a) tR[a] = ind.in_R(t[a]);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t h = 0; h < n; ++h) {
      if (ind.tau.apply(multiply(A.algebra, basis_vec(a), sig[h])) != H.coalgebra.counit[h] * t[a])
        rep.fail("tau:right", "(" + A.label(a) + "," + H.label(h) + ")");
      if (ind.tau.apply(multiply(A.algebra, sig[h], basis_vec(a))) != ind.in_A(act(ind.P.yd, h, tR[a])))
        rep.fail("tau:left", "(" + H.label(h) + "," + A.label(a) + ")");
    }
  PreBialgebraOps ops(ind.P);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      SparseVec lhs = ind.in_A(ops.mult(kron(tR[a], tR[b], m)));
      if (lhs != ind.tau.apply(multiply(A.algebra, t[a], basis_vec(b))))
        rep.fail("tau:product", "(" + A.label(a) + "," + A.label(b) + ")");
    }
  return rep;
}

inline CheckReport validate_setup(const ProjectionSetup& s) {
  CheckReport rep;
  const HopfSC& A = *s.A;
  const HopfSC& H = *s.H;
  const std::size_t N = A.dim(), n = H.dim();
  if (s.sigma.rows() != N || s.sigma.cols() != n || s.pi.rows() != n || s.pi.cols() != N) {
    rep.fail("shape", "sigma or pi");
    return rep;
  }
  rep.record("sigma_injective", rank(s.sigma) == n, "rank");
  rep.pass("sigma_bialgebra_map");
  std::vector<SparseVec> sig = detail::columns(s.sigma);
  if (s.sigma.apply(H.algebra.unit) != A.algebra.unit) rep.fail("sigma_bialgebra_map", "unit");
  for (std::size_t h = 0; h < n; ++h) {
    if (apply_tensor(s.sigma, s.sigma, comultiply(H.coalgebra, h), n) != comultiply(A.coalgebra, sig[h]))
      rep.fail("sigma_bialgebra_map", "(" + H.label(h) + ") Delta");
    if (evaluate(A.coalgebra.counit, sig[h]) != H.coalgebra.counit[h]) rep.fail("sigma_bialgebra_map", "(" + H.label(h) + ") eps");
    for (std::size_t k = 0; k < n; ++k)
      if (s.sigma.apply(multiply(H.algebra, h, k)) != multiply(A.algebra, sig[h], sig[k]))
        rep.fail("sigma_bialgebra_map", "(" + H.label(h) + "," + H.label(k) + ")");
  }
  RetractionDiagnostics rd = retraction_diagnostics(A, H, s.pi, s.sigma);
  for (const char* name : {"retraction", "coalgebra_map", "H_bilinear"}) {
    const CheckItem* it = rd.report.find(name);
    if (it->passed)
      rep.pass(name);
    else
      for (const auto& w : it->witnesses) rep.fail(name, w);
  }
  rep.record("info:algebra_map", rd.algebra_map, rd.algebra_map ? "" : rd.report.find("algebra_map")->witnesses.front(), true);
  if (!rep.ok()) return rep;
  // pi(r sigma(h)) = eps(r) h on a basis of the coinvariants
  Subspace R = coinvariants(s);
  rep.pass("pi_r_sigma_h");
  for (const auto& r : R.basis())
    for (std::size_t h = 0; h < n; ++h)
      if (s.pi.apply(multiply(A.algebra, r, sig[h])) != evaluate(A.coalgebra.counit, r) * basis_vec(h))
        rep.fail("pi_r_sigma_h", H.label(h));
  return rep;
}

struct DividedPowerBasis {
  std::vector<SparseVec> d;  // coordinates in R
  SparseVec y;
  SparseVec g;
  Vec chi;
  Cyc q;
  int N = 0;
};

struct ThinResult {
  bool thin = false;
  std::string reason;
  std::optional<DividedPowerBasis> basis;
  std::optional<YDDatum> datum;
  std::optional<int> order_q;
  CheckReport report;
};

// Divided powers d_n = y d_{n-1} / (n)_q of the primitive y of a thin R.
inline ThinResult thinness_and_basis(const PreBialgebra& P, const Cocycle* xi = nullptr) {
  ThinResult out;
  CheckReport& rep = out.report;
  const HopfSC& H = P.H();
  const std::size_t m = P.dim(), n = H.dim();
  CoalgebraSC C = P.coalgebra();
  if (!verify_group_like(C, P.unit)) {
    out.reason = "unit is not group-like";
    return out;
  }
  Filtration f = filtration_from(C, Subspace::span(m, std::vector<SparseVec>{P.unit}));
  if (!f.exhausts) {
    out.reason = "not connected: the filtration from K1 stops at dimension " + std::to_string(f.layers.back().dim());
    return out;
  }
  Subspace prim = skew_primitives(C, P.unit, P.unit);
  if (prim.dim() != 1) {
    out.reason = "primitive space has dimension " + std::to_string(prim.dim());
    return out;
  }
  out.thin = true;
  DividedPowerBasis db;
  db.y = prim.basis().front();
  const std::size_t piv = db.y.front().first;
  const Cyc yc = db.y.front().second;
  SparseVec rho = coact(P.yd, db.y);
  db.g = SparseVec();
  for (std::size_t h = 0; h < n; ++h) {
    Cyc c = rho.get(h * m + piv);
    if (!c.is_zero()) db.g.axpy(c * yc.inv(), basis_vec(h));
  }
  rep.record("rho(y) = g (x) y", rho == kron(db.g, db.y, m), "rho(y)");
  db.chi = zero_vec(n);
  bool lin = true;
  for (std::size_t h = 0; h < n; ++h) {
    SparseVec hy = act(P.yd, h, db.y);
    db.chi[h] = hy.get(piv) * yc.inv();
    lin = lin && hy == db.chi[h] * db.y;
  }
  rep.record("h y = chi(h) y", lin, "action");
  db.q = evaluate(db.chi, db.g);
  db.N = static_cast<int>(m);
  out.order_q = db.q.is_zero() ? std::nullopt : multiplicative_order(db.q);
  bool order_ok = out.order_q && *out.order_q == db.N;
  // o(q) = N is guaranteed only for induced structures with a cocycle.
  rep.record("o(q) = N", order_ok, "o(q) = " + (out.order_q ? std::to_string(*out.order_q) : std::string("inf")), xi == nullptr);
  if (xi && !order_ok) throw Error(ErrorCode::InducedAxiomFailure, "o(q) != dim R on a thin induced R");

  PreBialgebraOps ops(P);
  db.d.push_back(P.unit);
  bool built = true;
  for (int k = 1; k < db.N; ++k) {
    Cyc qk = q_int(k, db.q);
    if (qk.is_zero()) {
      built = false;
      break;
    }
    db.d.push_back(qk.inv() * ops.mult(kron(db.y, db.d.back(), m)));
  }
  rep.record("divided_powers_built", built, "(n)_q = 0 below N");
  if (built) {
    rep.record("y^N = 0", ops.mult(kron(db.y, db.d.back(), m)).empty(), "y d_{N-1}");
    rep.record("basis", rank(Mat::from_columns(m, db.d)) == m, "d_n dependent");
    rep.pass("divided_coproduct");
    rep.pass("chi_weights");
    for (std::size_t k = 0; k < db.d.size(); ++k) {
      Accum acc;
      for (std::size_t t = 0; t <= k; ++t) acc.add(kron(db.d[t], db.d[k - t], m));
      if (comultiply(C, db.d[k]) != acc.finish()) rep.fail("divided_coproduct", "d_" + std::to_string(k));
      Vec chik = convolution_power(db.chi, static_cast<long>(k), H.coalgebra);
      for (std::size_t h = 0; h < n; ++h)
        if (act(P.yd, h, db.d[k]) != chik[h] * db.d[k]) rep.fail("chi_weights", "d_" + std::to_string(k));
    }
  }
  auto dat = validate_yd_datum(P.yd.base, db.g, db.chi);
  rep.merge(dat.report, "datum:");
  if (dat.ok()) out.datum = *dat;
  out.basis = std::move(db);
  return out;
}

struct CocycleAnalysis {
  std::vector<std::vector<SparseVec>> table;   // xi(d_a (x) d_b)
  std::vector<std::vector<SparseVec>> ytable;  // xi(y^a (x) y^b), powers in R
  SparseVec x;
  bool x_defined = false;
  SparseVec xi_top;  // xi(y (x) y^{N-1})
  std::optional<Cyc> lambdaN;
  std::optional<CompatibleDatum> datum;
  std::vector<std::string> notes;
  CheckReport report;
};

inline std::vector<SparseVec> r_powers(const PreBialgebra& P, const SparseVec& y, std::size_t upto) {
  PreBialgebraOps ops(P);
  std::vector<SparseVec> p{P.unit};
  for (std::size_t k = 1; k <= upto; ++k) p.push_back(ops.mult(kron(y, p.back(), P.dim())));
  return p;
}

inline CocycleAnalysis cocycle_analysis(const PreBialgebra& P, const Cocycle& xi, const DividedPowerBasis& db, const HopfFlags& flags) {
  CocycleAnalysis out;
  CheckReport& rep = out.report;
  const HopfSC& H = P.H();
  const std::size_t m = P.dim(), n = H.dim();
  const int N = db.N;
  const std::size_t Nz = static_cast<std::size_t>(N);
  PreBialgebraOps ops(P, &xi);
  auto X = [&](const SparseVec& a, const SparseVec& b) { return ops.xi(kron(a, b, m)); };
  std::vector<SparseVec> ypow = r_powers(P, db.y, Nz);
  out.table.assign(Nz, std::vector<SparseVec>(Nz));
  out.ytable.assign(Nz, std::vector<SparseVec>(Nz));
  for (std::size_t a = 0; a < Nz; ++a)
    for (std::size_t b = 0; b < Nz; ++b) {
      out.table[a][b] = X(db.d[a], db.d[b]);
      out.ytable[a][b] = X(ypow[a], ypow[b]);
    }
  const bool even = N % 2 == 0;
  const std::size_t half = Nz / 2;
  const SparseVec one = H.algebra.unit;
  auto gpow = [&](long e) { return power(H.algebra, db.g, static_cast<unsigned>(e)); };
  std::string ab;

  rep.pass("support");
  rep.pass("ad_linearity");
  rep.pass("phi_psi");
  std::vector<Mat> phis{Mat::identity(n)}, psis{Mat::identity(n)};
  for (int c = 1; c <= 3; ++c) {
    phis.push_back(phis.back() * phi_map(H, db.chi));
    psis.push_back(psis.back() * psi_map(H, db.chi));
  }
  for (std::size_t a = 0; a < Nz; ++a)
    for (std::size_t b = 0; b < Nz; ++b) {
      const SparseVec& v = out.table[a][b];
      const std::size_t s = a + b;
      ab = "(d" + std::to_string(a) + ",d" + std::to_string(b) + ")";
      bool allowed = s == 0 || s == Nz || (even && (s == half || s == 3 * half));
      if (!allowed && !v.empty()) rep.fail("support", ab);
      Vec chis = convolution_power(db.chi, static_cast<long>(s), H.coalgebra);
      for (std::size_t h = 0; h < n; ++h)
        if (chis[h] * v != adjoint(H, h, v)) {
          rep.fail("ad_linearity", ab);
          break;
        }
      for (int c = 1; c <= 3; ++c) {
        if (phis[c].apply(v) != db.q.pow(static_cast<long>(c) * static_cast<long>(s)) * v) rep.fail("phi_psi", ab + " phi^" + std::to_string(c));
        if (psis[c].apply(v) != v) rep.fail("phi_psi", ab + " psi^" + std::to_string(c));
      }
    }

  if (even) {
    out.x_defined = true;
    out.x = out.table[1][half - 1];
    const SparseVec& x = out.x;
    SparseVec gh = gpow(static_cast<long>(half));
    rep.record("x:coproduct", comultiply(H.coalgebra, x) == kron(gh, x, n) + kron(x, one, n), "Delta(x)");
    bool chi_ok = true, pp_ok = true;
    for (int c = 0; c <= 3; ++c) {
      chi_ok = chi_ok && evaluate(convolution_power(db.chi, c, H.coalgebra), x).is_zero();
      if (c >= 1) pp_ok = pp_ok && phis[c].apply(x) == Cyc(c % 2 ? -1 : 1) * x && psis[c].apply(x) == x;
    }
    rep.record("x:chi", chi_ok, "chi^c(x)");
    rep.record("x:phi_psi", pp_ok, "phi^c(x)");
    Vec chih = convolution_power(db.chi, static_cast<long>(half), H.coalgebra);
    bool ad = true;
    for (std::size_t h = 0; h < n && ad; ++h) ad = chih[h] * x == adjoint(H, h, x);
    rep.record("x:ad", ad, "chi^{N/2}(h) x");
    rep.record("x:anticommute", (multiply(H.algebra, x, db.g) + multiply(H.algebra, db.g, x)).empty(), "xg + gx");
    if (half == 1) rep.record("x:N/2=1", x.empty(), "x");
    if (half % 2 == 1) rep.record("x:square", multiply(H.algebra, x, x).empty(), "x^2");
    if (half % 2 == 0 && flags.finite_dim) rep.record("x:even_fd", x.empty(), "x");
    if (flags.cosemisimple) rep.record("x:cosemisimple", x.empty(), "x");

    // xi(y^a (x) y^{N/2-a}) = (N/2-1)_q! x
    SparseVec expect = q_factorial(static_cast<long>(half) - 1, db.q) * x;
    rep.pass("line:N/2");
    for (std::size_t a = 1; a < half; ++a)
      if (out.ytable[a][half - a] != expect) rep.fail("line:N/2", "(y^" + std::to_string(a) + ",y^" + std::to_string(half - a) + ")");
  } else {
    out.notes.push_back("x is defined for even N only; stored as 0");
  }
  const bool x_sq_zero = !even || multiply(H.algebra, out.x, out.x).empty();
  const bool x_zero = out.x.empty();
  if (x_sq_zero && Nz >= 2) {
    rep.pass("line:N");
    for (std::size_t a = 2; a < Nz; ++a)
      if (out.ytable[a][Nz - a] != out.ytable[1][Nz - 1]) rep.fail("line:N", "(y^" + std::to_string(a) + ",y^" + std::to_string(Nz - a) + ")");
  }
  if (even && x_zero) {
    rep.pass("line:3N/2");
    for (std::size_t a = half + 1; a < Nz; ++a)
      if (!out.ytable[a][3 * half - a].empty()) rep.fail("line:3N/2", "(y^" + std::to_string(a) + ",y^" + std::to_string(3 * half - a) + ")");
  }

  out.xi_top = Nz >= 2 ? out.ytable[1][Nz - 1] : SparseVec();
  if (!(flags.finite_dim || flags.cosemisimple)) {
    out.notes.push_back("lambda(N) not extracted: H is neither finite-dimensional nor cosemisimple");
    return out;
  }
  SparseVec w = one - gpow(N);
  if (w.empty()) {
    rep.record("lambda_N", out.xi_top.empty(), "g^N = 1 but xi(y (x) y^{N-1}) != 0");
    out.lambdaN = Cyc(0);
  } else {
    Cyc lam = out.xi_top.get(w.front().first) * w.front().second.inv();
    rep.record("lambda_N", out.xi_top == lam * w, "xi(y (x) y^{N-1}) not a multiple of 1 - g^N");
    out.lambdaN = lam;
  }
  if (rep.passed("lambda_N")) {
    auto yd = validate_yd_datum(P.yd.base, db.g, db.chi);
    if (yd.ok()) {
      auto cd = validate_compatible_datum(*yd, *out.lambdaN);
      rep.record("compatible_datum", cd.ok(), cd.ok() ? "" : cd.report.failures().front());
      if (cd.ok()) out.datum = *cd;
    } else {
      rep.fail("compatible_datum", yd.report.failures().front());
    }
  }
  if (!even || x_zero) {
    rep.pass("table");
    for (std::size_t a = 0; a < Nz; ++a)
      for (std::size_t b = 0; b < Nz; ++b) {
        SparseVec expect = a + b == 0 ? one : (a + b == Nz ? *out.lambdaN * w : SparseVec());
        if (out.ytable[a][b] != expect) rep.fail("table", "(y^" + std::to_string(a) + ",y^" + std::to_string(b) + ")");
      }
  }
  return out;
}

// rho(d_a d_b) against its expansion through xi, and rho(d_a) = g^a (x) d_a on the ranges where it must hold.
inline CheckReport check_coaction_identities(const PreBialgebra& P, const Cocycle& xi, const DividedPowerBasis& db, const SparseVec& x) {
  CheckReport rep;
  const HopfSC& H = P.H();
  const std::size_t m = P.dim(), n = H.dim(), Nz = static_cast<std::size_t>(db.N);
  PreBialgebraOps ops(P, &xi);
  auto mul = [&](const SparseVec& a, const SparseVec& b) { return ops.mult(kron(a, b, m)); };
  auto X = [&](const SparseVec& a, const SparseVec& b) { return ops.xi(kron(a, b, m)); };
  // sum u_{-1} v_{-1} (x) u_0 v_0
  auto rho_prod = [&](const SparseVec& u, const SparseVec& v) {
    Accum acc;
    for (const auto& [i, a] : ops.rho(u))
      for (const auto& [j, b] : ops.rho(v))
        for (const auto& [h, c] : multiply(H.algebra, i / m, j / m))
          for (const auto& [r, e] : mul(basis_vec(i % m), basis_vec(j % m))) acc.add(h * m + r, a * b * c * e);
    return acc.finish();
  };
  rep.pass("formulona_rho");
  for (std::size_t a = 0; a < Nz; ++a)
    for (std::size_t b = 0; a + b <= Nz && b < Nz; ++b) {
      Accum rhs;
      rhs.add(rho_prod(db.d[a], db.d[b]));
      for (std::size_t i = 0; i <= a; ++i)
        for (std::size_t j = 0; j <= b; ++j) {
          if (i + j == 0 || i + j == a + b) continue;
          SparseVec z = X(db.d[a - i], db.d[b - j]);
          if (z.empty()) continue;
          Cyc c1 = db.q.pow(static_cast<long>((b - j) * i));
          for (const auto& [idx, v] : rho_prod(db.d[i], db.d[j]))
            rhs.add(kron(multiply(H.algebra, z, basis_vec(idx / m)), basis_vec(idx % m), m), c1 * v);
          Cyc c2 = db.q.pow(static_cast<long>(j * (a - i)));
          for (const auto& [idx, v] : ops.rho(mul(db.d[i], db.d[j])))
            rhs.add(kron(multiply(H.algebra, basis_vec(idx / m), z), basis_vec(idx % m), m), Cyc(-1) * c2 * v);
        }
      if (ops.rho(mul(db.d[a], db.d[b])) != rhs.finish()) rep.fail("formulona_rho", "(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  const std::size_t upto = db.N % 2 ? Nz - 1 : Nz / 2;
  rep.pass("colinear_d");
  for (std::size_t a = 0; a <= upto && a < Nz; ++a)
    if (ops.rho(db.d[a]) != kron(power(H.algebra, db.g, static_cast<unsigned>(a)), db.d[a], m)) rep.fail("colinear_d", "d_" + std::to_string(a));
  if (db.N % 2 == 0 && Nz / 2 + 1 <= Nz) {
    const std::size_t h2 = Nz / 2;
    SparseVec prod = h2 < Nz ? mul(db.d[1], db.d[h2]) : SparseVec();
    SparseVec corr = multiply(H.algebra, x, db.g) - db.q * multiply(H.algebra, db.g, x);
    SparseVec expect = kron(power(H.algebra, db.g, static_cast<unsigned>(1 + h2)), prod, m) + kron(corr, db.d[1], m);
    rep.record("colinear_correction", h2 >= Nz || ops.rho(prod) == expect, "rho(d_1 d_{N/2})");
  }
  (void)n;
  return rep;
}

struct AnalysisReport {
  bool thin = false;
  int N = 0;
  Cyc q;
  SparseVec g;
  Vec chi;
  SparseVec x;
  std::optional<Cyc> lambdaN;
  std::vector<std::vector<SparseVec>> cocycle_table;
  bool colinear = false;
  std::map<std::string, bool> equivalences;  // "a".."d", "1".."4"
  std::vector<bool> power_comparison;        // y^{.R n} == y^{.A n}, 0 <= n <= N-1
  std::map<std::string, bool> consequences;  // chi^N = eps, g^N central, g^N != 1
  std::vector<std::string> notes;
  CheckReport report;
};

// Is R isomorphic to the quantum line of `d` via y^{.R n} -> y^n?
inline bool is_quantum_line(const PreBialgebra& P, const YDDatum& d, const SparseVec& y) {
  if (d.N < 1 || static_cast<std::size_t>(d.N) != P.dim()) return false;
  QuantumLine Q = build_quantum_line(d);
  const std::size_t m = P.dim(), n = P.H().dim();
  std::vector<SparseVec> ypow = r_powers(P, y, m - 1);
  Mat M = Mat::from_columns(m, ypow);
  if (rank(M) != m) return false;
  PreBialgebraOps ops(P);
  for (std::size_t a = 0; a < m; ++a) {
    if (apply_tensor(M, M, comultiply(Q.P.coalgebra(), a), m) != ops.delta(ypow[a])) return false;
    if (apply_tensor(Mat::identity(n), M, coact(Q.P.yd, basis_vec(a)), m) != ops.rho(ypow[a])) return false;
    for (std::size_t h = 0; h < n; ++h)
      if (M.apply(act(Q.P.yd, h, basis_vec(a))) != ops.act(h, ypow[a])) return false;
    for (std::size_t b = 0; b < m; ++b)
      if (M.apply(multiply(Q.P.algebra(), a, b)) != ops.mult(kron(ypow[a], ypow[b], m))) return false;
  }
  return true;
}

// Powers of Y = y # 1 in R #_xi H against the closed formulas.
inline CheckReport check_bosonization_powers(const Bosonization& bos, const PreBialgebra& P, const DividedPowerBasis& db,
                                             const CocycleAnalysis& ca) {
  CheckReport rep;
  const HopfSC& H = P.H();
  const std::size_t m = P.dim(), n = H.dim(), Nz = static_cast<std::size_t>(db.N);
  const AlgebraSC& B = bos.B.algebra;
  std::vector<SparseVec> ypow = r_powers(P, db.y, Nz);
  SparseVec Y = kron(db.y, H.algebra.unit, n);
  SparseVec X = db.N % 2 == 0 ? q_factorial(static_cast<long>(Nz / 2) - 1, db.q) * kron(P.unit, ca.x, n) : SparseVec();
  rep.pass("Y_powers");
  SparseVec Ya = B.unit;
  std::vector<SparseVec> Yp{Ya};
  for (std::size_t a = 1; a <= Nz; ++a) Yp.push_back(multiply(B, Yp.back(), Y));
  for (std::size_t a = 0; a <= Nz; ++a) {
    SparseVec expect;
    if (a < Nz) {
      expect = kron(ypow[a], H.algebra.unit, n);
      if (db.N % 2 == 0 && a >= Nz / 2)
        expect = expect + q_binomial(static_cast<long>(a), static_cast<long>(Nz / 2), db.q) * multiply(B, Yp[a - Nz / 2], X);
    } else {
      expect = kron(P.unit, ca.xi_top, n);
      if (db.N % 2 == 0) expect = expect + q_binomial(static_cast<long>(Nz) - 1, static_cast<long>(Nz / 2), db.q) * multiply(B, X, X);
    }
    if (Yp[a] != expect) rep.fail("Y_powers", "Y^" + std::to_string(a));
  }
  (void)m;
  return rep;
}

inline AnalysisReport equivalence_report(const ProjectionSetup& s, const InducedPreBialgebra& ind, const ThinResult& thin,
                                         const CocycleAnalysis& ca, const Vec* integral = nullptr) {
  AnalysisReport r;
  CheckReport& rep = r.report;
  const HopfSC& A = *s.A;
  const HopfSC& H = *s.H;
  const std::size_t m = ind.dim(), n = H.dim();
  r.thin = thin.thin;
  if (!thin.thin || !thin.basis) {
    r.notes.push_back("R is not thin: " + thin.reason);
    return r;
  }
  const DividedPowerBasis& db = *thin.basis;
  r.N = db.N;
  r.q = db.q;
  r.g = db.g;
  r.chi = db.chi;
  r.x = ca.x;
  r.lambdaN = ca.lambdaN;
  r.cocycle_table = ca.ytable;
  r.notes = ca.notes;
  const std::size_t Nz = static_cast<std::size_t>(db.N);

  CheckReport pre = check_prebialgebra(ind.P);
  r.colinear = pre.passed("info:colinear");
  std::vector<SparseVec> ypow = r_powers(ind.P, db.y, Nz);
  SparseVec yA = ind.in_A(db.y);
  SparseVec pA = A.algebra.unit;
  bool powers_equal = true;
  for (std::size_t k = 0; k < Nz; ++k) {
    bool eq = ind.in_A(ypow[k]) == pA;
    r.power_comparison.push_back(eq);
    powers_equal = powers_equal && eq;
    pA = multiply(A.algebra, pA, yA);
  }
  if (ca.lambdaN) {
    SparseVec gN = power(A.algebra, s.sigma.apply(db.g), static_cast<unsigned>(db.N));
    rep.record("y^N in A", pA == *ca.lambdaN * (A.algebra.unit - gN), "y^{.A N}");
  }
  PreBialgebraOps ops(ind.P, &ind.xi);
  bool b = db.N % 2 == 1 || ops.xi(kron(db.y, ypow[Nz / 2 - 1], m)).empty();
  bool d = thin.datum && is_quantum_line(ind.P, *thin.datum, db.y);
  r.equivalences["a"] = r.colinear;
  r.equivalences["b"] = b;
  r.equivalences["c"] = powers_equal;
  r.equivalences["d"] = d;

  bool trivial = ind.xi.xi == trivial_cocycle(ind.P).xi;
  bool lambda_zero = ca.lambdaN && ca.lambdaN->is_zero();
  bool braided = pre.ok() && pre.passed("info:associative") && r.colinear;
  bool rm = false;
  if (braided) rm = omega_transport(s, ind, bosonize(ind.P, trivial_cocycle(ind.P), false).B).ok();
  bool pi_alg = retraction_diagnostics(A, H, s.pi, s.sigma).algebra_map;
  r.equivalences["1"] = trivial;
  r.equivalences["2"] = lambda_zero;
  r.equivalences["3"] = rm;
  r.equivalences["4"] = pi_alg;

  auto assert_same = [&](const std::string& name, std::initializer_list<const char*> keys) {
    bool first = r.equivalences[*keys.begin()];
    for (const char* k : keys)
      if (r.equivalences[k] != first) {
        rep.fail(name, std::string(*keys.begin()) + " vs " + k);
        throw Error(ErrorCode::EquivalenceMismatch, name + ": (" + *keys.begin() + ") and (" + k + ") differ");
      }
    rep.pass(name);
  };
  assert_same("equiv:1-3-4", {"1", "3", "4"});
  if (s.flags.finite_dim || s.flags.cosemisimple) {
    assert_same("equiv:a-d", {"a", "b", "c", "d"});
    if (r.equivalences["a"]) assert_same("equiv:1-4", {"1", "2", "3", "4"});
  } else {
    r.notes.push_back("equivalences (a)-(d) reported without assertion: H is neither finite-dimensional nor cosemisimple");
  }

  Vec gi;
  if (!integral && is_group_algebra(H)) {
    gi = group_algebra_integral(H);
    integral = &gi;
  }
  if (integral && verify_ad_integral(H, *integral) && !trivial) {
    SparseVec gN = power(H.algebra, db.g, static_cast<unsigned>(db.N));
    bool central = true;
    for (std::size_t h = 0; h < n && central; ++h) central = multiply(H.algebra, gN, basis_vec(h)) == multiply(H.algebra, basis_vec(h), gN);
    r.consequences["chi^N = eps"] = convolution_power(db.chi, db.N, H.coalgebra) == H.coalgebra.counit;
    r.consequences["g^N central"] = central;
    r.consequences["g^N != 1"] = gN != H.algebra.unit;
    for (const auto& [k, v] : r.consequences) {
      rep.record("integral:" + k, v, k);
      if (!v) throw Error(ErrorCode::EquivalenceMismatch, "nontrivial cocycle with an ad-invariant integral but not " + k);
    }
  }
  Bosonization bos = bosonize(ind.P, ind.xi, false);
  rep.merge(check_bosonization_powers(bos, ind.P, db, ca));
  return r;
}

struct RetractionTransport {
  Mat t12;  // R^2 -> R^1, tau_1 restricted
  Mat t21;  // R^1 -> R^2
  bool mutually_inverse = false;
  bool coalgebra_maps = false;
  bool equal = false;
  bool asserted = false;
};

inline RetractionTransport retraction_tools(const ProjectionSetup& s1, const ProjectionSetup& s2) {
  RetractionTransport out;
  InducedPreBialgebra i1 = induced_structures(s1), i2 = induced_structures(s2);
  out.t12 = i1.coords * i1.tau * i2.basis;
  out.t21 = i2.coords * i2.tau * i1.basis;
  const std::size_t m1 = i1.dim(), m2 = i2.dim();
  out.mutually_inverse = m1 == m2 && out.t12 * out.t21 == Mat::identity(m1) && out.t21 * out.t12 == Mat::identity(m2);
  auto is_coalgebra_map = [](const Mat& f, const PreBialgebra& from, const PreBialgebra& to) {
    for (std::size_t r = 0; r < from.dim(); ++r) {
      if (apply_tensor(f, f, comultiply(from.coalgebra(), r), from.dim()) != comultiply(to.coalgebra(), f.column(r))) return false;
      if (evaluate(to.counit, f.column(r)) != from.counit[r]) return false;
    }
    return true;
  };
  out.coalgebra_maps = is_coalgebra_map(out.t12, i2.P, i1.P) && is_coalgebra_map(out.t21, i1.P, i2.P);
  out.equal = s1.pi == s2.pi;
  if (s1.flags.cosemisimple && thinness_and_basis(i1.P, &i1.xi).thin) {
    out.asserted = true;
    if (!out.equal) throw Error(ErrorCode::EquivalenceMismatch, "two retractions over a cosemisimple H differ");
  }
  return out;
}

// All pi with pi sigma = id and pi(sigma(h) a sigma(k)) = h pi(a) k: particular solution plus directions.
struct BilinearRetractions {
  Mat particular;
  std::vector<Mat> directions;
};

inline std::optional<BilinearRetractions> bilinear_retractions(const HopfSC& A, const HopfSC& H, const Mat& sigma) {
  const std::size_t N = A.dim(), n = H.dim(), U = n * N;
  auto var = [&](std::size_t t, std::size_t a) { return t * N + a; };
  Echelon e(U, true);
  std::vector<SparseVec> sig(n);
  for (std::size_t h = 0; h < n; ++h) sig[h] = sigma.column(h);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t t = 0; t < n; ++t) {
      Accum acc;
      for (const auto& [a, c] : sig[h]) acc.add(var(t, a), c);
      if (t == h) acc.add(U, Cyc(1));
      e.add_row(acc.finish());
    }
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t b = 0; b < N; ++b) {
      SparseVec left = multiply(A.algebra, sig[h], basis_vec(b)), right = multiply(A.algebra, basis_vec(b), sig[h]);
      for (std::size_t t = 0; t < n; ++t) {
        Accum l, r;
        for (const auto& [a, c] : left) l.add(var(t, a), c);
        for (const auto& [a, c] : right) r.add(var(t, a), c);
        for (std::size_t s = 0; s < n; ++s) {
          Cyc hl = H.algebra.mult.at(h, s, t), hr = H.algebra.mult.at(s, h, t);
          if (!hl.is_zero()) l.add(var(s, b), Cyc(-1) * hl);
          if (!hr.is_zero()) r.add(var(s, b), Cyc(-1) * hr);
        }
        e.add_row(l.finish());
        e.add_row(r.finish());
      }
    }
  auto sol = e.solution();
  if (!sol) return std::nullopt;
  auto to_mat = [&](const Vec& v) {
    Mat M(n, N);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t a = 0; a < N; ++a) M(t, a) = v[var(t, a)];
    return M;
  };
  BilinearRetractions out;
  out.particular = to_mat(*sol);
  for (const auto& k : e.kernel_basis()) out.directions.push_back(to_mat(k.dense(U)));
  return out;
}

struct Classification {
  CompatibleDatum datum;
  OreHopf O;
  Mat iso;  // O -> A
  SparseVec z;
  std::size_t dim_A1 = 0;
  bool thin = false;
};

inline std::size_t first_layer_dim(const ProjectionSetup& s) {
  std::vector<SparseVec> cols;
  for (std::size_t h = 0; h < s.H->dim(); ++h) cols.push_back(s.sigma.column(h));
  Subspace S = Subspace::span(s.A->dim(), cols);
  return wedge(s.A->coalgebra, S, S).dim();
}

// dim A_1 = 2 dim H exactly when R is thin.
inline bool thin_criterion_agrees(const ProjectionSetup& s, bool thin, std::size_t* dimA1 = nullptr) {
  std::size_t d = first_layer_dim(s);
  if (dimA1) *dimA1 = d;
  return (d == 2 * s.H->dim()) == thin;
}

inline Classification classify(const ProjectionSetup& s) {
  if (!(s.flags.finite_dim || s.flags.cosemisimple))
    throw Error(ErrorCode::FlagRequired, "classification needs H finite-dimensional or cosemisimple");
  InducedPreBialgebra ind = induced_structures(s);
  ThinResult tr = thinness_and_basis(ind.P, &ind.xi);
  Classification out;
  if (!tr.thin) {
    std::size_t d = 0;
    if (!thin_criterion_agrees(s, false, &d)) throw Error(ErrorCode::EquivalenceMismatch, "dim A_1 = 2 dim H for a non-thin R");
    throw Error(ErrorCode::NotThin, tr.reason);
  }
  if (!tr.report.ok()) throw Error(ErrorCode::InducedAxiomFailure, "divided powers: " + tr.report.failures().front());
  CocycleAnalysis ca = cocycle_analysis(ind.P, ind.xi, *tr.basis, s.flags);
  if (!ca.datum) throw Error(ErrorCode::InducedAxiomFailure, "no compatible datum: " + ca.report.summary());
  out.thin = true;
  out.datum = *ca.datum;
  out.O = build_ore_hopf(out.datum);
  out.z = ind.in_A(tr.basis->y);
  SparseVec Gamma = s.sigma.apply(tr.basis->g);
  if (!skew_primitives(s.A->coalgebra, Gamma, s.A->algebra.unit).contains(out.z))
    throw Error(ErrorCode::InducedAxiomFailure, "y is not (Gamma,1)-primitive in A");
  out.iso = universal_map(out.O, *s.A, s.sigma, out.z);
  if (rank(out.iso) != s.A->dim()) throw Error(ErrorCode::EquivalenceMismatch, "extension is not bijective");
  if (out.iso * out.O.sigma != s.sigma) throw Error(ErrorCode::EquivalenceMismatch, "extension does not restrict to sigma");
  if (!thin_criterion_agrees(s, true, &out.dim_A1)) throw Error(ErrorCode::EquivalenceMismatch, "thin R but dim A_1 != 2 dim H");
  return out;
}

// The whole pipeline for one setup.
struct FullAnalysis {
  CheckReport setup;
  InducedPreBialgebra induced;
  CheckReport prebialgebra;
  CheckReport cocycle;
  CheckReport tau_identities;
  CheckReport omega;
  ThinResult thin;
  std::optional<CocycleAnalysis> cocycle_lines;
  std::optional<CheckReport> coaction_identities;
  std::optional<AnalysisReport> report;
  std::size_t dim_A1 = 0;
  bool as_criterion = false;
};

inline FullAnalysis analyze(const ProjectionSetup& s) {
  FullAnalysis f;
  f.setup = validate_setup(s);
  if (!f.setup.ok()) throw Error(ErrorCode::HypothesisViolation, "projection setup: " + f.setup.failures().front());
  f.induced = induced_structures(s, false);
  f.prebialgebra = check_prebialgebra(f.induced.P);
  f.cocycle = check_cocycle(f.induced.P, f.induced.xi);
  if (!f.prebialgebra.ok() || !f.cocycle.ok()) throw Error(ErrorCode::InducedAxiomFailure, f.prebialgebra.summary() + f.cocycle.summary());
  f.tau_identities = check_tau_identities(s, f.induced);
  f.omega = omega_roundtrip_report(s, f.induced);
  f.thin = thinness_and_basis(f.induced.P, &f.induced.xi);
  f.as_criterion = thin_criterion_agrees(s, f.thin.thin, &f.dim_A1);
  if (f.thin.thin && f.thin.basis) {
    f.cocycle_lines = cocycle_analysis(f.induced.P, f.induced.xi, *f.thin.basis, s.flags);
    f.coaction_identities = check_coaction_identities(f.induced.P, f.induced.xi, *f.thin.basis, f.cocycle_lines->x);
    f.report = equivalence_report(s, f.induced, f.thin, *f.cocycle_lines);
  }
  return f;
}

}  // namespace hopfforge
