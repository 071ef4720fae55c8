#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfforge/ydcat.hpp"

namespace hopfforge {

struct PreBialgebra {
  std::string name;
  YDModule yd;  // carrier, base Hopf algebra, action and coaction
  Tensor3 mult;  // m(r_i (x) r_j) = sum mult[i,j,k] r_k
  SparseVec unit;
  Tensor3 comult;  // delta(r_k) = sum comult[k,i,j] r_i (x) r_j
  Vec counit;

  std::size_t dim() const { return yd.dim; }
  const HopfSC& H() const { return yd.H(); }
  std::string label(std::size_t i) const { return yd.label(i); }
  AlgebraSC algebra() const { return AlgebraSC{dim(), mult, unit}; }
  CoalgebraSC coalgebra() const { return CoalgebraSC{dim(), comult, counit}; }
};

// xi(r_i (x) r_j) = sum xi[i,j,h] e_h
struct Cocycle {
  Tensor3 xi;
};

inline Cocycle trivial_cocycle(const PreBialgebra& P) {
  const std::size_t m = P.dim(), n = P.H().dim();
  Tensor3::Builder b(m, m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Cyc e = P.counit[i] * P.counit[j];
      if (e.is_zero()) continue;
      for (const auto& [u, x] : P.H().algebra.unit) b.add(i, j, u, e * x);
    }
  return Cocycle{b.build()};
}

// Basis-level tables and composite maps used by the axiom checks and the bosonization.
class PreBialgebraOps {
 public:
  PreBialgebraOps(const PreBialgebra& P, const Cocycle* xi = nullptr) : P_(P), xi_(xi), m_(P.dim()), n_(P.H().dim()) {
    drr_.resize(m_ * m_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < m_; ++j) drr_[i * m_ + j] = build_delta_rr(i, j);
  }

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }

  // R (x) R -> R
  SparseVec mult(const SparseVec& x) const {
    Accum acc;
    for (const auto& [idx, c] : x)
      for (const auto& e : P_.mult.fiber(idx / m_, idx % m_)) acc.add(e.k, e.v * c);
    return acc.finish();
  }
  // R (x) R -> H
  SparseVec xi(const SparseVec& x) const {
    Accum acc;
    for (const auto& [idx, c] : x)
      for (const auto& e : xi_->xi.fiber(idx / m_, idx % m_)) acc.add(e.k, e.v * c);
    return acc.finish();
  }
  SparseVec delta(const SparseVec& r) const { return comultiply(P_.coalgebra(), r); }
  SparseVec act(std::size_t h, const SparseVec& r) const { return hopfforge::act(P_.yd, h, r); }
  SparseVec act(const SparseVec& h, const SparseVec& r) const { return hopfforge::act(P_.yd, h, r); }
  SparseVec rho(const SparseVec& r) const { return coact(P_.yd, r); }

  // delta_{R(x)R}(r (x) s) = sum r1 (x) r2_{-1} s1 (x) r2_0 (x) s2, index ((a m + b) m + c) m + d.
  const SparseVec& delta_rr(std::size_t i, std::size_t j) const { return drr_[i * m_ + j]; }
  SparseVec delta_rr(const SparseVec& x) const {
    Accum acc;
    for (const auto& [idx, c] : x) acc.add(drr_[idx], c);
    return acc.finish();
  }

  // rho_{R(x)R}(r (x) s) = sum r_{-1} s_{-1} (x) r_0 (x) s_0, index (h m + a) m + b.
  SparseVec rho_rr(const SparseVec& x) const {
    Accum acc;
    const HopfSC& H = P_.H();
    for (const auto& [idx, c] : x)
      for (const auto& a : P_.yd.coaction.slice(idx / m_))
        for (const auto& b : P_.yd.coaction.slice(idx % m_))
          for (const auto& p : H.algebra.mult.fiber(a.j, b.j)) acc.add((p.k * m_ + a.k) * m_ + b.k, c * a.v * b.v * p.v);
    return acc.finish();
  }

  // Apply f to the first R(x)R pair and g to the second of an element of R^{(x)4}; dim of g's codomain is dg.
  template <class F, class G>
  SparseVec split_apply(const SparseVec& quad, F f, G g, std::size_t dg) const {
    Accum acc;
    const std::size_t mm = m_ * m_;
    for (const auto& [idx, c] : quad) {
      SparseVec left = f(SparseVec::unit(idx / mm)), right = g(SparseVec::unit(idx % mm));
      for (const auto& [p, x] : left)
        for (const auto& [q, y] : right) acc.add(p * dg + q, c * x * y);
    }
    return acc.finish();
  }

  // m~ = (m (x) xi) delta_{R(x)R}: R (x) R -> R (x) H
  SparseVec mtilde(const SparseVec& x) const {
    return split_apply(delta_rr(x), [&](const SparseVec& v) { return mult(v); }, [&](const SparseVec& v) { return xi(v); }, n_);
  }

 private:
  SparseVec build_delta_rr(std::size_t i, std::size_t j) const {
    Accum acc;
    for (const auto& di : P_.comult.slice(i))
      for (const auto& co : P_.yd.coaction.slice(di.k))
        for (const auto& dj : P_.comult.slice(j))
          for (const auto& ac : P_.yd.action.fiber(co.j, dj.j))
            acc.add(((di.j * m_ + ac.k) * m_ + co.k) * m_ + dj.k, di.v * co.v * dj.v * ac.v);
    return acc.finish();
  }

  const PreBialgebra& P_;
  const Cocycle* xi_;
  std::size_t m_, n_;
  std::vector<SparseVec> drr_;
};

inline std::string pair_witness(const PreBialgebra& P, std::size_t i, std::size_t j) {
  return "(" + P.label(i) + "," + P.label(j) + ")";
}

inline CheckReport check_prebialgebra(const PreBialgebra& P) {
  CheckReport rep;
  const HopfSC& H = P.H();
  const std::size_t m = P.dim(), n = H.dim();
  rep.merge(check_yd(P.yd), "yd:");
  rep.merge(check_coalgebra(P.coalgebra(), P.yd.labels), "coalgebra:");
  for (const char* name : {"YD0'", "YD1'", "YD2'", "YD4'", "YD9'", "delta_H_linear", "delta_colinear",
                           "counit_H_linear", "counit_colinear"})
    rep.pass(name);
  rep.pass("info:associative", true);
  rep.pass("info:colinear", true);
  PreBialgebraOps ops(P);
  const SparseVec& u = P.unit;

  for (std::size_t h = 0; h < n; ++h)
    if (ops.act(h, u) != H.coalgebra.counit[h] * u) rep.fail("YD0'", "(" + H.label(h) + ") h.u");
  if (ops.rho(u) != kron(H.algebra.unit, u, m)) rep.fail("YD0'", "rho(u)");
  if (ops.delta(u) != kron(u, u, m)) rep.fail("YD1'", "delta(u)");
  if (evaluate(P.counit, u) != Cyc(1)) rep.fail("YD1'", "eps(u)");

  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        SparseVec lhs = ops.act(h, ops.mult(SparseVec::unit(i * m + j)));
        Accum rhs;
        for (const auto& e : H.coalgebra.comult.slice(h))
          rhs.add(ops.mult(kron(ops.act(e.j, basis_vec(i)), ops.act(e.k, basis_vec(j)), m)), e.v);
        if (lhs != rhs.finish()) rep.fail("YD2'", "(" + H.label(h) + "," + P.label(i) + "," + P.label(j) + ")");
      }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      SparseVec ij = SparseVec::unit(i * m + j);
      SparseVec prod = ops.mult(ij);
      SparseVec rhs = ops.split_apply(
          ops.delta_rr(i, j), [&](const SparseVec& v) { return ops.mult(v); }, [&](const SparseVec& v) { return ops.mult(v); }, m);
      if (ops.delta(prod) != rhs) rep.fail("YD4'", pair_witness(P, i, j) + " delta");
      if (evaluate(P.counit, prod) != P.counit[i] * P.counit[j]) rep.fail("YD4'", pair_witness(P, i, j) + " eps");
      Accum co;
      for (const auto& [idx, c] : ops.rho_rr(ij))
        for (const auto& [k, x] : ops.mult(SparseVec::unit(idx % (m * m)))) co.add((idx / (m * m)) * m + k, c * x);
      if (ops.rho(prod) != co.finish()) rep.fail("info:colinear", pair_witness(P, i, j), true);
    }

  for (std::size_t i = 0; i < m; ++i) {
    if (ops.mult(kron(basis_vec(i), u, m)) != basis_vec(i)) rep.fail("YD9'", "(" + P.label(i) + ",u)");
    if (ops.mult(kron(u, basis_vec(i), m)) != basis_vec(i)) rep.fail("YD9'", "(u," + P.label(i) + ")");
  }

  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < m; ++i) {
      SparseVec lhs = ops.delta(ops.act(h, basis_vec(i)));
      Accum rhs;
      for (const auto& e : H.coalgebra.comult.slice(h))
        for (const auto& d : P.comult.slice(i))
          rhs.add(kron(ops.act(e.j, basis_vec(d.j)), ops.act(e.k, basis_vec(d.k)), m), e.v * d.v);
      if (lhs != rhs.finish()) rep.fail("delta_H_linear", "(" + H.label(h) + "," + P.label(i) + ")");
      if (evaluate(P.counit, ops.act(h, basis_vec(i))) != H.coalgebra.counit[h] * P.counit[i])
        rep.fail("counit_H_linear", "(" + H.label(h) + "," + P.label(i) + ")");
    }
  for (std::size_t i = 0; i < m; ++i) {
    SparseVec lhs = ops.rho_rr(ops.delta(basis_vec(i)));
    Accum rhs;
    for (const auto& c : P.yd.coaction.slice(i))
      for (const auto& d : P.comult.slice(c.k)) rhs.add((c.j * m + d.j) * m + d.k, c.v * d.v);
    if (lhs != rhs.finish()) rep.fail("delta_colinear", "(" + P.label(i) + ")");
    Accum ce;
    for (const auto& c : P.yd.coaction.slice(i)) ce.add(c.j, c.v * P.counit[c.k]);
    if (ce.finish() != P.counit[i] * H.algebra.unit) rep.fail("counit_colinear", "(" + P.label(i) + ")");
  }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        SparseVec l = ops.mult(kron(ops.mult(SparseVec::unit(i * m + j)), basis_vec(k), m));
        SparseVec r = ops.mult(kron(basis_vec(i), ops.mult(SparseVec::unit(j * m + k)), m));
        if (l != r) rep.fail("info:associative", "(" + P.label(i) + "," + P.label(j) + "," + P.label(k) + ")", true);
      }
  return rep;
}

inline CheckReport check_cocycle(const PreBialgebra& P, const Cocycle& xi) {
  CheckReport rep;
  const HopfSC& H = P.H();
  const std::size_t m = P.dim(), n = H.dim();
  for (const char* name : {"YD3'", "YD5'", "YD6'", "YD7'", "YD8'", "YD10'"}) rep.pass(name);
  if (xi.xi.n1() != m || xi.xi.n2() != m || xi.xi.n3() != n) {
    rep.fail("YD3'", "cocycle tensor shape");
    return rep;
  }
  const Mat& S = H.S();
  PreBialgebraOps ops(P, &xi);
  auto xi_of = [&](const SparseVec& v) { return ops.xi(v); };
  auto m_of = [&](const SparseVec& v) { return ops.mult(v); };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      SparseVec ij = SparseVec::unit(i * m + j);
      SparseVec x = ops.xi(ij);
      std::string w = pair_witness(P, i, j);
      for (std::size_t h = 0; h < n; ++h) {
        Accum lhs;
        for (const auto& e : H.coalgebra.comult.slice(h))
          lhs.add(ops.xi(kron(ops.act(e.j, basis_vec(i)), ops.act(e.k, basis_vec(j)), m)), e.v);
        Accum rhs;
        for (const auto& e : H.coalgebra.comult.slice(h))
          rhs.add(multiply(H.algebra, multiply(H.algebra, basis_vec(e.j), x), S.column(e.k)), e.v);
        if (lhs.finish() != rhs.finish()) rep.fail("YD3'", "(" + H.label(h) + "," + P.label(i) + "," + P.label(j) + ")");
      }

      // Delta_H xi = (m_H (x) xi)(xi (x) rho_{R(x)R}) delta_{R(x)R}
      SparseVec quad = ops.delta_rr(i, j);
      Accum rhs5;
      for (const auto& [idx, c] : quad) {
        SparseVec left = ops.xi(SparseVec::unit(idx / (m * m)));
        SparseVec rr = ops.rho_rr(SparseVec::unit(idx % (m * m)));
        for (const auto& [p, a] : left)
          for (const auto& [t, b] : rr) {
            SparseVec xr = ops.xi(SparseVec::unit(t % (m * m)));
            for (const auto& f : H.algebra.mult.fiber(p, t / (m * m)))
              for (const auto& [q, d] : xr) rhs5.add(f.k * n + q, c * a * b * f.v * d);
          }
      }
      if (comultiply(H.coalgebra, x) != rhs5.finish()) rep.fail("YD5'", w + " Delta");
      if (evaluate(H.coalgebra.counit, x) != P.counit[i] * P.counit[j]) rep.fail("YD5'", w + " eps");

      // c_{R,H}(m (x) xi) delta_{R(x)R} = (m_H (x) m_R)(xi (x) rho_{R(x)R}) delta_{R(x)R}
      SparseVec mx = ops.split_apply(quad, m_of, xi_of, n);
      Accum lhs6;
      for (const auto& [idx, c] : mx)
        for (const auto& co : P.yd.coaction.slice(idx / n))
          for (const auto& f : H.algebra.mult.fiber(co.j, idx % n)) lhs6.add(f.k * m + co.k, c * co.v * f.v);
      Accum rhs6;
      for (const auto& [idx, c] : quad) {
        SparseVec left = ops.xi(SparseVec::unit(idx / (m * m)));
        SparseVec rr = ops.rho_rr(SparseVec::unit(idx % (m * m)));
        for (const auto& [p, a] : left)
          for (const auto& [t, b] : rr) {
            SparseVec mr = ops.mult(SparseVec::unit(t % (m * m)));
            for (const auto& f : H.algebra.mult.fiber(p, t / (m * m)))
              for (const auto& [q, d] : mr) rhs6.add(f.k * m + q, c * a * b * f.v * d);
          }
      }
      if (lhs6.finish() != rhs6.finish()) rep.fail("YD6'", w);

      for (std::size_t k = 0; k < m; ++k) {
        std::string w3 = "(" + P.label(i) + "," + P.label(j) + "," + P.label(k) + ")";
        // m(r (x) m(s (x) t)) = sum m(m(x) (x) xi(y) . t)
        SparseVec l7 = ops.mult(kron(basis_vec(i), ops.mult(SparseVec::unit(j * m + k)), m));
        Accum r7;
        for (const auto& [idx, c] : mx) r7.add(ops.mult(kron(basis_vec(idx / n), ops.act(idx % n, basis_vec(k)), m)), c);
        if (l7 != r7.finish()) rep.fail("YD7'", w3);

        // xi(r (x) m(x')) xi(y') with delta_{R(x)R}(s (x) t) = x' (x) y'
        SparseVec mx_jk = ops.split_apply(ops.delta_rr(j, k), m_of, xi_of, n);
        Accum l8;
        for (const auto& [idx, c] : mx_jk) {
          SparseVec a = ops.xi(kron(basis_vec(i), basis_vec(idx / n), m));
          l8.add(multiply(H.algebra, a, basis_vec(idx % n)), c);
        }
        // c_{H,R}(h (x) t) = h1 t (x) h2, so the right side is xi(m(x) (x) xi(y)_1 t) xi(y)_2
        Accum r8;
        for (const auto& [idx, c] : mx)
          for (const auto& e : H.coalgebra.comult.slice(idx % n)) {
            SparseVec a = ops.xi(kron(basis_vec(idx / n), ops.act(e.j, basis_vec(k)), m));
            r8.add(multiply(H.algebra, a, basis_vec(e.k)), c * e.v);
          }
        if (l8.finish() != r8.finish()) rep.fail("YD8'", w3);
      }
    }
  for (std::size_t i = 0; i < m; ++i) {
    SparseVec e = P.counit[i] * H.algebra.unit;
    if (ops.xi(kron(basis_vec(i), P.unit, m)) != e) rep.fail("YD10'", "(" + P.label(i) + ",u)");
    if (ops.xi(kron(P.unit, basis_vec(i), m)) != e) rep.fail("YD10'", "(u," + P.label(i) + ")");
  }
  return rep;
}

// m~(r_i (x) r_j) for all basis pairs, as the columns of a (dim R * dim H) x (dim R)^2 matrix.
inline Mat m_tilde(const PreBialgebra& P, const Cocycle& xi) {
  PreBialgebraOps ops(P, &xi);
  const std::size_t m = P.dim(), n = P.H().dim();
  std::vector<SparseVec> cols;
  for (std::size_t idx = 0; idx < m * m; ++idx) cols.push_back(ops.mtilde(SparseVec::unit(idx)));
  return Mat::from_columns(m * n, cols);
}

struct Bosonization {
  HopfSC B;  // antipode set when one exists
  Mat sigma;  // H -> B, h -> u # h
  Mat pi;     // B -> H, r # h -> eps(r) h
  bool hopf = false;
};

inline Bosonization bosonize(const PreBialgebra& P, const Cocycle& xi, bool verify = true) {
  if (verify) {
    CheckReport pre = check_prebialgebra(P);
    if (!pre.ok()) throw Error(ErrorCode::AxiomViolation, "pre-bialgebra relation " + pre.failures().front());
    CheckReport coc = check_cocycle(P, xi);
    if (!coc.ok()) throw Error(ErrorCode::AxiomViolation, "cocycle relation " + coc.failures().front());
  }
  const HopfSC& H = P.H();
  const std::size_t m = P.dim(), n = H.dim(), N = m * n;
  PreBialgebraOps ops(P, &xi);
  Bosonization out;
  HopfSC& B = out.B;
  B.name = P.name.empty() ? "R#H" : P.name + "#" + H.name;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t h = 0; h < n; ++h) B.labels.push_back(P.label(r) + "#" + H.label(h));

  Tensor3::Builder cb(N, N, N);
  for (std::size_t r = 0; r < m; ++r)
    for (const auto& d : P.comult.slice(r))
      for (const auto& co : P.yd.coaction.slice(d.k))
        for (std::size_t h = 0; h < n; ++h)
          for (const auto& dh : H.coalgebra.comult.slice(h))
            for (const auto& p : H.algebra.mult.fiber(co.j, dh.j))
              cb.add(r * n + h, d.j * n + p.k, co.k * n + dh.k, d.v * co.v * dh.v * p.v);

  std::vector<SparseVec> mt(m * m);
  for (std::size_t idx = 0; idx < m * m; ++idx) mt[idx] = ops.mtilde(SparseVec::unit(idx));
  Tensor3::Builder mb(N, N, N);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t s = 0; s < m; ++s)
        for (std::size_t k = 0; k < n; ++k)
          for (const auto& dh : H.coalgebra.comult.slice(h)) {
            SparseVec hs = ops.act(dh.j, basis_vec(s));
            SparseVec h2k = multiply(H.algebra, dh.k, k);
            for (const auto& [s2, a] : hs)
              for (const auto& [idx, b] : mt[r * m + s2]) {
                std::size_t t = idx / n, g = idx % n;
                for (const auto& [hk, c] : h2k)
                  for (const auto& f : H.algebra.mult.fiber(g, hk)) mb.add(r * n + h, s * n + k, t * n + f.k, dh.v * a * b * c * f.v);
              }
          }

  Vec eps(N);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t h = 0; h < n; ++h) eps[r * n + h] = P.counit[r] * H.coalgebra.counit[h];
  B.algebra = AlgebraSC{N, mb.build(), kron(P.unit, H.algebra.unit, n)};
  B.coalgebra = CoalgebraSC{N, cb.build(), eps};

  out.sigma = Mat(N, n);
  out.pi = Mat(n, N);
  for (std::size_t h = 0; h < n; ++h)
    for (const auto& [u, c] : P.unit) out.sigma(u * n + h, h) = c;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t h = 0; h < n; ++h) out.pi(h, r * n + h) = P.counit[r];

  if (verify) {
    CheckReport rep = check_bialgebra(B);
    if (!rep.ok()) throw Error(ErrorCode::AxiomViolation, "bosonization is not a bialgebra: " + rep.failures().front());
  }
  B.antipode = compute_antipode(B, false);
  out.hopf = B.antipode.has_value();
  for (const auto& [name, g] : H.grouplikes) B.grouplikes[name] = out.sigma.apply(g);
  return out;
}

inline bool is_radford_majid(const PreBialgebra& P, const Cocycle& xi) {
  return xi.xi == trivial_cocycle(P).xi;
}

struct RetractionDiagnostics {
  bool retraction = true;  // pi sigma = id
  bool coalgebra_map = true;
  bool algebra_map = true;
  bool H_bilinear = true;
  CheckReport report;
};

inline RetractionDiagnostics retraction_diagnostics(const HopfSC& A, const HopfSC& H, const Mat& pi, const Mat& sigma) {
  RetractionDiagnostics d;
  const std::size_t N = A.dim(), n = H.dim();
  CheckReport& rep = d.report;
  for (const char* name : {"retraction", "coalgebra_map", "algebra_map", "H_bilinear"}) rep.pass(name);
  if (pi * sigma != Mat::identity(n)) rep.fail("retraction", "pi sigma != id");
  std::vector<SparseVec> pic(N);
  for (std::size_t a = 0; a < N; ++a) pic[a] = pi.column(a);
  for (std::size_t a = 0; a < N; ++a) {
    SparseVec lhs = apply_tensor(pi, pi, comultiply(A.coalgebra, a), N);
    if (lhs != comultiply(H.coalgebra, pic[a])) rep.fail("coalgebra_map", "(" + A.label(a) + ") Delta");
    if (evaluate(H.coalgebra.counit, pic[a]) != A.coalgebra.counit[a]) rep.fail("coalgebra_map", "(" + A.label(a) + ") eps");
  }
  if (pi.apply(A.algebra.unit) != H.algebra.unit) rep.fail("algebra_map", "pi(1)");
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      if (pi.apply(multiply(A.algebra, a, b)) != multiply(H.algebra, pic[a], pic[b]))
        rep.fail("algebra_map", "(" + A.label(a) + "," + A.label(b) + ")");
  std::vector<SparseVec> sig(n);
  for (std::size_t h = 0; h < n; ++h) sig[h] = sigma.column(h);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t b = 0; b < N; ++b) {
      SparseVec hb = multiply(A.algebra, sig[h], basis_vec(b));
      for (std::size_t k = 0; k < n; ++k) {
        SparseVec lhs = pi.apply(multiply(A.algebra, hb, sig[k]));
        SparseVec rhs = multiply(H.algebra, multiply(H.algebra, basis_vec(h), pic[b]), basis_vec(k));
        if (lhs != rhs) rep.fail("H_bilinear", "(" + H.label(h) + "," + A.label(b) + "," + H.label(k) + ")");
      }
    }
  d.retraction = rep.passed("retraction");
  d.coalgebra_map = rep.passed("coalgebra_map");
  d.algebra_map = rep.passed("algebra_map");
  d.H_bilinear = rep.passed("H_bilinear");
  return d;
}

}  // namespace hopfforge
