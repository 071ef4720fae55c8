#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfforge/hopfcore.hpp"

namespace hopfforge {

struct YDModule {
  std::shared_ptr<const HopfSC> base;
  std::size_t dim = 0;
  Tensor3 action;    // h . v_i = sum action[h,i,j] v_j
  Tensor3 coaction;  // rho(v_i) = sum coaction[i,h,j] e_h (x) v_j
  std::vector<std::string> labels;

  const HopfSC& H() const { return *base; }
  std::string label(std::size_t i) const { return i < labels.size() ? labels[i] : "v" + std::to_string(i); }
};

inline SparseVec act(const YDModule& V, std::size_t h, const SparseVec& v) {
  Accum acc;
  for (const auto& [i, a] : v)
    for (const auto& e : V.action.fiber(h, i)) acc.add(e.k, e.v * a);
  return acc.finish();
}

inline SparseVec act(const YDModule& V, const SparseVec& h, const SparseVec& v) {
  Accum acc;
  for (const auto& [k, b] : h) acc.add(act(V, k, v), b);
  return acc.finish();
}

// rho(v) as an element of H (x) V, index h * dim V + j.
inline SparseVec coact(const YDModule& V, const SparseVec& v) {
  Accum acc;
  for (const auto& [i, a] : v)
    for (const auto& e : V.coaction.slice(i)) acc.add(e.j * V.dim + e.k, e.v * a);
  return acc.finish();
}

struct Triple {
  std::size_t a, b, c;
  Cyc v;
};

// Delta^2(e_h) = sum h1 (x) h2 (x) h3.
inline std::vector<Triple> comult2(const CoalgebraSC& C, std::size_t h) {
  Accum acc;
  const std::size_t n = C.dim;
  for (const auto& e : C.comult.slice(h))
    for (const auto& f : C.comult.slice(e.j)) acc.add((f.j * n + f.k) * n + e.k, e.v * f.v);
  std::vector<Triple> out;
  for (const auto& [idx, c] : acc.finish()) out.push_back({idx / (n * n), (idx / n) % n, idx % n, c});
  return out;
}

inline CheckReport check_yd(const YDModule& V) {
  CheckReport rep;
  const HopfSC& H = V.H();
  const std::size_t n = H.dim(), m = V.dim;
  for (const char* name : {"module_associativity", "module_unit", "comodule_coassociativity", "comodule_counit",
                           "yd_compatibility", "yd_compatibility_alt"})
    rep.pass(name);
  if (V.action.n1() != n || V.action.n2() != m || V.action.n3() != m || V.coaction.n1() != m ||
      V.coaction.n2() != n || V.coaction.n3() != m) {
    rep.fail("shape", "action/coaction shape");
    return rep;
  }
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k) {
      SparseVec hk = multiply(H.algebra, h, k);
      for (std::size_t i = 0; i < m; ++i)
        if (act(V, hk, basis_vec(i)) != act(V, h, act(V, k, basis_vec(i))))
          rep.fail("module_associativity", "(" + H.label(h) + "," + H.label(k) + "," + V.label(i) + ")");
    }
  for (std::size_t i = 0; i < m; ++i)
    if (act(V, H.algebra.unit, basis_vec(i)) != basis_vec(i)) rep.fail("module_unit", "(" + V.label(i) + ")");
  for (std::size_t i = 0; i < m; ++i) {
    Accum left, right;
    Vec counit_side = zero_vec(m);
    for (const auto& e : V.coaction.slice(i)) {
      for (const auto& f : H.coalgebra.comult.slice(e.j)) left.add((f.j * n + f.k) * m + e.k, e.v * f.v);
      for (const auto& f : V.coaction.slice(e.k)) right.add((e.j * n + f.j) * m + f.k, e.v * f.v);
      counit_side[e.k] += H.coalgebra.counit[e.j] * e.v;
    }
    if (left.finish() != right.finish()) rep.fail("comodule_coassociativity", "(" + V.label(i) + ")");
    if (counit_side != unit_vec(m, i)) rep.fail("comodule_counit", "(" + V.label(i) + ")");
  }
  if (!H.antipode) {
    rep.fail("yd_compatibility", "base has no antipode");
    return rep;
  }
  const Mat& S = *H.antipode;
  std::vector<SparseVec> Scol(n);
  for (std::size_t k = 0; k < n; ++k) Scol[k] = S.column(k);
  for (std::size_t h = 0; h < n; ++h) {
    auto d2 = comult2(H.coalgebra, h);
    for (std::size_t i = 0; i < m; ++i) {
      SparseVec lhs = coact(V, act(V, h, basis_vec(i)));
      Accum rhs;
      for (const auto& t : d2)
        for (const auto& e : V.coaction.slice(i)) {
          SparseVec left = multiply(H.algebra, multiply(H.algebra, t.a, e.j), Scol[t.c]);
          SparseVec right = act(V, t.b, basis_vec(e.k));
          for (const auto& [p, x] : left)
            for (const auto& [q, y] : right) rhs.add(p * m + q, t.v * e.v * x * y);
        }
      if (lhs != rhs.finish()) rep.fail("yd_compatibility", "(" + H.label(h) + "," + V.label(i) + ")");

      // sum (h1 v)_{-1} h2 (x) (h1 v)_0 = sum h1 v_{-1} (x) h2 v_0
      Accum alt_l, alt_r;
      for (const auto& e : H.coalgebra.comult.slice(h)) {
        SparseVec rv = coact(V, act(V, e.j, basis_vec(i)));
        for (const auto& [idx, x] : rv)
          for (const auto& f : H.algebra.mult.fiber(idx / m, e.k)) alt_l.add(f.k * m + idx % m, e.v * x * f.v);
        for (const auto& c : V.coaction.slice(i)) {
          SparseVec left = multiply(H.algebra, e.j, c.j);
          SparseVec right = act(V, e.k, basis_vec(c.k));
          for (const auto& [p, x] : left)
            for (const auto& [q, y] : right) alt_r.add(p * m + q, e.v * c.v * x * y);
        }
      }
      if (alt_l.finish() != alt_r.finish())
        rep.fail("yd_compatibility_alt", "(" + H.label(h) + "," + V.label(i) + ")");
    }
  }
  if (rep.passed("yd_compatibility") != rep.passed("yd_compatibility_alt"))
    rep.item("yd_compatibility_alt").note = "forms disagree";
  return rep;
}

inline void require_yd(const YDModule& V, const char* what) {
  CheckReport rep = check_yd(V);
  if (!rep.ok()) throw Error(ErrorCode::YDViolation, std::string(what) + ": " + rep.failures().front());
}

inline YDModule trivial_module(std::shared_ptr<const HopfSC> H) {
  YDModule K;
  K.base = H;
  K.dim = 1;
  K.labels = {"1"};
  Tensor3::Builder a(H->dim(), 1, 1), c(1, H->dim(), 1);
  for (std::size_t h = 0; h < H->dim(); ++h) a.add(h, 0, 0, H->coalgebra.counit[h]);
  for (const auto& [u, x] : H->algebra.unit) c.add(0, u, 0, x);
  K.action = a.build();
  K.coaction = c.build();
  return K;
}

// Diagonal action and codiagonal coaction on V (x) W.
inline YDModule tensor_module(const YDModule& V, const YDModule& W) {
  const HopfSC& H = V.H();
  const std::size_t n = H.dim(), mv = V.dim, mw = W.dim;
  YDModule T;
  T.base = V.base;
  T.dim = mv * mw;
  for (std::size_t i = 0; i < mv; ++i)
    for (std::size_t j = 0; j < mw; ++j) T.labels.push_back(V.label(i) + "|" + W.label(j));
  Tensor3::Builder a(n, T.dim, T.dim), c(T.dim, n, T.dim);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < mv; ++i)
      for (std::size_t j = 0; j < mw; ++j)
        for (const auto& e : H.coalgebra.comult.slice(h))
          for (const auto& x : V.action.fiber(e.j, i))
            for (const auto& y : W.action.fiber(e.k, j)) a.add(h, i * mw + j, x.k * mw + y.k, e.v * x.v * y.v);
  for (std::size_t i = 0; i < mv; ++i)
    for (std::size_t j = 0; j < mw; ++j)
      for (const auto& x : V.coaction.slice(i))
        for (const auto& y : W.coaction.slice(j))
          for (const auto& p : H.algebra.mult.fiber(x.j, y.j)) c.add(i * mw + j, p.k, x.k * mw + y.k, x.v * y.v * p.v);
  T.action = a.build();
  T.coaction = c.build();
  return T;
}

// c(v (x) w) = sum v_{-1} w (x) v_0, as a matrix from V (x) W to W (x) V.
inline Mat braiding(const YDModule& V, const YDModule& W, bool verify = true) {
  if (V.base.get() != W.base.get() && V.base->dim() != W.base->dim())
    throw Error(ErrorCode::ShapeMismatch, "braiding over different bases");
  if (verify) {
    require_yd(V, "braiding source");
    require_yd(W, "braiding target");
  }
  const std::size_t mv = V.dim, mw = W.dim;
  Mat c(mw * mv, mv * mw);
  for (std::size_t i = 0; i < mv; ++i)
    for (std::size_t j = 0; j < mw; ++j)
      for (const auto& e : V.coaction.slice(i))
        for (const auto& w : W.action.fiber(e.j, j)) c(w.k * mv + e.k, i * mw + j) += e.v * w.v;
  return c;
}

// (r (x) s)(t (x) v) = sum r (s_{-1} t) (x) s_0 v
inline AlgebraSC braided_tensor_algebra(const YDModule& R, const AlgebraSC& mR, const YDModule& S, const AlgebraSC& mS) {
  const std::size_t a = R.dim, b = S.dim, n = a * b;
  Tensor3::Builder mb(n, n, n);
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t s = 0; s < b; ++s)
      for (std::size_t t = 0; t < a; ++t)
        for (std::size_t v = 0; v < b; ++v)
          for (const auto& co : S.coaction.slice(s)) {
            SparseVec st = act(R, co.j, basis_vec(t));
            for (const auto& [t2, x] : st)
              for (const auto& p : mR.mult.fiber(r, t2))
                for (const auto& q : mS.mult.fiber(co.k, v)) mb.add(r * b + s, t * b + v, p.k * b + q.k, co.v * x * p.v * q.v);
          }
  return AlgebraSC{n, mb.build(), kron(mR.unit, mS.unit, b)};
}

// delta(r (x) s) = sum r1 (x) r2_{-1} s1 (x) r2_0 (x) s2
inline CoalgebraSC braided_tensor_coalgebra(const YDModule& R, const CoalgebraSC& cR, const YDModule& S, const CoalgebraSC& cS) {
  const std::size_t a = R.dim, b = S.dim, n = a * b;
  Tensor3::Builder cb(n, n, n);
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t s = 0; s < b; ++s)
      for (const auto& dr : cR.comult.slice(r))
        for (const auto& ds : cS.comult.slice(s))
          for (const auto& co : R.coaction.slice(dr.k)) {
            SparseVec hs = act(S, co.j, basis_vec(ds.j));
            for (const auto& [s1, x] : hs) cb.add(r * b + s, dr.j * b + s1, co.k * b + ds.k, dr.v * ds.v * co.v * x);
          }
  Vec eps(n);
  for (std::size_t r = 0; r < a; ++r)
    for (std::size_t s = 0; s < b; ++s) eps[r * b + s] = cR.counit[r] * cS.counit[s];
  return CoalgebraSC{n, cb.build(), eps};
}

// H with the left adjoint action and the regular coaction Delta.
inline YDModule adjoint_action_module(std::shared_ptr<const HopfSC> Hp) {
  const HopfSC& H = *Hp;
  const std::size_t n = H.dim();
  YDModule V;
  V.base = Hp;
  V.dim = n;
  V.labels = H.labels;
  Tensor3::Builder a(n, n, n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t x = 0; x < n; ++x) a.add_fiber(h, x, adjoint(H, h, basis_vec(x)));
  V.action = a.build();
  V.coaction = H.coalgebra.comult;
  return V;
}

// H with the regular action and the left adjoint coaction rho(h) = sum h1 S(h3) (x) h2.
inline YDModule adjoint_coaction_module(std::shared_ptr<const HopfSC> Hp) {
  const HopfSC& H = *Hp;
  const std::size_t n = H.dim();
  const Mat& S = H.S();
  YDModule V;
  V.base = Hp;
  V.dim = n;
  V.labels = H.labels;
  V.action = H.algebra.mult;
  Tensor3::Builder c(n, n, n);
  for (std::size_t h = 0; h < n; ++h)
    for (const auto& t : comult2(H.coalgebra, h))
      for (const auto& [p, x] : multiply(H.algebra, basis_vec(t.a), S.column(t.c))) c.add(h, p, t.b, t.v * x);
  V.coaction = c.build();
  return V;
}

}  // namespace hopfforge
