#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfforge/linalg.hpp"

namespace hopfforge {

struct AlgebraSC {
  std::size_t dim = 0;
  Tensor3 mult;  // e_i e_j = sum_k mult[i,j,k] e_k
  SparseVec unit;
};

struct CoalgebraSC {
  std::size_t dim = 0;
  Tensor3 comult;  // Delta e_k = sum comult[k,i,j] e_i (x) e_j
  Vec counit;
};

struct HopfFlags {
  bool finite_dim = true;
  bool cosemisimple = false;
};

// A bialgebra presentation; it is a Hopf algebra once `antipode` is set and verified.
struct HopfSC {
  std::string name;
  std::vector<std::string> labels;
  AlgebraSC algebra;
  CoalgebraSC coalgebra;
  std::optional<Mat> antipode;
  std::map<std::string, SparseVec> grouplikes;
  std::map<std::string, Vec> characters;
  HopfFlags flags;

  std::size_t dim() const { return algebra.dim; }
  std::string label(std::size_t i) const { return i < labels.size() ? labels[i] : "e" + std::to_string(i); }
  const Mat& S() const {
    if (!antipode) throw Error(ErrorCode::NotABialgebra, name + " has no antipode");
    return *antipode;
  }
};
using BialgebraSC = HopfSC;

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back("e" + std::to_string(i));
  return l;
}

struct CheckItem {
  std::string name;
  bool passed = true;
  bool informative = false;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;
  std::string note;
};

class CheckReport {
 public:
  CheckItem& item(const std::string& name, bool informative = false) {
    for (auto& it : items_)
      if (it.name == name) return it;
    items_.push_back(CheckItem{name, true, informative, 0, {}, {}});
    return items_.back();
  }
  void pass(const std::string& name, bool informative = false) { item(name, informative); }
  void fail(const std::string& name, const std::string& witness, bool informative = false) {
    CheckItem& it = item(name, informative);
    it.passed = false;
    ++it.violations;
    it.witnesses.push_back(witness);
  }
  void record(const std::string& name, bool ok, const std::string& witness = {}, bool informative = false) {
    if (ok)
      pass(name, informative);
    else
      fail(name, witness, informative);
  }

  bool ok() const {
    for (const auto& it : items_)
      if (!it.informative && !it.passed) return false;
    return true;
  }
  bool passed(const std::string& name) const {
    const CheckItem* it = find(name);
    return it && it->passed;
  }
  const CheckItem* find(const std::string& name) const {
    for (const auto& it : items_)
      if (it.name == name) return &it;
    return nullptr;
  }
  const std::vector<CheckItem>& items() const { return items_; }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& it : items_)
      if (!it.informative && !it.passed) out.push_back(it.name);
    return out;
  }
  void merge(const CheckReport& other, const std::string& prefix = {}) {
    for (const auto& it : other.items_) {
      CheckItem& mine = item(prefix + it.name, it.informative);
      mine.passed = mine.passed && it.passed;
      mine.violations += it.violations;
      mine.witnesses.insert(mine.witnesses.end(), it.witnesses.begin(), it.witnesses.end());
      if (!it.note.empty()) mine.note = it.note;
    }
  }
  std::string summary(std::size_t max_witnesses = 5) const {
    std::ostringstream os;
    for (const auto& it : items_) {
      os << (it.passed ? "PASS " : (it.informative ? "NO   " : "FAIL ")) << it.name;
      if (!it.passed) {
        os << " (" << it.violations << " violations";
        for (std::size_t w = 0; w < std::min(max_witnesses, it.witnesses.size()); ++w) os << "; " << it.witnesses[w];
        os << ")";
      }
      if (!it.note.empty()) os << " [" << it.note << "]";
      os << "\n";
    }
    return os.str();
  }

 private:
  std::vector<CheckItem> items_;
};

inline std::string witness(const std::vector<std::string>& labels, std::initializer_list<std::size_t> idx) {
  std::string s = "(";
  bool first = true;
  for (std::size_t i : idx) {
    if (!first) s += ",";
    first = false;
    s += i < labels.size() ? labels[i] : std::to_string(i);
  }
  return s + ")";
}

// ---- element arithmetic -------------------------------------------------

inline SparseVec basis_vec(std::size_t i) { return SparseVec::unit(i); }

inline SparseVec multiply(const AlgebraSC& A, const SparseVec& x, const SparseVec& y) {
  Accum acc;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      Cyc ab = a * b;
      for (const auto& e : A.mult.fiber(i, j)) acc.add(e.k, e.v * ab);
    }
  return acc.finish();
}

inline SparseVec multiply(const AlgebraSC& A, std::size_t i, std::size_t j) { return A.mult.fiber_vec(i, j); }

inline SparseVec comultiply(const CoalgebraSC& C, const SparseVec& x) {
  const std::size_t n = C.dim;
  Accum acc;
  for (const auto& [k, a] : x)
    for (const auto& e : C.comult.slice(k)) acc.add(e.j * n + e.k, e.v * a);
  return acc.finish();
}

inline SparseVec comultiply(const CoalgebraSC& C, std::size_t k) { return C.comult.slice_vec(k); }

inline Cyc evaluate(const Vec& covector, const SparseVec& x) {
  Cyc s(0);
  for (const auto& [i, a] : x)
    if (!covector[i].is_zero()) s += covector[i] * a;
  return s;
}

inline SparseVec apply(const Mat& f, const SparseVec& x) { return f.apply(x); }

// (f (x) g) applied to an element of V1 (x) V2 with dim(V2) = n2; result lives in W1 (x) W2.
inline SparseVec apply_tensor(const Mat& f, const Mat& g, const SparseVec& x, std::size_t n2) {
  Accum acc;
  const std::size_t m2 = g.rows();
  for (const auto& [idx, a] : x) {
    SparseVec fi = f.column(idx / n2), gj = g.column(idx % n2);
    for (const auto& [p, b] : fi)
      for (const auto& [q, c] : gj) acc.add(p * m2 + q, a * b * c);
  }
  return acc.finish();
}

// Product in A (x) B, factorwise.
inline SparseVec multiply_tensor(const AlgebraSC& A, const AlgebraSC& B, const SparseVec& x, const SparseVec& y) {
  const std::size_t nb = B.dim;
  Accum acc;
  for (const auto& [p, a] : x)
    for (const auto& [q, b] : y) {
      Cyc ab = a * b;
      auto left = A.mult.fiber(p / nb, q / nb);
      auto right = B.mult.fiber(p % nb, q % nb);
      for (const auto& l : left)
        for (const auto& r : right) acc.add(l.k * nb + r.k, ab * l.v * r.v);
    }
  return acc.finish();
}

inline SparseVec unit_tensor(const SparseVec& u1, const SparseVec& u2, std::size_t n2) { return kron(u1, u2, n2); }

// ---- checks -------------------------------------------------------------

inline CheckReport check_algebra(const AlgebraSC& A, const std::vector<std::string>& labels = {}) {
  CheckReport rep;
  const std::size_t n = A.dim;
  rep.pass("associativity");
  rep.pass("unit");
  if (A.mult.n1() != n || A.mult.n2() != n || A.mult.n3() != n) {
    rep.fail("shape", "mult tensor shape");
    return rep;
  }
  std::vector<std::vector<SparseVec>> prod(n, std::vector<SparseVec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i][j] = A.mult.fiber_vec(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        SparseVec lhs = multiply(A, prod[i][j], basis_vec(k));
        SparseVec rhs = multiply(A, basis_vec(i), prod[j][k]);
        if (lhs != rhs) rep.fail("associativity", witness(labels, {i, j, k}));
      }
  for (std::size_t i = 0; i < n; ++i) {
    if (multiply(A, basis_vec(i), A.unit) != basis_vec(i)) rep.fail("unit", witness(labels, {i}) + " right");
    if (multiply(A, A.unit, basis_vec(i)) != basis_vec(i)) rep.fail("unit", witness(labels, {i}) + " left");
  }
  return rep;
}

inline CheckReport check_coalgebra(const CoalgebraSC& C, const std::vector<std::string>& labels = {}) {
  CheckReport rep;
  const std::size_t n = C.dim;
  rep.pass("coassociativity");
  rep.pass("counit");
  if (C.comult.n1() != n || C.comult.n2() != n || C.comult.n3() != n || C.counit.size() != n) {
    rep.fail("shape", "comult tensor shape");
    return rep;
  }
  for (std::size_t k = 0; k < n; ++k) {
    Accum left, right;
    Vec rl = zero_vec(n), rr = zero_vec(n);
    for (const auto& e : C.comult.slice(k)) {
      for (const auto& f : C.comult.slice(e.j)) left.add((f.j * n + f.k) * n + e.k, e.v * f.v);
      for (const auto& f : C.comult.slice(e.k)) right.add((e.j * n + f.j) * n + f.k, e.v * f.v);
      rl[e.k] += C.counit[e.j] * e.v;
      rr[e.j] += C.counit[e.k] * e.v;
    }
    if (left.finish() != right.finish()) rep.fail("coassociativity", witness(labels, {k}));
    if (rl != unit_vec(n, k)) rep.fail("counit", witness(labels, {k}) + " left");
    if (rr != unit_vec(n, k)) rep.fail("counit", witness(labels, {k}) + " right");
  }
  return rep;
}

inline CheckReport check_bialgebra(const HopfSC& B) {
  CheckReport rep = check_algebra(B.algebra, B.labels);
  rep.merge(check_coalgebra(B.coalgebra, B.labels));
  const std::size_t n = B.dim();
  rep.pass("comult_multiplicative");
  rep.pass("counit_multiplicative");
  rep.pass("unit_coalgebra_map");
  if (B.coalgebra.dim != n) {
    rep.fail("shape", "algebra and coalgebra carriers differ");
    return rep;
  }
  std::vector<SparseVec> delta(n);
  for (std::size_t i = 0; i < n; ++i) delta[i] = comultiply(B.coalgebra, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec p = multiply(B.algebra, i, j);
      if (comultiply(B.coalgebra, p) != multiply_tensor(B.algebra, B.algebra, delta[i], delta[j]))
        rep.fail("comult_multiplicative", witness(B.labels, {i, j}));
      if (evaluate(B.coalgebra.counit, p) != B.coalgebra.counit[i] * B.coalgebra.counit[j])
        rep.fail("counit_multiplicative", witness(B.labels, {i, j}));
    }
  if (comultiply(B.coalgebra, B.algebra.unit) != kron(B.algebra.unit, B.algebra.unit, n))
    rep.fail("unit_coalgebra_map", "Delta(1)");
  if (evaluate(B.coalgebra.counit, B.algebra.unit) != Cyc(1)) rep.fail("unit_coalgebra_map", "eps(1)");
  return rep;
}

// f * g = m (f (x) g) Delta on the basis of C.
inline Mat convolution(const Mat& f, const Mat& g, const CoalgebraSC& C, const AlgebraSC& A) {
  if (f.cols() != C.dim || g.cols() != C.dim || f.rows() != A.dim || g.rows() != A.dim)
    throw Error(ErrorCode::ShapeMismatch, "convolution shapes");
  std::vector<SparseVec> fc(C.dim), gc(C.dim);
  for (std::size_t i = 0; i < C.dim; ++i) {
    fc[i] = f.column(i);
    gc[i] = g.column(i);
  }
  std::vector<SparseVec> cols(C.dim);
  for (std::size_t k = 0; k < C.dim; ++k) {
    Accum acc;
    for (const auto& e : C.comult.slice(k)) acc.add(multiply(A, fc[e.j], gc[e.k]), e.v);
    cols[k] = acc.finish();
  }
  return Mat::from_columns(A.dim, cols);
}

// Convolution of covectors (characters live here).
inline Vec convolve_covectors(const Vec& a, const Vec& b, const CoalgebraSC& C) {
  Vec out = zero_vec(C.dim);
  for (const auto& e : C.comult.entries())
    if (!a[e.j].is_zero() && !b[e.k].is_zero()) out[e.i] += e.v * a[e.j] * b[e.k];
  return out;
}

inline Vec convolution_power(const Vec& chi, long n, const CoalgebraSC& C) {
  Vec out = C.counit;
  for (long i = 0; i < n; ++i) out = convolve_covectors(out, chi, C);
  return out;
}

inline Mat unit_counit(const HopfSC& H) {
  Mat m(H.dim(), H.dim());
  for (std::size_t j = 0; j < H.dim(); ++j)
    for (const auto& [i, u] : H.algebra.unit) m(i, j) = u * H.coalgebra.counit[j];
  return m;
}

inline CheckReport check_hopf(const HopfSC& H) {
  CheckReport rep = check_bialgebra(H);
  if (!H.antipode) {
    rep.fail("antipode", "missing");
    return rep;
  }
  Mat ue = unit_counit(H), id = Mat::identity(H.dim());
  Mat left = convolution(*H.antipode, id, H.coalgebra, H.algebra);
  Mat right = convolution(id, *H.antipode, H.coalgebra, H.algebra);
  rep.pass("antipode");
  for (std::size_t k = 0; k < H.dim(); ++k) {
    if (left.column(k) != ue.column(k)) rep.fail("antipode", witness(H.labels, {k}) + " S*id");
    if (right.column(k) != ue.column(k)) rep.fail("antipode", witness(H.labels, {k}) + " id*S");
  }
  return rep;
}

// Solves id * S = u eps (and then S * id = u eps) for S; unknown l-th coordinate of S(e_j) sits at j*n + l.
inline std::optional<Mat> compute_antipode(const HopfSC& B, bool precheck = true) {
  if (precheck) {
    CheckReport rep = check_bialgebra(B);
    if (!rep.ok()) throw Error(ErrorCode::NotABialgebra, "bialgebra checks fail: " + rep.failures().front());
  }
  const std::size_t n = B.dim();
  const std::size_t unknowns = n * n;
  Echelon ech(unknowns, true);
  auto feed = [&](bool right) {
    for (std::size_t k = 0; k < n; ++k) {
      std::map<std::size_t, Accum> rows;
      for (const auto& e : B.coalgebra.comult.slice(k)) {
        for (std::size_t l = 0; l < n; ++l) {
          // right: e_i S(e_j), unknown (j,l) meets mult[i,l,t]; left: S(e_i) e_j, unknown (i,l) meets mult[l,j,t].
          auto fib = right ? B.algebra.mult.fiber(e.j, l) : B.algebra.mult.fiber(l, e.k);
          std::size_t unk = (right ? e.k : e.j) * n + l;
          for (const auto& m : fib) rows[m.k].add(unk, e.v * m.v);
        }
      }
      const Cyc eps = B.coalgebra.counit[k];
      if (!eps.is_zero())
        for (const auto& [t, u] : B.algebra.unit) rows[t].add(unknowns, eps * u);
      for (auto& [t, acc] : rows) {
        SparseVec r = acc.finish();
        if (!r.empty() && ech.add_row(r) == Echelon::Outcome::Inconsistent) return false;
      }
    }
    return true;
  };
  if (!feed(true) || !feed(false)) return std::nullopt;
  auto sol = ech.solution();
  if (!sol) return std::nullopt;
  Mat S(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) S(l, j) = (*sol)[j * n + l];
  Mat ue = unit_counit(B), id = Mat::identity(n);
  if (convolution(S, id, B.coalgebra, B.algebra) != ue || convolution(id, S, B.coalgebra, B.algebra) != ue)
    return std::nullopt;
  return S;
}

inline bool verify_group_like(const CoalgebraSC& C, const SparseVec& c) {
  return comultiply(C, c) == kron(c, c, C.dim) && evaluate(C.counit, c) == Cyc(1);
}
inline bool verify_group_like(const HopfSC& H, const SparseVec& c) { return verify_group_like(H.coalgebra, c); }

inline bool verify_character(const AlgebraSC& A, const Vec& chi) {
  if (chi.size() != A.dim) return false;
  if (evaluate(chi, A.unit) != Cyc(1)) return false;
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = 0; j < A.dim; ++j)
      if (evaluate(chi, multiply(A, i, j)) != chi[i] * chi[j]) return false;
  return true;
}
inline bool verify_character(const HopfSC& H, const Vec& chi) { return verify_character(H.algebra, chi); }

// phi(h) = sum chi(h1) h2, psi(h) = sum h1 chi(h2).
inline Mat phi_map(const HopfSC& H, const Vec& chi) {
  Mat m(H.dim(), H.dim());
  for (const auto& e : H.coalgebra.comult.entries())
    if (!chi[e.j].is_zero()) m(e.k, e.i) += chi[e.j] * e.v;
  return m;
}
inline Mat psi_map(const HopfSC& H, const Vec& chi) {
  Mat m(H.dim(), H.dim());
  for (const auto& e : H.coalgebra.comult.entries())
    if (!chi[e.k].is_zero()) m(e.j, e.i) += chi[e.k] * e.v;
  return m;
}
inline Mat phi_power(const HopfSC& H, const Vec& chi, unsigned c) { return phi_map(H, chi).pow(c); }
inline Mat psi_power(const HopfSC& H, const Vec& chi, unsigned c) { return psi_map(H, chi).pow(c); }

// Left adjoint action sum h1 x S(h2) of a basis element.
inline SparseVec adjoint(const HopfSC& H, std::size_t h, const SparseVec& x) {
  const Mat& S = H.S();
  Accum acc;
  for (const auto& e : H.coalgebra.comult.slice(h))
    acc.add(multiply(H.algebra, multiply(H.algebra, basis_vec(e.j), x), S.column(e.k)), e.v);
  return acc.finish();
}

inline SparseVec adjoint(const HopfSC& H, const SparseVec& h, const SparseVec& x) {
  Accum acc;
  for (const auto& [i, a] : h) acc.add(adjoint(H, i, x), a);
  return acc.finish();
}

inline bool is_group_algebra(const HopfSC& H) {
  const std::size_t n = H.dim();
  if (H.algebra.unit.size() != 1 || !H.algebra.unit.front().second.is_one()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!verify_group_like(H.coalgebra, basis_vec(i))) return false;
    for (std::size_t j = 0; j < n; ++j) {
      auto f = H.algebra.mult.fiber(i, j);
      if (f.size() != 1 || !f.front().v.is_one()) return false;
    }
  }
  return true;
}

// Checks the three defining conditions of an ad-invariant integral on all basis tuples.
inline CheckReport check_ad_integral(const HopfSC& H, const Vec& gamma) {
  CheckReport rep;
  const std::size_t n = H.dim();
  rep.pass("left_integral");
  rep.pass("normalized");
  rep.pass("ad_invariant");
  if (gamma.size() != n) {
    rep.fail("normalized", "length");
    return rep;
  }
  for (std::size_t h = 0; h < n; ++h) {
    Accum acc;
    for (const auto& e : H.coalgebra.comult.slice(h))
      if (!gamma[e.k].is_zero()) acc.add(e.j, e.v * gamma[e.k]);
    SparseVec lhs = acc.finish();
    SparseVec rhs = gamma[h] * H.algebra.unit;
    if (lhs != rhs) rep.fail("left_integral", witness(H.labels, {h}));
  }
  if (evaluate(gamma, H.algebra.unit) != Cyc(1)) rep.fail("normalized", "gamma(1)");
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t x = 0; x < n; ++x)
      if (evaluate(gamma, adjoint(H, h, basis_vec(x))) != H.coalgebra.counit[h] * gamma[x])
        rep.fail("ad_invariant", witness(H.labels, {h, x}));
  return rep;
}

inline bool verify_ad_integral(const HopfSC& H, const Vec& gamma) { return check_ad_integral(H, gamma).ok(); }

// The dual-basis functional at the identity of a group algebra.
inline Vec group_algebra_integral(const HopfSC& H) {
  if (!is_group_algebra(H)) throw Error(ErrorCode::NotGroupAlgebra, H.name + " is not a group algebra presentation");
  Vec gamma = zero_vec(H.dim());
  gamma[H.algebra.unit.front().first] = Cyc(1);
  return gamma;
}

// Solutions of Delta c = c (x) h + g (x) c.
inline Subspace skew_primitives(const CoalgebraSC& C, const SparseVec& g, const SparseVec& h) {
  if (!verify_group_like(C, g) || !verify_group_like(C, h))
    throw Error(ErrorCode::NotGroupLike, "skew_primitives needs group-like g and h");
  const std::size_t n = C.dim;
  std::vector<SparseVec> images(n);
  for (std::size_t k = 0; k < n; ++k) {
    SparseVec v = comultiply(C, k);
    v.axpy(Cyc(-1), kron(basis_vec(k), h, n));
    v.axpy(Cyc(-1), kron(g, basis_vec(k), n));
    images[k] = std::move(v);
  }
  return kernel_of_columns(n, n * n, images);
}

inline Subspace primitives(const HopfSC& H) {
  return skew_primitives(H.coalgebra, H.algebra.unit, H.algebra.unit);
}

// Delta^{-1}(U (x) C + C (x) W).
inline Subspace wedge(const CoalgebraSC& C, const Subspace& U, const Subspace& W) {
  const std::size_t n = C.dim;
  QuotientMap qu(U), qw(W);
  std::vector<SparseVec> iu(n), iw(n);
  for (std::size_t i = 0; i < n; ++i) {
    iu[i] = qu.image_of_basis(i);
    iw[i] = qw.image_of_basis(i);
  }
  const std::size_t m2 = qw.dim();
  std::vector<SparseVec> images(n);
  for (std::size_t k = 0; k < n; ++k) {
    Accum acc;
    for (const auto& e : C.comult.slice(k))
      for (const auto& [p, a] : iu[e.j])
        for (const auto& [q, b] : iw[e.k]) acc.add(p * m2 + q, e.v * a * b);
    images[k] = acc.finish();
  }
  return kernel_of_columns(n, qu.dim() * m2, images);
}

struct Filtration {
  std::vector<Subspace> layers;
  bool exhausts = false;

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& l : layers) d.push_back(l.dim());
    return d;
  }
};

// F_{n+1} = F_n wedge F_0 until stationary.
inline Filtration filtration_from(const CoalgebraSC& C, const Subspace& F0) {
  Filtration f;
  f.layers.push_back(F0);
  while (true) {
    Subspace next = wedge(C, f.layers.back(), F0);
    if (next.dim() <= f.layers.back().dim()) break;
    f.layers.push_back(std::move(next));
  }
  f.exhausts = f.layers.back().dim() == C.dim;
  return f;
}

// Both sides of the commutation identity: chi^n(h) z = sum h1 z S(h2) and h z = z phi^n(h), over all basis h.
struct KaplanskySides {
  bool adjoint_side = true;
  bool commutation_side = true;
};

inline KaplanskySides kaplansky_sides(const HopfSC& H, const Vec& chi, const SparseVec& z, unsigned n) {
  KaplanskySides out;
  Vec chin = convolution_power(chi, n, H.coalgebra);
  Mat phin = phi_power(H, chi, n);
  for (std::size_t h = 0; h < H.dim(); ++h) {
    if (adjoint(H, h, z) != chin[h] * z) out.adjoint_side = false;
    if (multiply(H.algebra, basis_vec(h), z) != multiply(H.algebra, z, phin.column(h))) out.commutation_side = false;
  }
  return out;
}

inline SparseVec power(const AlgebraSC& A, const SparseVec& x, unsigned e) {
  SparseVec r = A.unit;
  for (unsigned i = 0; i < e; ++i) r = multiply(A, r, x);
  return r;
}

inline std::string format_element(const SparseVec& v, const std::vector<std::string>& labels, int conductor) {
  if (v.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [i, c] : v) {
    std::string lab = i < labels.size() ? labels[i] : "e" + std::to_string(i);
    std::string coef = c.format(std::lcm(conductor, c.conductor()));
    bool neg = c.is_rational() && coef[0] == '-';
    if (neg) coef.erase(0, 1);
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (coef == "1")
      s += lab;
    else if (c.is_rational())
      s += coef + "*" + lab;
    else
      s += "(" + coef + ")*" + lab;
  }
  return s;
}

// Group algebra of Z/n_1 x ... x Z/n_r with mixed-radix basis (first factor most significant).
inline HopfSC abelian_group_algebra(const std::vector<int>& orders, std::vector<std::string> gens = {}) {
  if (orders.empty()) throw Error(ErrorCode::ShapeMismatch, "need at least one cyclic factor");
  if (gens.empty()) {
    if (orders.size() == 1)
      gens = {"g"};
    else
      for (std::size_t i = 0; i < orders.size(); ++i) gens.push_back(std::string(1, static_cast<char>('a' + i)));
  }
  std::size_t n = 1;
  for (int o : orders) n *= static_cast<std::size_t>(o);
  auto digits = [&](std::size_t idx) {
    std::vector<int> d(orders.size());
    for (std::size_t f = orders.size(); f-- > 0;) {
      d[f] = static_cast<int>(idx % static_cast<std::size_t>(orders[f]));
      idx /= static_cast<std::size_t>(orders[f]);
    }
    return d;
  };
  auto index = [&](const std::vector<int>& d) {
    std::size_t idx = 0;
    for (std::size_t f = 0; f < orders.size(); ++f) idx = idx * static_cast<std::size_t>(orders[f]) + static_cast<std::size_t>(d[f]);
    return idx;
  };
  HopfSC H;
  H.name = "KC";
  for (int o : orders) H.name += "_" + std::to_string(o);
  for (std::size_t i = 0; i < n; ++i) {
    auto d = digits(i);
    std::string lab;
    for (std::size_t f = 0; f < d.size(); ++f) {
      if (d[f] == 0) continue;
      lab += gens[f];
      if (d[f] > 1) lab += "^" + std::to_string(d[f]);
    }
    H.labels.push_back(lab.empty() ? "1" : lab);
  }
  Tensor3::Builder mb(n, n, n), cb(n, n, n);
  Mat S(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto a = digits(i);
    std::vector<int> inv(a.size());
    for (std::size_t f = 0; f < a.size(); ++f) inv[f] = (orders[f] - a[f]) % orders[f];
    S(index(inv), i) = Cyc(1);
    cb.add(i, i, i, Cyc(1));
    for (std::size_t j = 0; j < n; ++j) {
      auto b = digits(j);
      std::vector<int> c(a.size());
      for (std::size_t f = 0; f < a.size(); ++f) c[f] = (a[f] + b[f]) % orders[f];
      mb.add(i, j, index(c), Cyc(1));
    }
  }
  H.algebra = AlgebraSC{n, mb.build(), basis_vec(0)};
  H.coalgebra = CoalgebraSC{n, cb.build(), Vec(n, Cyc(1))};
  H.antipode = S;
  H.flags.cosemisimple = true;
  for (std::size_t f = 0; f < orders.size(); ++f) {
    std::vector<int> d(orders.size(), 0);
    if (orders[f] > 1) d[f] = 1;
    H.grouplikes[gens[f]] = basis_vec(index(d));
  }
  return H;
}

inline HopfSC cyclic_group_algebra(int n) { return abelian_group_algebra({n}); }

// Character of a cyclic group algebra sending the generator to `value`.
inline Vec cyclic_character(std::size_t n, const Cyc& value) {
  Vec chi(n);
  for (std::size_t i = 0; i < n; ++i) chi[i] = value.pow(static_cast<long>(i));
  return chi;
}

}  // namespace hopfforge
