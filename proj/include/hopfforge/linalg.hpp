#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hopfforge/error.hpp"
#include "hopfforge/exactfield.hpp"

namespace hopfforge {

using Vec = std::vector<Cyc>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Cyc(0)); }
inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v.at(i) = Cyc(1);
  return v;
}
inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Cyc& c) { return c.is_zero(); });
}

// Sorted sparse vector without explicit zeros.
class SparseVec {
 public:
  using Term = std::pair<std::size_t, Cyc>;

  SparseVec() = default;
  static SparseVec unit(std::size_t i, Cyc c = Cyc(1)) {
    SparseVec v;
    if (!c.is_zero()) v.t_.emplace_back(i, std::move(c));
    return v;
  }
  static SparseVec from_dense(const Vec& d) {
    SparseVec v;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (!d[i].is_zero()) v.t_.emplace_back(i, d[i]);
    return v;
  }
  // Terms need not be sorted or unique.
  static SparseVec from_terms(std::vector<Term> terms);

  Vec dense(std::size_t n) const {
    Vec d = zero_vec(n);
    for (const auto& [i, c] : t_) d.at(i) = c;
    return d;
  }

  const std::vector<Term>& terms() const { return t_; }
  std::vector<Term>& mutable_terms() { return t_; }
  bool empty() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  auto begin() const { return t_.begin(); }
  auto end() const { return t_.end(); }
  const Term& front() const { return t_.front(); }

  Cyc get(std::size_t i) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), i, [](const Term& t, std::size_t k) { return t.first < k; });
    if (it != t_.end() && it->first == i) return it->second;
    return Cyc(0);
  }

  void scale(const Cyc& c) {
    if (c.is_zero()) {
      t_.clear();
      return;
    }
    for (auto& term : t_) term.second = term.second * c;
  }

  // this += a * x
  void axpy(const Cyc& a, const SparseVec& x) {
    if (a.is_zero() || x.empty()) return;
    std::vector<Term> out;
    out.reserve(t_.size() + x.t_.size());
    auto p = t_.begin();
    auto q = x.t_.begin();
    while (p != t_.end() || q != x.t_.end()) {
      if (q == x.t_.end() || (p != t_.end() && p->first < q->first)) {
        out.push_back(std::move(*p++));
      } else if (p == t_.end() || q->first < p->first) {
        out.emplace_back(q->first, a * q->second);
        ++q;
      } else {
        Cyc v = p->second + a * q->second;
        if (!v.is_zero()) out.emplace_back(p->first, std::move(v));
        ++p;
        ++q;
      }
    }
    t_ = std::move(out);
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
      if (a.t_[i].first != b.t_[i].first || a.t_[i].second != b.t_[i].second) return false;
    return true;
  }
  friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) {
    a.axpy(Cyc(1), b);
    return a;
  }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) {
    a.axpy(Cyc(-1), b);
    return a;
  }
  friend SparseVec operator*(const Cyc& c, SparseVec a) {
    a.scale(c);
    return a;
  }

 private:
  std::vector<Term> t_;
};

// Hash-based accumulator used while building sums of many terms.
class Accum {
 public:
  void add(std::size_t i, const Cyc& c) {
    if (c.is_zero()) return;
    auto it = m_.find(i);
    if (it == m_.end())
      m_.emplace(i, c);
    else
      it->second += c;
  }
  void add(const SparseVec& v, const Cyc& scale = Cyc(1)) {
    if (scale.is_zero()) return;
    for (const auto& [i, c] : v) add(i, scale.is_one() ? c : c * scale);
  }
  SparseVec finish() {
    std::vector<SparseVec::Term> terms;
    terms.reserve(m_.size());
    for (auto& [i, c] : m_)
      if (!c.is_zero()) terms.emplace_back(i, std::move(c));
    m_.clear();
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec v;
    v.mutable_terms() = std::move(terms);
    return v;
  }

 private:
  std::unordered_map<std::size_t, Cyc> m_;
};

inline SparseVec SparseVec::from_terms(std::vector<Term> terms) {
  Accum acc;
  for (auto& [i, c] : terms) acc.add(i, c);
  return acc.finish();
}

// Kronecker product of sparse vectors; index i * n2 + j.
inline SparseVec kron(const SparseVec& a, const SparseVec& b, std::size_t n2) {
  SparseVec out;
  auto& t = out.mutable_terms();
  t.reserve(a.size() * b.size());
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) t.emplace_back(i * n2 + j, x * y);
  return out;
}

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Cyc(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Cyc(1);
    return m;
  }
  static Mat from_columns(std::size_t rows, const std::vector<SparseVec>& cols) {
    Mat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [i, c] : cols[j]) m(i, j) = c;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Cyc& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Cyc& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  SparseVec column(std::size_t j) const {
    SparseVec v;
    for (std::size_t i = 0; i < r_; ++i)
      if (!(*this)(i, j).is_zero()) v.mutable_terms().emplace_back(i, (*this)(i, j));
    return v;
  }
  SparseVec row(std::size_t i) const {
    SparseVec v;
    for (std::size_t j = 0; j < c_; ++j)
      if (!(*this)(i, j).is_zero()) v.mutable_terms().emplace_back(j, (*this)(i, j));
    return v;
  }

  SparseVec apply(const SparseVec& v) const {
    Accum acc;
    for (const auto& [j, x] : v) {
      if (j >= c_) throw Error(ErrorCode::ShapeMismatch, "vector index out of range");
      for (std::size_t i = 0; i < r_; ++i)
        if (!(*this)(i, j).is_zero()) acc.add(i, (*this)(i, j) * x);
    }
    return acc.finish();
  }
  Vec apply(const Vec& v) const {
    if (v.size() != c_) throw Error(ErrorCode::ShapeMismatch, "Mat::apply dimension");
    return apply(SparseVec::from_dense(v)).dense(r_);
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw Error(ErrorCode::ShapeMismatch, "matrix product");
    Mat m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const Cyc& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.c_; ++j)
          if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend Mat operator+(Mat a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw Error(ErrorCode::ShapeMismatch, "matrix sum");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Mat operator-(Mat a, const Mat& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw Error(ErrorCode::ShapeMismatch, "matrix difference");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend Mat operator*(const Cyc& c, Mat a) {
    for (auto& x : a.a_) x *= c;
    return a;
  }
  friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  Mat transpose() const {
    Mat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat pow(unsigned e) const {
    if (r_ != c_) throw Error(ErrorCode::ShapeMismatch, "pow of non-square matrix");
    Mat result = identity(r_), base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Cyc> a_;
};

// f (x) g on the Kronecker ordering: (f(x)g)(e_i (x) e_j) = f(e_i) (x) g(e_j), index i * dim2 + j.
inline Mat map_tensor_product(const Mat& f, const Mat& g) {
  Mat m(f.rows() * g.rows(), f.cols() * g.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      if (f(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < g.rows(); ++k)
        for (std::size_t l = 0; l < g.cols(); ++l)
          if (!g(k, l).is_zero()) m(i * g.rows() + k, j * g.cols() + l) = f(i, j) * g(k, l);
    }
  return m;
}

// Incremental reduced row echelon form. Column `ncols` is the optional right-hand side.
class Echelon {
 public:
  enum class Outcome { Independent, Dependent, Inconsistent };

  explicit Echelon(std::size_t ncols, bool augmented = false)
      : n_(ncols), aug_(augmented), row_of_pivot_(ncols, npos), occ_(ncols + (augmented ? 1 : 0)) {}

  std::size_t ncols() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  bool consistent() const { return consistent_; }

  SparseVec reduce(SparseVec v) const {
    std::vector<std::pair<std::size_t, Cyc>> hits;
    for (const auto& [c, x] : v)
      if (c < n_ && row_of_pivot_[c] != npos) hits.emplace_back(row_of_pivot_[c], x);
    for (const auto& [r, x] : hits) v.axpy(-x, rows_[r]);
    return v;
  }

  Outcome add_row(const SparseVec& row) {
    SparseVec v = reduce(row);
    if (v.empty()) return Outcome::Dependent;
    if (v.front().first >= n_) {
      consistent_ = false;
      return Outcome::Inconsistent;
    }
    const std::size_t p = v.front().first;
    v.scale(v.front().second.inv());
    const std::size_t idx = rows_.size();
    for (std::size_t r : occ_[p]) {
      if (r == idx) continue;
      SparseVec& other = rows_[r];
      Cyc x = other.get(p);
      if (x.is_zero()) continue;
      std::size_t before = other.size();
      std::vector<std::size_t> old_cols;
      old_cols.reserve(before);
      for (const auto& t : other) old_cols.push_back(t.first);
      other.axpy(-x, v);
      for (const auto& t : other)
        if (!std::binary_search(old_cols.begin(), old_cols.end(), t.first)) occ_[t.first].push_back(r);
    }
    for (const auto& t : v) occ_[t.first].push_back(idx);
    row_of_pivot_[p] = idx;
    pivot_of_row_.push_back(p);
    rows_.push_back(std::move(v));
    return Outcome::Independent;
  }

  const std::vector<SparseVec>& rows() const { return rows_; }
  std::size_t pivot_of_row(std::size_t r) const { return pivot_of_row_[r]; }
  bool is_pivot(std::size_t c) const { return row_of_pivot_[c] != npos; }
  const SparseVec& pivot_row(std::size_t c) const { return rows_[row_of_pivot_[c]]; }

  // One particular solution with free unknowns set to zero.
  std::optional<Vec> solution() const {
    if (!consistent_) return std::nullopt;
    Vec x = zero_vec(n_);
    for (std::size_t r = 0; r < rows_.size(); ++r) x[pivot_of_row_[r]] = rows_[r].get(n_);
    return x;
  }

  std::vector<SparseVec> kernel_basis() const {
    std::vector<SparseVec> basis;
    for (std::size_t f = 0; f < n_; ++f) {
      if (is_pivot(f)) continue;
      Accum acc;
      acc.add(f, Cyc(1));
      std::vector<std::size_t> touching = occ_[f];
      std::sort(touching.begin(), touching.end());
      touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
      for (std::size_t r : touching) {
        Cyc x = rows_[r].get(f);
        if (!x.is_zero()) acc.add(pivot_of_row_[r], -x);
      }
      basis.push_back(acc.finish());
    }
    return basis;
  }

  // Rows in ascending pivot order.
  std::vector<SparseVec> sorted_rows() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_of_row_[a] < pivot_of_row_[b]; });
    std::vector<SparseVec> out;
    out.reserve(order.size());
    for (std::size_t i : order) out.push_back(rows_[i]);
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t n_;
  bool aug_;
  bool consistent_ = true;
  std::vector<SparseVec> rows_;
  std::vector<std::size_t> pivot_of_row_;
  std::vector<std::size_t> row_of_pivot_;
  std::vector<std::vector<std::size_t>> occ_;
};

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : n_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<SparseVec>& vectors) {
    Echelon e(ambient);
    for (const auto& v : vectors) {
      if (!v.empty() && v.terms().back().first >= ambient)
        throw Error(ErrorCode::ShapeMismatch, "vector outside ambient space");
      e.add_row(v);
    }
    Subspace s(ambient);
    s.rows_ = e.sorted_rows();
    return s;
  }
  static Subspace span(std::size_t ambient, const std::vector<Vec>& vectors) {
    std::vector<SparseVec> sv;
    for (const auto& v : vectors) {
      if (v.size() != ambient) throw Error(ErrorCode::ShapeMismatch, "vector outside ambient space");
      sv.push_back(SparseVec::from_dense(v));
    }
    return span(ambient, sv);
  }
  static Subspace full(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.rows_.push_back(SparseVec::unit(i));
    return s;
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<SparseVec>& basis() const { return rows_; }
  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (const auto& r : rows_) p.push_back(r.front().first);
    return p;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  bool contains(const Vec& v) const { return contains(SparseVec::from_dense(v)); }

  // Remainder of v after clearing the pivot columns.
  SparseVec reduce(SparseVec v) const {
    for (const auto& r : rows_) {
      Cyc x = v.get(r.front().first);
      if (!x.is_zero()) v.axpy(-x, r);
    }
    return v;
  }

  // Coordinates of v in the echelon basis, if v lies in the subspace.
  std::optional<Vec> coordinates(const SparseVec& v) const {
    Vec c = zero_vec(rows_.size());
    SparseVec rem = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      c[i] = rem.get(rows_[i].front().first);
      if (!c[i].is_zero()) rem.axpy(-c[i], rows_[i]);
    }
    if (!rem.empty()) return std::nullopt;
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  std::size_t n_ = 0;
  std::vector<SparseVec> rows_;
};

// Map from the ambient space onto a complement coordinate system killing W.
// Non-pivot column c goes to coordinate index(c); pivot p of row r goes to -(r restricted to non-pivots).
class QuotientMap {
 public:
  explicit QuotientMap(const Subspace& W) : w_(W), index_(W.ambient(), npos) {
    std::vector<bool> piv(W.ambient(), false);
    for (std::size_t p : W.pivots()) piv[p] = true;
    for (std::size_t c = 0; c < W.ambient(); ++c)
      if (!piv[c]) index_[c] = dim_++;
  }
  std::size_t dim() const { return dim_; }
  SparseVec apply(const SparseVec& v) const {
    SparseVec r = w_.reduce(v);
    SparseVec out;
    for (const auto& [c, x] : r) out.mutable_terms().emplace_back(index_[c], x);
    return out;
  }
  // Image of basis vector e_c.
  SparseVec image_of_basis(std::size_t c) const { return apply(SparseVec::unit(c)); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  const Subspace& w_;
  std::vector<std::size_t> index_;
  std::size_t dim_ = 0;
};

// Kernel of the linear map whose images of basis vectors e_0..e_{n-1} are `images`, living in a space of dim m.
inline Subspace kernel_of_columns(std::size_t n, std::size_t m, const std::vector<SparseVec>& images) {
  std::vector<std::vector<std::pair<std::size_t, Cyc>>> rows(m);
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [i, c] : images[j]) {
      if (i >= m) throw Error(ErrorCode::ShapeMismatch, "image index out of range");
      rows[i].emplace_back(j, c);
    }
  Echelon e(n);
  for (auto& r : rows) {
    if (r.empty()) continue;
    SparseVec v;
    v.mutable_terms() = std::move(r);
    e.add_row(v);
  }
  return Subspace::span(n, e.kernel_basis());
}

inline Subspace kernel(const Mat& A) {
  Echelon e(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) e.add_row(A.row(i));
  return Subspace::span(A.cols(), e.kernel_basis());
}

inline Subspace image(const Mat& A) {
  std::vector<SparseVec> cols;
  for (std::size_t j = 0; j < A.cols(); ++j) cols.push_back(A.column(j));
  return Subspace::span(A.rows(), cols);
}

inline std::optional<Vec> solve(const Mat& A, const Vec& b) {
  if (b.size() != A.rows()) throw Error(ErrorCode::ShapeMismatch, "solve: rhs length");
  Echelon e(A.cols(), true);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    SparseVec r = A.row(i);
    if (!b[i].is_zero()) r.mutable_terms().emplace_back(A.cols(), b[i]);
    e.add_row(r);
  }
  return e.solution();
}

inline std::size_t rank(const Mat& A) { return image(A).dim(); }

inline Subspace subspace_sum(const Subspace& U, const Subspace& W) {
  if (U.ambient() != W.ambient()) throw Error(ErrorCode::ShapeMismatch, "sum of subspaces");
  std::vector<SparseVec> all = U.basis();
  all.insert(all.end(), W.basis().begin(), W.basis().end());
  return Subspace::span(U.ambient(), all);
}

// preimage(f, W) where f is given by its images of basis vectors.
inline Subspace preimage_of_columns(std::size_t n, const std::vector<SparseVec>& images, const Subspace& W) {
  QuotientMap q(W);
  std::vector<SparseVec> projected;
  projected.reserve(images.size());
  for (const auto& v : images) projected.push_back(q.apply(v));
  return kernel_of_columns(n, q.dim(), projected);
}

inline Subspace preimage(const Mat& f, const Subspace& W) {
  if (f.rows() != W.ambient()) throw Error(ErrorCode::ShapeMismatch, "preimage: codomain mismatch");
  std::vector<SparseVec> cols;
  for (std::size_t j = 0; j < f.cols(); ++j) cols.push_back(f.column(j));
  return preimage_of_columns(f.cols(), cols, W);
}

inline Subspace intersect(const Subspace& U, const Subspace& W) {
  if (U.ambient() != W.ambient()) throw Error(ErrorCode::ShapeMismatch, "intersection of subspaces");
  QuotientMap q(W);
  std::vector<SparseVec> projected;
  for (const auto& u : U.basis()) projected.push_back(q.apply(u));
  Subspace coeffs = kernel_of_columns(U.dim(), q.dim(), projected);
  std::vector<SparseVec> vecs;
  for (const auto& c : coeffs.basis()) {
    Accum acc;
    for (const auto& [i, x] : c) acc.add(U.basis()[i], x);
    vecs.push_back(acc.finish());
  }
  return Subspace::span(U.ambient(), vecs);
}

inline bool contains(const Subspace& U, const Subspace& W) {
  return std::all_of(W.basis().begin(), W.basis().end(), [&](const SparseVec& w) { return U.contains(w); });
}

class Tensor3 {
 public:
  struct Entry {
    std::uint32_t i, j, k;
    Cyc v;
  };

  Tensor3() = default;
  Tensor3(std::size_t n1, std::size_t n2, std::size_t n3) : n1_(n1), n2_(n2), n3_(n3), off_(n1 * n2 + 1, 0) {}

  class Builder {
   public:
    Builder(std::size_t n1, std::size_t n2, std::size_t n3) : n1_(n1), n2_(n2), n3_(n3) {}
    void add(std::size_t i, std::size_t j, std::size_t k, const Cyc& v) {
      if (i >= n1_ || j >= n2_ || k >= n3_) throw Error(ErrorCode::ShapeMismatch, "tensor index out of range");
      if (v.is_zero()) return;
      acc_.add((i * n2_ + j) * n3_ + k, v);
    }
    // Adds the vector v at fiber (i,j).
    void add_fiber(std::size_t i, std::size_t j, const SparseVec& v) {
      for (const auto& [k, c] : v) add(i, j, k, c);
    }
    Tensor3 build() {
      Tensor3 t(n1_, n2_, n3_);
      SparseVec flat = acc_.finish();
      t.e_.reserve(flat.size());
      for (const auto& [idx, c] : flat) {
        std::size_t k = idx % n3_, ij = idx / n3_;
        t.e_.push_back({static_cast<std::uint32_t>(ij / n2_), static_cast<std::uint32_t>(ij % n2_),
                        static_cast<std::uint32_t>(k), c});
        ++t.off_[ij + 1];
      }
      for (std::size_t x = 1; x < t.off_.size(); ++x) t.off_[x] += t.off_[x - 1];
      return t;
    }

   private:
    std::size_t n1_, n2_, n3_;
    Accum acc_;
  };

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t n3() const { return n3_; }
  std::tuple<std::size_t, std::size_t, std::size_t> shape() const { return {n1_, n2_, n3_}; }
  const std::vector<Entry>& entries() const { return e_; }
  std::size_t nnz() const { return e_.size(); }

  std::span<const Entry> fiber(std::size_t i, std::size_t j) const {
    std::size_t x = i * n2_ + j;
    return {e_.data() + off_[x], e_.data() + off_[x + 1]};
  }
  std::span<const Entry> slice(std::size_t i) const {
    return {e_.data() + off_[i * n2_], e_.data() + off_[(i + 1) * n2_]};
  }
  SparseVec fiber_vec(std::size_t i, std::size_t j) const {
    SparseVec v;
    for (const auto& e : fiber(i, j)) v.mutable_terms().emplace_back(e.k, e.v);
    return v;
  }
  // Slice i flattened to a vector over (j,k), index j * n3 + k.
  SparseVec slice_vec(std::size_t i) const {
    SparseVec v;
    for (const auto& e : slice(i)) v.mutable_terms().emplace_back(e.j * n3_ + e.k, e.v);
    return v;
  }
  Cyc at(std::size_t i, std::size_t j, std::size_t k) const {
    for (const auto& e : fiber(i, j))
      if (e.k == k) return e.v;
    return Cyc(0);
  }

  friend bool operator==(const Tensor3& a, const Tensor3& b) {
    if (a.shape() != b.shape() || a.e_.size() != b.e_.size()) return false;
    for (std::size_t x = 0; x < a.e_.size(); ++x) {
      const auto &p = a.e_[x], &q = b.e_[x];
      if (p.i != q.i || p.j != q.j || p.k != q.k || p.v != q.v) return false;
    }
    return true;
  }

 private:
  std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<Entry> e_;
  std::vector<std::size_t> off_;
};

// Contraction of a vector against one axis (1, 2 or 3); the result is indexed by the two remaining axes in order.
inline Mat tensor_contract(const Tensor3& t, int axis, const Vec& v) {
  auto [n1, n2, n3] = t.shape();
  std::size_t len = axis == 1 ? n1 : axis == 2 ? n2 : n3;
  if (v.size() != len) throw Error(ErrorCode::ShapeMismatch, "contraction length");
  std::size_t r = axis == 1 ? n2 : n1, c = axis == 3 ? n2 : n3;
  Mat m(r, c);
  for (const auto& e : t.entries()) {
    std::size_t idx = axis == 1 ? e.i : axis == 2 ? e.j : e.k;
    if (v[idx].is_zero()) continue;
    std::size_t a = axis == 1 ? e.j : e.i, b = axis == 3 ? e.j : e.k;
    m(a, b) += e.v * v[idx];
  }
  return m;
}

// Applies the matrix m along one axis: new index = m * old index.
inline Tensor3 tensor_contract(const Tensor3& t, int axis, const Mat& m) {
  auto [n1, n2, n3] = t.shape();
  std::size_t len = axis == 1 ? n1 : axis == 2 ? n2 : n3;
  if (m.cols() != len) throw Error(ErrorCode::ShapeMismatch, "contraction shape");
  std::size_t d1 = axis == 1 ? m.rows() : n1, d2 = axis == 2 ? m.rows() : n2, d3 = axis == 3 ? m.rows() : n3;
  Tensor3::Builder b(d1, d2, d3);
  for (const auto& e : t.entries()) {
    std::size_t idx = axis == 1 ? e.i : axis == 2 ? e.j : e.k;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const Cyc& f = m(r, idx);
      if (f.is_zero()) continue;
      b.add(axis == 1 ? r : e.i, axis == 2 ? r : e.j, axis == 3 ? r : e.k, e.v * f);
    }
  }
  return b.build();
}

}  // namespace hopfforge
