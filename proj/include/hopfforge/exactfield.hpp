#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfforge/error.hpp"

namespace hopfforge {

using Rational = mpq_class;

namespace detail {

inline std::atomic<int>& conductor_cap_slot() {
  static std::atomic<int> cap = [] {
    if (const char* env = std::getenv("HOPFFORGE_CONDUCTOR_CAP")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 720;
  }();
  return cap;
}

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Integer polynomial division by a monic divisor; the remainder must vanish.
inline std::vector<long long> exact_div_monic(std::vector<long long> num, const std::vector<long long>& den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {0};
  std::vector<long long> quot(num.size() - dn, 0);
  for (std::size_t d = num.size(); d-- > dn;) {
    long long c = num[d];
    quot[d - dn] = c;
    if (c != 0)
      for (std::size_t t = 0; t <= dn; ++t) num[d - dn + t] -= c * den[t];
  }
  return quot;
}

}  // namespace detail

inline int conductor_cap() { return detail::conductor_cap_slot().load(); }
inline void set_conductor_cap(int cap) { detail::conductor_cap_slot().store(cap); }

// Coefficients of Phi_L in ascending degree.
inline const std::vector<long long>& cyclotomic_polynomial(int L) {
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return it->second;
  }
  std::vector<long long> poly(static_cast<std::size_t>(L) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(L)] = 1;
  for (int d = 1; d < L; ++d)
    if (L % d == 0) poly = detail::exact_div_monic(poly, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(L, std::move(poly)).first->second;
}

class Cyc {
 public:
  Cyc() : L_(1), c_(1) {}
  Cyc(long v) : L_(1), c_{Rational(v)} {}  // NOLINT(implicit)
  Cyc(int v) : Cyc(static_cast<long>(v)) {}  // NOLINT(implicit)
  Cyc(const Rational& r) : L_(1), c_{r} {}  // NOLINT(implicit)

  static Cyc from_coeffs(int L, std::vector<Rational> coeffs) {
    check_conductor(L);
    Cyc out;
    out.L_ = L;
    out.c_ = reduce(L, std::move(coeffs));
    return out;
  }

  // zeta_L^e
  static Cyc zeta(int L, long e = 1) {
    check_conductor(L);
    long r = ((e % L) + L) % L;
    std::vector<Rational> p(static_cast<std::size_t>(r) + 1);
    p[static_cast<std::size_t>(r)] = 1;
    return from_coeffs(L, std::move(p));
  }

  int conductor() const { return L_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return sgn(r) == 0; });
  }
  bool is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return sgn(r) == 0; });
  }
  bool is_one() const { return c_[0] == 1 && is_rational(); }
  const Rational& rational_part() const { return c_[0]; }

  Cyc promoted(int M) const {
    if (M == L_) return *this;
    if (M % L_ != 0)
      throw Error(ErrorCode::ShapeMismatch,
                  "conductor " + std::to_string(L_) + " does not divide " + std::to_string(M));
    check_conductor(M);
    const int step = M / L_;
    std::vector<Rational> p(static_cast<std::size_t>((c_.size() - 1) * step) + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) p[i * static_cast<std::size_t>(step)] = c_[i];
    return from_coeffs(M, std::move(p));
  }

  Cyc operator-() const {
    Cyc out = *this;
    for (auto& r : out.c_) r = -r;
    return out;
  }

  Cyc& operator+=(const Cyc& o) {
    if (o.L_ != L_) return *this = *this + o;
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyc& operator-=(const Cyc& o) {
    if (o.L_ != L_) return *this = *this - o;
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
  Cyc& operator/=(const Cyc& o) { return *this = *this / o; }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    if (a.L_ == b.L_) {
      Cyc out = a;
      for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] += b.c_[i];
      return out;
    }
    int M = common_conductor(a.L_, b.L_);
    return a.promoted(M) + b.promoted(M);
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    if (b.is_rational()) return a.scaled(b.c_[0]);
    if (a.is_rational()) return b.scaled(a.c_[0]);
    if (a.L_ != b.L_) {
      int M = common_conductor(a.L_, b.L_);
      return a.promoted(M) * b.promoted(M);
    }
    std::vector<Rational> p(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (sgn(b.c_[j]) != 0) p[i + j] += a.c_[i] * b.c_[j];
    }
    return from_coeffs(a.L_, std::move(p));
  }

  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inv(); }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.L_ == b.L_) return a.c_ == b.c_;
    if (a.is_rational() || b.is_rational())
      return a.is_rational() && b.is_rational() && a.c_[0] == b.c_[0];
    int M = std::lcm(a.L_, b.L_);
    if (M > conductor_cap()) return false;
    return a.promoted(M).c_ == b.promoted(M).c_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Cyc scaled(const Rational& r) const {
    Cyc out = *this;
    if (sgn(r) == 0) {
      for (auto& x : out.c_) x = 0;
      return out;
    }
    for (auto& x : out.c_) x *= r;
    return out;
  }

  Cyc inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (is_rational()) return Cyc::from_coeffs(L_, {Rational(1) / c_[0]});
    // Solve (multiplication-by-this) * x = 1 by exact elimination on a phi x phi system.
    const std::size_t n = c_.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t col = 0; col < n; ++col) {
      std::vector<Rational> basis(col + 1);
      basis[col] = 1;
      Cyc prod = *this * Cyc::from_coeffs(L_, std::move(basis));
      for (std::size_t row = 0; row < n; ++row) m[row][col] = prod.c_[row];
    }
    m[0][n] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && sgn(m[piv][col]) == 0) ++piv;
      std::swap(m[piv], m[col]);
      Rational lead = m[col][col];
      for (std::size_t k = col; k <= n; ++k) m[col][k] /= lead;
      for (std::size_t row = 0; row < n; ++row) {
        if (row == col || sgn(m[row][col]) == 0) continue;
        Rational f = m[row][col];
        for (std::size_t k = col; k <= n; ++k) m[row][k] -= f * m[col][k];
      }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return Cyc::from_coeffs(L_, std::move(x));
  }

  Cyc pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyc result(1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  // Power-basis rendering in terms of z = zeta_M, M a multiple of the conductor.
  std::string format(int M) const;
  std::string str() const { return format(L_); }

 private:
  static void check_conductor(int L) {
    if (L <= 0) throw Error(ErrorCode::ShapeMismatch, "conductor must be positive");
    if (L > conductor_cap())
      throw Error(ErrorCode::ConductorOverflow,
                  "conductor " + std::to_string(L) + " exceeds cap " + std::to_string(conductor_cap()));
  }

  static int common_conductor(int a, int b) {
    int M = std::lcm(a, b);
    check_conductor(M);
    return M;
  }

  static std::vector<Rational> reduce(int L, std::vector<Rational> p) {
    const auto& phi = cyclotomic_polynomial(L);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t d = p.size(); d-- > deg;) {
      if (sgn(p[d]) == 0) continue;
      Rational c = p[d];
      for (std::size_t t = 0; t <= deg; ++t)
        if (phi[t] != 0) p[d - deg + t] -= c * static_cast<long>(phi[t]);
    }
    p.resize(deg);
    return p;
  }

  int L_;
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Cyc& c) { return os << c.str(); }

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline std::string Cyc::format(int M) const {
  Cyc v = promoted(M);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = v.c_.size(); k-- > 0;) {
    const Rational& r = v.c_[k];
    if (sgn(r) == 0) continue;
    Rational mag = abs(r);
    if (first) {
      if (sgn(r) < 0) os << "-";
    } else {
      os << (sgn(r) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "z";
    if (k > 1) os << "^" << k;
  }
  if (first) return "0";
  return os.str();
}

// Grammar: sum of signed terms, each <rat>, <rat>*z^k, <rat>*z, z^k or z.
inline Cyc parse_cyc(const std::string& text, int L) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty scalar literal");
  std::vector<Rational> coeffs(static_cast<std::size_t>(L), Rational(0));
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::ParseError, "bad scalar literal '" + text + "': " + why);
  };
  auto read_uint = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected digits");
    return s.substr(start, pos - start);
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected sign");
    }
    Rational coef(1);
    bool have_coef = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::string num = read_uint();
      std::string den = "1";
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = read_uint();
      }
      mpz_class dz(den);
      if (dz == 0) fail("zero denominator");
      coef = Rational(mpz_class(num), dz);
      coef.canonicalize();
      have_coef = true;
    }
    long exponent = 0;
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 'z')) {
      if (s[pos] == '*') {
        if (!have_coef) fail("dangling '*'");
        ++pos;
      }
      if (pos >= s.size() || s[pos] != 'z') fail("expected z");
      ++pos;
      exponent = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        bool neg = false;
        if (pos < s.size() && s[pos] == '-') {
          neg = true;
          ++pos;
        }
        exponent = std::stol(read_uint());
        if (neg) exponent = -exponent;
      }
    } else if (!have_coef) {
      fail("expected term");
    }
    long e = ((exponent % L) + L) % L;
    coeffs[static_cast<std::size_t>(e)] += sign * coef;
  }
  return Cyc::from_coeffs(L, std::move(coeffs));
}

struct RootOfUnity {
  int conductor = 1;
  int exponent = 0;

  Cyc value() const { return Cyc::zeta(conductor, exponent); }
  int order() const { return conductor / std::gcd(conductor, exponent); }
};

inline Cyc primitive_root(int N) {
  if (N < 1) throw Error(ErrorCode::ShapeMismatch, "primitive_root needs N >= 1");
  return Cyc::zeta(N, 1);
}

inline std::optional<int> multiplicative_order(const Cyc& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "order of zero");
  const int M = std::lcm(2, a.conductor());
  if (!a.pow(M).is_one()) return std::nullopt;
  for (int d = 1; d <= M; ++d)
    if (M % d == 0 && a.pow(d).is_one()) return d;
  return std::nullopt;
}

inline Cyc q_int(long n, const Cyc& q) {
  Cyc sum(0), p(1);
  for (long i = 0; i < n; ++i) {
    sum += p;
    p *= q;
  }
  return sum;
}

inline Cyc q_factorial(long n, const Cyc& q) {
  Cyc out(1);
  for (long i = 1; i <= n; ++i) out *= q_int(i, q);
  return out;
}

// Gaussian polynomial [n choose k] in an indeterminate t, ascending coefficients.
inline std::vector<mpz_class> gaussian_polynomial(long n, long k) {
  if (k < 0 || k > n) return {};
  k = std::min(k, n - k);
  auto mul = [](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  };
  auto binomial_factor = [](long e) {  // t^e - 1
    std::vector<mpz_class> f(static_cast<std::size_t>(e) + 1);
    f[0] = -1;
    f[static_cast<std::size_t>(e)] = 1;
    return f;
  };
  std::vector<mpz_class> num{1}, den{1};
  for (long i = 1; i <= k; ++i) {
    num = mul(num, binomial_factor(n - k + i));
    den = mul(den, binomial_factor(i));
  }
  // den has leading coefficient 1 (product of monic factors).
  const std::size_t dd = den.size() - 1;
  std::vector<mpz_class> quot(num.size() - dd);
  for (std::size_t d = num.size(); d-- > dd;) {
    mpz_class c = num[d];
    quot[d - dd] = c;
    if (c != 0)
      for (std::size_t t = 0; t <= dd; ++t) num[d - dd + t] -= c * den[t];
  }
  return quot;
}

inline Cyc q_binomial(long n, long k, const Cyc& q) {
  if (k < 0 || k > n) return Cyc(0);
  auto poly = gaussian_polynomial(n, k);
  Cyc acc(0);
  for (std::size_t d = poly.size(); d-- > 0;) acc = acc * q + Cyc(Rational(poly[d]));
  return acc;
}

}  // namespace hopfforge
