#pragma once

#include <array>
#include <cassert>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homog3/linalg.hpp"
#include "homog3/rational.hpp"

namespace homog3 {

/// Sparse polynomial over the rationals in at most three variables.
/// Three variables suffice for every system this library produces: the
/// unknown 1-form sigma = (s1, s2, s3) of the structure solver and the
/// one-parameter families (one active variable).
class Poly {
 public:
  static constexpr int kVars = 3;
  using Mono = std::array<int, kVars>;

  Poly() = default;
  Poly(const Rational& c) { add_term(Mono{0, 0, 0}, c); }
  Poly(int c) : Poly(Rational(c)) {}

  static Poly variable(int k) {
    assert(k >= 0 && k < kVars);
    Poly p;
    Mono m{0, 0, 0};
    m[k] = 1;
    p.add_term(m, Rational(1));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{0, 0, 0}); }
  Rational constant_value() const {
    assert(is_constant());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + m[2]);
    return d;
  }
  int degree_in(int k) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[k]);
    return d;
  }
  std::array<bool, kVars> vars_used() const {
    std::array<bool, kVars> u{false, false, false};
    for (const auto& [m, c] : terms_)
      for (int k = 0; k < kVars; ++k)
        if (m[k] > 0) u[k] = true;
    return u;
  }

  Rational coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const Rational& s, const Poly& p) {
    Poly r;
    for (const auto& [m, c] : p.terms_) r.add_term(m, s * c);
    return r;
  }
  Poly& operator/=(const Rational& s) {
    for (auto& [m, c] : terms_) c /= s;
    return *this;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Rational eval(const std::array<Rational, kVars>& x) const {
    Rational r;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int k = 0; k < kVars; ++k)
        for (int e = 0; e < m[k]; ++e) t *= x[k];
      r += t;
    }
    return r;
  }

  /// Evaluation with ring-valued arguments (e.g. substituting polynomials).
  template <class T>
  T eval_generic(const std::array<T, kVars>& x) const {
    T r{};
    for (const auto& [m, c] : terms_) {
      T t{c};
      for (int k = 0; k < kVars; ++k)
        for (int e = 0; e < m[k]; ++e) t = t * x[k];
      r = r + t;
    }
    return r;
  }

  /// Substitute variable k by polynomial r.
  Poly substitute(int k, const Poly& r) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      Poly t(c);
      for (int j = 0; j < kVars; ++j) {
        if (j == k) continue;
        Mono mj{0, 0, 0};
        mj[j] = m[j];
        if (m[j] > 0) {
          Poly xj;
          xj.add_term(mj, Rational(1));
          t *= xj;
        }
      }
      for (int e = 0; e < m[k]; ++e) t *= r;
      out += t;
    }
    return out;
  }

  Poly derivative(int k) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      if (m[k] == 0) continue;
      Mono d = m;
      d[k] -= 1;
      r.add_term(d, Rational(static_cast<long>(m[k])) * c);
    }
    return r;
  }

  /// Coefficients of powers of variable k: result[e] does not involve k.
  std::vector<Poly> coeffs_in(int k) const {
    std::vector<Poly> out(static_cast<size_t>(degree_in(k)) + 1);
    for (const auto& [m, c] : terms_) {
      Mono r = m;
      int e = r[k];
      r[k] = 0;
      out[e].add_term(r, c);
    }
    return out;
  }

  /// Scale to integer coefficients with content 1, leading term positive.
  Poly normalized() const {
    if (is_zero()) return *this;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : terms_) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
      num_gcd = g;
      mpz_class l;
      mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
      den_lcm = l;
    }
    Rational s = Rational(den_lcm, num_gcd).abs();
    Poly r = s * *this;
    if (r.terms_.rbegin()->second.sign() < 0) r = Rational(-1) * r;
    return r;
  }

  std::string str(const std::array<std::string, kVars>& names = {"x", "y", "z"}) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      if (!first) os << (c.sign() >= 0 ? " + " : " - ");
      else if (c.sign() < 0) os << "-";
      first = false;
      Rational a = c.abs();
      bool has_var = m[0] + m[1] + m[2] > 0;
      if (!has_var || a != Rational(1)) os << a.str();
      bool star = !has_var || a != Rational(1);
      for (int k = 0; k < kVars; ++k) {
        if (m[k] == 0) continue;
        if (star) os << "*";
        os << names[k];
        if (m[k] > 1) os << "^" << m[k];
        star = true;
      }
    }
    return os.str();
  }

  const std::map<Mono, Rational>& terms() const { return terms_; }

  void add_term(const Mono& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  std::map<Mono, Rational> terms_;
};

// ---------------------------------------------------------------------------
// univariate helpers (polynomials using a single variable)

/// Dense coefficient vector (ascending) of a univariate polynomial in var k.
inline std::vector<Rational> uni_coeffs(const Poly& p, int k) {
  std::vector<Rational> c(static_cast<size_t>(p.degree_in(k)) + 1);
  for (const auto& [m, coef] : p.terms()) {
    for (int j = 0; j < Poly::kVars; ++j) assert(j == k || m[j] == 0);
    c[m[k]] = coef;
  }
  return c;
}

inline int uni_degree(const std::vector<Rational>& c) {
  for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d)
    if (!c[d].is_zero()) return d;
  return -1;  // zero polynomial
}

inline std::vector<Rational> uni_trim(std::vector<Rational> c) {
  c.resize(static_cast<size_t>(std::max(uni_degree(c), -1) + 1));
  return c;
}

/// Remainder of a by b (b nonzero), both dense ascending.
inline std::vector<Rational> uni_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
  int db = uni_degree(b);
  assert(db >= 0);
  Rational lead = b[db];
  int da = uni_degree(a);
  while (da >= db) {
    Rational f = a[da] / lead;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    da = uni_degree(a);
  }
  return uni_trim(a);
}

/// Exact quotient a/b; asserts the division is exact.
inline std::vector<Rational> uni_div(std::vector<Rational> a, const std::vector<Rational>& b) {
  int db = uni_degree(b);
  assert(db >= 0);
  Rational lead = b[db];
  int da = uni_degree(a);
  std::vector<Rational> q(da >= db ? static_cast<size_t>(da - db) + 1 : 0);
  while (da >= db) {
    Rational f = a[da] / lead;
    q[da - db] = f;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    da = uni_degree(a);
  }
  assert(uni_degree(a) < 0);
  return q;
}

/// Monic gcd of two univariate polynomials.
inline std::vector<Rational> uni_gcd(std::vector<Rational> a, std::vector<Rational> b) {
  a = uni_trim(a);
  b = uni_trim(b);
  while (uni_degree(b) >= 0) {
    auto r = uni_rem(a, b);
    a = b;
    b = r;
  }
  int d = uni_degree(a);
  if (d >= 0) {
    Rational inv = a[d].inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

inline std::vector<Rational> uni_derivative(const std::vector<Rational>& c) {
  std::vector<Rational> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * c[i]);
  return uni_trim(d);
}

/// All rational roots of a polynomial of degree <= 2; complete == false
/// means higher degree input, where only partial extraction was attempted.
struct UniRoots {
  std::vector<Rational> roots;
  bool complete = true;        // every root over Q is listed
  bool real_nonrational = false;  // certified existence of real non-rational roots
};

inline UniRoots rational_roots(std::vector<Rational> c) {
  UniRoots out;
  c = uni_trim(c);
  int d = uni_degree(c);
  if (d <= 0) return out;  // constant: no roots (zero poly handled by caller)
  if (d == 1) {
    out.roots.push_back(-c[0] / c[1]);
    return out;
  }
  if (d == 2) {
    Rational disc = c[1] * c[1] - Rational(4) * c[2] * c[0];
    if (disc.sign() < 0) return out;
    Rational s;
    if (Rational::sqrt_exact(disc, &s)) {
      Rational two_a = Rational(2) * c[2];
      out.roots.push_back((-c[1] + s) / two_a);
      if (!disc.is_zero()) out.roots.push_back((-c[1] - s) / two_a);
    } else {
      out.real_nonrational = true;  // positive non-square discriminant
    }
    return out;
  }
  // degree 3 or 4 (resultant fallback): divide out x = 0 roots and repeated
  // factors; if the square-free part drops to degree <= 2 the extraction is
  // exact, otherwise report incomplete so the caller can fall back to
  // `unresolved`.
  bool root_at_zero = false;
  while (uni_degree(c) > 0 && c[0].is_zero()) {
    root_at_zero = true;
    c.erase(c.begin());
  }
  auto g = uni_gcd(c, uni_derivative(c));
  if (uni_degree(g) > 0) c = uni_div(c, g);  // square-free part, same root set
  if (uni_degree(c) <= 2) {
    out = rational_roots(c);
  } else {
    out.complete = false;
  }
  if (root_at_zero) {
    bool has_zero = false;
    for (const auto& r : out.roots) has_zero = has_zero || r.is_zero();
    if (!has_zero) out.roots.push_back(Rational(0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// quadratic factorization

/// Linear polynomial E with E^2 == d, if one exists.
inline std::optional<Poly> linear_sqrt(const Poly& d) {
  if (d.is_zero()) return Poly();
  int deg = d.degree();
  if (deg == 1 || deg > 2) return std::nullopt;
  if (deg == 0) {
    Rational s;
    if (!Rational::sqrt_exact(d.constant_value(), &s)) return std::nullopt;
    return Poly(s);
  }
  int i0 = -1;
  Rational lead;
  for (int k = 0; k < Poly::kVars; ++k) {
    Poly::Mono m{0, 0, 0};
    m[k] = 2;
    Rational c = d.coefficient(m);
    if (!c.is_zero()) { i0 = k; lead = c; break; }
  }
  if (i0 < 0) return std::nullopt;  // cross terms only, e.g. x*y
  Rational e0;
  std::array<Rational, Poly::kVars> e{};
  if (!Rational::sqrt_exact(lead, &e[i0])) return std::nullopt;
  Rational half = Rational(1, 2) / e[i0];
  for (int k = 0; k < Poly::kVars; ++k) {
    if (k == i0) continue;
    Poly::Mono m{0, 0, 0};
    m[i0] = 1;
    m[k] = 1;
    e[k] = half * d.coefficient(m);
  }
  {
    Poly::Mono m{0, 0, 0};
    m[i0] = 1;
    e0 = half * d.coefficient(m);
  }
  Poly cand(e0);
  for (int k = 0; k < Poly::kVars; ++k) cand += e[k] * Poly::variable(k);
  if (cand * cand == d) return cand;
  return std::nullopt;
}

/// Quotient q with c == b*q for a linear divisor b, if it exists exactly.
inline std::optional<Poly> divide_by_linear(const Poly& c, const Poly& b) {
  assert(b.degree() == 1);
  // unknown quotient q = q0 + q1 x + q2 y + q3 z; match coefficients
  std::vector<Poly> basis{Poly(Rational(1)), Poly::variable(0), Poly::variable(1), Poly::variable(2)};
  std::map<Poly::Mono, int> mono_index;
  auto note = [&mono_index](const Poly& p) {
    for (const auto& [m, coef] : p.terms())
      mono_index.try_emplace(m, static_cast<int>(mono_index.size()));
  };
  note(c);
  std::vector<Poly> bb;
  for (const auto& q : basis) {
    bb.push_back(b * q);
    note(bb.back());
  }
  MatQ A(static_cast<int>(mono_index.size()), static_cast<int>(basis.size()));
  VecQ rhs(mono_index.size());
  for (const auto& [m, idx] : mono_index) {
    rhs[idx] = c.coefficient(m);
    for (size_t j = 0; j < bb.size(); ++j) A.at(idx, static_cast<int>(j)) = bb[j].coefficient(m);
  }
  auto sol = solve_linear(A, rhs);
  if (!sol) return std::nullopt;
  Poly q(sol->base[0]);
  for (int k = 0; k < Poly::kVars; ++k) q += sol->base[k + 1] * Poly::variable(k);
  if (b * q == c) return q;
  return std::nullopt;
}

/// Factor a polynomial of total degree <= 2 into rational linear factors.
/// Returns one factor for degree-1 input, two for a split quadratic,
/// nullopt when no factorization over Q exists.
inline std::optional<std::vector<Poly>> factor_into_linears(const Poly& q) {
  int deg = q.degree();
  if (deg == 1) return std::vector<Poly>{q};
  if (deg != 2) return std::nullopt;
  for (int k = 0; k < Poly::kVars; ++k) {
    if (q.degree_in(k) == 0) continue;
    auto cs = q.coeffs_in(k);  // cs[e] free of var k
    Poly A = cs.size() > 2 ? cs[2] : Poly();
    Poly B = cs.size() > 1 ? cs[1] : Poly();
    Poly C = cs[0];
    if (!A.is_zero()) {
      Rational a = A.constant_value();  // total degree 2 forces a constant here
      Poly disc = B * B - Rational(4) * a * C;
      auto e = linear_sqrt(disc);
      if (!e) continue;
      Rational inv2a = Rational(1, 2) / a;
      Poly l1 = Poly::variable(k) + inv2a * (B - *e);
      Poly l2 = Poly::variable(k) + inv2a * (B + *e);
      std::vector<Poly> fs{a * l1, l2};
      assert(fs[0] * fs[1] == q);
      return fs;
    }
    if (B.degree() == 1) {
      auto quo = divide_by_linear(C, B);
      if (!quo) continue;
      std::vector<Poly> fs{B, Poly::variable(k) + *quo};
      assert(fs[0] * fs[1] == q);
      return fs;
    }
    // B is a nonzero constant while C is quadratic: no linear splitting via k
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// resultants

template <class R>
R generic_det(std::vector<std::vector<R>> m) {
  size_t n = m.size();
  if (n == 0) return R{Rational(1)};
  if (n == 1) return m[0][0];
  R acc{};
  for (size_t i = 0; i < n; ++i) {
    if (m[i][0].is_zero()) continue;
    std::vector<std::vector<R>> minor;
    for (size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<R> row(m[r].begin() + 1, m[r].end());
      minor.push_back(std::move(row));
    }
    R term = m[i][0] * generic_det(minor);
    if (i % 2 == 0) acc += term; else acc -= term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// spectrum multiplicity without root extraction

enum class MultiplicityPattern { Distinct, OneDouble, Triple };

struct CharPolyInfo {
  MultiplicityPattern pattern;
  std::vector<Rational> coeffs;  // monic, ascending
};

/// Eigenvalue multiplicity pattern of a symmetric 3x3 matrix, decided by
/// square-free factorization (gcd with the derivative); roots are never
/// extracted, so irrational spectra are handled exactly.
inline CharPolyInfo char_poly_multiplicities(const MatQ& sym) {
  if (!sym.is_symmetric() || sym.rows != 3) throw Error("NotSymmetric", "expected a symmetric 3x3 matrix");
  CharPolyInfo out;
  out.coeffs = char_poly(sym);
  auto g = uni_gcd(out.coeffs, uni_derivative(out.coeffs));
  switch (uni_degree(g)) {
    case 0: out.pattern = MultiplicityPattern::Distinct; break;
    case 1: out.pattern = MultiplicityPattern::OneDouble; break;
    default: out.pattern = MultiplicityPattern::Triple; break;
  }
  return out;
}

/// Resultant of p and q with respect to variable k (Sylvester determinant).
inline Poly resultant(const Poly& p, const Poly& q, int k) {
  int m = p.degree_in(k), n = q.degree_in(k);
  if (m == 0 && n == 0) return Poly(Rational(1));
  if (m == 0) {
    Poly r(Rational(1));
    for (int i = 0; i < n; ++i) r *= p;
    return r;
  }
  if (n == 0) {
    Poly r(Rational(1));
    for (int i = 0; i < m; ++i) r *= q;
    return r;
  }
  auto pc = p.coeffs_in(k), qc = q.coeffs_in(k);
  int size = m + n;
  std::vector<std::vector<Poly>> s(size, std::vector<Poly>(size));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = pc[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = qc[n - j];
  return generic_det(s);
}

}  // namespace homog3
