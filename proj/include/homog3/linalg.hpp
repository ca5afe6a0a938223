#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <vector>

#include "homog3/rational.hpp"

namespace homog3 {

using VecQ = std::vector<Rational>;

inline VecQ operator+(const VecQ& a, const VecQ& b) {
  assert(a.size() == b.size());
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline VecQ operator-(const VecQ& a, const VecQ& b) {
  assert(a.size() == b.size());
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline VecQ operator*(const Rational& s, const VecQ& a) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}
inline bool is_zero(const VecQ& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
}

/// Dense matrix of rationals, row-major. Small sizes only.
struct MatQ {
  int rows = 0, cols = 0;
  std::vector<Rational> a;

  MatQ() = default;
  MatQ(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  static MatQ identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
  }

  Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  MatQ transposed() const {
    MatQ t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend MatQ operator*(const MatQ& x, const MatQ& y) {
    assert(x.cols == y.rows);
    MatQ r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (int j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return r;
  }
  friend MatQ operator+(const MatQ& x, const MatQ& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    MatQ r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
  }
  friend MatQ operator-(const MatQ& x, const MatQ& y) {
    assert(x.rows == y.rows && x.cols == y.cols);
    MatQ r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
  }
  friend MatQ operator*(const Rational& s, const MatQ& x) {
    MatQ r = x;
    for (auto& v : r.a) v *= s;
    return r;
  }
  friend bool operator==(const MatQ& x, const MatQ& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  VecQ apply(const VecQ& v) const {
    assert(static_cast<int>(v.size()) == cols);
    VecQ r(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

  Rational trace() const {
    Rational t;
    for (int i = 0; i < std::min(rows, cols); ++i) t += at(i, i);
    return t;
  }

  bool is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
  }
  bool is_symmetric() const {
    for (int i = 0; i < rows; ++i)
      for (int j = i + 1; j < cols; ++j)
        if (at(i, j) != at(j, i)) return false;
    return rows == cols;
  }
};

/// In-place reduced row echelon form; returns pivot column per pivot row.
inline std::vector<int> rref(MatQ& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rational inv = m.at(r, c).inverse();
    for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(MatQ m) { return static_cast<int>(rref(m).size()); }

inline Rational det(MatQ m) {
  assert(m.rows == m.cols);
  Rational d(1);
  for (int c = 0; c < m.cols; ++c) {
    int p = -1;
    for (int i = c; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) { p = i; break; }
    if (p < 0) return Rational(0);
    if (p != c) {
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Rational inv = m.at(c, c).inverse();
    for (int i = c + 1; i < m.rows; ++i) {
      if (m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c) * inv;
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

/// Affine solution set: base + span(directions). Directions are kept as a
/// reduced basis with primitive integer scaling, base reduced against them,
/// so equal flats compare equal componentwise.
struct AffineFlat {
  VecQ base;
  std::vector<VecQ> directions;
  int dim() const { return static_cast<int>(directions.size()); }
};

/// Scale a nonzero vector to primitive integer form, first nonzero entry > 0.
inline VecQ primitive(const VecQ& v) {
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), x.num().get_mpz_t());
    num_gcd = g;
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), x.den().get_mpz_t());
    den_lcm = l;
  }
  if (num_gcd == 0) return v;
  Rational s(den_lcm, num_gcd);
  VecQ r = s.abs() * v;
  for (const auto& x : r) {
    if (x.is_zero()) continue;
    if (x.sign() < 0) r = Rational(-1) * r;
    break;
  }
  return r;
}

/// Row-reduce a set of vectors to a canonical spanning basis.
inline std::vector<VecQ> span_basis(const std::vector<VecQ>& vecs, int n) {
  MatQ m(static_cast<int>(vecs.size()), n);
  for (size_t i = 0; i < vecs.size(); ++i)
    for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = vecs[i][j];
  auto pivots = rref(m);
  std::vector<VecQ> basis;
  for (size_t i = 0; i < pivots.size(); ++i) {
    VecQ row(n);
    for (int j = 0; j < n; ++j) row[j] = m.at(static_cast<int>(i), j);
    basis.push_back(primitive(row));
  }
  return basis;
}

/// Is v in span(basis)?  basis need not be reduced.
inline bool in_span(const VecQ& v, const std::vector<VecQ>& basis, int n) {
  auto b = basis;
  b.push_back(v);
  return span_basis(b, n).size() == span_basis(basis, n).size();
}

/// Canonicalize base + directions so equal flats are componentwise equal.
inline AffineFlat canonical_flat(VecQ base, std::vector<VecQ> dirs, int n) {
  AffineFlat f;
  f.directions = span_basis(dirs, n);
  // zero out base coordinates at the pivot positions of the direction basis
  for (const auto& d : f.directions) {
    int pivot = -1;
    for (int j = 0; j < n; ++j)
      if (!d[j].is_zero()) { pivot = j; break; }
    if (pivot < 0) continue;
    Rational f0 = base[pivot] / d[pivot];
    base = base - f0 * d;
  }
  f.base = base;
  return f;
}

inline bool flat_contains_point(const AffineFlat& f, const VecQ& p) {
  return in_span(p - f.base, f.directions, static_cast<int>(p.size()));
}

inline bool flat_contains_flat(const AffineFlat& outer, const AffineFlat& inner) {
  int n = static_cast<int>(outer.base.size());
  if (!flat_contains_point(outer, inner.base)) return false;
  for (const auto& d : inner.directions)
    if (!in_span(d, outer.directions, n)) return false;
  return true;
}

inline bool same_flat(const AffineFlat& a, const AffineFlat& b) {
  return flat_contains_flat(a, b) && flat_contains_flat(b, a);
}

/// Exact solution of A x = b. Returns the full affine solution space,
/// or nullopt when rank(A) != rank([A|b]) (infeasible).
inline std::optional<AffineFlat> solve_linear(const MatQ& A, const VecQ& b) {
  assert(static_cast<int>(b.size()) == A.rows);
  MatQ aug(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;

  std::vector<bool> is_pivot(A.cols, false);
  for (int c : pivots) is_pivot[c] = true;

  VecQ particular(A.cols);
  for (size_t r = 0; r < pivots.size(); ++r) particular[pivots[r]] = aug.at(static_cast<int>(r), A.cols);

  std::vector<VecQ> kernel;
  for (int c = 0; c < A.cols; ++c) {
    if (is_pivot[c]) continue;
    VecQ v(A.cols);
    v[c] = Rational(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug.at(static_cast<int>(r), c);
    kernel.push_back(v);
  }
  return canonical_flat(particular, kernel, A.cols);
}

inline std::vector<VecQ> null_space(const MatQ& A) {
  auto f = solve_linear(A, VecQ(A.rows));
  return f ? f->directions : std::vector<VecQ>{};
}

/// Sylvester inertia (n+, n-, n0) of a symmetric matrix, by exact
/// symmetric pivoting (congruence transformations only).
struct Inertia {
  int n_plus = 0, n_minus = 0, n_zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

inline Inertia inertia(MatQ m) {
  if (!m.is_symmetric()) throw Error("NotSymmetric", "inertia requires a symmetric matrix");
  int n = m.rows;
  Inertia res;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && !m.at(i, i).is_zero()) { p = i; break; }
    if (p < 0) {
      // all remaining diagonal entries vanish; look for an off-diagonal entry
      int i0 = -1, j0 = -1;
      for (int i = 0; i < n && i0 < 0; ++i) {
        if (done[i]) continue;
        for (int j = 0; j < n; ++j)
          if (!done[j] && j != i && !m.at(i, j).is_zero()) { i0 = i; j0 = j; break; }
      }
      if (i0 < 0) {
        for (int i = 0; i < n; ++i)
          if (!done[i]) ++res.n_zero;
        return res;
      }
      // congruence: row/col i0 += row/col j0 creates a nonzero diagonal entry
      for (int j = 0; j < n; ++j) m.at(i0, j) += m.at(j0, j);
      for (int i = 0; i < n; ++i) m.at(i, i0) += m.at(i, j0);
      p = i0;
    }
    Rational d = m.at(p, p);
    if (d.sign() > 0) ++res.n_plus; else ++res.n_minus;
    for (int i = 0; i < n; ++i) {
      if (done[i] || i == p || m.at(i, p).is_zero()) continue;
      Rational f = m.at(i, p) / d;
      for (int j = 0; j < n; ++j) m.at(i, j) -= f * m.at(p, j);
      for (int j = 0; j < n; ++j) m.at(j, i) -= f * m.at(j, p);
    }
    done[p] = true;
  }
  return res;
}

/// Characteristic polynomial coefficients of a square matrix,
/// monic, ascending order: p(x) = c[0] + c[1] x + ... + x^n.
/// Faddeev-LeVerrier, exact over the rationals.
inline std::vector<Rational> char_poly(const MatQ& A) {
  assert(A.rows == A.cols);
  int n = A.rows;
  std::vector<Rational> c(n + 1);
  c[n] = Rational(1);
  MatQ M(n, n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = A*M_{k-1} + c_{n-k+1} I
    MatQ AM = A * M;
    for (int i = 0; i < n; ++i) AM.at(i, i) += c[n - k + 1];
    M = AM;
    c[n - k] = Rational(-1, k) * (A * M).trace();
  }
  return c;
}

}  // namespace homog3
