#pragma once

#include <optional>
#include <vector>

#include "homog3/homstruct.hpp"

namespace homog3 {

/// Curvature operators R~(e_i, e_j) of the Ambrose-Singer connection
/// nabla~ = nabla + S, as matrices acting on the algebra.
template <class T>
struct ASCurvature {
  Mat3<T> op01, op12, op20;  // pairs (e1,e2), (e2,e3), (e3,e1)

  const Mat3<T>& pair(int i, int j) const {
    if (i == 0 && j == 1) return op01;
    if (i == 1 && j == 2) return op12;
    if (i == 2 && j == 0) return op20;
    throw Error("BadPair", "curvature operator pairs are (0,1), (1,2), (2,0)");
  }
  bool is_zero() const { return op01.is_zero() && op12.is_zero() && op20.is_zero(); }
};

template <class T>
ASCurvature<T> as_curvature_ops(const MetricLieAlgebra& g, const Ten3<T>& gamma_tilde) {
  auto op = [&](int i, int j) {
    Mat3<T> m;
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        T acc{};
        for (int p = 0; p < 3; ++p)
          acc = acc + gamma_tilde(j, k, p) * gamma_tilde(i, p, l) - gamma_tilde(i, k, p) * gamma_tilde(j, p, l) -
                T{g.c(i, j, p)} * gamma_tilde(p, k, l);
        m(l, k) = acc;  // column k = image of e_k
      }
    return m;
  };
  return ASCurvature<T>{op(0, 1), op(1, 2), op(2, 0)};
}

/// R~ of a verified structure; throws NotAmbroseSinger when (g, S) fails
/// the Ambrose-Singer equations.
inline ASCurvature<Rational> as_curvature(const MetricLieAlgebra& g, const HomStructure& s) {
  if (!as_verify(g, s).pass()) throw Error("NotAmbroseSinger", "S does not satisfy the Ambrose-Singer equations");
  Connection lc = levi_civita(g);
  Ten3Q gt = lc.gamma + s.S;
  auto ops = as_curvature_ops<Rational>(g, gt);
  for (const auto* m : {&ops.op01, &ops.op12, &ops.op20})
    if (!m->is_skew()) throw Error("NotAmbroseSinger", "curvature operator is not metric-skew");
  return ops;
}

namespace detail {

inline VecQ mat_to_vec(const Mat3Q& m) { return VecQ(m.m.begin(), m.m.end()); }

inline std::optional<VecQ> coordinates_in(const std::vector<Mat3Q>& basis, const Mat3Q& m) {
  MatQ A(9, static_cast<int>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c)
    for (int r = 0; r < 9; ++r) A.at(r, static_cast<int>(c)) = basis[c].m[r];
  auto sol = solve_linear(A, mat_to_vec(m));
  if (!sol) return std::nullopt;
  return sol->base;
}

}  // namespace detail

/// Basis of the holonomy algebra of nabla~: span of the curvature operators,
/// closed under commutators. The first generators follow the pair order
/// (e1,e2), (e2,e3), (e3,e1) with the sign convention U = -R~(e_i,e_j).
inline std::vector<Mat3Q> holonomy_algebra(const ASCurvature<Rational>& ops) {
  std::vector<Mat3Q> basis;
  auto try_add = [&basis](const Mat3Q& m) {
    if (m.is_zero()) return false;
    if (basis.empty()) {
      basis.push_back(m);
      return true;
    }
    if (detail::coordinates_in(basis, m)) return false;
    basis.push_back(m);
    return true;
  };
  try_add(Rational(-1) * ops.op01);
  try_add(Rational(-1) * ops.op12);
  try_add(Rational(-1) * ops.op20);
  // commutator closure; stabilizes immediately for Ambrose-Singer input
  for (size_t guard = 0;; ++guard) {
    bool grew = false;
    size_t n = basis.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) grew |= try_add(basis[i].commutator(basis[j]));
    if (!grew) break;
    if (basis.size() > 3 || guard > 8) throw Error("ClosureDiverged", "holonomy closure exceeded so(3)");
  }
  return basis;
}

/// The transitive Lie algebra l = h + m rebuilt from a verified (g, S):
/// basis (e1, e2, e3, U_1, ..., U_h) with brackets
///   [U,V] = UV - VU,  [U,X] = U(X),  [X,Y] = -R~(X,Y) - S(X)Y + S(Y)X.
struct ReconstructedAlgebra {
  LieAlgebra total;
  std::vector<int> isotropy_indices;
  std::vector<Mat3Q> holonomy_generators;
  MatQ m_metric = MatQ::identity(3);

  int holonomy_dim() const { return static_cast<int>(isotropy_indices.size()); }
};

inline ReconstructedAlgebra build_transitive_algebra(const MetricLieAlgebra& g, const HomStructure& s) {
  auto ops = as_curvature(g, s);
  auto H = holonomy_algebra(ops);
  int h = static_cast<int>(H.size());
  int n = 3 + h;

  ReconstructedAlgebra out;
  out.holonomy_generators = H;
  for (int a = 0; a < h; ++a) out.isotropy_indices.push_back(3 + a);
  LieAlgebra L(n);

  auto set_bracket = [&L, n](int i, int j, const VecQ& v) {
    for (int k = 0; k < n; ++k) {
      L.at(i, j, k) = v[k];
      L.at(j, i, k) = -v[k];
    }
  };

  const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (const auto& pr : pairs) {
    int i = pr[0], j = pr[1];
    VecQ v(n);
    for (int k = 0; k < 3; ++k) v[k] = -s.S(i, j, k) + s.S(j, i, k);
    Mat3Q minus_R = Rational(-1) * ops.pair(i, j);
    if (!minus_R.is_zero()) {
      auto coords = detail::coordinates_in(H, minus_R);
      if (!coords) throw Error("ClosureDiverged", "curvature operator escaped the holonomy span");
      for (int a = 0; a < h; ++a) v[3 + a] = (*coords)[a];
    }
    set_bracket(i, j, v);
  }
  for (int a = 0; a < h; ++a)
    for (int x = 0; x < 3; ++x) {
      VecQ v(n);
      for (int k = 0; k < 3; ++k) v[k] = H[a](k, x);
      set_bracket(3 + a, x, v);
    }
  for (int a = 0; a < h; ++a)
    for (int b = a + 1; b < h; ++b) {
      auto coords = detail::coordinates_in(H, H[a].commutator(H[b]));
      if (!coords) throw Error("ClosureDiverged", "holonomy bracket escaped the holonomy span");
      VecQ v(n);
      for (int c = 0; c < h; ++c) v[3 + c] = (*coords)[c];
      set_bracket(3 + a, 3 + b, v);
    }

  if (!L.jacobi_holds()) throw Error("JacobiFailed", "reconstructed brackets violate the Jacobi identity");
  out.total = L;
  return out;
}

// ---------------------------------------------------------------------------
// isomorphism invariants

struct AlgebraFingerprint {
  int dim = 0;
  std::vector<int> derived_series_dims;   // dim g, dim g', dim g'', ... (stabilized)
  std::vector<int> lower_central_dims;    // dim g, dim [g,g], dim [g,[g,g]], ...
  int center_dim = 0;
  Inertia killing_inertia;
  bool solvable = false, nilpotent = false, unimodular = false;

  friend bool operator==(const AlgebraFingerprint&, const AlgebraFingerprint&) = default;
};

namespace detail {

inline std::vector<VecQ> bracket_span(const LieAlgebra& L, const std::vector<VecQ>& A, const std::vector<VecQ>& B) {
  std::vector<VecQ> prods;
  for (const auto& x : A)
    for (const auto& y : B) {
      VecQ v = L.bracket(x, y);
      if (!is_zero(v)) prods.push_back(v);
    }
  return span_basis(prods, L.dim);
}

inline std::vector<VecQ> standard_basis(int n) {
  std::vector<VecQ> b;
  for (int i = 0; i < n; ++i) {
    VecQ e(n);
    e[i] = Rational(1);
    b.push_back(e);
  }
  return b;
}

}  // namespace detail

inline MatQ killing_form(const LieAlgebra& L) {
  std::vector<MatQ> ads;
  for (const auto& e : detail::standard_basis(L.dim)) ads.push_back(L.ad(e));
  MatQ B(L.dim, L.dim);
  for (int i = 0; i < L.dim; ++i)
    for (int j = 0; j < L.dim; ++j) B.at(i, j) = (ads[i] * ads[j]).trace();
  return B;
}

inline std::vector<VecQ> center_basis(const LieAlgebra& L) {
  int n = L.dim;
  MatQ A(n * n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) A.at(j * n + k, i) = L.at(i, j, k);
  return null_space(A);
}

inline AlgebraFingerprint fingerprint(const LieAlgebra& L) {
  if (L.dim > 6) throw Error("DimensionTooLarge", "fingerprint supports dim <= 6");
  AlgebraFingerprint fp;
  fp.dim = L.dim;

  auto basis = detail::standard_basis(L.dim);
  std::vector<VecQ> d = basis;
  fp.derived_series_dims.push_back(L.dim);
  while (true) {
    auto next = detail::bracket_span(L, d, d);
    if (next.size() == d.size()) break;
    fp.derived_series_dims.push_back(static_cast<int>(next.size()));
    d = next;
    if (d.empty()) break;
  }
  fp.solvable = fp.derived_series_dims.back() == 0;

  std::vector<VecQ> l = basis;
  fp.lower_central_dims.push_back(L.dim);
  while (true) {
    auto next = detail::bracket_span(L, basis, l);
    if (next.size() == l.size()) break;
    fp.lower_central_dims.push_back(static_cast<int>(next.size()));
    l = next;
    if (l.empty()) break;
  }
  fp.nilpotent = fp.lower_central_dims.back() == 0;

  fp.center_dim = static_cast<int>(center_basis(L).size());
  fp.killing_inertia = inertia(killing_form(L));
  fp.unimodular = true;
  for (const auto& e : basis) fp.unimodular = fp.unimodular && L.ad(e).trace().is_zero();
  return fp;
}

/// Derived subalgebra [L, L] as a Lie algebra in its own basis.
inline LieAlgebra derived_subalgebra(const LieAlgebra& L) {
  auto basis = detail::bracket_span(L, detail::standard_basis(L.dim), detail::standard_basis(L.dim));
  int m = static_cast<int>(basis.size());
  MatQ A(L.dim, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < L.dim; ++r) A.at(r, c) = basis[c][r];
  LieAlgebra sub(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      VecQ v = L.bracket(basis[i], basis[j]);
      auto sol = solve_linear(A, v);
      if (!sol) throw Error("NotClosed", "derived span is not bracket-closed");
      for (int k = 0; k < m; ++k) sub.at(i, j, k) = sol->base[k];
    }
  return sub;
}

/// Does the linear map F (columns = images of basis vectors) preserve
/// brackets between two Lie algebras of equal dimension?
inline bool bracket_preserving(const MatQ& F, const LieAlgebra& A, const LieAlgebra& B) {
  if (F.rows != B.dim || F.cols != A.dim) return false;
  auto col = [&F](int j) {
    VecQ v(F.rows);
    for (int i = 0; i < F.rows; ++i) v[i] = F.at(i, j);
    return v;
  };
  for (int i = 0; i < A.dim; ++i)
    for (int j = i + 1; j < A.dim; ++j) {
      VecQ lhs(F.rows);
      for (int k = 0; k < A.dim; ++k) lhs = lhs + A.at(i, j, k) * col(k);
      VecQ rhs = B.bracket(col(i), col(j));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

/// Checks that F is an isomorphism of reconstructed homogeneous algebras:
/// invertible, bracket-preserving, F(h) = h', F(m) = m', and F restricted
/// to m a linear isometry.
inline bool verify_isomorphism(const MatQ& F, const ReconstructedAlgebra& A, const ReconstructedAlgebra& B) {
  if (A.total.dim != B.total.dim) throw Error("DimensionMismatch", "algebras have different dimensions");
  if (F.rows != A.total.dim || F.cols != A.total.dim) throw Error("DimensionMismatch", "map has wrong shape");
  if (det(F).is_zero()) return false;
  if (!bracket_preserving(F, A.total, B.total)) return false;

  int n = A.total.dim;
  auto col = [&F, n](int j) {
    VecQ v(n);
    for (int i = 0; i < n; ++i) v[i] = F.at(i, j);
    return v;
  };
  auto subspace = [n](const std::vector<int>& idx) {
    std::vector<VecQ> b;
    for (int i : idx) {
      VecQ e(n);
      e[i] = Rational(1);
      b.push_back(e);
    }
    return b;
  };
  std::vector<int> m_idx{0, 1, 2};
  auto hB = subspace(B.isotropy_indices), mB = subspace(m_idx);
  for (int i : A.isotropy_indices)
    if (!in_span(col(i), hB, n)) return false;
  for (int i : m_idx)
    if (!in_span(col(i), mB, n)) return false;
  // metric preservation on m (identity metric on the first three coordinates)
  for (int i : m_idx)
    for (int j : m_idx) {
      Rational dot;
      for (int k = 0; k < 3; ++k) dot += F.at(k, i) * F.at(k, j);
      if (dot != Rational(delta(i, j))) return false;
    }
  return true;
}

/// If a 3-dimensional algebra has exactly the unimodular-basis bracket
/// shape [e1,e2]=c3 e3, [e2,e3]=c1 e1, [e3,e1]=c2 e2, read off (c1,c2,c3).
inline std::optional<std::array<Rational, 3>> try_unimodular_constants(const LieAlgebra& L) {
  if (L.dim != 3) return std::nullopt;
  const int pat[3][3] = {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}};  // [e_i,e_j] = c e_k
  std::array<Rational, 3> c;
  for (int q = 0; q < 3; ++q) {
    int i = pat[q][0], j = pat[q][1], k = pat[q][2];
    for (int l = 0; l < 3; ++l)
      if (l != k && !L.at(i, j, l).is_zero()) return std::nullopt;
    c[q] = L.at(i, j, k);
  }
  return c;
}

/// Holonomy behaviour of a structure family: dimension at generic parameter
/// values and the rational parameters where the curvature operators vanish
/// entirely (the flat members).
struct FamilyHolonomy {
  int generic_dim = 0;
  std::vector<Rational> flat_parameters;
};

inline FamilyHolonomy family_holonomy(const MetricLieAlgebra& g, const StructureFamily& fam) {
  Connection lc = levi_civita(g);
  Ten3<Poly> gt;
  Poly t = Poly::variable(0);
  for (int i = 0; i < 27; ++i) gt.t[i] = Poly(lc.gamma.t[i]) + Poly(fam.base.S.t[i]) + fam.direction.S.t[i] * t;
  auto ops = as_curvature_ops<Poly>(g, gt);

  FamilyHolonomy out;
  std::vector<Rational> gcd{};  // gcd of all entries as univariate polys in t
  bool any = false;
  for (const auto* m : {&ops.op01, &ops.op12, &ops.op20})
    for (const auto& e : m->m) {
      if (e.is_zero()) continue;
      auto c = uni_coeffs(e, 0);
      gcd = any ? uni_gcd(gcd, c) : uni_trim(c);
      any = true;
    }
  if (!any) return out;  // flat for every parameter

  std::vector<Rational> flat_candidates;
  auto roots = rational_roots(gcd);
  flat_candidates = roots.roots;

  // generic dimension: evaluate at a parameter value away from the vanishing set
  Rational probe(0);
  auto is_candidate = [&flat_candidates](const Rational& r) {
    for (const auto& c : flat_candidates)
      if (c == r) return true;
    return false;
  };
  while (is_candidate(probe)) probe += Rational(1);
  auto eval_ops = [&](const Rational& r) {
    std::array<Rational, Poly::kVars> args{r, Rational(0), Rational(0)};
    ASCurvature<Rational> o;
    o.op01 = map_mat3<Poly, Rational>(ops.op01, [&](const Poly& p) { return p.eval(args); });
    o.op12 = map_mat3<Poly, Rational>(ops.op12, [&](const Poly& p) { return p.eval(args); });
    o.op20 = map_mat3<Poly, Rational>(ops.op20, [&](const Poly& p) { return p.eval(args); });
    return o;
  };
  out.generic_dim = static_cast<int>(holonomy_algebra(eval_ops(probe)).size());
  for (const auto& r : flat_candidates)
    if (eval_ops(r).is_zero()) out.flat_parameters.push_back(r);
  return out;
}

}  // namespace homog3
