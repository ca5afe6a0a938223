#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homog3/curvature.hpp"
#include "homog3/lie_metric.hpp"
#include "homog3/polynomial.hpp"
#include "homog3/solve.hpp"
#include "homog3/tensor.hpp"

namespace homog3 {

/// Homogeneous Riemannian structure candidate in covariant form,
/// S(i,j,k) = S_flat(e_i, e_j, e_k), skew in the last two slots.
struct HomStructure {
  Ten3Q S;

  bool metrical() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (S(i, j, k) != -S(i, k, j)) return false;
    return true;
  }
  bool is_zero() const { return S.is_zero(); }
  friend bool operator==(const HomStructure&, const HomStructure&) = default;

  /// S as a (1,2) tensor: S(e_i) e_j = sum_k S(i,j,k) e_k (identity metric).
  Vec3Q apply(const Vec3Q& x, const Vec3Q& y) const {
    Vec3Q r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (x[i].is_zero() || y[j].is_zero()) continue;
        for (int k = 0; k < 3; ++k) r[k] += x[i] * y[j] * S(i, j, k);
      }
    return r;
  }
};

inline bool equal_structures(const HomStructure& a, const HomStructure& b) { return a.S == b.S; }

/// One-parameter affine family r -> base + r * direction.
struct StructureFamily {
  HomStructure base;
  HomStructure direction;
  std::string parameter = "r";

  HomStructure member(const Rational& r) const { return HomStructure{base.S + r * direction.S}; }
};

/// Same affine line in tensor space (possibly reparametrized).
inline bool same_line(const StructureFamily& a, const StructureFamily& b) {
  VecQ da(a.direction.S.t.begin(), a.direction.S.t.end());
  VecQ db(b.direction.S.t.begin(), b.direction.S.t.end());
  if (is_zero(da) || is_zero(db)) return false;
  if (!in_span(db, {da}, 27)) return false;
  VecQ ba(a.base.S.t.begin(), a.base.S.t.end());
  VecQ bb(b.base.S.t.begin(), b.base.S.t.end());
  return in_span(bb - ba, {da}, 27);
}

enum class CanonicalConnection { Minus, Plus, Zero };

/// Difference tensor of a Cartan-Schouten connection:
/// minus: S(X)Y = -nabla_X Y; plus: S(X)Y = [X,Y] - nabla_X Y;
/// zero: S(X)Y = [X,Y]/2 - nabla_X Y.
inline HomStructure canonical_structure(const MetricLieAlgebra& g, CanonicalConnection which) {
  Connection lc = levi_civita(g);
  HomStructure s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Rational v = -lc.gamma(i, j, k);
        if (which == CanonicalConnection::Plus) v += g.c(i, j, k);
        if (which == CanonicalConnection::Zero) v += Rational(1, 2) * g.c(i, j, k);
        s.S(i, j, k) = v;
      }
  return s;
}

/// The one-parameter family on unimodular algebras with c1 = c2 != c3, c3 != 0:
/// member(r) has S(1,2,3) = S(2,3,1) = -c3/2 and S(3,1,2) = -r.
inline StructureFamily s4_family(const MetricLieAlgebra& g) {
  const NormalForm& f = g.form();
  if (f.kind != NormalFormKind::Unimodular || f.c[0] != f.c[1] || f.c[0] == f.c[2] || f.c[2].is_zero())
    throw Error("WrongNormalForm", "s4_family needs unimodular constants c1 = c2 != c3 with c3 != 0");
  StructureFamily fam;
  Rational h = Rational(-1, 2) * f.c[2];
  fam.base.S(0, 1, 2) = h;
  fam.base.S(0, 2, 1) = -h;
  fam.base.S(1, 2, 0) = h;
  fam.base.S(1, 0, 2) = -h;
  fam.direction.S(2, 0, 1) = Rational(-1);
  fam.direction.S(2, 1, 0) = Rational(1);
  return fam;
}

/// The SO(2)-isotropy family on g(1, beta), beta != 0:
/// member(r) has S(1,2,3) = S(2,3,1) = -beta and S(3,1,2) = -r.
inline StructureFamily so2_family(const MetricLieAlgebra& g) {
  const NormalForm& f = g.form();
  if (f.kind != NormalFormKind::NonUnimodular || f.alpha != Rational(1) || f.beta.is_zero())
    throw Error("WrongNormalForm", "so2_family needs the non-unimodular form (1, beta) with beta != 0");
  StructureFamily fam;
  fam.base.S(0, 1, 2) = -f.beta;
  fam.base.S(0, 2, 1) = f.beta;
  fam.base.S(1, 2, 0) = -f.beta;
  fam.base.S(1, 0, 2) = f.beta;
  fam.direction.S(2, 0, 1) = Rational(-1);
  fam.direction.S(2, 1, 0) = Rational(1);
  return fam;
}

// ---------------------------------------------------------------------------
// Tricerri-Vanhecke decomposition

enum class TVClass { Symmetric, T1, T2, T3, T1T2, T1T3, T2T3, T1T2T3 };

inline std::string tv_class_name(TVClass c) {
  switch (c) {
    case TVClass::Symmetric: return "symmetric (S = 0)";
    case TVClass::T1: return "T1";
    case TVClass::T2: return "T2";
    case TVClass::T3: return "T3";
    case TVClass::T1T2: return "T1+T2";
    case TVClass::T1T3: return "T1+T3";
    case TVClass::T2T3: return "T2+T3";
    case TVClass::T1T2T3: return "T1+T2+T3";
  }
  return "?";
}

struct TVDecomposition {
  Ten3Q S1, S2, S3;
  TVClass cls;
  Vec3Q xi;  // trace vector of the T1 part
};

inline TVDecomposition tv_decompose(const HomStructure& s) {
  if (!s.metrical()) throw Error("MetricalConditionViolated", "S must be skew in its last two slots");
  TVDecomposition d;
  // omega(Z) = c12(S_flat)(Z) / 2
  Vec3Q omega;
  for (int k = 0; k < 3; ++k) {
    Rational t;
    for (int i = 0; i < 3; ++i) t += s.S(i, i, k);
    omega[k] = Rational(1, 2) * t;
  }
  d.xi = omega;
  Ten3Q cyc;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        d.S1(i, j, k) = Rational(delta(i, j)) * omega[k] - Rational(delta(k, i)) * omega[j];
        cyc(i, j, k) = s.S(i, j, k) + s.S(j, k, i) + s.S(k, i, j);
        d.S3(i, j, k) = Rational(1, 3) * cyc(i, j, k);
      }
  d.S2 = s.S - d.S1 - d.S3;

  auto c12_zero = [&] {
    for (int k = 0; k < 3; ++k)
      if (!omega[k].is_zero()) return false;
    return true;
  };
  auto cyclic_zero = [&] { return cyc.is_zero(); };
  auto t1_shape = [&] { return s.S == d.S1; };
  auto t3_shape = [&] {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (s.S(i, j, k) != -s.S(j, i, k)) return false;
    return true;
  };
  auto t1t3_shape = [&] {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          Rational rhs = Rational(2 * delta(i, j)) * omega[k] - Rational(delta(k, i)) * omega[j] -
                         Rational(delta(j, k)) * omega[i];
          if (s.S(i, j, k) + s.S(j, i, k) != rhs) return false;
        }
    return true;
  };

  if (s.S.is_zero()) d.cls = TVClass::Symmetric;
  else if (t1_shape()) d.cls = TVClass::T1;
  else if (cyclic_zero() && c12_zero()) d.cls = TVClass::T2;
  else if (t3_shape()) d.cls = TVClass::T3;
  else if (cyclic_zero()) d.cls = TVClass::T1T2;
  else if (t1t3_shape()) d.cls = TVClass::T1T3;
  else if (c12_zero()) d.cls = TVClass::T2T3;
  else d.cls = TVClass::T1T2T3;
  return d;
}

// ---------------------------------------------------------------------------
// Ambrose-Singer verification

/// Residual tensors of the four Ambrose-Singer conditions for nabla~ = nabla + S,
/// computed over a scalar ring T so the same code serves exact verification
/// (T = Rational) and symbolic systems in unknowns or a family parameter
/// (T = Poly).
template <class T>
struct ASResiduals {
  Ten3<T> metric;               // S(i,j,k) + S(i,k,j)
  Ten3<T> ricci;                // (nabla~_i Ric)(e_j, e_k)
  std::array<T, 243> curv{};    // (nabla~_m R)(i,j,k,l)
  std::array<T, 81> spar{};     // (nabla~_i S)(j,k,l)

  bool metric_zero() const { return metric.is_zero(); }
  bool ricci_zero() const { return ricci.is_zero(); }
  bool curv_zero() const {
    for (const auto& x : curv)
      if (!x.is_zero()) return false;
    return true;
  }
  bool spar_zero() const {
    for (const auto& x : spar)
      if (!x.is_zero()) return false;
    return true;
  }
  bool all_zero() const { return metric_zero() && ricci_zero() && curv_zero() && spar_zero(); }
};

template <class T>
ASResiduals<T> as_residuals(const Connection& lc, const CurvatureData& cd, const Ten3<T>& S) {
  ASResiduals<T> r;
  Ten3<T> gt;  // Gamma~ = Gamma + S
  for (int i = 0; i < 27; ++i) gt.t[i] = T{lc.gamma.t[i]} + S.t[i];

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        r.metric(i, j, k) = S(i, j, k) + S(i, k, j);
        T acc{};
        for (int m = 0; m < 3; ++m)
          acc = acc + gt(i, j, m) * T{cd.ric(m, k)} + gt(i, k, m) * T{cd.ric(j, m)};
        r.ricci(i, j, k) = -acc;
      }

  int q = 0;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            T acc{};
            for (int p = 0; p < 3; ++p)
              acc = acc + gt(m, i, p) * T{cd.R(p, j, k, l)} + gt(m, j, p) * T{cd.R(i, p, k, l)} +
                    gt(m, k, p) * T{cd.R(i, j, p, l)} + gt(m, l, p) * T{cd.R(i, j, k, p)};
            r.curv[q++] = -acc;
          }

  q = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          T acc{};
          for (int m = 0; m < 3; ++m)
            acc = acc + gt(i, j, m) * S(m, k, l) + gt(i, k, m) * S(j, m, l) + gt(i, l, m) * S(j, k, m);
          r.spar[q++] = -acc;
        }
  return r;
}

struct ResidualEntry {
  std::array<int, 5> index{};
  int arity = 0;
  Rational value;
};

/// Exact pass/fail report for the Ambrose-Singer conditions of nabla + S.
struct AmbroseSingerReport {
  bool metric_ok = false;
  bool ricci_parallel_ok = false;
  bool curvature_parallel_ok = false;
  bool s_parallel_ok = false;
  std::vector<ResidualEntry> metric_residuals, ricci_residuals, curvature_residuals, s_residuals;

  bool pass() const { return metric_ok && ricci_parallel_ok && curvature_parallel_ok && s_parallel_ok; }
};

inline AmbroseSingerReport as_verify(const MetricLieAlgebra& g, const HomStructure& s) {
  Connection lc = levi_civita(g);
  CurvatureData cd = curvature(g, lc);
  auto r = as_residuals<Rational>(lc, cd, s.S);
  AmbroseSingerReport rep;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (!r.metric(i, j, k).is_zero()) rep.metric_residuals.push_back({{i, j, k, 0, 0}, 3, r.metric(i, j, k)});
        if (!r.ricci(i, j, k).is_zero()) rep.ricci_residuals.push_back({{i, j, k, 0, 0}, 3, r.ricci(i, j, k)});
      }
  int q = 0;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            if (!r.curv[q].is_zero()) rep.curvature_residuals.push_back({{m, i, j, k, l}, 5, r.curv[q]});
            ++q;
          }
  q = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          if (!r.spar[q].is_zero()) rep.s_residuals.push_back({{i, j, k, l, 0}, 4, r.spar[q]});
          ++q;
        }
  rep.metric_ok = rep.metric_residuals.empty();
  rep.ricci_parallel_ok = rep.ricci_residuals.empty();
  rep.curvature_parallel_ok = rep.curvature_residuals.empty();
  rep.s_parallel_ok = rep.s_residuals.empty();
  return rep;
}

/// A family passes when every Ambrose-Singer residual vanishes identically
/// in the parameter (stronger than sampling).
inline bool family_verifies(const MetricLieAlgebra& g, const StructureFamily& fam) {
  Connection lc = levi_civita(g);
  CurvatureData cd = curvature(g, lc);
  Ten3<Poly> S;
  Poly t = Poly::variable(0);
  for (int i = 0; i < 27; ++i) S.t[i] = Poly(fam.base.S.t[i]) + fam.direction.S.t[i] * t;
  return as_residuals<Poly>(lc, cd, S).all_zero();
}

// ---------------------------------------------------------------------------
// the left-invariant solver

struct SolverOutcome {
  enum class Kind { LocallySymmetric, SpaceForm, Solutions };
  Kind kind = Kind::Solutions;
  std::optional<Rational> space_form_curvature;
  std::vector<HomStructure> structures;
  std::vector<StructureFamily> families;
  bool non_left_invariant_extras_possible = false;
  std::string note;
};

namespace detail {

inline bool sl2r_type_s4_input(const MetricLieAlgebra& g) {
  const NormalForm& f = g.form();
  if (f.kind == NormalFormKind::NonUnimodular) return f.alpha == Rational(1) && !f.beta.is_zero();
  if (f.kind != NormalFormKind::Unimodular) return false;
  bool pair_form = (f.c[0] == f.c[1] && f.c[0] != f.c[2] && !f.c[2].is_zero()) ||
                   (f.c[1] == f.c[2] && f.c[1] != f.c[0] && !f.c[0].is_zero()) ||
                   (f.c[2] == f.c[0] && f.c[2] != f.c[1] && !f.c[1].is_zero());
  if (!pair_form) return false;
  return classify_unimodular_signs(milnor_sign_pattern(f.c)) == UnimodularGroup::SL2R;
}

}  // namespace detail

/// Classification of left-invariant homogeneous Riemannian structures on g.
/// Case split on the exact principal Ricci multiplicity:
///  - triple eigenvalue: constant-curvature space form, classification
///    delegated (out of scope marker);
///  - locally symmetric: delegated (out of scope marker);
///  - distinct eigenvalues: the candidate forced by the Ricci parallelism
///    equations, which is the (-)-structure;
///  - one repeated pair: two component 1-forms forced, the remaining 1-form
///    sigma solved from the exact quadratic system nabla~ S = 0.
inline SolverOutcome solve_left_invariant(const MetricLieAlgebra& g) {
  SolverOutcome out;
  Connection lc = levi_civita(g);
  CurvatureData cd = curvature(g, lc);

  MatQ ric(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ric.at(i, j) = cd.ric(i, j);
  auto info = char_poly_multiplicities(ric);

  if (info.pattern == MultiplicityPattern::Triple) {
    out.kind = SolverOutcome::Kind::SpaceForm;
    out.space_form_curvature = constant_curvature_check(g);
    out.note = "space form - locally symmetric - classification out of scope (Abe/Ohno)";
    return out;
  }
  if (is_locally_symmetric(g)) {
    out.kind = SolverOutcome::Kind::LocallySymmetric;
    out.note = "locally symmetric - classification out of scope (Abe/Ohno)";
    return out;
  }

  out.kind = SolverOutcome::Kind::Solutions;
  out.non_left_invariant_extras_possible = detail::sl2r_type_s4_input(g);
  if (out.non_left_invariant_extras_possible)
    out.note = "possible non-left-invariant extras exist for sl(2,R)-type input";

  HomStructure minus = canonical_structure(g, CanonicalConnection::Minus);

  if (info.pattern == MultiplicityPattern::Distinct) {
    if (as_verify(g, minus).pass()) out.structures.push_back(minus);
    return out;
  }

  // one repeated pair: need the frame to diagonalize Ric
  if (!cd.ricci_diagonal())
    throw Error("RicciNotDiagonal", "repeated Ricci eigenvalue requires a frame diagonalizing Ric");
  Vec3Q rho = *cd.principal_ricci();
  int a = -1, b = -1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (rho[i] == rho[j]) { a = i; b = j; }

  // forced components on slot pairs with distinct Ricci values; unknown
  // 1-form sigma on the repeated pair
  Ten3<Poly> S;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (j == k) continue;
        if ((j == a && k == b) || (j == b && k == a)) {
          Poly sig = Poly::variable(i);
          S(i, j, k) = (j == a) ? sig : -sig;
        } else {
          S(i, j, k) = Poly(minus.S(i, j, k));
        }
      }

  auto res = as_residuals<Poly>(lc, cd, S);
  std::vector<Poly> sys;
  auto push = [&sys](const Poly& p) {
    if (p.is_zero()) return;
    Poly n = p.normalized();
    for (const auto& q : sys)
      if (q == n) return;
    sys.push_back(n);
  };
  for (const auto& p : res.metric.t) push(p);
  for (const auto& p : res.ricci.t) push(p);
  for (const auto& p : res.spar) push(p);

  auto sols = solve_quadratic_small(sys, 3);
  if (!sols.unresolved.empty())
    out.note += std::string(out.note.empty() ? "" : "; ") + "sigma system left unresolved components";

  auto instantiate = [&](const VecQ& sigma) {
    HomStructure h;
    std::array<Rational, Poly::kVars> args{sigma[0], sigma[1], sigma[2]};
    for (int i = 0; i < 27; ++i) h.S.t[i] = S.t[i].eval(args);
    return h;
  };
  for (const auto& pt : sols.points) {
    HomStructure h = instantiate(pt);
    if (as_verify(g, h).pass()) out.structures.push_back(h);
  }
  for (const auto& ln : sols.lines) {
    StructureFamily fam;
    fam.base = instantiate(ln.base);
    HomStructure at1 = instantiate(ln.base + ln.direction);
    // orient the parameter to match the named families (member(r) carries
    // -r in the repeated-pair slot)
    fam.direction.S = fam.base.S - at1.S;
    if (family_verifies(g, fam)) out.families.push_back(fam);
  }
  return out;
}

}  // namespace homog3
