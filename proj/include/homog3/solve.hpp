#pragma once

#include <algorithm>
#include <optional>
#include <variant>
#include <vector>

#include "homog3/linalg.hpp"
#include "homog3/polynomial.hpp"

namespace homog3 {

/// Rational solution structure of a small polynomial system: isolated
/// rational points, rational affine lines, and `unresolved` carrying the
/// defining polynomials of any residual component that is neither.
struct SolutionSet {
  struct Line {
    VecQ base;
    VecQ direction;
  };
  std::vector<VecQ> points;
  std::vector<Line> lines;
  std::vector<Poly> unresolved;

  bool fully_resolved() const { return unresolved.empty(); }
};

namespace detail {

inline Poly restrict_to_flat(const Poly& p, const AffineFlat& f) {
  int n = static_cast<int>(f.base.size());
  std::array<Poly, Poly::kVars> subs;
  for (int j = 0; j < Poly::kVars; ++j) {
    Poly s(j < n ? f.base[j] : Rational(0));
    for (size_t a = 0; a < f.directions.size(); ++a)
      if (j < n) s += f.directions[a][j] * Poly::variable(static_cast<int>(a));
    subs[j] = s;
  }
  return p.eval_generic<Poly>(subs);
}

inline AffineFlat t_flat_to_ambient(const AffineFlat& f, const AffineFlat& tf, int n) {
  VecQ base = f.base;
  for (size_t a = 0; a < f.directions.size(); ++a) base = base + tf.base[a] * f.directions[a];
  std::vector<VecQ> dirs;
  for (const auto& td : tf.directions) {
    VecQ d(n);
    for (size_t a = 0; a < f.directions.size(); ++a) d = d + td[a] * f.directions[a];
    dirs.push_back(d);
  }
  return canonical_flat(base, dirs, n);
}

/// Affine left inverse of the flat parametrization: t(x) with
/// t(base + P t0) = t0. Exists exactly because directions are independent.
inline std::vector<Poly> flat_param_inverse(const AffineFlat& f, int n) {
  int d = f.dim();
  MatQ PtP(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Rational s;
      for (int j = 0; j < n; ++j) s += f.directions[a][j] * f.directions[b][j];
      PtP.at(a, b) = s;
    }
  // invert PtP by solving against identity columns
  MatQ inv(d, d);
  for (int c = 0; c < d; ++c) {
    VecQ e(d);
    e[c] = Rational(1);
    auto sol = solve_linear(PtP, e);
    for (int r = 0; r < d; ++r) inv.at(r, c) = sol->base[r];
  }
  std::vector<Poly> t(static_cast<size_t>(d));
  for (int a = 0; a < d; ++a) {
    Poly expr;
    for (int j = 0; j < n; ++j) {
      Rational m;
      for (int b = 0; b < d; ++b) m += inv.at(a, b) * f.directions[b][j];
      if (!m.is_zero()) expr += m * (Poly::variable(j) - Poly(f.base[j]));
    }
    t[a] = expr;
  }
  return t;
}

inline Poly t_poly_to_ambient(const AffineFlat& f, const Poly& q, int n) {
  auto t = flat_param_inverse(f, n);
  std::array<Poly, Poly::kVars> subs;
  for (int a = 0; a < Poly::kVars; ++a) subs[a] = a < static_cast<int>(t.size()) ? t[a] : Poly();
  return q.eval_generic<Poly>(subs);
}

/// Linear equations cutting out the flat (normals to its direction space).
inline std::vector<Poly> flat_equations(const AffineFlat& f, int n) {
  MatQ rows(static_cast<int>(f.directions.size()), n);
  for (size_t a = 0; a < f.directions.size(); ++a)
    for (int j = 0; j < n; ++j) rows.at(static_cast<int>(a), j) = f.directions[a][j];
  std::vector<Poly> eqs;
  for (const auto& nrm : null_space(rows)) {
    Poly p;
    Rational c;
    for (int j = 0; j < n; ++j) {
      p += nrm[j] * Poly::variable(j);
      c += nrm[j] * f.base[j];
    }
    p -= Poly(c);
    eqs.push_back(p);
  }
  if (eqs.empty() && f.dim() == n) eqs.push_back(Poly());  // zero ideal
  return eqs;
}

inline AffineFlat full_flat(int n) {
  AffineFlat f;
  f.base = VecQ(n);
  for (int j = 0; j < n; ++j) {
    VecQ e(n);
    e[j] = Rational(1);
    f.directions.push_back(e);
  }
  return f;
}

/// Intersect a flat with a single linear equation (in the flat's t-space).
inline std::optional<AffineFlat> cut_linear(const AffineFlat& f, const Poly& lin_t, int n) {
  int d = f.dim();
  MatQ A(1, d);
  Poly::Mono m0{0, 0, 0};
  for (int a = 0; a < d; ++a) {
    Poly::Mono m{0, 0, 0};
    m[a] = 1;
    A.at(0, a) = lin_t.coefficient(m);
  }
  VecQ b{-lin_t.coefficient(m0)};
  auto sol = solve_linear(A, b);
  if (!sol) return std::nullopt;
  return t_flat_to_ambient(f, *sol, n);
}

struct QuadricOnFlat {
  enum class Kind { Empty, Flat, Curved } kind;
  AffineFlat flat;  // valid when kind == Flat
};

/// Real zero set of one non-factorable quadratic restricted to t-space.
/// Semidefinite forms give an exact answer (empty or an affine flat);
/// everything else is a curved component.
inline QuadricOnFlat quadric_real_zeros(const Poly& q, int tdim) {
  MatQ A(tdim, tdim);
  VecQ b(tdim);
  for (int a = 0; a < tdim; ++a) {
    Poly::Mono m{0, 0, 0};
    m[a] = 2;
    A.at(a, a) = q.coefficient(m);
    for (int c = a + 1; c < tdim; ++c) {
      Poly::Mono mc{0, 0, 0};
      mc[a] = 1;
      mc[c] = 1;
      Rational half = Rational(1, 2) * q.coefficient(mc);
      A.at(a, c) = half;
      A.at(c, a) = half;
    }
    Poly::Mono ml{0, 0, 0};
    ml[a] = 1;
    b[a] = q.coefficient(ml);
  }
  Inertia in = inertia(A);
  if (in.n_plus > 0 && in.n_minus > 0) return {QuadricOnFlat::Kind::Curved, {}};
  int sigma = in.n_plus > 0 ? 1 : -1;
  auto center = solve_linear(A, Rational(-1, 2) * b);
  if (!center) return {QuadricOnFlat::Kind::Curved, {}};  // paraboloid type
  std::array<Rational, Poly::kVars> x0{};
  for (int a = 0; a < tdim; ++a) x0[a] = center->base[a];
  Rational rest = q.eval(x0);
  if ((sigma > 0 && rest.sign() > 0) || (sigma < 0 && rest.sign() < 0))
    return {QuadricOnFlat::Kind::Empty, {}};
  if (!rest.is_zero()) return {QuadricOnFlat::Kind::Curved, {}};
  AffineFlat f;
  f.base = center->base;
  f.directions = center->directions;  // kernel of A
  return {QuadricOnFlat::Kind::Flat, f};
}

inline void dedupe_absorb(std::vector<AffineFlat>& flats) {
  std::stable_sort(flats.begin(), flats.end(),
                   [](const AffineFlat& a, const AffineFlat& b) { return a.dim() > b.dim(); });
  std::vector<AffineFlat> kept;
  for (const auto& f : flats) {
    bool absorbed = false;
    for (const auto& g : kept)
      if (flat_contains_flat(g, f)) { absorbed = true; break; }
    if (!absorbed) kept.push_back(f);
  }
  flats = kept;
}

}  // namespace detail

/// All rational points and rational affine lines in the common zero set of
/// a system of polynomials of total degree <= 2 in <= 3 variables.
/// Components that are neither (curved conics, irrational loci, flats of
/// dimension >= 2) are reported through `unresolved` by their defining
/// polynomials; nothing is ever approximated.
inline SolutionSet solve_quadratic_small(const std::vector<Poly>& input, int nvars) {
  if (nvars < 1 || nvars > Poly::kVars) throw Error("BadArity", "solve_quadratic_small needs 1..3 variables");
  for (const auto& p : input) {
    if (p.degree() > 2) throw Error("BadDegree", "solve_quadratic_small accepts total degree <= 2");
    for (int k = nvars; k < Poly::kVars; ++k)
      if (p.degree_in(k) > 0) throw Error("BadArity", "polynomial uses a variable outside the declared count");
  }

  std::vector<Poly> polys;
  for (const auto& p : input)
    if (!p.is_zero()) polys.push_back(p);
  std::stable_sort(polys.begin(), polys.end(),
                   [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });

  SolutionSet out;
  for (const auto& p : polys)
    if (p.is_constant() && !p.is_zero()) return out;  // inconsistent

  std::vector<AffineFlat> flats{detail::full_flat(nvars)};
  for (const auto& p : polys) {
    std::vector<AffineFlat> next;
    for (const auto& f : flats) {
      Poly q = detail::restrict_to_flat(p, f);
      if (q.is_zero()) {
        next.push_back(f);
        continue;
      }
      if (q.is_constant()) continue;  // no zeros on this flat
      if (q.degree() == 1) {
        if (auto cut = detail::cut_linear(f, q, nvars)) next.push_back(*cut);
        continue;
      }
      if (auto fs = factor_into_linears(q)) {
        for (const auto& l : *fs)
          if (l.degree() == 1)
            if (auto cut = detail::cut_linear(f, l, nvars)) next.push_back(*cut);
        continue;
      }
      auto qr = detail::quadric_real_zeros(q, f.dim());
      switch (qr.kind) {
        case detail::QuadricOnFlat::Kind::Empty:
          break;
        case detail::QuadricOnFlat::Kind::Flat:
          next.push_back(detail::t_flat_to_ambient(f, qr.flat, nvars));
          break;
        case detail::QuadricOnFlat::Kind::Curved: {
          for (const auto& eq : detail::flat_equations(f, nvars))
            if (!eq.is_zero()) out.unresolved.push_back(eq);
          out.unresolved.push_back(f.dim() == nvars ? p : detail::t_poly_to_ambient(f, q, nvars));
          break;
        }
      }
    }
    detail::dedupe_absorb(next);
    flats = next;
  }

  for (const auto& f : flats) {
    if (f.dim() == 0) {
      out.points.push_back(f.base);
    } else if (f.dim() == 1) {
      out.lines.push_back({f.base, primitive(f.directions[0])});
    } else {
      // a component of dimension >= 2 is neither a point nor a line
      for (const auto& eq : detail::flat_equations(f, nvars)) out.unresolved.push_back(eq);
    }
  }

  auto vec_less = [](const VecQ& a, const VecQ& b) {
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return false;
  };
  std::sort(out.points.begin(), out.points.end(), vec_less);
  std::sort(out.lines.begin(), out.lines.end(), [&](const SolutionSet::Line& a, const SolutionSet::Line& b) {
    return vec_less(a.base, b.base) || (a.base == b.base && vec_less(a.direction, b.direction));
  });

  // soundness: every reported solution satisfies every input equation exactly
  for (const auto& pt : out.points) {
    std::array<Rational, Poly::kVars> x{};
    for (int j = 0; j < nvars; ++j) x[j] = pt[j];
    for (const auto& p : polys)
      if (!p.eval(x).is_zero()) throw Error("SolverInternal", "reported point fails an equation");
  }
  for (const auto& ln : out.lines) {
    std::array<Poly, Poly::kVars> x{};
    for (int j = 0; j < nvars; ++j) x[j] = Poly(ln.base[j]) + ln.direction[j] * Poly::variable(0);
    for (const auto& p : polys)
      if (!p.eval_generic<Poly>(x).is_zero()) throw Error("SolverInternal", "reported line fails an equation");
  }
  return out;
}

}  // namespace homog3
