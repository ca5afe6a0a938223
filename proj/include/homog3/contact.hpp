#pragma once

#include <optional>

#include "homog3/curvature.hpp"
#include "homog3/homstruct.hpp"
#include "homog3/lie_metric.hpp"

namespace homog3 {

/// Almost contact structure (phi, xi, eta) compatible with the metric.
struct AlmostContactStructure {
  Mat3Q phi;
  Vec3Q xi;
  Vec3Q eta;  // covector components eta(e_i)

  bool valid() const {
    // phi^2 = -I + eta (x) xi and eta(xi) = 1
    Mat3Q lhs = phi * phi;
    Mat3Q rhs;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rhs(i, j) = -Rational(delta(i, j)) + xi[i] * eta[j];
    if (!(lhs == rhs)) return false;
    if (eta.dot(xi) != Rational(1)) return false;
    // compatibility g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y)
    Mat3Q gram = phi.transposed() * phi;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (gram(i, j) != Rational(delta(i, j)) - eta[i] * eta[j]) return false;
    return true;
  }
};

/// The left-invariant reference structures: on unimodular input
/// xi = e1, phi e2 = e3, phi e3 = -e2; on the non-unimodular form (1, beta)
/// xi = e3, phi e1 = e2, phi e2 = -e1.
inline AlmostContactStructure standard_acs(const MetricLieAlgebra& g) {
  const NormalForm& f = g.form();
  AlmostContactStructure a;
  if (f.kind == NormalFormKind::Unimodular) {
    a.xi[0] = Rational(1);
    a.eta[0] = Rational(1);
    a.phi(2, 1) = Rational(1);   // phi e2 = e3
    a.phi(1, 2) = Rational(-1);  // phi e3 = -e2
  } else if (f.kind == NormalFormKind::NonUnimodular && f.alpha == Rational(1)) {
    a.xi[2] = Rational(1);
    a.eta[2] = Rational(1);
    a.phi(1, 0) = Rational(1);   // phi e1 = e2
    a.phi(0, 1) = Rational(-1);  // phi e2 = -e1
  } else {
    throw Error("UnsupportedForm", "standard_acs needs a unimodular form or the non-unimodular form (1, beta)");
  }
  if (!a.valid()) throw Error("UnsupportedForm", "constructed structure failed validation");
  return a;
}

/// d eta for a left-invariant 1-form: d eta(X,Y) = -eta([X,Y]) / 2.
inline Rational d_eta(const MetricLieAlgebra& g, const AlmostContactStructure& a, int i, int j) {
  Rational s;
  for (int k = 0; k < 3; ++k) s += g.c(i, j, k) * a.eta[k];
  return Rational(-1, 2) * s;
}

/// The positive constant b with d eta(X,Y) = b g(X, phi Y), when it exists.
inline std::optional<Rational> contact_metric_constant(const MetricLieAlgebra& g, const AlmostContactStructure& a) {
  std::optional<Rational> beta;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Rational lhs = d_eta(g, a, i, j);
      Rational rhs = a.phi(i, j);  // g(e_i, phi e_j) = (phi)_{ij}
      if (rhs.is_zero()) {
        if (!lhs.is_zero()) return std::nullopt;
        continue;
      }
      Rational candidate = lhs / rhs;
      if (beta && *beta != candidate) return std::nullopt;
      beta = candidate;
    }
  if (!beta || beta->sign() <= 0) return std::nullopt;
  return beta;
}

/// h = (Lie_xi phi)/2 with (Lie_xi phi) X = [xi, phi X] - phi [xi, X].
inline Mat3Q h_tensor(const MetricLieAlgebra& g, const AlmostContactStructure& a) {
  Mat3Q h;
  for (int j = 0; j < 3; ++j) {
    Vec3Q ej;
    ej[j] = Rational(1);
    Vec3Q v = g.bracket(a.xi, a.phi.apply(ej)) - a.phi.apply(g.bracket(a.xi, ej));
    for (int i = 0; i < 3; ++i) h(i, j) = Rational(1, 2) * v[i];
  }
  return h;
}

/// Constants of the curvature identity R(X,Y)xi = (kappa I + mu h)(eta(Y)X - eta(X)Y).
/// kappa (or mu) is absent when undetermined; both absent when the identity
/// has no solution or the structure is not contact metric (constant != 1).
struct KappaMu {
  std::optional<Rational> kappa, mu;
};

inline KappaMu kappa_mu(const MetricLieAlgebra& g, const AlmostContactStructure& a) {
  KappaMu out;
  auto beta = contact_metric_constant(g, a);
  if (!beta || *beta != Rational(1)) return out;
  CurvatureData cd = curvature(g, levi_civita(g));
  Mat3Q h = h_tensor(g, a);

  std::vector<std::array<Rational, 3>> rows;  // kappa coeff, mu coeff, rhs
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec3Q w;
      for (int k = 0; k < 3; ++k) w[k] = a.eta[j] * Rational(delta(i, k)) - a.eta[i] * Rational(delta(j, k));
      Vec3Q hw = h.apply(w);
      for (int l = 0; l < 3; ++l) {
        Rational lhs;
        for (int k = 0; k < 3; ++k) lhs += a.xi[k] * cd.R(i, j, k, l);
        rows.push_back({w[l], hw[l], lhs});
      }
    }
  MatQ A(static_cast<int>(rows.size()), 2);
  VecQ b(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    A.at(static_cast<int>(r), 0) = rows[r][0];
    A.at(static_cast<int>(r), 1) = rows[r][1];
    b[r] = rows[r][2];
  }
  auto sol = solve_linear(A, b);
  if (!sol) return out;
  bool kappa_free = false, mu_free = false;
  for (const auto& d : sol->directions) {
    kappa_free = kappa_free || !d[0].is_zero();
    mu_free = mu_free || !d[1].is_zero();
  }
  if (!kappa_free) out.kappa = sol->base[0];
  if (!mu_free) out.mu = sol->base[1];
  return out;
}

/// The constant b > 0 with (nabla_X phi) Y = b { g(X,Y) xi - eta(Y) X }.
inline std::optional<Rational> sasakian_check(const MetricLieAlgebra& g, const AlmostContactStructure& a) {
  Connection lc = levi_civita(g);
  std::optional<Rational> beta;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // (nabla_{e_i} phi) e_j = nabla_{e_i}(phi e_j) - phi(nabla_{e_i} e_j)
      Vec3Q ej;
      ej[j] = Rational(1);
      Vec3Q phi_ej = a.phi.apply(ej);
      Vec3Q lhs;
      for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 3; ++k) lhs[k] += phi_ej[m] * lc.gamma(i, m, k);
      Vec3Q corr;
      for (int m = 0; m < 3; ++m)
        for (int k = 0; k < 3; ++k) corr[k] += lc.gamma(i, j, m) * a.phi(k, m);
      lhs = lhs - corr;
      Vec3Q rhs;
      for (int k = 0; k < 3; ++k) rhs[k] = Rational(delta(i, j)) * a.xi[k] - a.eta[j] * Rational(delta(i, k));
      for (int k = 0; k < 3; ++k) {
        if (rhs[k].is_zero()) {
          if (!lhs[k].is_zero()) return std::nullopt;
          continue;
        }
        Rational cand = lhs[k] / rhs[k];
        if (beta && *beta != cand) return std::nullopt;
        beta = cand;
      }
    }
  if (!beta || beta->sign() <= 0) return std::nullopt;
  return beta;
}

/// Boeckx's homogeneous structure on a non-Sasakian contact metric algebra:
/// S(X)Y = -g(phi(I+h)X, Y) xi + (mu/2) eta(X) phi Y + eta(Y) phi(I+h) X.
inline HomStructure boeckx_structure(const MetricLieAlgebra& g, const AlmostContactStructure& a, const Rational& mu) {
  Mat3Q h = h_tensor(g, a);
  if (h.is_zero()) throw Error("SasakianInput", "Boeckx structure requires a non-Sasakian contact metric input");
  Mat3Q P = a.phi * (Mat3Q::identity() + h);
  HomStructure s;
  Rational half_mu = Rational(1, 2) * mu;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        s.S(i, j, k) = -P(j, i) * a.xi[k] + half_mu * a.eta[i] * a.phi(k, j) + a.eta[j] * P(k, i);
  return s;
}

/// Tanaka-Webster connection of a contact metric algebra.
inline Connection tanaka_webster(const MetricLieAlgebra& g, const AlmostContactStructure& a) {
  Connection lc = levi_civita(g);
  Mat3Q h = h_tensor(g, a);
  Mat3Q P = a.phi * (Mat3Q::identity() + h);
  Connection tw;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        tw.gamma(i, j, k) =
            lc.gamma(i, j, k) - P(j, i) * a.xi[k] + a.eta[i] * a.phi(k, j) + a.eta[j] * P(k, i);
  return tw;
}

inline bool equal_connections(const Connection& x, const Connection& y) { return x.gamma == y.gamma; }

/// Okumura's one-parameter family on g(1, beta): the verified components are
/// those of the SO(2) family; `literal_display_matches` reports whether the
/// closed-form expression b g(X,Y) xi - r eta(X) phi Y + b eta(Y) phi X
/// reproduces them (it does not; the consistent first term is -b g(phi X, Y) xi).
struct OkumuraStructure {
  HomStructure S;
  bool literal_display_matches = false;
};

inline OkumuraStructure okumura_structure(const MetricLieAlgebra& g, const AlmostContactStructure& a,
                                          const Rational& r) {
  StructureFamily fam = so2_family(g);  // throws WrongNormalForm unless alpha = 1
  OkumuraStructure out;
  out.S = fam.member(r);
  Rational beta = g.form().beta;
  HomStructure lit;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        lit.S(i, j, k) =
            beta * Rational(delta(i, j)) * a.xi[k] - r * a.eta[i] * a.phi(k, j) + beta * a.eta[j] * a.phi(k, i);
  out.literal_display_matches = lit.S == out.S.S;
  return out;
}

/// Summary of the contact layer for one algebra.
struct ContactReport {
  std::optional<Rational> contact_constant;
  Mat3Q h;
  std::optional<Rational> kappa, mu;
  std::optional<Rational> sasakian_beta;
  bool flat = false;
  std::optional<bool> boeckx_equals_minus;
  std::optional<bool> tw_equals_boeckx;
};

inline std::optional<ContactReport> build_contact_report(const MetricLieAlgebra& g) {
  AlmostContactStructure a;
  try {
    a = standard_acs(g);
  } catch (const Error&) {
    return std::nullopt;
  }
  ContactReport r;
  r.contact_constant = contact_metric_constant(g, a);
  r.h = h_tensor(g, a);
  auto km = kappa_mu(g, a);
  r.kappa = km.kappa;
  r.mu = km.mu;
  r.sasakian_beta = sasakian_check(g, a);
  r.flat = curvature(g, levi_civita(g)).R.is_zero();
  if (r.contact_constant && *r.contact_constant == Rational(1) && !r.h.is_zero() && km.mu) {
    HomStructure sb = boeckx_structure(g, a, *km.mu);
    r.boeckx_equals_minus = equal_structures(sb, canonical_structure(g, CanonicalConnection::Minus));
    Connection sum = levi_civita(g);
    sum.gamma = sum.gamma + sb.S;
    r.tw_equals_boeckx = equal_connections(tanaka_webster(g, a), sum);
  }
  return r;
}

}  // namespace homog3
