#pragma once

#include <optional>

#include "homog3/lie_metric.hpp"
#include "homog3/tensor.hpp"

namespace homog3 {

/// Left-invariant linear connection: nabla_{e_i} e_j = sum_k Gamma(i,j,k) e_k.
struct Connection {
  Ten3Q gamma;

  /// Metric compatibility in the orthonormal basis: Gamma^k_ij = -Gamma^j_ik.
  bool metric_compatible() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (gamma(i, j, k) != -gamma(i, k, j)) return false;
    return true;
  }

  bool torsion_free(const MetricLieAlgebra& g) const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (gamma(i, j, k) - gamma(j, i, k) != g.c(i, j, k)) return false;
    return true;
  }
};

/// Levi-Civita connection by the Koszul formula,
/// 2<nabla_X Y, Z> = -<X,[Y,Z]> + <Y,[Z,X]> + <Z,[X,Y]>.
inline Connection levi_civita(const MetricLieAlgebra& g) {
  Connection lc;
  Rational half(1, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        lc.gamma(i, j, k) = half * (-g.c(j, k, i) + g.c(k, i, j) + g.c(i, j, k));
  return lc;
}

/// Curvature of a left-invariant metric: the (0,4) tensor
/// R(i,j,k,l) = <R(e_i,e_j)e_k, e_l> with R(X,Y) = [nabla_X,nabla_Y] - nabla_[X,Y],
/// the Ricci tensor Ric(X,Y) = tr(Z -> R(Z,Y)X) and the scalar curvature.
struct CurvatureData {
  Ten4Q R;
  Mat3Q ric;
  Rational scalar;

  bool ricci_diagonal() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && !ric(i, j).is_zero()) return false;
    return true;
  }
  std::optional<Vec3Q> principal_ricci() const {
    if (!ricci_diagonal()) return std::nullopt;
    Vec3Q p;
    for (int i = 0; i < 3; ++i) p[i] = ric(i, i);
    return p;
  }
};

inline CurvatureData curvature(const MetricLieAlgebra& g, const Connection& conn) {
  CurvatureData cd;
  const Ten3Q& G = conn.gamma;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          Rational s;
          for (int m = 0; m < 3; ++m)
            s += G(j, k, m) * G(i, m, l) - G(i, k, m) * G(j, m, l) - g.c(i, j, m) * G(m, k, l);
          cd.R(i, j, k, l) = s;
        }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Rational s;
      for (int m = 0; m < 3; ++m) s += cd.R(m, b, a, m);
      cd.ric(a, b) = s;
    }
  cd.scalar = cd.ric.trace();
  return cd;
}

/// Sectional curvature of the coordinate plane spanned by e_i, e_j.
inline Rational sectional_curvature(const CurvatureData& cd, int i, int j) {
  return cd.R(i, j, j, i);
}

/// Covariant derivative of the curvature tensor, (nabla_{e_m} R)_{ijkl};
/// the derivative term vanishes for left-invariant data.
struct NablaR {
  std::array<Rational, 243> t{};
  Rational& at(int m, int i, int j, int k, int l) { return t[(((m * 3 + i) * 3 + j) * 3 + k) * 3 + l]; }
  const Rational& at(int m, int i, int j, int k, int l) const { return t[(((m * 3 + i) * 3 + j) * 3 + k) * 3 + l]; }
  bool is_zero() const {
    for (const auto& x : t)
      if (!x.is_zero()) return false;
    return true;
  }
};

inline NablaR nabla_R(const MetricLieAlgebra& g, const Connection& conn) {
  CurvatureData cd = curvature(g, conn);
  NablaR out;
  const Ten3Q& G = conn.gamma;
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            Rational s;
            for (int p = 0; p < 3; ++p)
              s -= G(m, i, p) * cd.R(p, j, k, l) + G(m, j, p) * cd.R(i, p, k, l) +
                   G(m, k, p) * cd.R(i, j, p, l) + G(m, l, p) * cd.R(i, j, k, p);
            out.at(m, i, j, k, l) = s;
          }
  return out;
}

inline bool is_locally_symmetric(const MetricLieAlgebra& g) {
  return nabla_R(g, levi_civita(g)).is_zero();
}

inline int delta(int i, int j) { return i == j ? 1 : 0; }

/// Constant sectional curvature k, when R(X,Y)Z = -k{ g(X,Z)Y - g(Y,Z)X }
/// holds exactly (k is the common sectional curvature); nullopt otherwise.
inline std::optional<Rational> constant_curvature_check(const MetricLieAlgebra& g) {
  CurvatureData cd = curvature(g, levi_civita(g));
  Rational k = cd.R(0, 1, 1, 0);  // sectional curvature of the (e1,e2)-plane
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          Rational expect = -k * (Rational(delta(i, a) * delta(j, b)) - Rational(delta(j, a) * delta(i, b)));
          if (cd.R(i, j, a, b) != expect) return std::nullopt;
        }
  return k;
}

}  // namespace homog3
