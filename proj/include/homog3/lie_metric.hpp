#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "homog3/linalg.hpp"
#include "homog3/tensor.hpp"

namespace homog3 {

/// Lie algebra of small dimension (n <= 6), structure constants only.
/// Used for the transitive algebras rebuilt from Ambrose-Singer data.
struct LieAlgebra {
  int dim = 0;
  std::vector<Rational> c;  // c[(i*dim + j)*dim + k] = c^k_{ij}

  LieAlgebra() = default;
  explicit LieAlgebra(int n) : dim(n), c(static_cast<size_t>(n) * n * n) {}

  Rational& at(int i, int j, int k) { return c[(static_cast<size_t>(i) * dim + j) * dim + k]; }
  const Rational& at(int i, int j, int k) const { return c[(static_cast<size_t>(i) * dim + j) * dim + k]; }

  VecQ bracket(const VecQ& x, const VecQ& y) const {
    VecQ r(dim);
    for (int i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < dim; ++j) {
        if (y[j].is_zero()) continue;
        for (int k = 0; k < dim; ++k) r[k] += x[i] * y[j] * at(i, j, k);
      }
    }
    return r;
  }

  bool antisymmetric() const {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          if (at(i, j, k) != -at(j, i, k)) return false;
    return true;
  }

  bool jacobi_holds() const {
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            Rational s;
            for (int m = 0; m < dim; ++m)
              s += at(i, j, m) * at(m, k, l) + at(j, k, m) * at(m, i, l) + at(k, i, m) * at(m, j, l);
            if (!s.is_zero()) return false;
          }
    return true;
  }

  /// ad(x) as a matrix: ad(x) y = [x, y].
  MatQ ad(const VecQ& x) const {
    MatQ m(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        Rational s;
        for (int i = 0; i < dim; ++i) s += x[i] * at(i, j, k);
        m.at(k, j) = s;
      }
    return m;
  }
};

enum class NormalFormKind { Unimodular, NonUnimodular, Generic };

struct NormalForm {
  NormalFormKind kind = NormalFormKind::Generic;
  std::array<Rational, 3> c{};  // unimodular constants (c1, c2, c3)
  Rational alpha, beta;         // non-unimodular constants
};

/// 3-dimensional Lie algebra with structure constants taken in an
/// orthonormal basis (the metric is the identity in this basis).
class MetricLieAlgebra {
 public:
  /// [e1,e2] = c3 e3, [e2,e3] = c1 e1, [e3,e1] = c2 e2.
  static MetricLieAlgebra unimodular(const Rational& c1, const Rational& c2, const Rational& c3) {
    Ten3Q t;
    set_bracket(t, 0, 1, {Rational(0), Rational(0), c3});
    set_bracket(t, 1, 2, {c1, Rational(0), Rational(0)});
    set_bracket(t, 2, 0, {Rational(0), c2, Rational(0)});
    NormalForm f;
    f.kind = NormalFormKind::Unimodular;
    f.c = {c1, c2, c3};
    return MetricLieAlgebra(t, f);
  }

  /// [e1,e2] = (1+a)e2 + (1+a)b e3, [e2,e3] = 0, [e3,e1] = (1-a)b e2 - (1-a)e3,
  /// with the sign normalization a, b >= 0.
  static MetricLieAlgebra nonunimodular(const Rational& alpha, const Rational& beta) {
    if (alpha.sign() < 0 || beta.sign() < 0)
      throw Error("NormalizationViolated", "nonunimodular form requires alpha >= 0 and beta >= 0");
    Rational one(1);
    Ten3Q t;
    set_bracket(t, 0, 1, {Rational(0), (one + alpha), (one + alpha) * beta});
    set_bracket(t, 1, 2, {Rational(0), Rational(0), Rational(0)});
    set_bracket(t, 2, 0, {Rational(0), (one - alpha) * beta, -(one - alpha)});
    NormalForm f;
    f.kind = NormalFormKind::NonUnimodular;
    f.alpha = alpha;
    f.beta = beta;
    return MetricLieAlgebra(t, f);
  }

  /// Arbitrary structure constants c(i,j,k) = c^k_{ij}; validated.
  static MetricLieAlgebra generic(const Ten3Q& t) {
    NormalForm f;
    f.kind = NormalFormKind::Generic;
    return MetricLieAlgebra(t, f);
  }

  const Ten3Q& structure_constants() const { return c_; }
  const Rational& c(int i, int j, int k) const { return c_(i, j, k); }
  const NormalForm& form() const { return form_; }

  Vec3Q bracket(const Vec3Q& x, const Vec3Q& y) const {
    Vec3Q r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (x[i].is_zero() || y[j].is_zero()) continue;
        for (int k = 0; k < 3; ++k) r[k] += x[i] * y[j] * c_(i, j, k);
      }
    return r;
  }

  bool antisymmetric() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (c_(i, j, k) != -c_(j, i, k)) return false;
    return true;
  }

  bool jacobi_holds() const {
    for (int l = 0; l < 3; ++l) {
      Rational s;
      for (int m = 0; m < 3; ++m)
        s += c_(0, 1, m) * c_(m, 2, l) + c_(1, 2, m) * c_(m, 0, l) + c_(2, 0, m) * c_(m, 1, l);
      if (!s.is_zero()) return false;
    }
    return true;
  }

  void validate() const {
    if (!antisymmetric()) throw Error("NotAntisymmetric", "structure constants must satisfy c^k_ij = -c^k_ji");
    if (!jacobi_holds()) throw Error("JacobiFailed", "structure constants violate the Jacobi identity");
  }

  LieAlgebra as_lie_algebra() const {
    LieAlgebra L(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) L.at(i, j, k) = c_(i, j, k);
    return L;
  }

 private:
  MetricLieAlgebra(const Ten3Q& t, const NormalForm& f) : c_(t), form_(f) { validate(); }

  static void set_bracket(Ten3Q& t, int i, int j, const std::array<Rational, 3>& v) {
    for (int k = 0; k < 3; ++k) {
      t(i, j, k) = v[k];
      t(j, i, k) = -v[k];
    }
  }

  Ten3Q c_;
  NormalForm form_;
};

inline Rational trace_ad(const MetricLieAlgebra& g, int i) {
  Rational s;
  for (int j = 0; j < 3; ++j) s += g.c(i, j, j);
  return s;
}

/// tr ad(X) = 0 for every X.
inline bool is_unimodular(const MetricLieAlgebra& g) {
  for (int i = 0; i < 3; ++i)
    if (!trace_ad(g, i).is_zero()) return false;
  return true;
}

/// Basis of the unimodular kernel u = { X : tr ad(X) = 0 }.
inline std::vector<VecQ> unimodular_kernel(const MetricLieAlgebra& g) {
  MatQ m(1, 3);
  for (int i = 0; i < 3; ++i) m.at(0, i) = trace_ad(g, i);
  return null_space(m);
}

/// Symmetric bilinear map U with 2<U(X,Y),Z> = <X,[Z,Y]> + <Y,[Z,X]>.
/// Returned as U(i,j,k) = <U(e_i,e_j), e_k>.
inline Ten3Q bi_invariance_obstruction(const MetricLieAlgebra& g) {
  Ten3Q u;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) u(i, j, k) = Rational(1, 2) * (g.c(k, j, i) + g.c(k, i, j));
  return u;
}

/// The endomorphism L with [X,Y] = L(X x Y) for the cross product of the
/// positively oriented orthonormal basis, plus Milnor's self-adjointness test.
struct VectorProductOperator {
  Mat3Q L;
  bool self_adjoint = false;
};

inline VectorProductOperator vector_product_operator(const MetricLieAlgebra& g) {
  VectorProductOperator out;
  // e1 = e2 x e3, e2 = e3 x e1, e3 = e1 x e2
  const int pair[3][2] = {{1, 2}, {2, 0}, {0, 1}};
  for (int col = 0; col < 3; ++col)
    for (int k = 0; k < 3; ++k) out.L(k, col) = g.c(pair[col][0], pair[col][1], k);
  out.self_adjoint = out.L.is_symmetric();
  return out;
}

enum class UnimodularGroup { SU2, SL2R, SE2, SE11, Heisenberg, Abelian };

inline std::string unimodular_group_name(UnimodularGroup g) {
  switch (g) {
    case UnimodularGroup::SU2: return "SU(2)";
    case UnimodularGroup::SL2R: return "SL~(2,R)";
    case UnimodularGroup::SE2: return "SE~(2)";
    case UnimodularGroup::SE11: return "SE(1,1)";
    case UnimodularGroup::Heisenberg: return "Nil3";
    case UnimodularGroup::Abelian: return "R^3";
  }
  return "?";
}

/// Sign pattern of (c1,c2,c3) normalized to Milnor's table rows: sorted
/// descending, globally flipped so that plus signs dominate.
inline std::array<int, 3> milnor_sign_pattern(const std::array<Rational, 3>& c) {
  std::array<int, 3> s{c[0].sign(), c[1].sign(), c[2].sign()};
  int plus = 0, minus = 0;
  for (int v : s) {
    if (v > 0) ++plus;
    if (v < 0) ++minus;
  }
  if (minus > plus)
    for (int& v : s) v = -v;
  std::sort(s.begin(), s.end(), std::greater<int>());
  return s;
}

inline UnimodularGroup classify_unimodular_signs(const std::array<int, 3>& s) {
  if (s == std::array<int, 3>{1, 1, 1}) return UnimodularGroup::SU2;
  if (s == std::array<int, 3>{1, 1, -1}) return UnimodularGroup::SL2R;
  if (s == std::array<int, 3>{1, 1, 0}) return UnimodularGroup::SE2;
  if (s == std::array<int, 3>{1, 0, -1}) return UnimodularGroup::SE11;
  if (s == std::array<int, 3>{1, 0, 0}) return UnimodularGroup::Heisenberg;
  return UnimodularGroup::Abelian;  // (0,0,0)
}

struct MilnorClassification {
  // unimodular case
  std::optional<UnimodularGroup> group;
  std::array<int, 3> sign_pattern{};
  // non-unimodular case
  std::optional<Rational> milnor_invariant;     // D = (1-a^2)(1+b^2)
  std::optional<Rational> tasaki_umehara;       // chi = 4/D, absent when D = 0
  bool chi_infinite = false;
  std::optional<std::array<Rational, 3>> char_poly_A;  // coefficients of l^2 - 2l + D, ascending
};

inline MilnorClassification milnor_classify(const MetricLieAlgebra& g) {
  MilnorClassification out;
  const NormalForm& f = g.form();
  if (f.kind == NormalFormKind::Unimodular) {
    out.sign_pattern = milnor_sign_pattern(f.c);
    out.group = classify_unimodular_signs(out.sign_pattern);
    return out;
  }
  if (f.kind == NormalFormKind::NonUnimodular) {
    Rational one(1);
    Rational d = (one - f.alpha * f.alpha) * (one + f.beta * f.beta);
    out.milnor_invariant = d;
    if (d.is_zero())
      out.chi_infinite = true;
    else
      out.tasaki_umehara = Rational(4) / d;
    out.char_poly_A = std::array<Rational, 3>{d, Rational(-2), Rational(1)};
    return out;
  }
  throw Error("GenericForm", "milnor_classify requires a tagged normal form");
}

/// Dimension of the isometry group (3, 4 or 6), evaluated on the tagged
/// normal form; conditions stated up to renumbering of the basis.
inline int isometry_dimension(const MetricLieAlgebra& g) {
  const NormalForm& f = g.form();
  if (f.kind == NormalFormKind::NonUnimodular) {
    if (f.alpha.is_zero()) return 6;
    if (f.alpha == Rational(1)) return 4;
    return 3;
  }
  if (f.kind != NormalFormKind::Unimodular)
    throw Error("GenericForm", "isometry_dimension requires a tagged normal form");
  const auto& c = f.c;
  if (c[0] == c[1] && c[1] == c[2]) return 6;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    if (c[i] == c[j] && c[i] != c[k]) return c[k].is_zero() ? 6 : 4;
  }
  return 3;
}

}  // namespace homog3
