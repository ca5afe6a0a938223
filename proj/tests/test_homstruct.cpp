#include <catch2/catch_amalgamated.hpp>

#include "homog3/homstruct.hpp"
#include "test_support.hpp"

using namespace homog3;

namespace {
Rational inner(const Ten3Q& a, const Ten3Q& b) {
  Rational s;
  for (int i = 0; i < 27; ++i) s += a.t[i] * b.t[i];
  return s;
}
}  // namespace

TEST_CASE("canonical structures") {
  auto g = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(4));
  auto minus = canonical_structure(g, CanonicalConnection::Minus);
  // oracle: the coefficient table -2 mu_i with the 1/2-wedge convention
  // stores as S(i, j, k) pattern S_123 = -mu1, S_231 = -mu2, S_312 = -mu3
  CHECK(minus.S(0, 1, 2) == Rational(-5, 2));
  CHECK(minus.S(1, 2, 0) == Rational(-3, 2));
  CHECK(minus.S(2, 0, 1) == Rational(1, 2));
  CHECK(minus.metrical());

  // cross-check against S(X)Y = -nabla_X Y on all basis pairs
  auto lc = levi_civita(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(minus.S(i, j, k) == -lc.gamma(i, j, k));

  testsup::Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    Rational c = rng.rational();
    auto gc = MetricLieAlgebra::unimodular(c, c, c);
    CHECK(canonical_structure(gc, CanonicalConnection::Zero).is_zero());
  }
  auto abelian = MetricLieAlgebra::unimodular(Rational(0), Rational(0), Rational(0));
  CHECK(canonical_structure(abelian, CanonicalConnection::Minus).is_zero());

  // the minus structure is always metrical; plus and zero satisfy the
  // metrical condition precisely when the metric is bi-invariant
  CHECK_FALSE(canonical_structure(g, CanonicalConnection::Plus).metrical());
  CHECK_FALSE(canonical_structure(g, CanonicalConnection::Zero).metrical());
  auto bi = MetricLieAlgebra::unimodular(Rational(2), Rational(2), Rational(2));
  CHECK(canonical_structure(bi, CanonicalConnection::Plus).metrical());
  CHECK(canonical_structure(bi, CanonicalConnection::Zero).metrical());
}

TEST_CASE("s4 family") {
  auto g = MetricLieAlgebra::unimodular(Rational(1), Rational(1), Rational(3));
  auto fam = s4_family(g);
  Rational mu3 = Rational(1, 2) * Rational(5) - Rational(3);  // (c1+c2+c3)/2 - c3 = -1/2
  CHECK(equal_structures(fam.member(mu3), canonical_structure(g, CanonicalConnection::Minus)));
  auto at0 = fam.member(Rational(0));
  CHECK(at0.S(2, 0, 1) == Rational(0));
  CHECK(at0.S(0, 1, 2) == Rational(-3, 2));
  CHECK(at0.S(1, 2, 0) == Rational(-3, 2));
  CHECK_THROWS_AS(s4_family(MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(3))), Error);
  CHECK_THROWS_AS(s4_family(MetricLieAlgebra::unimodular(Rational(1), Rational(1), Rational(0))), Error);
}

TEST_CASE("SO(2) family") {
  auto g = MetricLieAlgebra::nonunimodular(Rational(1), Rational(1));
  auto fam = so2_family(g);
  auto at0 = fam.member(Rational(0));
  CHECK(at0.S(2, 0, 1) == Rational(0));
  CHECK(at0.S(0, 1, 2) == Rational(-1));
  CHECK(at0.S(1, 2, 0) == Rational(-1));
  // r = -(b^2+2)/b = -3 is the flat member (checked in the reconstruction tests)
  CHECK(fam.member(Rational(-3)).S(2, 0, 1) == Rational(3));
  CHECK_THROWS_AS(so2_family(MetricLieAlgebra::nonunimodular(Rational(1, 2), Rational(1))), Error);
  CHECK_THROWS_AS(so2_family(MetricLieAlgebra::nonunimodular(Rational(1), Rational(0))), Error);
}

TEST_CASE("TV decomposition of the reference structures") {
  auto g = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(-3));
  CHECK(tv_decompose(canonical_structure(g, CanonicalConnection::Minus)).cls == TVClass::T2);

  auto g2 = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(4));
  CHECK(tv_decompose(canonical_structure(g2, CanonicalConnection::Minus)).cls == TVClass::T2T3);

  auto n = MetricLieAlgebra::nonunimodular(Rational(1), Rational(1));
  auto fam = so2_family(n);
  CHECK(tv_decompose(fam.member(Rational(-2))).cls == TVClass::T2);  // r = -2 beta
  CHECK(tv_decompose(fam.member(Rational(1))).cls == TVClass::T3);   // r = beta
  CHECK(tv_decompose(fam.member(Rational(5))).cls == TVClass::T2T3);

  Ten3Q bad;
  bad(0, 0, 0) = Rational(1);
  CHECK_THROWS_AS(tv_decompose(HomStructure{bad}), Error);
}

TEST_CASE("TV decomposition invariants on random metrical tensors") {
  testsup::Rng rng(71);
  for (int trial = 0; trial < 500; ++trial) {
    HomStructure s = rng.metrical_structure();
    auto d = tv_decompose(s);
    CHECK(d.S1 + d.S2 + d.S3 == s.S);
    // c12(S2) = 0 and zero cyclic sum
    for (int k = 0; k < 3; ++k) {
      Rational tr;
      for (int i = 0; i < 3; ++i) tr += d.S2(i, i, k);
      CHECK(tr.is_zero());
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          CHECK((d.S2(i, j, k) + d.S2(j, k, i) + d.S2(k, i, j)).is_zero());
          CHECK(d.S3(i, j, k) == -d.S3(j, i, k));  // totally skew
        }
    CHECK(inner(d.S1, d.S2).is_zero());
    CHECK(inner(d.S1, d.S3).is_zero());
    CHECK(inner(d.S2, d.S3).is_zero());
    // the class label agrees with the vanishing pattern of the parts
    bool p1 = !d.S1.is_zero(), p2 = !d.S2.is_zero(), p3 = !d.S3.is_zero();
    TVClass expect;
    if (!p1 && !p2 && !p3) expect = TVClass::Symmetric;
    else if (p1 && !p2 && !p3) expect = TVClass::T1;
    else if (!p1 && p2 && !p3) expect = TVClass::T2;
    else if (!p1 && !p2 && p3) expect = TVClass::T3;
    else if (p1 && p2 && !p3) expect = TVClass::T1T2;
    else if (p1 && !p2 && p3) expect = TVClass::T1T3;
    else if (!p1 && p2 && p3) expect = TVClass::T2T3;
    else expect = TVClass::T1T2T3;
    CHECK(d.cls == expect);
  }
}

TEST_CASE("a verified T1 structure certifies constant curvature -g(xi,xi)") {
  // hyperbolic space g(0,0): the (-)-structure is of linear type
  auto g = MetricLieAlgebra::nonunimodular(Rational(0), Rational(0));
  auto minus = canonical_structure(g, CanonicalConnection::Minus);
  auto d = tv_decompose(minus);
  REQUIRE(d.cls == TVClass::T1);
  REQUIRE(as_verify(g, minus).pass());
  auto k = constant_curvature_check(g);
  REQUIRE(k);
  CHECK(*k == -d.xi.dot(d.xi));
}

TEST_CASE("Ambrose-Singer verification") {
  auto g = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(4));
  CHECK(as_verify(g, canonical_structure(g, CanonicalConnection::Minus)).pass());

  auto n = MetricLieAlgebra::nonunimodular(Rational(1), Rational(1));
  auto fam = so2_family(n);
  for (long r : {0L, 5L, -3L}) CHECK(as_verify(n, fam.member(Rational(r))).pass());
  CHECK(family_verifies(n, fam));  // identically in the parameter

  // S = 0 fails Ricci parallelism on a non-symmetric algebra
  auto rep = as_verify(g, HomStructure{});
  CHECK(rep.metric_ok);
  CHECK_FALSE(rep.ricci_parallel_ok);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.ricci_residuals.empty());

  // the (-)-structure is a homogeneous structure on every sample
  testsup::Rng rng(83);
  for (int trial = 0; trial < 50; ++trial) {
    auto h = (trial % 2 == 0) ? rng.unimodular() : rng.nonunimodular();
    CHECK(as_verify(h, canonical_structure(h, CanonicalConnection::Minus)).pass());
  }
}

TEST_CASE("curvature parallelism is equivalent to Ricci parallelism in dimension three") {
  testsup::Rng rng(97);
  int nontrivial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    MetricLieAlgebra g = (trial % 2 == 0) ? rng.unimodular() : rng.nonunimodular();
    HomStructure s;
    switch (trial % 4) {
      case 0: s = rng.metrical_structure(); break;
      case 1: s = canonical_structure(g, CanonicalConnection::Minus); break;
      case 2: {
        s = canonical_structure(g, CanonicalConnection::Minus);
        s.S(2, 0, 1) += rng.rational(3, 2);  // move along the would-be family slot
        s.S(2, 1, 0) = -s.S(2, 0, 1);
        break;
      }
      default: {
        s = canonical_structure(g, CanonicalConnection::Minus);
        s.S(0, 1, 2) += rng.rational(2, 2);
        s.S(0, 2, 1) = -s.S(0, 1, 2);
        break;
      }
    }
    Connection lc = levi_civita(g);
    CurvatureData cd = curvature(g, lc);
    auto res = as_residuals<Rational>(lc, cd, s.S);
    CHECK(res.ricci_zero() == res.curv_zero());
    if (res.ricci_zero()) ++nontrivial;
  }
  CHECK(nontrivial > 20);  // the equivalence was exercised on passing pairs too
}

TEST_CASE("solver: distinct constants give exactly the minus structure") {
  auto g = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(4));
  auto out = solve_left_invariant(g);
  REQUIRE(out.kind == SolverOutcome::Kind::Solutions);
  REQUIRE(out.structures.size() == 1);
  CHECK(out.families.empty());
  CHECK(equal_structures(out.structures[0], canonical_structure(g, CanonicalConnection::Minus)));

  // pseudo-symmetric sub-case c3 = c1 + c2 (mu3 = 0)
  auto gp = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(3));
  auto outp = solve_left_invariant(gp);
  REQUIRE(outp.structures.size() == 1);
  CHECK(outp.families.empty());
  CHECK(equal_structures(outp.structures[0], canonical_structure(gp, CanonicalConnection::Minus)));
}

TEST_CASE("solver: c1 = c2 != c3 gives exactly the one-parameter family") {
  auto g = MetricLieAlgebra::unimodular(Rational(1), Rational(1), Rational(3));
  auto out = solve_left_invariant(g);
  REQUIRE(out.kind == SolverOutcome::Kind::Solutions);
  CHECK(out.structures.empty());
  REQUIRE(out.families.size() == 1);
  CHECK(same_line(out.families[0], s4_family(g)));
  CHECK_FALSE(out.non_left_invariant_extras_possible);  // SU(2) type

  auto gsl = MetricLieAlgebra::unimodular(Rational(1), Rational(1), Rational(-3));
  auto outsl = solve_left_invariant(gsl);
  REQUIRE(outsl.families.size() == 1);
  CHECK(outsl.non_left_invariant_extras_possible);  // sl(2,R) type
}

TEST_CASE("solver: non-unimodular cases") {
  auto n = MetricLieAlgebra::nonunimodular(Rational(1), Rational(1));
  auto out = solve_left_invariant(n);
  REQUIRE(out.kind == SolverOutcome::Kind::Solutions);
  REQUIRE(out.structures.size() == 1);
  REQUIRE(out.families.size() == 1);
  CHECK(equal_structures(out.structures[0], canonical_structure(n, CanonicalConnection::Minus)));
  CHECK(same_line(out.families[0], so2_family(n)));
  CHECK(out.non_left_invariant_extras_possible);

  auto m = MetricLieAlgebra::nonunimodular(Rational(1, 2), Rational(1));
  auto outm = solve_left_invariant(m);
  REQUIRE(outm.structures.size() == 1);
  CHECK(outm.families.empty());
  CHECK(equal_structures(outm.structures[0], canonical_structure(m, CanonicalConnection::Minus)));
}

TEST_CASE("solver: out-of-scope markers") {
  auto sf = solve_left_invariant(MetricLieAlgebra::nonunimodular(Rational(0), Rational(3)));
  CHECK(sf.kind == SolverOutcome::Kind::SpaceForm);
  REQUIRE(sf.space_form_curvature);
  CHECK(*sf.space_form_curvature == Rational(-1));

  auto ls = solve_left_invariant(MetricLieAlgebra::nonunimodular(Rational(1), Rational(0)));
  CHECK(ls.kind == SolverOutcome::Kind::LocallySymmetric);

  auto flat = solve_left_invariant(MetricLieAlgebra::unimodular(Rational(2), Rational(2), Rational(0)));
  CHECK(flat.kind == SolverOutcome::Kind::SpaceForm);
  CHECK(*flat.space_form_curvature == Rational(0));

  auto sphere = solve_left_invariant(MetricLieAlgebra::unimodular(Rational(2), Rational(2), Rational(2)));
  CHECK(sphere.kind == SolverOutcome::Kind::SpaceForm);
  CHECK(*sphere.space_form_curvature == Rational(1));
}

TEST_CASE("every solver output re-verifies with zero residuals") {
  testsup::Rng rng(103);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = (trial % 2 == 0) ? rng.unimodular() : rng.nonunimodular();
    auto out = solve_left_invariant(g);
    for (const auto& s : out.structures) CHECK(as_verify(g, s).pass());
    for (const auto& f : out.families) {
      CHECK(family_verifies(g, f));
      for (long r : {-2L, 0L, 3L}) CHECK(as_verify(g, f.member(Rational(r))).pass());
    }
  }
}

TEST_CASE("brute-force nine-unknown elimination reproduces the case-analysis variety") {
  // distinct constants
  auto g1 = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(4));
  auto bv1 = testsup::brute_force_variety(g1);
  CHECK(bv1.resolved);
  CHECK(testsup::variety_matches(bv1, solve_left_invariant(g1)));

  // the non-unimodular alpha = 1 case: a line plus an isolated point
  auto g2 = MetricLieAlgebra::nonunimodular(Rational(1), Rational(1));
  auto bv2 = testsup::brute_force_variety(g2);
  CHECK(bv2.resolved);
  CHECK(bv2.points.size() == 1);
  CHECK(bv2.lines.size() == 1);
  CHECK(testsup::variety_matches(bv2, solve_left_invariant(g2)));

  // pseudo-symmetric unimodular sample (mu3 = 0, c1 != c2): sigma = 0 is
  // derived from the quadratic system, not from the prose
  auto g3 = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(3));
  auto bv3 = testsup::brute_force_variety(g3);
  CHECK(bv3.resolved);
  CHECK(bv3.points.size() == 1);
  CHECK(bv3.lines.empty());
  CHECK(testsup::variety_matches(bv3, solve_left_invariant(g3)));

  // a c1 = c2 family input: the variety is exactly one line
  auto g4 = MetricLieAlgebra::unimodular(Rational(1), Rational(1), Rational(3));
  auto bv4 = testsup::brute_force_variety(g4);
  CHECK(bv4.resolved);
  CHECK(bv4.points.empty());
  CHECK(bv4.lines.size() == 1);
  CHECK(testsup::variety_matches(bv4, solve_left_invariant(g4)));
}

TEST_CASE("solver requires a diagonalizing frame in the repeated-eigenvalue case") {
  // rotate g(1,1) by a rational rotation in the (e2,e3)-plane: the metric
  // stays the identity but Ric = diag(-6,-6,2) picks up off-diagonal terms
  auto g = MetricLieAlgebra::nonunimodular(Rational(1), Rational(1));
  Mat3Q rot;
  rot(0, 0) = Rational(1);
  rot(1, 1) = Rational(3, 5);
  rot(1, 2) = Rational(-4, 5);
  rot(2, 1) = Rational(4, 5);
  rot(2, 2) = Rational(3, 5);
  Ten3Q moved;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec3Q fi, fj;
      for (int p = 0; p < 3; ++p) {
        fi[p] = rot(p, i);
        fj[p] = rot(p, j);
      }
      Vec3Q w = g.bracket(fi, fj);
      for (int k = 0; k < 3; ++k) {
        Rational coord;
        for (int p = 0; p < 3; ++p) coord += rot(p, k) * w[p];  // orthogonal inverse
        moved(i, j, k) = coord;
      }
    }
  auto rotated = MetricLieAlgebra::generic(moved);
  auto cd = curvature(rotated, levi_civita(rotated));
  REQUIRE_FALSE(cd.ricci_diagonal());
  CHECK_THROWS_AS(solve_left_invariant(rotated), Error);

  // a rotation inside the repeated eigenplane keeps Ric diagonal and the
  // solver classifies the rotated frame the same way
  Mat3Q rot12;
  rot12(0, 0) = Rational(3, 5);
  rot12(0, 1) = Rational(-4, 5);
  rot12(1, 0) = Rational(4, 5);
  rot12(1, 1) = Rational(3, 5);
  rot12(2, 2) = Rational(1);
  Ten3Q moved12;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec3Q fi, fj;
      for (int p = 0; p < 3; ++p) {
        fi[p] = rot12(p, i);
        fj[p] = rot12(p, j);
      }
      Vec3Q w = g.bracket(fi, fj);
      for (int k = 0; k < 3; ++k) {
        Rational coord;
        for (int p = 0; p < 3; ++p) coord += rot12(p, k) * w[p];
        moved12(i, j, k) = coord;
      }
    }
  auto rotated12 = MetricLieAlgebra::generic(moved12);
  REQUIRE(curvature(rotated12, levi_civita(rotated12)).ricci_diagonal());
  auto out = solve_left_invariant(rotated12);
  CHECK(out.structures.size() == 1);
  CHECK(out.families.size() == 1);
  CHECK(testsup::variety_matches(testsup::brute_force_variety(rotated12), out));
}

TEST_CASE("solver agrees with brute-force elimination on random algebras") {
  testsup::Rng rng(777);
  int solved = 0;
  for (int trial = 0; trial < 80; ++trial) {
    MetricLieAlgebra g = (trial % 2 == 0) ? rng.unimodular() : rng.nonunimodular();
    auto out = solve_left_invariant(g);
    if (out.kind != SolverOutcome::Kind::Solutions) continue;
    auto bv = testsup::brute_force_variety(g);
    REQUIRE(bv.resolved);
    CHECK(testsup::variety_matches(bv, out));
    ++solved;
  }
  CHECK(solved > 40);
}
