#include <catch2/catch_amalgamated.hpp>

#include "homog3/reconstruct.hpp"
#include "test_support.hpp"

using namespace homog3;

namespace {
MetricLieAlgebra g11() { return MetricLieAlgebra::nonunimodular(Rational(1), Rational(1)); }

ReconstructedAlgebra reconstruct_trivially(const MetricLieAlgebra& g) {
  return build_transitive_algebra(g, canonical_structure(g, CanonicalConnection::Minus));
}
}  // namespace

TEST_CASE("AS curvature of the minus structure vanishes") {
  auto g = MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(4));
  CHECK(as_curvature(g, canonical_structure(g, CanonicalConnection::Minus)).is_zero());
  CHECK_THROWS_AS(as_curvature(g, HomStructure{}), Error);  // S = 0 is not Ambrose-Singer here
}

TEST_CASE("AS curvature of the SO(2) family") {
  auto fam = so2_family(g11());
  auto ops0 = as_curvature(g11(), fam.member(Rational(0)));
  // R~(e1,e2) e1 = 2(b(r+b)+2) e2 = 6 e2 at b = 1, r = 0; all other blocks vanish
  Mat3Q expected;
  expected(1, 0) = Rational(6);
  expected(0, 1) = Rational(-6);
  CHECK(ops0.op01 == expected);
  CHECK(ops0.op12.is_zero());
  CHECK(ops0.op20.is_zero());

  CHECK(as_curvature(g11(), fam.member(Rational(-3))).is_zero());  // r = -(b^2+2)/b
}

TEST_CASE("holonomy algebra dimensions") {
  auto fam = so2_family(g11());
  CHECK(holonomy_algebra(as_curvature(g11(), fam.member(Rational(-3)))).empty());

  auto h0 = holonomy_algebra(as_curvature(g11(), fam.member(Rational(0))));
  REQUIRE(h0.size() == 1);
  // generator proportional to the rotation in the (e1,e2)-plane
  CHECK(h0[0](0, 1) == Rational(6));
  CHECK(h0[0](1, 0) == Rational(-6));
  CHECK(h0[0](2, 2).is_zero());
  CHECK(h0[0].is_skew());

  auto h5 = holonomy_algebra(as_curvature(g11(), fam.member(Rational(5))));
  REQUIRE(h5.size() == 1);  // 2(b(r+b)+2) = 16 at r = 5
  CHECK(h5[0](0, 1) == Rational(16));
}

TEST_CASE("transitive algebra of the minus structure is the input algebra") {
  testsup::Rng rng(113);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = (trial % 2 == 0) ? rng.unimodular() : rng.nonunimodular();
    auto rec = reconstruct_trivially(g);
    REQUIRE(rec.total.dim == 3);
    CHECK(rec.isotropy_indices.empty());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) CHECK(rec.total.at(i, j, k) == g.c(i, j, k));
    // identity map is an isomorphism onto the reconstruction of itself
    CHECK(verify_isomorphism(MatQ::identity(3), rec, rec));
  }
}

TEST_CASE("transitive algebra of the SO(2) family member r = 0") {
  auto rec = build_transitive_algebra(g11(), so2_family(g11()).member(Rational(0)));
  REQUIRE(rec.total.dim == 4);
  REQUIRE(rec.isotropy_indices == std::vector<int>{3});
  const auto& L = rec.total;
  // [e1,e2] = 2 b e3 + e4, [e2,e3] = (r+b) e1, [e3,e1] = (r+b) e2 at b=1, r=0
  CHECK(L.at(0, 1, 2) == Rational(2));
  CHECK(L.at(0, 1, 3) == Rational(1));
  CHECK(L.at(1, 2, 0) == Rational(1));
  CHECK(L.at(2, 0, 1) == Rational(1));
  // ad(e4): [e4,e1] = -2(b(r+b)+2) e2, [e4,e2] = 2(b(r+b)+2) e1, [e4,e3] = 0
  CHECK(L.at(3, 0, 1) == Rational(-6));
  CHECK(L.at(3, 1, 0) == Rational(6));
  for (int k = 0; k < 4; ++k) CHECK(L.at(3, 2, k).is_zero());

  auto fp = fingerprint(L);
  CHECK(fp.center_dim == 1);
  auto der = derived_subalgebra(L);
  CHECK(der.dim == 3);
  CHECK(fingerprint(der).killing_inertia == Inertia{2, 1, 0});  // sl(2,R) signature

  // the center is spanned by 2(b(r+b)+2) e3 + (r+b) e4; the candidate
  // e4 - (1/2)(b(r+b)+2) e3 is not central
  VecQ center(4), candidate(4);
  center[2] = Rational(6);
  center[3] = Rational(1);
  candidate[2] = Rational(-3, 2);
  candidate[3] = Rational(1);
  VecQ e1(4);
  e1[0] = Rational(1);
  CHECK(is_zero(L.bracket(center, e1)));
  CHECK_FALSE(is_zero(L.bracket(candidate, e1)));
  auto cb = center_basis(L);
  REQUIRE(cb.size() == 1);
  CHECK(in_span(center, cb, 4));
}

TEST_CASE("transitive algebra at the flat parameter is sl(2,R)") {
  auto rec = build_transitive_algebra(g11(), so2_family(g11()).member(Rational(-3)));
  REQUIRE(rec.total.dim == 3);
  CHECK(rec.isotropy_indices.empty());
  const auto& L = rec.total;
  CHECK(L.at(0, 1, 2) == Rational(2));
  CHECK(L.at(1, 2, 0) == Rational(-2));
  CHECK(L.at(2, 0, 1) == Rational(-2));
  auto fp = fingerprint(L);
  CHECK(fp.killing_inertia == Inertia{2, 1, 0});
  CHECK_FALSE(fp.solvable);
  CHECK(fp.derived_series_dims == std::vector<int>{3});  // perfect
  auto c = try_unimodular_constants(L);
  REQUIRE(c);
  CHECK(classify_unimodular_signs(milnor_sign_pattern(*c)) == UnimodularGroup::SL2R);
}

TEST_CASE("fingerprints") {
  LieAlgebra abelian(3);
  auto fp = fingerprint(abelian);
  CHECK(fp.killing_inertia == Inertia{0, 0, 3});
  CHECK(fp.center_dim == 3);
  CHECK(fp.solvable);
  CHECK(fp.nilpotent);
  CHECK(fp.derived_series_dims == std::vector<int>{3, 0});

  auto heis = MetricLieAlgebra::unimodular(Rational(1), Rational(0), Rational(0)).as_lie_algebra();
  auto fph = fingerprint(heis);
  CHECK(fph.nilpotent);
  CHECK(fph.center_dim == 1);
  CHECK(fph.lower_central_dims == std::vector<int>{3, 1, 0});
}

TEST_CASE("fingerprints are isomorphism invariants on constructed pairs") {
  testsup::Rng rng(127);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = (trial % 2 == 0) ? rng.unimodular() : rng.nonunimodular();
    auto rec = reconstruct_trivially(g);
    // conjugating the reconstruction by a (metric-preserving) signed
    // permutation with determinant one gives an isomorphic algebra
    MatQ P(3, 3);
    P.at(0, 1) = Rational(1);
    P.at(1, 0) = Rational(-1);
    P.at(2, 2) = Rational(1);
    LieAlgebra moved(3);
    // c'_{ijk}: [P e_i, P e_j] = sum c'_k P e_k
    MatQ Pinv = P.transposed();  // orthogonal
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        VecQ pi(3), pj(3);
        for (int r = 0; r < 3; ++r) {
          pi[r] = P.at(r, i);
          pj[r] = P.at(r, j);
        }
        VecQ w = rec.total.bracket(pi, pj);
        VecQ coords = Pinv.apply(w);
        for (int k = 0; k < 3; ++k) moved.at(i, j, k) = coords[k];
      }
    ReconstructedAlgebra B;
    B.total = moved;
    if (verify_isomorphism(P, B, rec)) CHECK(fingerprint(B.total) == fingerprint(rec.total));
    CHECK(bracket_preserving(P, moved, rec.total));
  }
}

TEST_CASE("the ga(1)+R to g(1,b) bracket isomorphism of the twin description") {
  testsup::Rng rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    Rational b = rng.nonnegative_rational(5, 2) + Rational(1, 7);  // keep b nonzero
    // ga(1) + R: [ê1, ê2] = -ê1, everything else zero
    LieAlgebra ga(3);
    ga.at(0, 1, 0) = Rational(-1);
    ga.at(1, 0, 0) = Rational(1);
    REQUIRE(ga.jacobi_holds());
    auto target = MetricLieAlgebra::nonunimodular(Rational(1), b).as_lie_algebra();
    // ê1 -> 2 e2 + 2b e3, ê2 -> (1/2) e1, ê3 -> e3
    MatQ F(3, 3);
    F.at(1, 0) = Rational(2);
    F.at(2, 0) = Rational(2) * b;
    F.at(0, 1) = Rational(1, 2);
    F.at(2, 2) = Rational(1);
    CHECK(bracket_preserving(F, ga, target));
    CHECK_FALSE(det(F).is_zero());
    // perturbing one entry breaks the bracket identity
    MatQ Fbad = F;
    Fbad.at(1, 0) += Rational(1);
    CHECK_FALSE(bracket_preserving(Fbad, ga, target));
  }
}

TEST_CASE("holonomy dimension across the SO(2) family") {
  testsup::Rng rng(137);
  for (const Rational& b : {Rational(1), Rational(2), Rational(1, 2)}) {
    auto g = MetricLieAlgebra::nonunimodular(Rational(1), b);
    auto fam = so2_family(g);
    Rational flat_r = -(b * b + Rational(2)) / b;
    auto prof = family_holonomy(g, fam);
    CHECK(prof.generic_dim == 1);
    REQUIRE(prof.flat_parameters.size() == 1);
    CHECK(prof.flat_parameters[0] == flat_r);
    for (int trial = 0; trial < 5; ++trial) {
      Rational r = rng.rational();
      auto rec = build_transitive_algebra(g, fam.member(r));
      int expect = (r == flat_r) ? 0 : 1;
      CHECK(rec.holonomy_dim() == expect);
      CHECK(rec.total.dim == 3 + expect);
    }
  }
}

TEST_CASE("solver outputs rebuild into valid transitive algebras") {
  testsup::Rng rng(139);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = (trial % 2 == 0) ? rng.unimodular() : rng.nonunimodular();
    auto out = solve_left_invariant(g);
    for (const auto& s : out.structures) {
      auto rec = build_transitive_algebra(g, s);
      CHECK(rec.total.jacobi_holds());
      CHECK(rec.holonomy_dim() <= 1);
    }
    for (const auto& f : out.families) {
      auto rec = build_transitive_algebra(g, f.member(rng.rational()));
      CHECK(rec.total.jacobi_holds());
      CHECK(rec.holonomy_dim() <= 1);
      for (const auto& u : rec.holonomy_generators) CHECK(u.is_skew());
    }
  }
}

TEST_CASE("verify_isomorphism rejects maps that break the structure") {
  auto rec = reconstruct_trivially(MetricLieAlgebra::unimodular(Rational(1), Rational(2), Rational(4)));
  MatQ notiso = MatQ::identity(3);
  notiso.at(0, 0) = Rational(2);  // not an isometry on m
  CHECK_FALSE(verify_isomorphism(notiso, rec, rec));
  CHECK_THROWS_AS(verify_isomorphism(MatQ::identity(4), rec, rec), Error);
}
