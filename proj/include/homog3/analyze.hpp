#pragma once

#include <sstream>

#include "homog3/json_io.hpp"

namespace homog3 {

/// Everything the `analyze` pipeline computes for one algebra:
/// classification, curvature, the structure solver, per-structure
/// Tricerri-Vanhecke class and reconstruction, contact data when the
/// normal form supports the reference almost contact structure.
struct StructureEntry {
  HomStructure S;
  TVClass tv = TVClass::Symmetric;
  AmbroseSingerReport verify;
  ReconstructedAlgebra rec;
  AlgebraFingerprint fp;
  std::string coset_hint;
};

struct FamilySpecialMember {
  Rational r;
  TVClass tv;
};

struct FamilyEntry {
  StructureFamily fam;
  TVClass tv_generic = TVClass::Symmetric;
  std::vector<FamilySpecialMember> tv_special;
  FamilyHolonomy holonomy;
  AlgebraFingerprint generic_fp;
  std::string generic_coset_hint;
  std::vector<std::pair<Rational, AlgebraFingerprint>> flat_fps;
};

struct AnalysisReport {
  MetricLieAlgebra g;
  std::optional<MilnorClassification> milnor;
  std::optional<int> isometry_dim;
  bool unimodular_flag = false;
  CurvatureData curv;
  bool locally_symmetric = false;
  std::optional<Rational> constant_curvature;
  SolverOutcome solver;
  std::vector<StructureEntry> structures;
  std::vector<FamilyEntry> families;
  std::optional<ContactReport> contact;

  AnalysisReport(const MetricLieAlgebra& alg) : g(alg), curv(curvature(alg, levi_civita(alg))) {}
};

inline std::string coset_hint_for(const MetricLieAlgebra& g, const ReconstructedAlgebra& rec) {
  if (rec.holonomy_dim() == 0) {
    bool same_as_input = rec.total.dim == 3;
    if (same_as_input)
      for (int i = 0; i < 3 && same_as_input; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            if (rec.total.at(i, j, k) != g.c(i, j, k)) same_as_input = false;
    return same_as_input ? "G/{e}" : "L/{e}";
  }
  if (rec.holonomy_dim() == 1) return "L x SO(2) / SO(2)";
  return "L/H with dim H = " + std::to_string(rec.holonomy_dim());
}

inline StructureEntry analyze_structure(const MetricLieAlgebra& g, const HomStructure& s) {
  StructureEntry e;
  e.S = s;
  e.tv = tv_decompose(s).cls;
  e.verify = as_verify(g, s);
  e.rec = build_transitive_algebra(g, s);
  e.fp = fingerprint(e.rec.total);
  e.coset_hint = coset_hint_for(g, e.rec);
  return e;
}

inline FamilyEntry analyze_family(const MetricLieAlgebra& g, const StructureFamily& fam) {
  FamilyEntry e;
  e.fam = fam;
  e.holonomy = family_holonomy(g, fam);

  // Tricerri-Vanhecke class along the family: candidates for special
  // parameters come from the affine class conditions in r.
  Ten3<Poly> S;
  Poly t = Poly::variable(0);
  for (int i = 0; i < 27; ++i) S.t[i] = Poly(fam.base.S.t[i]) + fam.direction.S.t[i] * t;
  std::vector<Rational> candidates;
  auto add_root = [&candidates](const Poly& p) {
    if (p.is_zero() || p.is_constant()) return;
    auto roots = rational_roots(uni_coeffs(p, 0));
    for (const auto& r : roots.roots) {
      for (const auto& c : candidates)
        if (c == r) return;
      candidates.push_back(r);
    }
  };
  Vec3<Poly> omega;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) omega[k] += Rational(1, 2) * S(i, i, k);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        add_root(S(i, j, k) + S(j, k, i) + S(k, i, j));                 // cyclic sum
        add_root(S(i, j, k) + S(j, i, k));                              // total skewness
        add_root(S(i, j, k) - (Rational(delta(i, j)) * omega[k] - Rational(delta(k, i)) * omega[j]));  // T1 shape
      }
  for (int k = 0; k < 3; ++k) add_root(omega[k]);
  std::sort(candidates.begin(), candidates.end());

  Rational probe(0);
  auto is_candidate = [&candidates](const Rational& r) {
    for (const auto& c : candidates)
      if (c == r) return true;
    return false;
  };
  while (is_candidate(probe)) probe += Rational(1);
  e.tv_generic = tv_decompose(fam.member(probe)).cls;
  for (const auto& r : candidates) {
    TVClass c = tv_decompose(fam.member(r)).cls;
    if (c != e.tv_generic) e.tv_special.push_back({r, c});
  }

  // reconstruction at a generic member and at the flat members
  Rational rep = probe;
  auto not_flat = [&e](const Rational& r) {
    for (const auto& f : e.holonomy.flat_parameters)
      if (f == r) return false;
    return true;
  };
  while (!not_flat(rep) || is_candidate(rep)) rep += Rational(1);
  auto rec = build_transitive_algebra(g, fam.member(rep));
  e.generic_fp = fingerprint(rec.total);
  e.generic_coset_hint = coset_hint_for(g, rec);
  for (const auto& r : e.holonomy.flat_parameters) {
    auto frec = build_transitive_algebra(g, fam.member(r));
    e.flat_fps.emplace_back(r, fingerprint(frec.total));
  }
  return e;
}

inline AnalysisReport analyze(const MetricLieAlgebra& g) {
  AnalysisReport rep(g);
  rep.unimodular_flag = is_unimodular(g);
  if (g.form().kind != NormalFormKind::Generic) {
    rep.milnor = milnor_classify(g);
    rep.isometry_dim = isometry_dimension(g);
  }
  rep.locally_symmetric = is_locally_symmetric(g);
  rep.constant_curvature = constant_curvature_check(g);
  rep.solver = solve_left_invariant(g);
  for (const auto& s : rep.solver.structures) rep.structures.push_back(analyze_structure(g, s));
  for (const auto& f : rep.solver.families) rep.families.push_back(analyze_family(g, f));
  rep.contact = build_contact_report(g);
  return rep;
}

// ---------------------------------------------------------------------------

inline Json report_to_json(const AnalysisReport& r) {
  Json j;
  j["input"] = algebra_to_json(r.g);
  Json cls;
  cls["unimodular"] = r.unimodular_flag;
  if (r.milnor) cls["milnor"] = milnor_to_json(*r.milnor);
  if (r.isometry_dim) cls["isometry_dimension"] = *r.isometry_dim;
  j["classification"] = cls;
  Json curv = curvature_to_json(r.curv);
  curv["locally_symmetric"] = r.locally_symmetric;
  curv["constant_curvature"] = r.constant_curvature ? Json(r.constant_curvature->str()) : Json(nullptr);
  j["curvature"] = curv;

  Json solver;
  switch (r.solver.kind) {
    case SolverOutcome::Kind::LocallySymmetric: solver["outcome"] = "locally_symmetric"; break;
    case SolverOutcome::Kind::SpaceForm: solver["outcome"] = "space_form"; break;
    case SolverOutcome::Kind::Solutions: solver["outcome"] = "solutions"; break;
  }
  if (!r.solver.note.empty()) solver["note"] = r.solver.note;
  if (r.solver.space_form_curvature) solver["curvature"] = r.solver.space_form_curvature->str();
  solver["non_left_invariant_extras_possible"] = r.solver.non_left_invariant_extras_possible;

  Json structs = Json::array();
  for (const auto& e : r.structures) {
    Json s = structure_to_json(e.S);
    s["tv_class"] = tv_class_name(e.tv);
    s["as_verify"] = as_report_to_json(e.verify);
    Json rec = reconstructed_to_json(e.rec);
    rec["coset_hint"] = e.coset_hint;
    s["reconstruction"] = rec;
    structs.push_back(s);
  }
  solver["structures"] = structs;

  Json fams = Json::array();
  for (const auto& e : r.families) {
    Json f = family_to_json(e.fam);
    f["tv_class_generic"] = tv_class_name(e.tv_generic);
    Json specials = Json::array();
    for (const auto& sp : e.tv_special)
      specials.push_back(Json{{"r", sp.r.str()}, {"tv_class", tv_class_name(sp.tv)}});
    f["tv_special_members"] = specials;
    Json hol;
    hol["generic_dim"] = e.holonomy.generic_dim;
    Json flats = Json::array();
    for (const auto& fr : e.holonomy.flat_parameters) flats.push_back(fr.str());
    hol["flat_parameters"] = flats;
    f["holonomy"] = hol;
    f["generic_fingerprint"] = fingerprint_to_json(e.generic_fp);
    f["generic_coset_hint"] = e.generic_coset_hint;
    Json ffps = Json::array();
    for (const auto& [rr, fp] : e.flat_fps) ffps.push_back(Json{{"r", rr.str()}, {"fingerprint", fingerprint_to_json(fp)}});
    f["flat_member_fingerprints"] = ffps;
    fams.push_back(f);
  }
  solver["families"] = fams;
  j["solver"] = solver;

  j["contact"] = r.contact ? contact_report_to_json(*r.contact) : Json(nullptr);
  return j;
}

inline std::string describe_algebra(const MetricLieAlgebra& g) {
  const NormalForm& f = g.form();
  std::ostringstream os;
  switch (f.kind) {
    case NormalFormKind::Unimodular:
      os << "unimodular (c1,c2,c3) = (" << f.c[0] << ", " << f.c[1] << ", " << f.c[2] << ")";
      break;
    case NormalFormKind::NonUnimodular:
      os << "non-unimodular (alpha,beta) = (" << f.alpha << ", " << f.beta << ")";
      break;
    case NormalFormKind::Generic:
      os << "generic structure constants";
      break;
  }
  return os.str();
}

inline std::string report_to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "algebra: " << describe_algebra(r.g) << "\n";
  if (r.milnor) {
    os << "classification: ";
    if (r.milnor->group) {
      os << unimodular_group_name(*r.milnor->group) << " (signs ";
      for (int s : r.milnor->sign_pattern) os << (s > 0 ? '+' : s < 0 ? '-' : '0');
      os << ")";
    } else if (r.milnor->milnor_invariant) {
      os << "Milnor invariant D = " << *r.milnor->milnor_invariant
         << ", chi = " << (r.milnor->chi_infinite ? std::string("inf") : r.milnor->tasaki_umehara->str());
    }
    os << "; isometry group dimension " << *r.isometry_dim << "\n";
  }
  if (r.g.form().kind == NormalFormKind::Unimodular) {
    const auto& c = r.g.form().c;
    Rational half_sum = Rational(1, 2) * (c[0] + c[1] + c[2]);
    os << "mu = (" << half_sum - c[0] << ", " << half_sum - c[1] << ", " << half_sum - c[2] << ")\n";
  }
  auto p = r.curv.principal_ricci();
  if (p)
    os << "principal Ricci curvatures rho = (" << (*p)[0] << ", " << (*p)[1] << ", " << (*p)[2] << ")";
  else
    os << "Ricci tensor not diagonal in this frame";
  os << ", scalar = " << r.curv.scalar << "\n";
  os << "locally symmetric: " << (r.locally_symmetric ? "yes" : "no");
  if (r.constant_curvature) os << "; constant curvature k = " << *r.constant_curvature;
  os << "\n";

  switch (r.solver.kind) {
    case SolverOutcome::Kind::LocallySymmetric:
      os << "solver: " << r.solver.note << "\n";
      return os.str();
    case SolverOutcome::Kind::SpaceForm:
      os << "solver: " << r.solver.note;
      if (r.solver.space_form_curvature) os << " (k = " << *r.solver.space_form_curvature << ")";
      os << "\n";
      return os.str();
    case SolverOutcome::Kind::Solutions:
      break;
  }
  os << "left-invariant homogeneous Riemannian structures: " << r.structures.size() << " isolated, "
     << r.families.size() << " one-parameter famil" << (r.families.size() == 1 ? "y" : "ies") << "\n";
  if (!r.solver.note.empty()) os << "note: " << r.solver.note << "\n";
  int idx = 1;
  for (const auto& e : r.structures) {
    os << "  structure " << idx++ << ": TV class " << tv_class_name(e.tv) << ", AS verify "
       << (e.verify.pass() ? "pass" : "FAIL") << ", dim l = " << e.rec.total.dim << " (isotropy "
       << e.rec.holonomy_dim() << "), coset " << e.coset_hint << "\n";
    os << "    S_123 = " << e.S.S(0, 1, 2) << ", S_231 = " << e.S.S(1, 2, 0) << ", S_312 = " << e.S.S(2, 0, 1)
       << "\n";
  }
  for (const auto& e : r.families) {
    os << "  family in " << e.fam.parameter << ": TV class " << tv_class_name(e.tv_generic) << " generically";
    for (const auto& sp : e.tv_special) os << ", " << tv_class_name(sp.tv) << " at " << e.fam.parameter << " = " << sp.r;
    os << "\n    holonomy dim " << e.holonomy.generic_dim << " generically";
    for (const auto& fr : e.holonomy.flat_parameters) os << ", flat at " << e.fam.parameter << " = " << fr;
    os << "; generic coset " << e.generic_coset_hint << "\n";
  }
  if (r.contact) {
    const auto& c = *r.contact;
    os << "contact layer: ";
    if (c.contact_constant)
      os << "d(eta) = " << *c.contact_constant << " g(.,phi .)";
    else
      os << "not contact metric";
    if (c.sasakian_beta) os << "; " << *c.sasakian_beta << "-Sasakian";
    if (c.kappa && c.mu) os << "; (kappa,mu) = (" << *c.kappa << ", " << *c.mu << ")";
    if (c.flat) os << "; flat";
    if (c.boeckx_equals_minus) os << "; Boeckx structure " << (*c.boeckx_equals_minus ? "=" : "!=") << " S(-)";
    if (c.tw_equals_boeckx) os << "; Tanaka-Webster " << (*c.tw_equals_boeckx ? "=" : "!=") << " nabla + S^B";
    os << "\n";
  }
  return os.str();
}

}  // namespace homog3
