#pragma once

#include <json.hpp>

#include "homog3/contact.hpp"
#include "homog3/homstruct.hpp"
#include "homog3/lie_metric.hpp"
#include "homog3/reconstruct.hpp"

namespace homog3 {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw Error("BadInput", "expected a rational as \"p/q\" string or integer, got: " + j.dump());
}

inline Json vec_to_json(const VecQ& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline Json mat3_to_json(const Mat3Q& m) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

/// 27-entry flat array in (i, j, k) order.
inline Json ten3_to_json(const Ten3Q& t) {
  Json a = Json::array();
  for (const auto& x : t.t) a.push_back(x.str());
  return a;
}

inline Ten3Q ten3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 27) throw Error("BadInput", "expected a flat 27-entry tensor array");
  Ten3Q t;
  for (int i = 0; i < 27; ++i) t.t[i] = rational_from_json(j[i]);
  return t;
}

// ---------------------------------------------------------------------------
// algebra schema:
//   {"form":"unimodular","c":["1","2","4"]}
//   {"form":"nonunimodular","alpha":"1","beta":"1"}
//   {"form":"generic","c":[[["0",...],...],...]}   (c[i][j][k] = c^k_ij)

inline Json algebra_to_json(const MetricLieAlgebra& g) {
  Json j;
  const NormalForm& f = g.form();
  switch (f.kind) {
    case NormalFormKind::Unimodular:
      j["form"] = "unimodular";
      j["c"] = Json::array({f.c[0].str(), f.c[1].str(), f.c[2].str()});
      break;
    case NormalFormKind::NonUnimodular:
      j["form"] = "nonunimodular";
      j["alpha"] = f.alpha.str();
      j["beta"] = f.beta.str();
      break;
    case NormalFormKind::Generic: {
      j["form"] = "generic";
      Json c = Json::array();
      for (int i = 0; i < 3; ++i) {
        Json ci = Json::array();
        for (int jj = 0; jj < 3; ++jj) {
          Json cij = Json::array();
          for (int k = 0; k < 3; ++k) cij.push_back(g.c(i, jj, k).str());
          ci.push_back(cij);
        }
        c.push_back(ci);
      }
      j["c"] = c;
      break;
    }
  }
  return j;
}

inline MetricLieAlgebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("form")) throw Error("BadInput", "algebra object must carry a \"form\" key");
  std::string form = j.at("form").get<std::string>();
  if (form == "unimodular") {
    const Json& c = j.at("c");
    if (!c.is_array() || c.size() != 3) throw Error("BadInput", "unimodular form needs c = [c1, c2, c3]");
    return MetricLieAlgebra::unimodular(rational_from_json(c[0]), rational_from_json(c[1]), rational_from_json(c[2]));
  }
  if (form == "nonunimodular")
    return MetricLieAlgebra::nonunimodular(rational_from_json(j.at("alpha")), rational_from_json(j.at("beta")));
  if (form == "generic") {
    const Json& c = j.at("c");
    if (!c.is_array() || c.size() != 3) throw Error("BadInput", "generic form needs c[i][j][k]");
    Ten3Q t;
    for (int i = 0; i < 3; ++i)
      for (int jj = 0; jj < 3; ++jj)
        for (int k = 0; k < 3; ++k) t(i, jj, k) = rational_from_json(c.at(i).at(jj).at(k));
    return MetricLieAlgebra::generic(t);
  }
  throw Error("BadInput", "unknown form \"" + form + "\"");
}

// ---------------------------------------------------------------------------

inline Json curvature_to_json(const CurvatureData& cd) {
  Json j;
  Json r = Json::array();
  for (const auto& x : cd.R.t) r.push_back(x.str());
  j["R"] = r;  // flat 81 entries, (i,j,k,l) order
  j["ric"] = mat3_to_json(cd.ric);
  j["scalar"] = cd.scalar.str();
  if (auto p = cd.principal_ricci()) {
    Json pr = Json::array({(*p)[0].str(), (*p)[1].str(), (*p)[2].str()});
    j["principal_ricci"] = pr;
  }
  return j;
}

inline Json structure_to_json(const HomStructure& s) {
  Json j;
  j["S"] = ten3_to_json(s.S);
  return j;
}

inline Json family_to_json(const StructureFamily& f) {
  Json j;
  j["S"] = ten3_to_json(f.base.S);
  j["direction"] = ten3_to_json(f.direction.S);
  j["parameter"] = f.parameter;
  return j;
}

inline HomStructure structure_from_json(const Json& j) {
  HomStructure s;
  s.S = ten3_from_json(j.is_object() ? j.at("S") : j);
  if (!s.metrical()) throw Error("MetricalConditionViolated", "S must satisfy S(i,j,k) = -S(i,k,j)");
  return s;
}

inline Json residuals_to_json(const std::vector<ResidualEntry>& res) {
  Json a = Json::array();
  for (const auto& e : res) {
    Json idx = Json::array();
    for (int q = 0; q < e.arity; ++q) idx.push_back(e.index[q] + 1);  // 1-based basis indices
    a.push_back(Json{{"index", idx}, {"value", e.value.str()}});
  }
  return a;
}

inline Json as_report_to_json(const AmbroseSingerReport& r) {
  Json j;
  j["pass"] = r.pass();
  j["metric_ok"] = r.metric_ok;
  j["ricci_parallel_ok"] = r.ricci_parallel_ok;
  j["curvature_parallel_ok"] = r.curvature_parallel_ok;
  j["S_parallel_ok"] = r.s_parallel_ok;
  if (!r.metric_ok) j["metric_residuals"] = residuals_to_json(r.metric_residuals);
  if (!r.ricci_parallel_ok) j["ricci_residuals"] = residuals_to_json(r.ricci_residuals);
  if (!r.curvature_parallel_ok) j["curvature_residuals"] = residuals_to_json(r.curvature_residuals);
  if (!r.s_parallel_ok) j["S_residuals"] = residuals_to_json(r.s_residuals);
  return j;
}

inline Json fingerprint_to_json(const AlgebraFingerprint& fp) {
  Json j;
  j["dim"] = fp.dim;
  j["derived_series_dims"] = fp.derived_series_dims;
  j["lower_central_dims"] = fp.lower_central_dims;
  j["center_dim"] = fp.center_dim;
  j["killing_inertia"] = Json::array({fp.killing_inertia.n_plus, fp.killing_inertia.n_minus, fp.killing_inertia.n_zero});
  j["solvable"] = fp.solvable;
  j["nilpotent"] = fp.nilpotent;
  j["unimodular"] = fp.unimodular;
  return j;
}

inline Json reconstructed_to_json(const ReconstructedAlgebra& rec) {
  Json j;
  j["dim"] = rec.total.dim;
  Json br = Json::array();
  int n = rec.total.dim;
  for (int i = 0; i < n; ++i) {
    Json bi = Json::array();
    for (int jj = 0; jj < n; ++jj) {
      Json bij = Json::array();
      for (int k = 0; k < n; ++k) bij.push_back(rec.total.at(i, jj, k).str());
      bi.push_back(bij);
    }
    br.push_back(bi);
  }
  j["brackets"] = br;
  j["isotropy"] = rec.isotropy_indices;
  j["fingerprint"] = fingerprint_to_json(fingerprint(rec.total));
  return j;
}

inline Json contact_report_to_json(const ContactReport& r) {
  Json j;
  j["contact_constant"] = r.contact_constant ? Json(r.contact_constant->str()) : Json(nullptr);
  j["h"] = mat3_to_json(r.h);
  j["kappa"] = r.kappa ? Json(r.kappa->str()) : Json(nullptr);
  j["mu"] = r.mu ? Json(r.mu->str()) : Json(nullptr);
  j["sasakian_beta"] = r.sasakian_beta ? Json(r.sasakian_beta->str()) : Json(nullptr);
  j["flat"] = r.flat;
  j["boeckx_equals_minus"] = r.boeckx_equals_minus ? Json(*r.boeckx_equals_minus) : Json(nullptr);
  j["tw_equals_boeckx"] = r.tw_equals_boeckx ? Json(*r.tw_equals_boeckx) : Json(nullptr);
  return j;
}

inline Json milnor_to_json(const MilnorClassification& m) {
  Json j;
  if (m.group) {
    j["group"] = unimodular_group_name(*m.group);
    std::string sp;
    for (int s : m.sign_pattern) sp += (s > 0 ? '+' : s < 0 ? '-' : '0');
    j["sign_pattern"] = sp;
  }
  if (m.milnor_invariant) j["milnor_invariant"] = m.milnor_invariant->str();
  if (m.chi_infinite)
    j["tasaki_umehara_chi"] = "inf";
  else if (m.tasaki_umehara)
    j["tasaki_umehara_chi"] = m.tasaki_umehara->str();
  if (m.char_poly_A) {
    const auto& c = *m.char_poly_A;
    j["char_poly_A"] = Json::array({c[0].str(), c[1].str(), c[2].str()});
  }
  return j;
}

}  // namespace homog3
