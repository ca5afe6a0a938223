// Command-line surface for the homog3 library: classification, the
// homogeneous-structure solver, Ambrose-Singer verification, reconstruction,
// the contact layer, and parameter sweeps. All input and output is exact
// rational; decimal input is rejected, never approximated.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "homog3/analyze.hpp"

using namespace homog3;

namespace {

struct AlgebraOptions {
  std::string input_file;
  std::string unimodular_csv;
  std::string nonunimodular_csv;
};

std::vector<Rational> parse_csv_rationals(const std::string& s, size_t expect) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.size() != expect)
    throw Error("BadInput", "expected " + std::to_string(expect) + " comma-separated rationals, got '" + s + "'");
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("BadInput", "cannot open input file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw Error("BadInput", std::string("JSON parse failure: ") + e.what());
  }
  return j;
}

MetricLieAlgebra algebra_from_options(const AlgebraOptions& opt) {
  int given = !opt.input_file.empty() + !opt.unimodular_csv.empty() + !opt.nonunimodular_csv.empty();
  if (given != 1)
    throw Error("BadInput", "give exactly one of --input, --unimodular c1,c2,c3, --nonunimodular alpha,beta");
  if (!opt.unimodular_csv.empty()) {
    auto c = parse_csv_rationals(opt.unimodular_csv, 3);
    return MetricLieAlgebra::unimodular(c[0], c[1], c[2]);
  }
  if (!opt.nonunimodular_csv.empty()) {
    auto ab = parse_csv_rationals(opt.nonunimodular_csv, 2);
    return MetricLieAlgebra::nonunimodular(ab[0], ab[1]);
  }
  Json j = load_json_file(opt.input_file);
  return algebra_from_json(j.contains("algebra") ? j.at("algebra") : j);
}

void add_algebra_options(CLI::App* cmd, AlgebraOptions& opt) {
  cmd->add_option("--input", opt.input_file, "JSON input file with the algebra");
  cmd->add_option("--unimodular", opt.unimodular_csv, "unimodular constants c1,c2,c3");
  cmd->add_option("--nonunimodular", opt.nonunimodular_csv, "non-unimodular constants alpha,beta");
}

void emit(const Json& j, const std::string& format, const std::string& text) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string solver_summary_text(const MetricLieAlgebra& g, const SolverOutcome& out) {
  std::ostringstream os;
  os << "algebra: " << describe_algebra(g) << "\n";
  switch (out.kind) {
    case SolverOutcome::Kind::LocallySymmetric:
    case SolverOutcome::Kind::SpaceForm:
      os << "solver: " << out.note << "\n";
      return os.str();
    case SolverOutcome::Kind::Solutions:
      break;
  }
  os << "structures: " << out.structures.size() << " isolated, " << out.families.size() << " family(ies)\n";
  if (!out.note.empty()) os << "note: " << out.note << "\n";
  for (const auto& s : out.structures)
    os << "  S_123 = " << s.S(0, 1, 2) << ", S_231 = " << s.S(1, 2, 0) << ", S_312 = " << s.S(2, 0, 1) << "\n";
  for (const auto& f : out.families)
    os << "  family base S_123 = " << f.base.S(0, 1, 2) << ", S_231 = " << f.base.S(1, 2, 0)
       << ", direction S_312 = " << f.direction.S(2, 0, 1) << " (parameter " << f.parameter << ")\n";
  return os.str();
}

Json solver_to_json(const MetricLieAlgebra& g, const SolverOutcome& out) {
  Json j;
  j["input"] = algebra_to_json(g);
  switch (out.kind) {
    case SolverOutcome::Kind::LocallySymmetric: j["outcome"] = "locally_symmetric"; break;
    case SolverOutcome::Kind::SpaceForm: j["outcome"] = "space_form"; break;
    case SolverOutcome::Kind::Solutions: j["outcome"] = "solutions"; break;
  }
  if (!out.note.empty()) j["note"] = out.note;
  if (out.space_form_curvature) j["curvature"] = out.space_form_curvature->str();
  j["non_left_invariant_extras_possible"] = out.non_left_invariant_extras_possible;
  Json ss = Json::array();
  for (const auto& s : out.structures) ss.push_back(structure_to_json(s));
  j["structures"] = ss;
  Json ff = Json::array();
  for (const auto& f : out.families) ff.push_back(family_to_json(f));
  j["families"] = ff;
  return j;
}

size_t max_denominator_bits() {
  const char* env = std::getenv("HOMOG3_MAX_DENOM");
  if (!env) return 0;
  long v = std::atol(env);
  return v > 0 ? static_cast<size_t>(v) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact homogeneous Riemannian structures on 3-dimensional metric Lie algebras"};
  app.require_subcommand(1);

  std::string format = "text";
  AlgebraOptions aopt;
  std::string pair_file;

  auto* cmd_analyze = app.add_subcommand("analyze", "full pipeline: classify, curvature, solve, reconstruct, contact");
  add_algebra_options(cmd_analyze, aopt);
  auto* cmd_solve = app.add_subcommand("solve", "solve for left-invariant homogeneous structures only");
  add_algebra_options(cmd_solve, aopt);
  auto* cmd_contact = app.add_subcommand("contact", "contact / CR layer report");
  add_algebra_options(cmd_contact, aopt);

  auto* cmd_tv = app.add_subcommand("tv", "Tricerri-Vanhecke classification of a user-supplied S");
  cmd_tv->add_option("--input", pair_file, "JSON file {\"algebra\":..., \"S\":[27 entries]}")->required();
  auto* cmd_verify = app.add_subcommand("verify", "Ambrose-Singer verification of a user-supplied S");
  cmd_verify->add_option("--input", pair_file, "JSON file {\"algebra\":..., \"S\":[27 entries]}")->required();
  auto* cmd_reconstruct = app.add_subcommand("reconstruct", "transitive algebra of a verified (g, S)");
  cmd_reconstruct->add_option("--input", pair_file, "JSON file {\"algebra\":..., \"S\":[27 entries]}")->required();

  auto* cmd_sweep = app.add_subcommand("sweep", "evaluate the solver's one-parameter family across a range");
  add_algebra_options(cmd_sweep, aopt);
  std::string param = "r", from_s, to_s, step_s;
  cmd_sweep->add_option("--param", param, "parameter name (informational)");
  cmd_sweep->add_option("--from", from_s, "range start (rational)")->required();
  cmd_sweep->add_option("--to", to_s, "range end (rational)")->required();
  cmd_sweep->add_option("--step", step_s, "step (positive rational)")->required();

  for (auto* cmd : {cmd_analyze, cmd_solve, cmd_contact, cmd_tv, cmd_verify, cmd_reconstruct, cmd_sweep})
    cmd->add_option("--format", format, "output format: json or text")->check(CLI::IsMember({"json", "text"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_analyze->parsed()) {
      auto g = algebra_from_options(aopt);
      auto rep = analyze(g);
      emit(report_to_json(rep), format, report_to_text(rep));
    } else if (cmd_solve->parsed()) {
      auto g = algebra_from_options(aopt);
      auto out = solve_left_invariant(g);
      emit(solver_to_json(g, out), format, solver_summary_text(g, out));
    } else if (cmd_contact->parsed()) {
      auto g = algebra_from_options(aopt);
      auto rep = build_contact_report(g);
      if (!rep) throw Error("UnsupportedForm", "no reference almost contact structure for this normal form");
      Json j;
      j["input"] = algebra_to_json(g);
      j["contact"] = contact_report_to_json(*rep);
      std::ostringstream os;
      os << "algebra: " << describe_algebra(g) << "\n" << j["contact"].dump(2) << "\n";
      emit(j, format, os.str());
    } else if (cmd_tv->parsed() || cmd_verify->parsed() || cmd_reconstruct->parsed()) {
      Json j = load_json_file(pair_file);
      auto g = algebra_from_json(j.at("algebra"));
      auto s = structure_from_json(j);
      if (cmd_tv->parsed()) {
        auto d = tv_decompose(s);
        Json out;
        out["tv_class"] = tv_class_name(d.cls);
        out["xi"] = Json::array({d.xi[0].str(), d.xi[1].str(), d.xi[2].str()});
        out["S1"] = ten3_to_json(d.S1);
        out["S2"] = ten3_to_json(d.S2);
        out["S3"] = ten3_to_json(d.S3);
        emit(out, format, "TV class: " + tv_class_name(d.cls) + "\n");
      } else if (cmd_verify->parsed()) {
        auto rep = as_verify(g, s);
        std::ostringstream os;
        os << "metric_ok " << rep.metric_ok << ", ricci_parallel_ok " << rep.ricci_parallel_ok
           << ", curvature_parallel_ok " << rep.curvature_parallel_ok << ", S_parallel_ok " << rep.s_parallel_ok
           << " => " << (rep.pass() ? "PASS" : "FAIL") << "\n";
        emit(as_report_to_json(rep), format, os.str());
        if (!rep.pass()) return 1;
      } else {
        auto rec = build_transitive_algebra(g, s);
        std::ostringstream os;
        os << "dim l = " << rec.total.dim << ", isotropy dim = " << rec.holonomy_dim() << "\n";
        emit(reconstructed_to_json(rec), format, os.str());
      }
    } else if (cmd_sweep->parsed()) {
      auto g = algebra_from_options(aopt);
      Rational from = Rational::parse(from_s), to = Rational::parse(to_s), step = Rational::parse(step_s);
      if (step.sign() <= 0) throw Error("BadInput", "--step must be a positive rational");
      auto out = solve_left_invariant(g);
      if (out.families.size() != 1)
        throw Error("BadInput", "sweep needs an algebra whose solver outcome has exactly one family");
      const auto& fam = out.families[0];
      size_t cap = max_denominator_bits();
      Json rows = Json::array();
      std::ostringstream os;
      for (Rational r = from; r <= to; r += step) {
        if (cap && r.den_bits() > cap)
          throw Error("DenominatorCap", "sample " + r.str() + " exceeds HOMOG3_MAX_DENOM = " + std::to_string(cap) +
                                            " bits (aborting; values are never rounded)");
        HomStructure s = fam.member(r);
        auto tv = tv_decompose(s).cls;
        auto rec = build_transitive_algebra(g, s);
        bool pass = as_verify(g, s).pass();
        Json row;
        row[param] = r.str();
        row["tv_class"] = tv_class_name(tv);
        row["holonomy_dim"] = rec.holonomy_dim();
        row["as_verify"] = pass;
        rows.push_back(row);
        os << param << " = " << r.str() << ": TV " << tv_class_name(tv) << ", holonomy dim "
           << rec.holonomy_dim() << ", verify " << (pass ? "pass" : "FAIL") << "\n";
      }
      emit(rows, format, os.str());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error [BadInput]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
