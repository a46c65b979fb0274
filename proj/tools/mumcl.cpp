// Command-line front end: validation, group reports, classification, linear
// equivalence with witnesses, min-restrictions, divisor sampling, and the
// independent brute-force oracle.
//
// Machine-readable JSON goes to standard output (or --out); human summaries
// go to standard error.  Exit codes: 0 success or equivalent, 1 invalid
// input, 2 refuted or nonequivalent, 3 internal invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mumcl/json_io.hpp"

using namespace mumcl;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(path + ": " + e.what());
  }
  return j;
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

void emit(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw input_error("cannot write " + out_path);
    out << text;
  }
}

i64 to_int(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    i64 v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw input_error(what + ": not an integer: " + text);
  }
}

GluedScheme load_scheme(const std::string& path) {
  return parse_scheme(load_json(path));
}

MumfordDivisor load_divisor(const std::string& path, const GluedScheme& s,
                            const std::string& scheme_stem) {
  return parse_divisor(load_json(path), s, scheme_stem);
}

int run_validate(const std::string& scheme_path, const std::string& out_path) {
  json out;
  try {
    GluedScheme s = parse_scheme(load_json(scheme_path), false);
    std::vector<std::string> diags = scheme_diagnostics(s);
    out["valid"] = diags.empty();
    out["diagnostics"] = diags;
    emit(out, out_path);
    if (diags.empty()) {
      std::cerr << scheme_path << ": valid, " << s.components.size()
                << " components, " << s.conductors.size() << " conductors\n";
      return 0;
    }
    std::cerr << scheme_path << ": " << diags.size() << " problem(s), first: "
              << diags.front() << "\n";
    return 1;
  } catch (const input_error& e) {
    out["valid"] = false;
    out["diagnostics"] = json::array({std::string(e.what())});
    emit(out, out_path);
    std::cerr << scheme_path << ": " << e.what() << "\n";
    return 1;
  }
}

int run_report(const std::string& scheme_path, const std::string& out_path) {
  GluedScheme s = load_scheme(scheme_path);
  GroupReport r = group_report(s);
  emit(group_report_to_json(s, r), out_path);
  std::cerr << stem_of(scheme_path) << ": pullback rank " << r.pullback_rank
            << ", pt order " << r.pt_order << ", " << s.conductors.size()
            << " conductor quotient(s)\n";
  return 0;
}

int run_classify(const std::string& scheme_path, const std::string& div_path,
                 const std::string& out_path) {
  GluedScheme s = load_scheme(scheme_path);
  MumfordDivisor b = load_divisor(div_path, s, stem_of(scheme_path));
  ClassReport r = classify(s, b);
  emit(class_report_to_json(s, r), out_path);
  if (r.verdict == "PRINCIPAL_MOD_D") {
    std::cerr << "principal modulo the conductor\n";
    return 0;
  }
  std::cerr << "nontrivial, obstruction at layer " << r.obstruction << "\n";
  return 2;
}

int run_lineq(const std::string& scheme_path,
              const std::vector<std::string>& div_paths,
              const std::string& out_path) {
  if (div_paths.size() != 2)
    throw input_error("lineq needs exactly two --divisor files");
  GluedScheme s = load_scheme(scheme_path);
  std::string stem = stem_of(scheme_path);
  MumfordDivisor b1 = load_divisor(div_paths[0], s, stem);
  MumfordDivisor b2 = load_divisor(div_paths[1], s, stem);
  LineqResult lr = lineq_mod_D(s, b1, b2);
  bool eq = lr.report.verdict == "PRINCIPAL_MOD_D";
  json out;
  out["equivalent"] = eq;
  out["report"] = class_report_to_json(s, lr.report);
  if (lr.witness) out["witness"] = witness_to_json(s, *lr.witness);
  emit(out, out_path);
  if (eq) {
    std::cerr << "equivalent, witness checked\n";
    return 0;
  }
  std::cerr << "not equivalent, refuted at layer " << lr.report.obstruction
            << "\n";
  return 2;
}

int run_restrict_min(const std::string& scheme_path,
                     const std::string& div_path,
                     const std::string& conductor,
                     const std::string& out_path) {
  GluedScheme s = load_scheme(scheme_path);
  MumfordDivisor b = load_divisor(div_path, s, stem_of(scheme_path));
  DivisorP1 d = restrict_min(s, b, conductor);
  json out;
  out["conductor"] = conductor;
  out["divisor"] = divisor_p1_to_json(s.F, d);
  out["degree"] = d.degree();
  emit(out, out_path);
  std::cerr << "min restriction along " << conductor << " has degree "
            << d.degree() << "\n";
  return 0;
}

int run_sample(const std::string& scheme_path, const std::string& component,
               const std::string& class_spec,
               const std::vector<std::string>& prescriptions, i64 seed,
               const std::string& out_path) {
  GluedScheme s = load_scheme(scheme_path);
  std::optional<size_t> idx = component_index(s, component);
  if (!idx) throw input_error("unknown component: " + component);
  std::vector<i64> target;
  size_t start = 0;
  while (start <= class_spec.size()) {
    size_t comma = class_spec.find(',', start);
    if (comma == std::string::npos) comma = class_spec.size();
    target.push_back(
        to_int(class_spec.substr(start, comma - start), "--class"));
    start = comma + 1;
  }
  std::vector<std::pair<ClosedPoint, i64>> fixed;
  for (const std::string& p : prescriptions) {
    size_t colon = p.rfind(':');
    if (colon == std::string::npos)
      throw input_error("--prescribe entries look like point:order");
    std::string point = p.substr(0, colon);
    i64 order = to_int(p.substr(colon + 1), "--prescribe order");
    fixed.push_back({point == "inf"
                         ? ClosedPoint::inf()
                         : ClosedPoint::rational(s.F, to_int(point, "--prescribe point")),
                     order});
  }
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  MumfordDivisor b = mumford_zero(s);
  b.parts[*idx] = sample_divisor(s.F, s.components[*idx], target,
                                 pieces_on(s, component), fixed, rng);
  emit(divisor_to_json(s, b, stem_of(scheme_path)), out_path);
  std::cerr << "sampled a divisor on " << component << "\n";
  return 0;
}

int run_oracle(const std::string& scheme_path,
               const std::vector<std::string>& div_paths, i64 height,
               const std::string& out_path) {
  if (div_paths.size() != 2)
    throw input_error("oracle needs exactly two --divisor files");
  if (height < 0) throw input_error("--height must be nonnegative");
  GluedScheme s = load_scheme(scheme_path);
  std::string stem = stem_of(scheme_path);
  MumfordDivisor b1 = load_divisor(div_paths[0], s, stem);
  MumfordDivisor b2 = load_divisor(div_paths[1], s, stem);
  OracleReport r = oracle_compare(s, b1, b2, height);
  json out;
  out["pipeline_equivalent"] = r.pipeline_equivalent;
  out["exhaustive_equivalent"] = r.exhaustive_equivalent;
  out["conductor_oracle_agrees"] = r.conductor_oracle_agrees;
  out["agree"] = r.agrees();
  emit(out, out_path);
  if (!r.agrees()) {
    std::cerr << "oracle DISAGREES with the pipeline\n";
    return 3;
  }
  std::cerr << (r.pipeline_equivalent ? "equivalent" : "not equivalent")
            << ", oracle agrees\n";
  return 0 + (r.pipeline_equivalent ? 0 : 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Mumford divisor classes on glued schemes"};
  app.require_subcommand(1);

  std::string scheme_path, out_path, conductor, component, class_spec = "0";
  std::vector<std::string> div_paths, prescriptions;
  i64 height = 2, seed = 0;

  CLI::App* validate = app.add_subcommand("validate", "check a scheme file");
  validate->add_option("--scheme", scheme_path, "scheme file")->required();
  validate->add_option("--out", out_path, "write JSON here");

  CLI::App* report =
      app.add_subcommand("report", "class group filtration report");
  report->add_option("--scheme", scheme_path, "scheme file")->required();
  report->add_option("--out", out_path, "write JSON here");

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "classify one divisor");
  classify_cmd->add_option("--scheme", scheme_path, "scheme file")->required();
  classify_cmd->add_option("--divisor", div_paths, "divisor file")->required();
  classify_cmd->add_option("--out", out_path, "write JSON here");

  CLI::App* lineq =
      app.add_subcommand("lineq", "decide linear equivalence of two divisors");
  lineq->add_option("--scheme", scheme_path, "scheme file")->required();
  lineq->add_option("--divisor", div_paths, "divisor file (give twice)")
      ->required();
  lineq->add_option("--out", out_path, "write JSON here");

  CLI::App* rmin = app.add_subcommand(
      "restrict-min", "min of the two restrictions along a conductor");
  rmin->add_option("--scheme", scheme_path, "scheme file")->required();
  rmin->add_option("--divisor", div_paths, "divisor file")->required();
  rmin->add_option("--conductor", conductor, "conductor name")->required();
  rmin->add_option("--out", out_path, "write JSON here");

  CLI::App* sample =
      app.add_subcommand("sample", "sample a divisor avoiding the conductors");
  sample->add_option("--scheme", scheme_path, "scheme file")->required();
  sample->add_option("--component", component, "host component")->required();
  sample->add_option("--class", class_spec,
                     "target class, e.g. \"2\" or \"1,1\"");
  sample->add_option("--prescribe", prescriptions,
                     "rational point with multiplicity, e.g. 3:2 or inf:1");
  sample->add_option("--seed", seed, "random seed");
  sample->add_option("--out", out_path, "write the divisor file here");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare the pipeline with exhaustive witness search");
  oracle->add_option("--scheme", scheme_path, "scheme file")->required();
  oracle->add_option("--divisor", div_paths, "divisor file (give twice)")
      ->required();
  oracle->add_option("--height", height, "search height bound");
  oracle->add_option("--out", out_path, "write JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; any argument problem is invalid input
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) return run_validate(scheme_path, out_path);
    if (report->parsed()) return run_report(scheme_path, out_path);
    if (classify_cmd->parsed()) {
      if (div_paths.size() != 1)
        throw input_error("classify needs exactly one --divisor file");
      return run_classify(scheme_path, div_paths[0], out_path);
    }
    if (lineq->parsed()) return run_lineq(scheme_path, div_paths, out_path);
    if (rmin->parsed()) {
      if (div_paths.size() != 1)
        throw input_error("restrict-min needs exactly one --divisor file");
      return run_restrict_min(scheme_path, div_paths[0], conductor, out_path);
    }
    if (sample->parsed())
      return run_sample(scheme_path, component, class_spec, prescriptions,
                        seed, out_path);
    if (oracle->parsed())
      return run_oracle(scheme_path, div_paths, height, out_path);
  } catch (const input_error& e) {
    json err;
    err["error"] = e.what();
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    json err;
    err["error"] = e.what();
    err["internal"] = true;
    std::cout << err.dump(2) << "\n";
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
