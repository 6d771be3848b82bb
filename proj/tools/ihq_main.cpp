/* ihq: compute the (intersection) cohomology of circle reductions from
 * fixed-point data.
 *
 * Subcommands:
 *   make-example  write a generated instance document (cpn | spheres)
 *   validate      run the input checks on an instance document
 *   compute       reduce at a level and report betti / pairing / ring data
 *
 * Exit codes: 0 success; 1 a mathematical check failed; 2 usage or document
 * error. Reports are deterministic byte for byte.
 *
 * The environment variable IHQ_MAX_DEGREE caps the degree bound used by
 * validate/compute: classes above the cap are dropped after loading (never
 * below dimM - 2, so reduction output is unaffected). */

#include <CLI11.hpp>

#include "ihq/ihq.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ihq;

constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;

Rational parse_level(const std::string& text) { return parse_rational(text); }

/* Apply the IHQ_MAX_DEGREE cap: drop classes above the effective bound. */
void apply_degree_cap(Instance& inst) {
  const char* cap_text = std::getenv("IHQ_MAX_DEGREE");
  if (!cap_text) return;
  int cap = 0;
  try {
    cap = std::stoi(cap_text);
  } catch (...) {
    throw ParseError(std::string("IHQ_MAX_DEGREE: bad value '") + cap_text + "'");
  }
  const int floor_bound = inst.dim_m - 2;
  const int effective = std::max(floor_bound, std::min(inst.degree_bound, cap));
  if (effective >= inst.degree_bound) return;
  inst.degree_bound = effective;
  std::vector<EquivariantClass> kept;
  for (auto& cl : inst.classes)
    if (cl.degree <= effective) kept.push_back(std::move(cl));
  inst.classes = std::move(kept);
}

int cmd_make_example(const std::string& kind,
                     const std::vector<std::int64_t>& weights,
                     const std::string& shift_text,
                     const std::string& out_path) {
  Rational shift;
  try {
    shift = parse_rational(shift_text);
  } catch (const ParseError& e) {
    std::cerr << "error: --shift: " << e.what() << "\n";
    return kExitUsage;
  }

  Instance inst;
  try {
    if (kind == "cpn") {
      inst = build_projective_space(weights, shift);
    } else if (kind == "spheres") {
      inst = build_sphere_product(weights, shift);
    } else {
      std::cerr << "error: unknown example kind '" << kind
                << "' (expected cpn or spheres)\n";
      return kExitUsage;
    }
  } catch (const ModelError& e) {
    // bad parameters (duplicate weights, zero weights, ...)
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (out_path.empty()) {
      std::cout << render_document(save_instance(inst));
    } else {
      write_instance_file(inst, out_path);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}

int cmd_validate(const std::string& in_path) {
  Instance inst;
  try {
    inst = read_instance_file(in_path);
    apply_degree_cap(inst);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  bool all = true;
  for (const auto& check : run_validators(inst)) {
    std::cout << check.name << ": " << (check.passed ? "pass" : "FAIL") << "\n";
    for (const auto& note : check.notes) std::cout << "    " << note << "\n";
    all = all && check.passed;
  }
  return all ? 0 : kExitMath;
}

int cmd_compute(const std::string& in_path, const std::string& level_text,
                const std::string& which, const std::string& format) {
  ReportSections sections = ReportSections::all;
  if (which == "betti") sections = ReportSections::betti;
  else if (which == "pairing") sections = ReportSections::pairing;
  else if (which == "ring") sections = ReportSections::ring;
  else if (which != "all") {
    std::cerr << "error: --report must be betti, pairing, ring, or all\n";
    return kExitUsage;
  }
  if (format != "json" && format != "md") {
    std::cerr << "error: --format must be json or md\n";
    return kExitUsage;
  }

  Instance inst;
  Rational level;
  try {
    level = parse_level(level_text);
  } catch (const ParseError& e) {
    std::cerr << "error: --level: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    inst = read_instance_file(in_path);
    apply_degree_cap(inst);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Report rep;
  try {
    rep = make_report(inst, level);
  } catch (const std::runtime_error& e) {
    // engine refusals: level outside the moment image, failed input checks,
    // inconsistent class data
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  }

  if (format == "json") {
    std::cout << report_json(rep, sections).dump(2) << "\n";
  } else {
    std::cout << report_markdown(rep, sections);
  }
  return rep.all_passed() ? 0 : kExitMath;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohomology of circle reductions from fixed-point data"};
  app.require_subcommand(1);

  std::string kind, shift_text = "0", out_path, in_path, level_text;
  std::string which = "all", format = "md";
  std::vector<std::int64_t> weights;

  auto* mk = app.add_subcommand("make-example",
                                "write a generated instance document");
  mk->add_option("kind", kind, "cpn | spheres")->required();
  mk->add_option("--weights", weights, "comma-separated integer weights")
      ->required()
      ->delimiter(',');
  mk->add_option("--shift", shift_text, "moment-map shift, a rational p/q");
  mk->add_option("-o,--out", out_path, "output file (stdout when omitted)");

  auto* val = app.add_subcommand("validate", "run the input checks");
  val->add_option("-i,--in", in_path, "instance document")->required();

  auto* cmp = app.add_subcommand("compute", "reduce at a level and report");
  cmp->add_option("-i,--in", in_path, "instance document")->required();
  cmp->add_option("--level", level_text, "reduction level, a rational p/q")
      ->required();
  cmp->add_option("--report", which, "betti | pairing | ring | all");
  cmp->add_option("--format", format, "json | md");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (mk->parsed()) return cmd_make_example(kind, weights, shift_text, out_path);
    if (val->parsed()) return cmd_validate(in_path);
    return cmd_compute(in_path, level_text, which, format);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  }
}
