#ifndef IHQ_REPORT_HPP
#define IHQ_REPORT_HPP

/* Assembled results of one reduction computation, rendered either as JSON
 * (machine) or markdown (human). Both renderings are deterministic and
 * contain the same numbers in the same canonical "p/q" form; the markdown
 * additionally shows how each fixed component was classified so the side
 * rule can be audited by eye. */

#include "ihq/engine.hpp"
#include "ihq/json_io.hpp"
#include "ihq/model.hpp"
#include "ihq/validate.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ihq {

/* The output normalization, stated once and shown in every report: the
 * residue convention integrates the unit class on the weight-one rotation
 * sphere at level zero to -1 (not +1). */
inline const char* kNormalizationNote =
    "residue convention; the unit class on the weight-one sphere integrates "
    "to -1 at level 0";

struct ClassifiedComponent {
  std::string id;
  Rational moment_value;
  int dim = 0;
  int index = 0;
  Side side = Side::above;
};

struct Report {
  std::string instance;
  Rational level;
  bool singular = false;
  int dim_m = 0;
  std::vector<ClassifiedComponent> classification;
  std::vector<std::size_t> betti;  // degrees 0 .. dimM-2
  IHPresentation presentation;
  std::vector<CheckReport> validators;
  CheckReport duality;
  CheckReport crosscheck;

  bool all_passed() const {
    bool ok = duality.passed && crosscheck.passed;
    for (const auto& v : validators) ok = ok && v.passed;
    return ok;
  }
};

inline Report make_report(const Instance& inst, const Rational& level,
                          IndexRule rule = IndexRule::standard) {
  Report rep;
  rep.instance = inst.name;
  rep.level = level;
  rep.dim_m = inst.dim_m;
  rep.presentation = ih_ring(inst, level, rule);
  rep.singular = rep.presentation.singular;
  for (const auto& c : inst.components)
    rep.classification.push_back({c.id, c.moment_value, c.dim, index_of(c),
                                  classify(c, level, inst.dim_m, rule)});
  for (int d = 0; d <= inst.dim_m - 2; ++d)
    rep.betti.push_back(rep.presentation.kernels.per_degree.at(d).dim_ih);
  rep.validators = run_validators(inst);
  rep.duality = duality_check(rep.presentation, inst.dim_m);
  rep.crosscheck = crosscheck_theorems(inst, level, rule);
  return rep;
}

enum class ReportSections : unsigned {
  betti = 1u,
  pairing = 2u,
  ring = 4u,
  all = 7u,
};

inline bool has_section(ReportSections s, ReportSections flag) {
  return (static_cast<unsigned>(s) & static_cast<unsigned>(flag)) != 0;
}

namespace detail_report {

inline json check_json(const CheckReport& c) {
  json out;
  out["name"] = c.name;
  out["passed"] = c.passed;
  json notes = json::array();
  for (const auto& n : c.notes) notes.push_back(n);
  out["notes"] = std::move(notes);
  return out;
}

inline json matrix_json(const MatQ& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(save_rational(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string matrix_markdown(const MatQ& m, const std::string& indent) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += indent + "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_rational(m.at(i, j));
    }
    out += "]\n";
  }
  if (m.rows() == 0) out += indent + "[]\n";
  return out;
}

inline std::string combo_markdown(const IHPresentation& pres, int degree,
                                  const std::vector<Rational>& coords) {
  const auto& names = pres.representatives.at(degree);
  std::string out;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k] == 0) continue;
    if (!out.empty()) out += " + ";
    const std::string c = format_rational(coords[k]);
    out += (c == "1" ? "" : c + "*") + "k[" + names[k] + "]";
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail_report

inline json report_json(const Report& rep,
                        ReportSections sections = ReportSections::all) {
  using detail_report::check_json;
  json out;
  out["instance"] = rep.instance;
  out["level"] = save_rational(rep.level);
  out["mode"] = rep.singular ? "singular" : "regular";
  out["normalization"] = kNormalizationNote;

  json cls = json::array();
  for (const auto& c : rep.classification) {
    json jc;
    jc["id"] = c.id;
    jc["moment"] = save_rational(c.moment_value);
    jc["dim"] = c.dim;
    jc["index"] = c.index;
    jc["side"] = c.side == Side::above ? "above" : "below";
    cls.push_back(std::move(jc));
  }
  out["classification"] = std::move(cls);

  if (has_section(sections, ReportSections::betti)) {
    json b = json::array();
    for (auto d : rep.betti) b.push_back(d);
    out["betti"] = std::move(b);
  }

  if (has_section(sections, ReportSections::pairing)) {
    json pairing = json::object();
    for (const auto& [p, m] : rep.presentation.pairing_matrices)
      pairing[std::to_string(p)] = detail_report::matrix_json(m);
    out["pairing"] = std::move(pairing);
  }

  if (has_section(sections, ReportSections::ring)) {
    json ring;
    json reps = json::object();
    for (const auto& [d, names] : rep.presentation.representatives) {
      if (names.empty()) continue;
      json arr = json::array();
      for (const auto& n : names) arr.push_back(n);
      reps[std::to_string(d)] = std::move(arr);
    }
    ring["representatives"] = std::move(reps);

    json products = json::array();
    for (const auto& e : rep.presentation.products) {
      json je;
      je["a"] = json::array({e.deg_a, e.idx_a});
      je["b"] = json::array({e.deg_b, e.idx_b});
      json coords = json::array();
      for (const auto& c : e.coords) coords.push_back(save_rational(c));
      je["value"] = std::move(coords);
      products.push_back(std::move(je));
    }
    ring["products"] = std::move(products);

    json integ = json::array();
    for (const auto& c : rep.presentation.integration)
      integ.push_back(save_rational(c));
    ring["integration"] = std::move(integ);
    out["ring"] = std::move(ring);
  }

  json checks;
  json vals = json::array();
  for (const auto& v : rep.validators) vals.push_back(check_json(v));
  checks["validators"] = std::move(vals);
  checks["duality"] = check_json(rep.duality);
  checks["crosscheck"] = check_json(rep.crosscheck);
  out["checks"] = std::move(checks);
  return out;
}

inline std::string report_markdown(const Report& rep,
                                   ReportSections sections = ReportSections::all) {
  std::string out;
  out += "# " + rep.instance + " at level " + format_rational(rep.level) +
         " (" + (rep.singular ? "singular" : "regular") + " reduction)\n\n";

  out += "## Fixed components\n\n";
  out += "| id | moment | dim F | index | side |\n";
  out += "|---|---|---|---|---|\n";
  for (const auto& c : rep.classification)
    out += "| " + c.id + " | " + format_rational(c.moment_value) + " | " +
           std::to_string(c.dim) + " | " + std::to_string(c.index) + " | " +
           (c.side == Side::above ? "above" : "below") + " |\n";
  out += "\n";

  if (has_section(sections, ReportSections::betti)) {
    out += "## Betti numbers (degrees 0.." + std::to_string(rep.dim_m - 2) +
           ")\n\n";
    std::string line = "IH:";
    for (auto d : rep.betti) line += " " + std::to_string(d);
    out += line + "\n\n";
  }

  if (has_section(sections, ReportSections::pairing)) {
    out += "## Intersection pairing\n\n";
    for (const auto& [p, m] : rep.presentation.pairing_matrices) {
      out += "degrees " + std::to_string(p) + " x " +
             std::to_string(rep.presentation.top_degree - p) + ":\n";
      out += detail_report::matrix_markdown(m, "    ");
    }
    out += "\n";
  }

  if (has_section(sections, ReportSections::ring)) {
    out += "## Ring structure\n\n";
    out += "representatives:\n";
    for (const auto& [d, names] : rep.presentation.representatives) {
      if (names.empty()) continue;
      std::string line = "    degree " + std::to_string(d) + ":";
      for (const auto& n : names) line += " k[" + n + "]";
      out += line + "\n";
    }
    out += "products:\n";
    for (const auto& e : rep.presentation.products) {
      const auto& an = rep.presentation.representatives.at(e.deg_a)[
          static_cast<std::size_t>(e.idx_a)];
      const auto& bn = rep.presentation.representatives.at(e.deg_b)[
          static_cast<std::size_t>(e.idx_b)];
      out += "    k[" + an + "] * k[" + bn + "] = " +
             detail_report::combo_markdown(rep.presentation, e.deg_a + e.deg_b,
                                           e.coords) +
             "\n";
    }
    out += "integration on degree " +
           std::to_string(rep.presentation.top_degree) + ":\n";
    const auto& top_names =
        rep.presentation.representatives.at(rep.presentation.top_degree);
    for (std::size_t k = 0; k < rep.presentation.integration.size(); ++k)
      out += "    integral k[" + top_names[k] + "] = " +
             format_rational(rep.presentation.integration[k]) + "\n";
    out += "\n";
  }

  out += "## Checks\n\n";
  auto check_line = [&](const CheckReport& c) {
    out += "- " + c.name + ": " + (c.passed ? "pass" : "FAIL") + "\n";
    for (const auto& n : c.notes) out += "    - " + n + "\n";
  };
  for (const auto& v : rep.validators) check_line(v);
  check_line(rep.duality);
  check_line(rep.crosscheck);
  out += "\nnormalization: " + std::string(kNormalizationNote) + "\n";
  return out;
}

}  // namespace ihq

#endif
