#ifndef IHQ_JSON_IO_HPP
#define IHQ_JSON_IO_HPP

/* Instance documents.
 *
 * Layout (all fields required unless marked optional):
 *   {"name": str, "dimM": int, "degreeBound": int,
 *    "components": [{"id": str, "dim": int, "momentValue": rational,
 *       "weights": [{"k": int, "mult": int}],
 *       "cohomology": "point" | {"topDegree": int, "dims": {"<d>": n},
 *          "labels": optional {"<d>": [str]},
 *          "products": [{"a": [deg, i], "b": [deg, j], "value": element}],
 *          "integral": [rational]},
 *       "eulerClass": optional for dim 0, [{"power": int, "coeff": element}]}],
 *    "classes": [{"name": str, "degree": int,
 *       "restrictions": {"<componentId>": [{"power": int, "coeff": element}]}}]}
 *
 * Rationals are JSON integers or strings "p/q" in lowest terms; ring elements
 * are objects keyed by degree with coordinate arrays ({} is zero). Ring
 * product tables list both operand orders for factor degrees >= 1; products
 * with the unit are implied. Unknown fields are rejected, every load error
 * carries the JSON path to the offending field, and all model invariants are
 * re-checked at load so that a loaded instance is usable as-is. Saving is
 * deterministic: equal instances serialize to byte-identical documents. */

#include "ihq/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ihq {

using json = nlohmann::ordered_json;

namespace detail_io {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg);
}

inline void expect_object(const json& j, const std::string& path,
                          std::initializer_list<const char*> required,
                          std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const char* key : required)
    if (!j.contains(key)) fail(path, std::string("missing field '") + key + "'");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* k : required) known = known || key == k;
    for (const char* k : optional) known = known || key == k;
    if (!known) fail(path, "unknown field '" + key + "'");
  }
}

inline const json& field(const json& j, const char* key) { return j.at(key); }

inline int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

inline std::int64_t get_int64(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

/* Keys of degree-indexed objects: a nonnegative integer rendered in
 * decimal. */
inline int degree_key(const std::string& key, const std::string& path) {
  if (key.empty() || key.size() > 9) fail(path, "bad degree key '" + key + "'");
  int d = 0;
  for (char ch : key) {
    if (ch < '0' || ch > '9') fail(path, "bad degree key '" + key + "'");
    d = 10 * d + (ch - '0');
  }
  return d;
}

}  // namespace detail_io

inline json save_rational(const Rational& q) {
  if (is_integer(q) && numerator(q) <= std::numeric_limits<std::int64_t>::max() &&
      numerator(q) >= std::numeric_limits<std::int64_t>::min())
    return json(static_cast<std::int64_t>(numerator(q)));
  return json(format_rational(q));
}

inline Rational load_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(Int(j.get<std::int64_t>()));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      detail_io::fail(path, e.what());
    }
  }
  detail_io::fail(path, "expected an integer or a rational string \"p/q\"");
}

inline json save_graded(const GradedElement& g) {
  json out = json::object();
  for (int d = 0; d <= g.ring()->top_degree(); ++d) {
    const auto& comp = g.component(d);
    bool nonzero = false;
    for (const auto& x : comp) nonzero = nonzero || x != 0;
    if (!nonzero) continue;
    json arr = json::array();
    for (const auto& x : comp) arr.push_back(save_rational(x));
    out[std::to_string(d)] = std::move(arr);
  }
  return out;
}

inline GradedElement load_graded(const json& j, const RingPtr& ring,
                                 const std::string& path) {
  if (!j.is_object()) detail_io::fail(path, "expected an object keyed by degree");
  GradedElement g = GradedElement::zero(ring);
  for (const auto& [key, value] : j.items()) {
    const std::string kpath = path + "." + key;
    const int d = detail_io::degree_key(key, kpath);
    if (d > ring->top_degree())
      detail_io::fail(kpath, "degree exceeds the ring's top degree");
    const auto& arr = detail_io::get_array(value, kpath);
    if (arr.size() != static_cast<std::size_t>(ring->dim(d)))
      detail_io::fail(kpath, "expected " + std::to_string(ring->dim(d)) +
                                 " coordinates in degree " + std::to_string(d));
    for (std::size_t i = 0; i < arr.size(); ++i)
      g.component_mut(d)[i] =
          load_rational(arr[i], kpath + "[" + std::to_string(i) + "]");
  }
  return g;
}

inline json save_laurent(const LaurentElement& l) {
  json out = json::array();
  for (const auto& [power, coeff] : l.terms())
    out.push_back(json{{"power", power}, {"coeff", save_graded(coeff)}});
  return out;
}

inline LaurentElement load_laurent(const json& j, const RingPtr& ring,
                                   const std::string& path) {
  const auto& arr = detail_io::get_array(j, path);
  LaurentElement out = LaurentElement::zero(ring);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string epath = path + "[" + std::to_string(i) + "]";
    detail_io::expect_object(arr[i], epath, {"power", "coeff"});
    const int power = detail_io::get_int(arr[i].at("power"), epath + ".power");
    out += LaurentElement::term(
        power, load_graded(arr[i].at("coeff"), ring, epath + ".coeff"));
  }
  return out;
}

inline json save_ring(const RingPtr& ring) {
  if (ring->same_content(*RingPresentation::point())) return json("point");
  json out;
  out["topDegree"] = ring->top_degree();
  json dims = json::object(), labels = json::object();
  for (int d = 0; d <= ring->top_degree(); ++d) {
    if (ring->dim(d) == 0) continue;
    dims[std::to_string(d)] = ring->dim(d);
    json names = json::array();
    for (int i = 0; i < ring->dim(d); ++i) names.push_back(ring->label(d, i));
    labels[std::to_string(d)] = std::move(names);
  }
  out["dims"] = std::move(dims);
  out["labels"] = std::move(labels);

  json products = json::array();
  for (int a = 1; a <= ring->top_degree(); ++a)
    for (int i = 0; i < ring->dim(a); ++i)
      for (int b = 1; a + b <= ring->top_degree(); ++b)
        for (int j = 0; j < ring->dim(b); ++j) {
          const auto& v = ring->basis_product(a, i, b, j);
          bool nonzero = false;
          for (const auto& x : v) nonzero = nonzero || x != 0;
          if (!nonzero) continue;
          json coords = json::array();
          for (const auto& x : v) coords.push_back(save_rational(x));
          products.push_back(json{{"a", json::array({a, i})},
                                  {"b", json::array({b, j})},
                                  {"value", json{{std::to_string(a + b),
                                                  std::move(coords)}}}});
        }
  out["products"] = std::move(products);

  json integral = json::array();
  for (const auto& x : ring->integral()) integral.push_back(save_rational(x));
  out["integral"] = std::move(integral);
  return out;
}

inline RingPtr load_ring(const json& j, const std::string& path) {
  using detail_io::fail;
  if (j.is_string()) {
    if (j.get<std::string>() == "point") return RingPresentation::point();
    fail(path, "the only named ring is \"point\"");
  }
  detail_io::expect_object(j, path, {"topDegree", "dims", "products", "integral"},
                           {"labels"});

  const int top = detail_io::get_int(j.at("topDegree"), path + ".topDegree");
  if (top < 0) fail(path + ".topDegree", "must be nonnegative");

  std::vector<int> dims(static_cast<std::size_t>(top) + 1, 0);
  if (!j.at("dims").is_object()) fail(path + ".dims", "expected an object");
  for (const auto& [key, value] : j.at("dims").items()) {
    const std::string kpath = path + ".dims." + key;
    const int d = detail_io::degree_key(key, kpath);
    if (d > top) fail(kpath, "degree exceeds topDegree");
    const int n = detail_io::get_int(value, kpath);
    if (n < 0) fail(kpath, "dimension must be nonnegative");
    dims[static_cast<std::size_t>(d)] = n;
  }

  std::vector<std::vector<std::string>> labels(dims.size());
  for (int d = 0; d <= top; ++d)
    for (int i = 0; i < dims[static_cast<std::size_t>(d)]; ++i)
      labels[static_cast<std::size_t>(d)].push_back(
          "e" + std::to_string(d) + "_" + std::to_string(i));
  if (j.contains("labels")) {
    if (!j.at("labels").is_object()) fail(path + ".labels", "expected an object");
    for (const auto& [key, value] : j.at("labels").items()) {
      const std::string kpath = path + ".labels." + key;
      const int d = detail_io::degree_key(key, kpath);
      if (d > top) fail(kpath, "degree exceeds topDegree");
      const auto& arr = detail_io::get_array(value, kpath);
      if (arr.size() != static_cast<std::size_t>(dims[static_cast<std::size_t>(d)]))
        fail(kpath, "expected " + std::to_string(dims[static_cast<std::size_t>(d)]) +
                        " names in degree " + std::to_string(d));
      labels[static_cast<std::size_t>(d)].clear();
      for (std::size_t i = 0; i < arr.size(); ++i)
        labels[static_cast<std::size_t>(d)].push_back(
            detail_io::get_string(arr[i], kpath + "[" + std::to_string(i) + "]"));
    }
  }

  std::size_t total = 0;
  std::vector<std::size_t> offsets(dims.size(), 0);
  for (std::size_t d = 0; d < dims.size(); ++d) {
    offsets[d] = total;
    total += static_cast<std::size_t>(dims[d]);
  }
  auto global = [&](int deg, int i) {
    return offsets[static_cast<std::size_t>(deg)] + static_cast<std::size_t>(i);
  };

  // implied unit products, then the listed entries on top
  std::vector<std::vector<std::vector<Rational>>> products(
      total, std::vector<std::vector<Rational>>(total));
  if (dims[0] != 1) fail(path + ".dims", "degree 0 must be one-dimensional");
  for (int d = 0; d <= top; ++d)
    for (int i = 0; i < dims[static_cast<std::size_t>(d)]; ++i) {
      std::vector<Rational> e(static_cast<std::size_t>(dims[static_cast<std::size_t>(d)]));
      e[static_cast<std::size_t>(i)] = 1;
      products[global(0, 0)][global(d, i)] = e;
      products[global(d, i)][global(0, 0)] = std::move(e);
    }

  const auto& plist = detail_io::get_array(j.at("products"), path + ".products");
  for (std::size_t n = 0; n < plist.size(); ++n) {
    const std::string epath = path + ".products[" + std::to_string(n) + "]";
    detail_io::expect_object(plist[n], epath, {"a", "b", "value"});
    auto factor = [&](const char* key) {
      const std::string fpath = epath + "." + key;
      const auto& f = detail_io::get_array(plist[n].at(key), fpath);
      if (f.size() != 2) fail(fpath, "expected [degree, index]");
      const int deg = detail_io::get_int(f[0], fpath + "[0]");
      const int idx = detail_io::get_int(f[1], fpath + "[1]");
      if (deg < 0 || deg > top || idx < 0 ||
          idx >= dims[static_cast<std::size_t>(deg)])
        fail(fpath, "no basis element at degree " + std::to_string(deg) +
                        ", index " + std::to_string(idx));
      return std::pair<int, int>{deg, idx};
    };
    const auto [da, ia] = factor("a");
    const auto [db, ib] = factor("b");
    const std::string vpath = epath + ".value";
    if (!plist[n].at("value").is_object()) fail(vpath, "expected an object");
    std::vector<Rational> coords;
    for (const auto& [key, value] : plist[n].at("value").items()) {
      const std::string kpath = vpath + "." + key;
      if (detail_io::degree_key(key, kpath) != da + db)
        fail(kpath, "product value must be concentrated in degree " +
                        std::to_string(da + db));
      if (da + db > top)
        fail(kpath, "products above the top degree are identically zero");
      const auto& arr = detail_io::get_array(value, kpath);
      if (arr.size() != static_cast<std::size_t>(dims[static_cast<std::size_t>(da + db)]))
        fail(kpath, "expected " +
                        std::to_string(dims[static_cast<std::size_t>(da + db)]) +
                        " coordinates");
      for (std::size_t i = 0; i < arr.size(); ++i)
        coords.push_back(load_rational(arr[i], kpath + "[" + std::to_string(i) + "]"));
    }
    products[global(da, ia)][global(db, ib)] = std::move(coords);
  }

  const auto& iarr = detail_io::get_array(j.at("integral"), path + ".integral");
  std::vector<Rational> integral;
  for (std::size_t i = 0; i < iarr.size(); ++i)
    integral.push_back(
        load_rational(iarr[i], path + ".integral[" + std::to_string(i) + "]"));

  try {
    return std::make_shared<const RingPresentation>(
        std::move(dims), std::move(labels), std::move(products),
        std::move(integral));
  } catch (const RingError& e) {
    fail(path, e.what());
  }
}

inline json save_instance(const Instance& inst) {
  json out;
  out["name"] = inst.name;
  out["dimM"] = inst.dim_m;
  out["degreeBound"] = inst.degree_bound;

  json comps = json::array();
  for (const auto& c : inst.components) {
    json jc;
    jc["id"] = c.id;
    jc["dim"] = c.dim;
    jc["momentValue"] = save_rational(c.moment_value);
    json ws = json::array();
    for (const auto& w : c.weights)
      ws.push_back(json{{"k", w.k}, {"mult", w.mult}});
    jc["weights"] = std::move(ws);
    jc["cohomology"] = save_ring(c.cohomology);
    jc["eulerClass"] = save_laurent(c.euler_class);
    comps.push_back(std::move(jc));
  }
  out["components"] = std::move(comps);

  json classes = json::array();
  for (const auto& cl : inst.classes) {
    json jc;
    jc["name"] = cl.name;
    jc["degree"] = cl.degree;
    json rs = json::object();
    for (const auto& c : inst.components) {
      const auto it = cl.restrictions.find(c.id);
      if (it != cl.restrictions.end()) rs[c.id] = save_laurent(it->second);
    }
    jc["restrictions"] = std::move(rs);
    classes.push_back(std::move(jc));
  }
  out["classes"] = std::move(classes);
  return out;
}

inline Instance load_instance(const json& doc) {
  using detail_io::fail;
  detail_io::expect_object(doc, "$",
                           {"name", "dimM", "degreeBound", "components", "classes"});

  Instance inst;
  inst.name = detail_io::get_string(doc.at("name"), "name");
  inst.dim_m = detail_io::get_int(doc.at("dimM"), "dimM");
  inst.degree_bound = detail_io::get_int(doc.at("degreeBound"), "degreeBound");

  const auto& comps = detail_io::get_array(doc.at("components"), "components");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string cpath = "components[" + std::to_string(i) + "]";
    detail_io::expect_object(
        comps[i], cpath, {"id", "dim", "momentValue", "weights", "cohomology"},
        {"eulerClass"});

    FixedComponent c;
    c.id = detail_io::get_string(comps[i].at("id"), cpath + ".id");
    c.dim = detail_io::get_int(comps[i].at("dim"), cpath + ".dim");
    c.moment_value =
        load_rational(comps[i].at("momentValue"), cpath + ".momentValue");

    const auto& ws = detail_io::get_array(comps[i].at("weights"), cpath + ".weights");
    for (std::size_t k = 0; k < ws.size(); ++k) {
      const std::string wpath = cpath + ".weights[" + std::to_string(k) + "]";
      detail_io::expect_object(ws[k], wpath, {"k", "mult"});
      Weight w;
      w.k = detail_io::get_int64(ws[k].at("k"), wpath + ".k");
      w.mult = detail_io::get_int64(ws[k].at("mult"), wpath + ".mult");
      c.weights.push_back(w);
    }

    c.cohomology = load_ring(comps[i].at("cohomology"), cpath + ".cohomology");

    if (comps[i].contains("eulerClass")) {
      c.euler_class = load_laurent(comps[i].at("eulerClass"), c.cohomology,
                                   cpath + ".eulerClass");
    } else if (c.dim == 0) {
      Rational lead(1);
      for (const auto& w : c.weights)
        for (std::int64_t m = 0; m < w.mult; ++m) lead *= Rational(w.k);
      c.euler_class =
          LaurentElement::scalar_term(c.cohomology, lead, inst.dim_m / 2);
    } else {
      fail(cpath + ".eulerClass",
           "required for components of positive dimension");
    }

    inst.components.push_back(std::move(c));
  }

  const auto& classes = detail_io::get_array(doc.at("classes"), "classes");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::string cpath = "classes[" + std::to_string(i) + "]";
    detail_io::expect_object(classes[i], cpath, {"name", "degree", "restrictions"});

    EquivariantClass cl;
    cl.name = detail_io::get_string(classes[i].at("name"), cpath + ".name");
    cl.degree = detail_io::get_int(classes[i].at("degree"), cpath + ".degree");

    const auto& rs = classes[i].at("restrictions");
    if (!rs.is_object())
      fail(cpath + ".restrictions", "expected an object keyed by component id");
    for (const auto& [id, value] : rs.items()) {
      const std::string rpath = cpath + ".restrictions." + id;
      const FixedComponent* comp = inst.find_component(id);
      if (!comp) fail(rpath, "restriction names unknown component '" + id + "'");
      cl.restrictions.insert_or_assign(
          id, load_laurent(value, comp->cohomology, rpath));
    }
    inst.classes.push_back(std::move(cl));
  }

  // a loaded instance must satisfy every model invariant before use
  try {
    check_structure(inst);
  } catch (const ModelError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

inline std::string render_document(const json& doc) { return doc.dump(2) + "\n"; }

inline void write_instance_file(const Instance& inst, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw ParseError("cannot open '" + file + "' for writing");
  out << render_document(save_instance(inst));
  if (!out) throw ParseError("failed while writing '" + file + "'");
}

inline Instance read_instance_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open '" + file + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return load_instance(doc);
}

}  // namespace ihq

#endif
