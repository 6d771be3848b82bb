#ifndef IHQ_ENGINE_HPP
#define IHQ_ENGINE_HPP

/* The reduction engine. Two independent routes from fixed-point data to the
 * cohomology of the reduced space at a level c:
 *
 *  - kernel route: the surviving classes are H^*_{S1}(M) modulo the span of
 *    K+ (classes vanishing on every component counted above the level) and
 *    K- (mirror); representatives, products, and an integration functional
 *    present the quotient ring.
 *  - residue route: the pairing of two classes is the t^{-1} coefficient of
 *    the fixed-point sum over the above-the-level components of
 *    integral_F(restriction product / euler class).
 *
 * duality_check and crosscheck_theorems compare the two routes degree by
 * degree; disagreement is reported as a data error, never repaired. */

#include "ihq/laurent.hpp"
#include "ihq/linalg.hpp"
#include "ihq/model.hpp"
#include "ihq/validate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ihq {

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* level must lie strictly between the extreme moment values */
inline void require_interior_level(const Instance& inst, const Rational& level) {
  Rational lo = inst.components.front().moment_value, hi = lo;
  for (const auto& c : inst.components) {
    lo = std::min(lo, c.moment_value);
    hi = std::max(hi, c.moment_value);
  }
  if (!(lo < level && level < hi))
    throw EngineError("level not in the interior of the moment image");
}

/* Structure, localization, and dimension-count gates; the engine refuses
 * instances that fail any of them. */
inline void require_valid(const Instance& inst) {
  check_structure(inst);
  for (const CheckReport& rep : {validate_abbv(inst), validate_morse(inst)})
    if (!rep.passed)
      throw EngineError(inst.name + ": " + rep.name + " failed: " +
                        rep.notes.front());
}

inline bool is_singular_level(const Instance& inst, const Rational& level) {
  return std::any_of(
      inst.components.begin(), inst.components.end(),
      [&](const FixedComponent& c) { return c.moment_value == level; });
}

/* A linear combination of declared classes, by name. */
using ClassCombo = std::vector<std::pair<std::string, Rational>>;

struct DegreeKernel {
  std::size_t dim_h = 0;
  MatQ k_plus;   // rows: combinations over the degree-d class basis
  MatQ k_minus;  // that vanish on the below-the-level components
  MatQ k_total;  // row basis of K+ + K-
  std::size_t dim_k = 0;
  std::size_t dim_ih = 0;
};

struct KernelReport {
  Rational level;
  bool singular = false;
  bool direct = true;  // K+ and K- intersect trivially in every degree
  std::map<int, DegreeKernel> per_degree;
};

/* One ring structure constant: the product of representative idx_a of degree
 * deg_a with representative idx_b of degree deg_b, written in the
 * representative basis of degree deg_a + deg_b. */
struct ProductEntry {
  int deg_a = 0;
  int idx_a = 0;
  int deg_b = 0;
  int idx_b = 0;
  std::vector<Rational> coords;
};

struct IHPresentation {
  std::string instance;
  Rational level;
  bool singular = false;
  int top_degree = 0;  // dim M - 2
  std::map<int, std::vector<std::string>> representatives;
  std::vector<ProductEntry> products;
  std::vector<Rational> integration;     // over representatives[top_degree]
  std::map<int, MatQ> pairing_matrices;  // p -> reps[p] x reps[top - p]
  KernelReport kernels;
};

namespace detail {

inline std::vector<const FixedComponent*> side_components(const Instance& inst,
                                                          const Rational& level,
                                                          Side side,
                                                          IndexRule rule) {
  std::vector<const FixedComponent*> out;
  for (const auto& c : inst.components)
    if (classify(c, level, inst.dim_m, rule) == side) out.push_back(&c);
  return out;
}

inline MatQ kernel_side_unchecked(const Instance& inst, const Rational& level,
                                  Side side, int d, IndexRule rule) {
  const auto classes = classes_of_degree(inst, d);
  if (classes.empty()) return MatQ();
  const auto comps = side_components(inst, level, side, rule);
  return left_nullspace(evaluation_matrix(classes, comps, d));
}

inline KernelReport ih_betti_unchecked(const Instance& inst,
                                       const Rational& level, IndexRule rule) {
  KernelReport rep;
  rep.level = level;
  rep.singular = is_singular_level(inst, level);
  for (int d = 0; d <= inst.degree_bound; ++d) {
    DegreeKernel dk;
    dk.dim_h = classes_of_degree(inst, d).size();
    dk.k_plus = kernel_side_unchecked(inst, level, Side::above, d, rule);
    dk.k_minus = kernel_side_unchecked(inst, level, Side::below, d, rule);
    dk.k_total = row_basis(vstack(dk.k_plus, dk.k_minus));
    dk.dim_k = dk.k_total.rows();
    dk.dim_ih = dk.dim_h - dk.dim_k;
    if (dk.k_plus.rows() + dk.k_minus.rows() != dk.dim_k) rep.direct = false;
    rep.per_degree.emplace(d, std::move(dk));
  }
  if (!rep.direct)
    throw EngineError(inst.name +
                      ": the two kernel halves overlap; the declared classes "
                      "are not independent restriction tuples");
  return rep;
}

/* A combination resolved to one restriction tuple. */
struct ResolvedCombo {
  int degree = 0;
  std::map<std::string, LaurentElement> restrictions;  // by component id
};

inline const EquivariantClass& find_class(const Instance& inst,
                                          const std::string& name) {
  for (const auto& cl : inst.classes)
    if (cl.name == name) return cl;
  throw EngineError(inst.name + ": unknown class '" + name + "'");
}

inline ResolvedCombo resolve_combo(const Instance& inst,
                                   const ClassCombo& combo) {
  if (combo.empty()) throw EngineError("empty class combination");
  ResolvedCombo out;
  out.degree = find_class(inst, combo.front().first).degree;
  for (const auto& c : inst.components)
    out.restrictions.emplace(c.id, LaurentElement::zero(c.cohomology));
  for (const auto& [name, coeff] : combo) {
    const auto& cl = find_class(inst, name);
    if (cl.degree != out.degree)
      throw EngineError("class combination mixes degrees " +
                        std::to_string(out.degree) + " and " +
                        std::to_string(cl.degree));
    for (const auto& c : inst.components) {
      auto it = out.restrictions.find(c.id);
      it->second += coeff * cl.restrictions.at(c.id);
    }
  }
  return out;
}

/* Residue pairing of two resolved tuples: fixed-point sum over the
 * above-the-level components. */
inline Rational pairing_unchecked(const Instance& inst, const Rational& level,
                                  const ResolvedCombo& a,
                                  const ResolvedCombo& b, IndexRule rule) {
  Rational total(0);
  for (const auto* f : side_components(inst, level, Side::above, rule))
    total += residue_integral(a.restrictions.at(f->id) *
                              b.restrictions.at(f->id) *
                              invert_euler(f->euler_class));
  return total;
}

inline Rational integrate_unchecked(const Instance& inst, const Rational& level,
                                    const ResolvedCombo& g, IndexRule rule) {
  Rational total(0);
  for (const auto* f : side_components(inst, level, Side::above, rule))
    total +=
        residue_integral(g.restrictions.at(f->id) * invert_euler(f->euler_class));
  return total;
}

/* Pointwise product of two restriction tuples, flattened to the coordinate
 * layout of the given degree, then expressed over the degree-d class basis.
 * Failure means the declared classes are not closed under products. */
inline std::vector<Rational> express_in_basis(const Instance& inst,
                                              const ResolvedCombo& tuple,
                                              int degree) {
  const auto classes = classes_of_degree(inst, degree);
  std::vector<const FixedComponent*> comps;
  for (const auto& c : inst.components) comps.push_back(&c);

  std::vector<Rational> w;
  for (const auto* c : comps)
    append_restriction_coords(w, tuple.restrictions.at(c->id), *c, degree);

  const MatQ ev = evaluation_matrix(classes, comps, degree);
  const auto coeffs = solve(ev.transposed(), w);
  if (!coeffs)
    throw EngineError(inst.name + ": a product of degree-" +
                      std::to_string(degree) +
                      " restriction tuples is not in the span of the declared "
                      "classes (incomplete basis)");
  return *coeffs;
}

inline ResolvedCombo product_tuple(const Instance& inst, const ResolvedCombo& a,
                                   const ResolvedCombo& b) {
  ResolvedCombo out;
  out.degree = a.degree + b.degree;
  for (const auto& c : inst.components)
    out.restrictions.emplace(
        c.id, a.restrictions.at(c.id) * b.restrictions.at(c.id));
  return out;
}

/* Coordinates of a class-basis vector in the split basis
 * (representatives, kernel rows); returns the representative part. */
inline std::vector<Rational> reduce_mod_kernel(const MatQ& rep_rows,
                                               const MatQ& kernel_rows,
                                               const std::vector<Rational>& v,
                                               const std::string& instance) {
  const MatQ split = vstack(rep_rows, kernel_rows);
  const auto coords = solve(split.transposed(), v);
  if (!coords)
    throw EngineError(instance +
                      ": internal split basis failed to span a degree");
  return {coords->begin(),
          coords->begin() + static_cast<std::ptrdiff_t>(rep_rows.rows())};
}

}  // namespace detail

/* Combinations vanishing on every component of the given side, as rows of
 * coefficients over the degree-d class basis (declared order). */
inline MatQ kernel_side(const Instance& inst, const Rational& level, Side side,
                        int d, IndexRule rule = IndexRule::standard) {
  require_valid(inst);
  require_interior_level(inst, level);
  return detail::kernel_side_unchecked(inst, level, side, d, rule);
}

/* Per-degree kernel dimensions and surviving (IH) dimensions. */
inline KernelReport ih_betti(const Instance& inst, const Rational& level,
                             IndexRule rule = IndexRule::standard) {
  require_valid(inst);
  require_interior_level(inst, level);
  return detail::ih_betti_unchecked(inst, level, rule);
}

/* Residue pairing of two class combinations. */
inline Rational pairing(const Instance& inst, const Rational& level,
                        const ClassCombo& a, const ClassCombo& b,
                        IndexRule rule = IndexRule::standard) {
  require_valid(inst);
  require_interior_level(inst, level);
  return detail::pairing_unchecked(inst, level, detail::resolve_combo(inst, a),
                                   detail::resolve_combo(inst, b), rule);
}

inline Rational pairing(const Instance& inst, const Rational& level,
                        const std::string& a, const std::string& b,
                        IndexRule rule = IndexRule::standard) {
  return pairing(inst, level, ClassCombo{{a, Rational(1)}},
                 ClassCombo{{b, Rational(1)}}, rule);
}

/* Integration functional on degree dim M - 2. */
inline Rational integrate_top(const Instance& inst, const Rational& level,
                              const ClassCombo& g,
                              IndexRule rule = IndexRule::standard) {
  require_valid(inst);
  require_interior_level(inst, level);
  const auto resolved = detail::resolve_combo(inst, g);
  if (resolved.degree != inst.dim_m - 2)
    throw EngineError("integration is defined in degree " +
                      std::to_string(inst.dim_m - 2) + ", got degree " +
                      std::to_string(resolved.degree));
  return detail::integrate_unchecked(inst, level, resolved, rule);
}

inline Rational integrate_top(const Instance& inst, const Rational& level,
                              const std::string& g,
                              IndexRule rule = IndexRule::standard) {
  return integrate_top(inst, level, ClassCombo{{g, Rational(1)}}, rule);
}

namespace detail {

inline IHPresentation ih_ring_unchecked(const Instance& inst,
                                        const Rational& level, IndexRule rule) {
  IHPresentation out;
  out.instance = inst.name;
  out.level = level;
  out.top_degree = inst.dim_m - 2;
  out.kernels = ih_betti_unchecked(inst, level, rule);
  out.singular = out.kernels.singular;

  // representatives: the first classes linearly independent modulo K, in
  // declared order; rep_rows[d] holds their unit coordinate vectors
  std::map<int, MatQ> rep_rows;
  for (int d = 0; d <= inst.degree_bound; ++d) {
    const auto classes = classes_of_degree(inst, d);
    const auto& dk = out.kernels.per_degree.at(d);
    MatQ acc = dk.k_total;
    MatQ reps(0, classes.size());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      std::vector<Rational> unit(classes.size(), Rational(0));
      unit[i] = Rational(1);
      if (span_contains(acc, unit)) continue;
      acc.append_row(unit);
      reps.append_row(unit);
      names.push_back(classes[i]->name);
    }
    rep_rows.emplace(d, std::move(reps));
    out.representatives.emplace(d, std::move(names));
  }

  // structure constants: products of representatives, reduced modulo K
  auto rep_combo = [&](int d, int i) {
    return resolve_combo(inst, {{out.representatives.at(d)[i], Rational(1)}});
  };
  for (const auto& [p, preps] : out.representatives) {
    if (preps.empty()) continue;
    for (const auto& [q, qreps] : out.representatives) {
      if (qreps.empty() || p + q > out.top_degree) continue;
      for (std::size_t i = 0; i < preps.size(); ++i)
        for (std::size_t j = 0; j < qreps.size(); ++j) {
          const auto prod = product_tuple(inst, rep_combo(p, static_cast<int>(i)),
                                          rep_combo(q, static_cast<int>(j)));
          const auto in_basis = express_in_basis(inst, prod, p + q);
          ProductEntry e{p, static_cast<int>(i), q, static_cast<int>(j),
                         reduce_mod_kernel(rep_rows.at(p + q),
                                           out.kernels.per_degree.at(p + q).k_total,
                                           in_basis, inst.name)};
          out.products.push_back(std::move(e));
        }
    }
  }

  // integration functional on the top representatives
  for (const auto& name : out.representatives.at(out.top_degree))
    out.integration.push_back(integrate_unchecked(
        inst, level, resolve_combo(inst, {{name, Rational(1)}}), rule));

  // pairing matrices between complementary degrees
  for (int p = 0; p <= out.top_degree; ++p) {
    const auto pit = out.representatives.find(p);
    const auto qit = out.representatives.find(out.top_degree - p);
    const std::size_t np = pit == out.representatives.end() ? 0 : pit->second.size();
    const std::size_t nq = qit == out.representatives.end() ? 0 : qit->second.size();
    MatQ m(np, nq);
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < nq; ++j)
        m.at(i, j) = pairing_unchecked(
            inst, level, rep_combo(p, static_cast<int>(i)),
            rep_combo(out.top_degree - p, static_cast<int>(j)), rule);
    out.pairing_matrices.emplace(p, std::move(m));
  }

  // K must be an ideal: kernel element times any basis class stays in K
  for (const auto& [d, dk] : out.kernels.per_degree) {
    if (dk.k_total.rows() == 0) continue;
    const auto dclasses = classes_of_degree(inst, d);
    for (std::size_t r = 0; r < dk.k_total.rows(); ++r) {
      ClassCombo combo;
      for (std::size_t i = 0; i < dclasses.size(); ++i)
        if (dk.k_total.at(r, i) != 0)
          combo.emplace_back(dclasses[i]->name, dk.k_total.at(r, i));
      const auto kv = resolve_combo(inst, combo);
      for (const auto& cl : inst.classes) {
        if (d + cl.degree > inst.degree_bound) continue;
        const auto prod = product_tuple(
            inst, kv, resolve_combo(inst, {{cl.name, Rational(1)}}));
        const auto in_basis = express_in_basis(inst, prod, d + cl.degree);
        if (!span_contains(out.kernels.per_degree.at(d + cl.degree).k_total,
                           in_basis))
          throw EngineError(inst.name +
                            ": the kernel is not an ideal within the degree "
                            "bound (degree " +
                            std::to_string(d) + " times '" + cl.name + "')");
      }
    }
  }

  return out;
}

}  // namespace detail

/* Representatives, products, integration, and pairing matrices of the
 * surviving quotient ring at the given level. */
inline IHPresentation ih_ring(const Instance& inst, const Rational& level,
                              IndexRule rule = IndexRule::standard) {
  require_valid(inst);
  require_interior_level(inst, level);
  return detail::ih_ring_unchecked(inst, level, rule);
}

/* Ordinary cohomology of the reduction at a regular level: the sides are
 * determined purely by the sign of (moment value - level), which is the same
 * pipeline with no on-level components. */
inline IHPresentation reduced_cohomology_regular(
    const Instance& inst, const Rational& level,
    IndexRule rule = IndexRule::standard) {
  require_valid(inst);
  require_interior_level(inst, level);
  if (is_singular_level(inst, level))
    throw EngineError(
        "level is a critical value of the moment map; use the singular "
        "pipeline (ih_ring)");
  return detail::ih_ring_unchecked(inst, level, rule);
}

/* Betti symmetry about half the reduced dimension, vanishing above it, and
 * nonsingularity of every pairing matrix. */
inline CheckReport duality_check(const IHPresentation& pres, int dim_m) {
  CheckReport rep{"duality", true, {}};
  const int top = dim_m - 2;
  auto dim_at = [&](int d) -> std::size_t {
    const auto it = pres.representatives.find(d);
    return it == pres.representatives.end() ? 0 : it->second.size();
  };

  for (const auto& [d, names] : pres.representatives) {
    if (d > top && !names.empty()) {
      rep.passed = false;
      rep.notes.push_back("degree " + std::to_string(d) +
                          " survives above the top degree " +
                          std::to_string(top));
    }
  }
  for (int d = 0; d <= top; ++d)
    if (dim_at(d) != dim_at(top - d)) {
      rep.passed = false;
      rep.notes.push_back(
          "dimension asymmetry: degree " + std::to_string(d) + " has " +
          std::to_string(dim_at(d)) + ", degree " + std::to_string(top - d) +
          " has " + std::to_string(dim_at(top - d)));
    }
  for (const auto& [p, m] : pres.pairing_matrices) {
    if (m.rows() != m.cols()) {
      rep.passed = false;
      rep.notes.push_back("pairing between degrees " + std::to_string(p) +
                          " and " + std::to_string(pres.top_degree - p) +
                          " is not square");
      continue;
    }
    if (rank(m) != m.rows()) {
      rep.passed = false;
      rep.notes.push_back("pairing between degrees " + std::to_string(p) +
                          " and " + std::to_string(pres.top_degree - p) +
                          " is singular");
    }
  }
  return rep;
}

/* Compare the two routes degree by degree: the rank of the raw residue form
 * on the full class bases must equal the kernel-route dimension, and the
 * radical of that form must be exactly K. */
inline CheckReport crosscheck_theorems(const Instance& inst,
                                       const Rational& level,
                                       IndexRule rule = IndexRule::standard) {
  require_valid(inst);
  require_interior_level(inst, level);
  CheckReport rep{"two-route crosscheck", true, {}};
  const auto betti = detail::ih_betti_unchecked(inst, level, rule);
  const int top = inst.dim_m - 2;

  for (int p = 0; p <= inst.degree_bound; ++p) {
    const auto pclasses = classes_of_degree(inst, p);
    const auto qclasses = classes_of_degree(inst, top - p);

    MatQ form(pclasses.size(), qclasses.size());
    for (std::size_t i = 0; i < pclasses.size(); ++i) {
      const auto a =
          detail::resolve_combo(inst, {{pclasses[i]->name, Rational(1)}});
      for (std::size_t j = 0; j < qclasses.size(); ++j) {
        const auto b =
            detail::resolve_combo(inst, {{qclasses[j]->name, Rational(1)}});
        form.at(i, j) = detail::pairing_unchecked(inst, level, a, b, rule);
      }
    }

    const auto& dk = betti.per_degree.at(p);
    if (rank(form) != dk.dim_ih) {
      rep.passed = false;
      rep.notes.push_back("degree " + std::to_string(p) + ": residue form has rank " +
                          std::to_string(rank(form)) + " but the kernel route gives " +
                          std::to_string(dk.dim_ih));
    }
    if (!same_row_span(left_nullspace(form), dk.k_total)) {
      rep.passed = false;
      rep.notes.push_back("degree " + std::to_string(p) +
                          ": the radical of the residue form differs from K");
    }
  }
  return rep;
}

}  // namespace ihq

#endif
