#ifndef IHQ_MODEL_HPP
#define IHQ_MODEL_HPP

/* Fixed-point data of a Hamiltonian circle action.
 *
 * An Instance records, for each connected component F of the fixed set: its
 * dimension, moment-map value, the nonzero weights of the action on the
 * normal bundle (distinct, with multiplicities summing to half the
 * codimension), a presentation of H*(F), and the equivariant Euler class of
 * the normal bundle as a Laurent element over that presentation. Equivariant
 * cohomology classes are stored by their restrictions to every F.
 *
 * classify() assigns each component to the side of a reduction level it
 * behaves as after the standard small perturbation: strictly above/below the
 * level by moment value, and for components on the level by the Morse index
 * test  index(F) <= (dim M - dim F)/2  -> above. The flipped rule (">=") is
 * a deliberately wrong orientation kept as a negative-control hook.
 */

#include "ihq/laurent.hpp"
#include "ihq/linalg.hpp"
#include "ihq/rational.hpp"
#include "ihq/ring.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ihq {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Weight {
  std::int64_t k = 0;    // nonzero weight
  std::int64_t mult = 1; // multiplicity >= 1
  bool operator==(const Weight&) const = default;
};

struct FixedComponent {
  std::string id;
  int dim = 0;  // real dimension of F, even
  Rational moment_value;
  std::vector<Weight> weights;  // distinct k's
  RingPtr cohomology;
  LaurentElement euler_class{RingPresentation::point()};
};

struct EquivariantClass {
  std::string name;
  int degree = 0;
  // component id -> restriction, an entry for every component (zero allowed)
  std::map<std::string, LaurentElement> restrictions;
};

struct Instance {
  std::string name;
  int dim_m = 0;
  int degree_bound = 0;
  std::vector<FixedComponent> components;
  std::vector<EquivariantClass> classes;

  const FixedComponent* find_component(const std::string& id) const {
    for (const auto& c : components)
      if (c.id == id) return &c;
    return nullptr;
  }
};

/* Morse index of the moment map at F: twice the number of negative normal
 * weights counted with multiplicity. */
inline int index_of(const FixedComponent& f) {
  std::int64_t neg = 0;
  for (const auto& w : f.weights)
    if (w.k < 0) neg += w.mult;
  return static_cast<int>(2 * neg);
}

enum class Side { above, below };

enum class IndexRule { standard, flipped };

inline Side classify(const FixedComponent& f, const Rational& level, int dim_m,
                     IndexRule rule = IndexRule::standard) {
  if (f.moment_value > level) return Side::above;
  if (f.moment_value < level) return Side::below;
  const int half = (dim_m - f.dim) / 2;
  const int idx = index_of(f);
  const bool above =
      rule == IndexRule::standard ? idx <= half : idx >= half;
  return above ? Side::above : Side::below;
}

/* Euler class of the normal bundle at an isolated fixed point:
 * (product of weights^multiplicity) * t^(dim M / 2). */
inline LaurentElement euler_class_isolated(const FixedComponent& f, int dim_m) {
  if (f.dim != 0)
    throw ModelError("component '" + f.id + "' is not isolated");
  Rational lead(1);
  for (const auto& w : f.weights)
    for (std::int64_t i = 0; i < w.mult; ++i) lead *= Rational(w.k);
  return LaurentElement::scalar_term(RingPresentation::point(), lead, dim_m / 2);
}

/* Flatten a degree-d restriction at one component into coordinates: for each
 * t-exponent j = 0..d/2 whose ring degree d-2j exists, the coefficient's
 * coordinate vector in that degree. Fixed layout shared by the evaluation
 * matrices and the kernel computations. */
inline void append_restriction_coords(std::vector<Rational>& row,
                                      const LaurentElement& r,
                                      const FixedComponent& c, int degree) {
  for (int j = 0; 2 * j <= degree; ++j) {
    const int rd = degree - 2 * j;
    if (rd > c.cohomology->top_degree()) continue;
    const GradedElement coeff = r.coefficient(j);
    const auto& comp = coeff.component(rd);
    row.insert(row.end(), comp.begin(), comp.end());
  }
}

/* Rows = classes of the given degree (in declared order), columns = their
 * restriction coordinates at the listed components. */
inline MatQ evaluation_matrix(const std::vector<const EquivariantClass*>& classes,
                              const std::vector<const FixedComponent*>& comps,
                              int degree) {
  MatQ m;
  for (const auto* cl : classes) {
    std::vector<Rational> row;
    for (const auto* c : comps)
      append_restriction_coords(row, cl->restrictions.at(c->id), *c, degree);
    m.append_row(row);
  }
  return m;
}

inline std::vector<const EquivariantClass*> classes_of_degree(const Instance& inst,
                                                              int degree) {
  std::vector<const EquivariantClass*> out;
  for (const auto& cl : inst.classes)
    if (cl.degree == degree) out.push_back(&cl);
  return out;
}

/* Structural invariants; violations collected as messages (empty = valid). */
inline std::vector<std::string> structural_violations(const Instance& inst) {
  std::vector<std::string> out;
  auto fail = [&out](std::string msg) { out.push_back(std::move(msg)); };

  if (inst.dim_m <= 0 || inst.dim_m % 2 != 0)
    fail("dimM must be a positive even integer");
  if (inst.degree_bound < inst.dim_m - 2)
    fail("degreeBound must be at least dimM - 2");
  if (inst.components.empty()) fail("instance has no fixed components");

  std::map<std::string, int> seen;
  for (const auto& c : inst.components) {
    if (++seen[c.id] == 2) fail("duplicate component id '" + c.id + "'");
    const std::string where = "component '" + c.id + "': ";
    if (c.dim < 0 || c.dim % 2 != 0) fail(where + "dim must be even and nonnegative");
    if (!c.cohomology) {
      fail(where + "missing cohomology presentation");
      continue;
    }
    if (c.cohomology->top_degree() != c.dim)
      fail(where + "cohomology top degree must equal dim");
    std::int64_t half_codim = 0;
    std::map<std::int64_t, int> wseen;
    for (const auto& w : c.weights) {
      if (w.k == 0) fail(where + "zero weight");
      if (w.mult < 1) fail(where + "weight multiplicity must be positive");
      if (++wseen[w.k] == 2) fail(where + "repeated weight " + std::to_string(w.k));
      half_codim += w.mult;
    }
    if (2 * half_codim != inst.dim_m - c.dim)
      fail(where + "weight multiplicities must sum to half the codimension");

    // Euler class: homogeneous of the codimension degree, leading coefficient
    // at t^(codim/2) equal to the product of weights
    const int codim = inst.dim_m - c.dim;
    if (c.euler_class.ring() != c.cohomology &&
        !c.euler_class.ring()->same_content(*c.cohomology)) {
      fail(where + "euler class lives over the wrong ring");
      continue;
    }
    if (!c.euler_class.is_homogeneous_of(codim) || c.euler_class.is_zero())
      fail(where + "euler class must be homogeneous of degree " + std::to_string(codim));
    else {
      Rational lead(1);
      for (const auto& w : c.weights)
        for (std::int64_t i = 0; i < w.mult; ++i) lead *= Rational(w.k);
      const GradedElement top = c.euler_class.coefficient(codim / 2);
      GradedElement expect = GradedElement::scalar(c.cohomology, lead);
      if (!(top == expect)) fail(where + "Euler leading term mismatch");
      if (c.euler_class.min_power() < 0) fail(where + "euler class has negative powers");
    }
  }

  // moment image must contain values of both signs relative to... the
  // instance carries absolute values; reductions happen at interior levels.
  if (!inst.components.empty()) {
    Rational lo = inst.components.front().moment_value, hi = lo;
    for (const auto& c : inst.components) {
      lo = std::min(lo, c.moment_value);
      hi = std::max(hi, c.moment_value);
    }
    if (!(lo < 0 && hi > 0))
      fail("zero must be interior to the moment image (need components with "
           "moment values of both signs)");
    for (const auto& c : inst.components) {
      bool all_neg = true, all_pos = true;
      for (const auto& w : c.weights) {
        all_neg = all_neg && w.k < 0;
        all_pos = all_pos && w.k > 0;
      }
      if (c.moment_value == hi && !all_neg)
        fail("component '" + c.id + "' attains the maximum but has a positive normal weight");
      if (c.moment_value == lo && !all_pos)
        fail("component '" + c.id + "' attains the minimum but has a negative normal weight");
    }
  }

  // classes: entries for every component, homogeneous restrictions with
  // nonnegative powers, per-degree linear independence
  bool restrictions_ok = true;
  for (const auto& cl : inst.classes) {
    const std::string where = "class '" + cl.name + "': ";
    if (cl.degree < 0) fail(where + "negative degree");
    if (cl.degree > inst.degree_bound) fail(where + "degree exceeds degreeBound");
    for (const auto& c : inst.components) {
      auto it = cl.restrictions.find(c.id);
      if (it == cl.restrictions.end()) {
        fail(where + "missing restriction at component '" + c.id + "'");
        restrictions_ok = false;
        continue;
      }
      const auto& r = it->second;
      if (r.ring() != c.cohomology && !r.ring()->same_content(*c.cohomology)) {
        fail(where + "restriction at '" + c.id + "' lives over the wrong ring");
        restrictions_ok = false;
      } else {
        if (!r.is_homogeneous_of(cl.degree))
          fail(where + "restriction at '" + c.id + "' is not homogeneous of the class degree");
        if (!r.is_zero() && r.min_power() < 0)
          fail(where + "restriction at '" + c.id + "' has negative powers of t");
      }
    }
    for (const auto& [id, r] : cl.restrictions)
      if (!inst.find_component(id))
        fail(where + "restriction at unknown component '" + id + "'");
  }

  if (restrictions_ok && out.empty()) {
    std::vector<const FixedComponent*> comps;
    for (const auto& c : inst.components) comps.push_back(&c);
    std::map<int, std::vector<const EquivariantClass*>> by_degree;
    for (const auto& cl : inst.classes) by_degree[cl.degree].push_back(&cl);
    for (const auto& [d, cls] : by_degree) {
      const MatQ ev = evaluation_matrix(cls, comps, d);
      if (rank(ev) != cls.size())
        fail("classes of degree " + std::to_string(d) +
             " are linearly dependent as restriction tuples");
    }
  }
  return out;
}

inline void check_structure(const Instance& inst) {
  auto v = structural_violations(inst);
  if (!v.empty()) throw ModelError(inst.name + ": " + v.front());
}

}  // namespace ihq

#endif
