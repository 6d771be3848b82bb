#ifndef IHQ_TESTS_INSTANCES_HPP
#define IHQ_TESTS_INSTANCES_HPP

/* Hand-built instances shared across the test suite. Every expected value
 * asserted against these was computed by hand from the definitions below. */

#include "ihq/model.hpp"
#include "rings.hpp"

#include <string>
#include <vector>

namespace test_instances {

using namespace ihq;
using ihq_tests::ring_torus;

inline LaurentElement pt_scalar(const Rational& c, int power) {
  const RingPtr pt = RingPresentation::point();
  if (c == 0) return LaurentElement::zero(pt);
  return LaurentElement::scalar_term(pt, c, power);
}

/* Rotation of the two-sphere: poles N (max, moment 1) and S (min, moment -1).
 * Classes: 1; t and the class x supported at the south pole (x|_N = 0,
 * x|_S = t). */
inline Instance sphere_rotation() {
  Instance inst;
  inst.name = "sphere-rotation";
  inst.dim_m = 2;
  inst.degree_bound = 2;
  const RingPtr pt = RingPresentation::point();

  inst.components.push_back(
      {"N", 0, Rational(1), {{-1, 1}}, pt, pt_scalar(-1, 1)});
  inst.components.push_back(
      {"S", 0, Rational(-1), {{1, 1}}, pt, pt_scalar(1, 1)});

  inst.classes.push_back(
      {"one", 0, {{"N", LaurentElement::unit(pt)}, {"S", LaurentElement::unit(pt)}}});
  inst.classes.push_back({"t", 2, {{"N", pt_scalar(1, 1)}, {"S", pt_scalar(1, 1)}}});
  inst.classes.push_back({"x", 2, {{"N", pt_scalar(0, 1)}, {"S", pt_scalar(1, 1)}}});
  return inst;
}

/* Projective plane, circle acting with weights (0, 1, 3), moment map shifted
 * by 1: fixed points p0, p1, p2 with moment values -1, 0, 2 and normal
 * weights {a_j - a_i}. Class basis: monomials u^j t^(k-j) where u restricts
 * at p_i to a_i * t. */
inline Instance cp2_weights_013() {
  Instance inst;
  inst.name = "cp2-013";
  inst.dim_m = 4;
  inst.degree_bound = 4;
  const RingPtr pt = RingPresentation::point();

  inst.components.push_back(
      {"p0", 0, Rational(-1), {{1, 1}, {3, 1}}, pt, pt_scalar(3, 2)});
  inst.components.push_back(
      {"p1", 0, Rational(0), {{-1, 1}, {2, 1}}, pt, pt_scalar(-2, 2)});
  inst.components.push_back(
      {"p2", 0, Rational(2), {{-3, 1}, {-2, 1}}, pt, pt_scalar(6, 2)});

  const std::vector<std::string> ids = {"p0", "p1", "p2"};
  const std::vector<Rational> a = {Rational(0), Rational(1), Rational(3)};
  auto monomial = [&](const std::string& name, int j, int k) {
    EquivariantClass cl{name, 2 * k, {}};
    for (std::size_t i = 0; i < ids.size(); ++i) {
      Rational c(1);
      for (int s = 0; s < j; ++s) c *= a[i];
      cl.restrictions.insert_or_assign(ids[i], pt_scalar(c, k));
    }
    return cl;
  };
  inst.classes = {monomial("one", 0, 0), monomial("t", 0, 1), monomial("u", 1, 1),
                  monomial("t2", 0, 2), monomial("ut", 1, 2), monomial("u2", 2, 2)};
  return inst;
}

/* Product of the rotating two-sphere with a torus carrying the trivial
 * action: components N, S are tori (odd cohomology, Koszul signs), Euler
 * classes are user-supplied. Classes named u* are supported at N only. */
inline Instance sphere_times_torus() {
  Instance inst;
  inst.name = "sphere-times-torus";
  inst.dim_m = 4;
  inst.degree_bound = 4;
  const RingPtr t2 = ring_torus(2, {"a", "b"});

  inst.components.push_back({"N", 2, Rational(1), {{-1, 1}}, t2,
                             LaurentElement::scalar_term(t2, Rational(-1), 1)});
  inst.components.push_back({"S", 2, Rational(-1), {{1, 1}}, t2,
                             LaurentElement::scalar_term(t2, Rational(1), 1)});

  auto elem = [&](int degree, int i, int power) {
    return LaurentElement::term(power, GradedElement::basis(t2, degree, i));
  };
  auto both = [&](std::string name, int deg, const LaurentElement& r) {
    inst.classes.push_back({std::move(name), deg, {{"N", r}, {"S", r}}});
  };
  auto north_only = [&](std::string name, int deg, const LaurentElement& r) {
    inst.classes.push_back(
        {std::move(name), deg, {{"N", r}, {"S", LaurentElement::zero(t2)}}});
  };

  both("one", 0, LaurentElement::unit(t2));
  both("a", 1, elem(1, 0, 0));
  both("b", 1, elem(1, 1, 0));
  both("vol", 2, elem(2, 0, 0));
  both("t", 2, elem(0, 0, 1));
  north_only("u", 2, elem(0, 0, 1));
  both("ta", 3, elem(1, 0, 1));
  both("tb", 3, elem(1, 1, 1));
  north_only("ua", 3, elem(1, 0, 1));
  north_only("ub", 3, elem(1, 1, 1));
  both("t2", 4, elem(0, 0, 2));
  north_only("ut", 4, elem(0, 0, 2));
  both("tvol", 4, elem(2, 0, 1));
  north_only("uvol", 4, elem(2, 0, 1));
  return inst;
}

}  // namespace test_instances

#endif
