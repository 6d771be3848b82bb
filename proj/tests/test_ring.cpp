#include "ihq/ring.hpp"

#include "rings.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace ihq;
using namespace ihq_tests;

TEST_CASE("point ring") {
  auto pt = RingPresentation::point();
  CHECK(pt->top_degree() == 0);
  CHECK(pt->dim(0) == 1);
  auto one = GradedElement::unit(pt);
  CHECK(one * one == one);
  CHECK(one.integrate() == 1);  // integration over a point is evaluation
  CHECK(GradedElement::scalar(pt, make_rational(-3, 7)).integrate() == make_rational(-3, 7));
}

TEST_CASE("two-sphere ring arithmetic") {
  auto s2 = ring_sphere2();
  auto one = GradedElement::unit(s2);
  auto h = GradedElement::basis(s2, 2, 0);

  CHECK((h * h).is_zero());  // lands above the top degree
  auto p = (one + h) * (one + h);
  CHECK(p == one + h * Rational(2));
  CHECK(h.integrate() == 1);
  CHECK(one.integrate() == 0);  // no top-degree part
  CHECK(h.sole_degree() == 2);
  CHECK((one + h).sole_degree() == std::nullopt);
  CHECK(GradedElement::zero(s2).sole_degree() == std::nullopt);
}

TEST_CASE("projective plane ring") {
  auto cp2 = ring_cpn(2);
  auto h = GradedElement::basis(cp2, 2, 0);
  auto h2 = GradedElement::basis(cp2, 4, 0);
  CHECK(h * h == h2);
  CHECK((h * h2).is_zero());
  CHECK((h * h).integrate() == 1);
}

TEST_CASE("torus ring: Koszul signs") {
  auto t2 = ring_torus(2, {"a", "b"});
  auto a = GradedElement::basis(t2, 1, 0);
  auto b = GradedElement::basis(t2, 1, 1);
  auto vol = GradedElement::basis(t2, 2, 0);

  CHECK(a * b == vol);
  CHECK(b * a == vol * Rational(-1));  // odd-odd products anticommute
  CHECK((a * a).is_zero());
  CHECK((a * b).integrate() == 1);
  CHECK((b * a).integrate() == -1);

  // three generators: nontrivial associativity territory
  auto t3 = ring_torus(3, {"a", "b", "c"});
  auto x = GradedElement::basis(t3, 1, 0);
  auto y = GradedElement::basis(t3, 1, 1);
  auto z = GradedElement::basis(t3, 1, 2);
  CHECK((x * y) * z == x * (y * z));
  CHECK(((x * y) * z).integrate() == 1);
  CHECK((y * x * z).integrate() == -1);
}

TEST_CASE("presentation validation rejects bad tables") {
  SECTION("wrong Koszul sign is rejected, not repaired") {
    auto bad = exterior_data(2, {"a", "b"});
    // declare b*a = +ab (should be -ab)
    bad.set(1, 1, 1, 0, {Rational(1)});
    CHECK_THROWS_MATCHES(bad.build(), RingError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("graded commutativity")));
  }
  SECTION("broken associativity") {
    auto bad = exterior_data(3, {"a", "b", "c"});
    // flip (ab)*c and c*(ab) together so commutativity still holds but
    // (a*b)*c != a*(b*c); {a,b} is the first degree-2 basis element
    bad.set(2, 0, 1, 2, {Rational(-1)});
    bad.set(1, 2, 2, 0, {Rational(-1)});
    CHECK_THROWS_MATCHES(bad.build(), RingError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("associativity")));
  }
  SECTION("unit must act as identity") {
    auto bad = sphere2_data();
    bad.set(0, 0, 2, 0, {Rational(2)});
    CHECK_THROWS_AS(bad.build(), RingError);
  }
  SECTION("degree zero must be one-dimensional") {
    RingData bad;
    bad.dims = {2};
    bad.labels = {{"1", "e"}};
    bad.integral = {Rational(1), Rational(0)};
    bad.init_table();
    CHECK_THROWS_AS(bad.build(), RingError);
  }
  SECTION("products above the top degree must vanish") {
    auto bad = sphere2_data();
    bad.set(2, 0, 2, 0, {Rational(1)});  // h*h declared nonzero in degree 4
    CHECK_THROWS_AS(bad.build(), RingError);
  }
  SECTION("vanishing integration functional") {
    auto bad = sphere2_data();
    bad.integral = {Rational(0)};
    CHECK_THROWS_AS(bad.build(), RingError);
  }
}

TEST_CASE("ring mismatch is an error") {
  auto a = GradedElement::unit(ring_sphere2());
  auto b = GradedElement::unit(ring_cpn(2));
  CHECK_THROWS_AS(a + b, RingMismatch);
  CHECK_THROWS_AS(a * b, RingMismatch);
  // equal content in different objects is accepted
  auto c = GradedElement::unit(ring_sphere2());
  CHECK(a == c);
}

TEST_CASE("subset-product table is deterministic") {
  auto r1 = exterior_data(3, {"a", "b", "c"});
  auto r2 = exterior_data(3, {"a", "b", "c"});
  CHECK(r1.build()->same_content(*r2.build()));
}
