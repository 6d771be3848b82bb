#ifndef IHQ_LAURENT_HPP
#define IHQ_LAURENT_HPP

/* Laurent elements in the degree-2 equivariant parameter t with coefficients
 * in a graded ring presentation: finitely many terms, sparse by exponent,
 * zero coefficients never stored. Total degree of a term = ring degree of
 * the coefficient + 2 * exponent.
 *
 * invert_euler inverts an equivariant Euler class e (homogeneous of total
 * degree 2n with invertible scalar leading coefficient at t^n): writing
 * e = lambda t^n (1 + nu) with nu of strictly positive ring degree, the
 * geometric series for (1 + nu)^{-1} terminates by nilpotency, so the result
 * is exact and the loop is bounded by the ring's top degree.
 */

#include "ihq/rational.hpp"
#include "ihq/ring.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

namespace ihq {

struct EulerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class LaurentElement {
 public:
  explicit LaurentElement(RingPtr ring) : ring_(std::move(ring)) {}

  static LaurentElement zero(RingPtr ring) { return LaurentElement(std::move(ring)); }

  /* coeff * t^power */
  static LaurentElement term(int power, const GradedElement& coeff) {
    LaurentElement l(coeff.ring());
    if (!coeff.is_zero()) l.terms_.emplace(power, coeff);
    return l;
  }
  static LaurentElement scalar_term(RingPtr ring, const Rational& c, int power) {
    return term(power, GradedElement::scalar(std::move(ring), c));
  }
  static LaurentElement unit(RingPtr ring) {
    return term(0, GradedElement::unit(std::move(ring)));
  }

  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<int, GradedElement>& terms() const { return terms_; }

  /* Coefficient of t^power (zero element if absent). */
  GradedElement coefficient(int power) const {
    auto it = terms_.find(power);
    return it == terms_.end() ? GradedElement::zero(ring_) : it->second;
  }

  int min_power() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  /* Total degree when every term is concentrated in a single ring degree and
   * all terms agree; nullopt for zero or inhomogeneous elements. */
  std::optional<int> homogeneous_degree() const {
    std::optional<int> total;
    for (const auto& [p, c] : terms_) {
      const auto d = c.sole_degree();
      if (!d) return std::nullopt;
      const int td = *d + 2 * p;
      if (total && *total != td) return std::nullopt;
      total = td;
    }
    return total;
  }
  bool is_homogeneous_of(int total_degree) const {
    if (terms_.empty()) return true;  // zero is homogeneous of every degree
    const auto d = homogeneous_degree();
    return d && *d == total_degree;
  }

  LaurentElement& operator+=(const LaurentElement& o) {
    check_ring(o);
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }
  LaurentElement& operator-=(const LaurentElement& o) {
    check_ring(o);
    for (const auto& [p, c] : o.terms_) {
      GradedElement neg = c;
      neg *= Rational(-1);
      add_term(p, neg);
    }
    return *this;
  }
  LaurentElement& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, coeff] : terms_) coeff *= c;
    return *this;
  }

  friend LaurentElement operator+(LaurentElement a, const LaurentElement& b) { return a += b; }
  friend LaurentElement operator-(LaurentElement a, const LaurentElement& b) { return a -= b; }
  friend LaurentElement operator*(LaurentElement a, const Rational& c) { return a *= c; }
  friend LaurentElement operator*(const Rational& c, LaurentElement a) { return a *= c; }

  /* Cauchy product; t is central of even degree, so no extra signs here —
   * all Koszul signs live in the coefficient ring. */
  friend LaurentElement operator*(const LaurentElement& a, const LaurentElement& b) {
    a.check_ring(b);
    LaurentElement out(a.ring_);
    for (const auto& [pa, ca] : a.terms_)
      for (const auto& [pb, cb] : b.terms_) out.add_term(pa + pb, ca * cb);
    return out;
  }

  /* Multiply by t^k. */
  LaurentElement shifted(int k) const {
    LaurentElement out(ring_);
    for (const auto& [p, c] : terms_) out.terms_.emplace(p + k, c);
    return out;
  }

  bool operator==(const LaurentElement& o) const {
    check_ring(o);
    return terms_ == o.terms_;
  }

 private:
  void add_term(int p, const GradedElement& c) {
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(p, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  void check_ring(const LaurentElement& o) const {
    if (ring_ != o.ring_ && !ring_->same_content(*o.ring_)) throw RingMismatch();
  }

  RingPtr ring_;
  std::map<int, GradedElement> terms_;
};

/* Apply the ring's integration functional to every coefficient (top ring
 * degree pairs with the functional, lower degrees integrate to zero),
 * yielding a scalar Laurent polynomial as exponent -> value. */
inline std::map<int, Rational> integrate_coefficients(const LaurentElement& a) {
  std::map<int, Rational> out;
  for (const auto& [p, c] : a.terms()) {
    Rational v = c.integrate();
    if (v != 0) out.emplace(p, std::move(v));
  }
  return out;
}

/* Residue: integrate coefficients, keep the t^{-1} value. */
inline Rational residue_integral(const LaurentElement& a) {
  return a.coefficient(-1).integrate();
}

inline LaurentElement invert_euler(const LaurentElement& e) {
  if (e.is_zero()) throw EulerError("cannot invert zero");
  const auto deg = e.homogeneous_degree();
  if (!deg || *deg < 2 || *deg % 2 != 0)
    throw EulerError("Euler class must be homogeneous of positive even degree");
  const int n = *deg / 2;
  const GradedElement lead = e.coefficient(n);
  const auto lead_deg = lead.sole_degree();
  if (lead.is_zero() || !lead_deg || *lead_deg != 0)
    throw EulerError("leading coefficient at t^n must be a nonzero scalar");
  const Rational lambda = lead.component(0)[0];

  const RingPtr& ring = e.ring();
  // nu = lambda^{-1} t^{-n} e - 1, all terms of strictly positive ring degree
  LaurentElement nu = (e * (Rational(1) / lambda)).shifted(-n) -
                      LaurentElement::unit(ring);
  LaurentElement series = LaurentElement::unit(ring);
  LaurentElement power = LaurentElement::unit(ring);
  const LaurentElement minus_nu = nu * Rational(-1);
  while (true) {
    power = power * minus_nu;  // terms gain ring degree every round: nilpotent
    if (power.is_zero()) break;
    series += power;
  }
  return (series * (Rational(1) / lambda)).shifted(-n);
}

}  // namespace ihq

#endif
