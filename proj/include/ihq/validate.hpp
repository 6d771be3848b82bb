#ifndef IHQ_VALIDATE_HPP
#define IHQ_VALIDATE_HPP

/* Whole-instance consistency validators.
 *
 * abbv-localization: for every declared class a, the localized sum
 * s(a) = sum over ALL fixed components of integral_F(a|_F * e_F^{-1}),
 * integrating each t-coefficient over F, must be a polynomial in t — any
 * nonzero coefficient of a negative power means the restrictions and Euler
 * data cannot come from one global equivariant class.
 *
 * morse-dimension-count: the number of declared classes in each degree d up
 * to the degree bound must equal
 * sum_F sum_{j>=0} dim H^{d - index(F) - 2j}(F),
 * the equivariant Betti number forced by the moment map as a perfect
 * Morse-Bott function.
 *
 * effectiveness: gcd of all weights > 1 means the circle acts through a
 * cover; reported as a warning, never a failure.
 */

#include "ihq/laurent.hpp"
#include "ihq/model.hpp"

#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace ihq {

struct CheckReport {
  std::string name;
  bool passed = true;
  std::vector<std::string> notes;  // failures, or warnings when passed
};

inline CheckReport validate_abbv(const Instance& inst) {
  CheckReport rep{"abbv-localization", true, {}};
  std::vector<LaurentElement> inverted;
  inverted.reserve(inst.components.size());
  for (const auto& c : inst.components) inverted.push_back(invert_euler(c.euler_class));

  for (const auto& cl : inst.classes) {
    std::map<int, Rational> total;
    for (std::size_t i = 0; i < inst.components.size(); ++i) {
      const auto& c = inst.components[i];
      const auto local =
          integrate_coefficients(cl.restrictions.at(c.id) * inverted[i]);
      for (const auto& [p, v] : local) total[p] += v;
    }
    for (const auto& [p, v] : total)
      if (p < 0 && v != 0) {
        rep.passed = false;
        rep.notes.push_back("class '" + cl.name + "': localized sum has t^" +
                            std::to_string(p) + " coefficient " +
                            format_rational(v));
      }
  }
  return rep;
}

inline CheckReport validate_morse(const Instance& inst) {
  CheckReport rep{"morse-dimension-count", true, {}};
  std::map<int, int> declared;
  for (const auto& cl : inst.classes) ++declared[cl.degree];

  for (int d = 0; d <= inst.degree_bound; ++d) {
    long expected = 0;
    for (const auto& c : inst.components) {
      const int base = d - index_of(c);
      for (int j = 0; base - 2 * j >= 0; ++j)
        expected += c.cohomology->dim(base - 2 * j);
    }
    const long have = declared.count(d) ? declared.at(d) : 0;
    if (have != expected) {
      rep.passed = false;
      rep.notes.push_back("degree " + std::to_string(d) + ": " +
                          std::to_string(have) + " classes declared, " +
                          std::to_string(expected) + " required");
    }
  }
  return rep;
}

inline CheckReport validate_effectiveness(const Instance& inst) {
  CheckReport rep{"effectiveness", true, {}};
  std::int64_t g = 0;
  for (const auto& c : inst.components)
    for (const auto& w : c.weights) g = std::gcd(g, w.k < 0 ? -w.k : w.k);
  if (g > 1)
    rep.notes.push_back("warning: all weights divisible by " + std::to_string(g) +
                        "; the action factors through a " + std::to_string(g) +
                        "-fold cover");
  return rep;
}

inline std::vector<CheckReport> run_validators(const Instance& inst) {
  return {validate_abbv(inst), validate_morse(inst), validate_effectiveness(inst)};
}

}  // namespace ihq

#endif
