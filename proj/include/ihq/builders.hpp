#ifndef IHQ_BUILDERS_HPP
#define IHQ_BUILDERS_HPP

/* Deterministic generators for the instance corpus: projective spaces with a
 * linear circle action and products of rotated two-spheres. Both emit
 * isolated fixed points only, and both self-check (structure, localization,
 * dimension counts) before returning, failing loudly if the generated data
 * is inconsistent. */

#include "ihq/model.hpp"
#include "ihq/validate.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace ihq {

namespace detail {

/* Collect raw normal weights into (weight, multiplicity) pairs, ascending. */
inline std::vector<Weight> merge_weights(const std::vector<std::int64_t>& ks) {
  std::map<std::int64_t, std::int64_t> mult;
  for (const auto k : ks) ++mult[k];
  std::vector<Weight> out;
  out.reserve(mult.size());
  for (const auto& [k, m] : mult) out.push_back({k, m});
  return out;
}

/* "u^2*t", "u1*u2", "t^3", or "1" for the empty monomial. */
inline std::string monomial_name(
    const std::vector<std::pair<std::string, int>>& factors) {
  std::string out;
  for (const auto& [sym, e] : factors) {
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += sym;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

inline std::string join_weights(const std::vector<std::int64_t>& ws) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ws[i]);
  }
  return out;
}

inline void builder_self_check(const Instance& inst) {
  check_structure(inst);
  for (const CheckReport& rep : {validate_abbv(inst), validate_morse(inst)})
    if (!rep.passed)
      throw ModelError(inst.name + ": builder self-check failed (" + rep.name +
                       "): " + rep.notes.front());
}

}  // namespace detail

/* Complex projective n-space, circle acting linearly with pairwise distinct
 * integer weights a_0..a_n; the moment map is shifted by `shift`. Fixed
 * points p_i carry moment value a_i - shift and normal weights
 * {a_j - a_i : j != i}. The class basis in degree 2k consists of the
 * monomials u^j t^(k-j), where u restricts at p_i to a_i * t. */
inline Instance build_projective_space(const std::vector<std::int64_t>& weights,
                                       const Rational& shift) {
  if (weights.size() < 2)
    throw ModelError("projective-space builder needs at least two weights");
  {
    std::vector<std::int64_t> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ModelError("weights must be distinct");
  }

  const int n = static_cast<int>(weights.size()) - 1;
  const RingPtr pt = RingPresentation::point();
  Instance inst;
  inst.name = "cpn(" + detail::join_weights(weights) + ") shift " +
              format_rational(shift);
  inst.dim_m = 2 * n;
  inst.degree_bound = 2 * n;

  for (std::size_t i = 0; i < weights.size(); ++i) {
    FixedComponent c;
    c.id = "p" + std::to_string(i);
    c.dim = 0;
    c.moment_value = Rational(weights[i]) - shift;
    std::vector<std::int64_t> ks;
    for (std::size_t j = 0; j < weights.size(); ++j)
      if (j != i) ks.push_back(weights[j] - weights[i]);
    c.weights = detail::merge_weights(ks);
    c.cohomology = pt;
    c.euler_class = euler_class_isolated(c, inst.dim_m);
    inst.components.push_back(std::move(c));
  }

  for (int k = 0; 2 * k <= inst.degree_bound; ++k)
    for (int j = 0; j <= std::min(k, n); ++j) {
      EquivariantClass cl;
      cl.name = detail::monomial_name({{"u", j}, {"t", k - j}});
      cl.degree = 2 * k;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        Rational c(1);
        for (int s = 0; s < j; ++s) c *= Rational(weights[i]);
        cl.restrictions.insert_or_assign(
            inst.components[i].id,
            c == 0 ? LaurentElement::zero(pt)
                   : LaurentElement::scalar_term(pt, c, k));
      }
      inst.classes.push_back(std::move(cl));
    }

  detail::builder_self_check(inst);
  return inst;
}

/* Product of two-spheres, the i-th rotated with nonzero weight lambda_i; the
 * total moment map (sum of heights) is shifted by `shift`. The 2^m fixed
 * points are the pole choices sigma in {+,-}^m, with moment value
 * sum sigma_i lambda_i - shift and normal weights {-sigma_i lambda_i}
 * (merged into multiplicities when equal). The class basis in degree 2k
 * consists of the square-free monomials (prod_{i in T} u_i) t^(k-|T|), where
 * u_i restricts at sigma to sigma_i lambda_i * t. */
inline Instance build_sphere_product(
    const std::vector<std::int64_t>& factor_weights, const Rational& shift) {
  if (factor_weights.empty())
    throw ModelError("sphere-product builder needs at least one factor");
  for (const auto w : factor_weights)
    if (w == 0) throw ModelError("factor weights must be nonzero");

  const int m = static_cast<int>(factor_weights.size());
  const RingPtr pt = RingPresentation::point();
  Instance inst;
  inst.name = "spheres(" + detail::join_weights(factor_weights) + ") shift " +
              format_rational(shift);
  inst.dim_m = 2 * m;
  inst.degree_bound = 2 * m;

  const std::uint32_t npoints = std::uint32_t{1} << m;
  auto sign = [&](std::uint32_t mask, int i) -> std::int64_t {
    return (mask >> i) & 1u ? 1 : -1;
  };

  for (std::uint32_t mask = 0; mask < npoints; ++mask) {
    FixedComponent c;
    c.id = "p";
    Rational moment(0);
    std::vector<std::int64_t> ks;
    for (int i = 0; i < m; ++i) {
      const std::int64_t s = sign(mask, i);
      c.id += s > 0 ? '+' : '-';
      moment += Rational(s * factor_weights[i]);
      ks.push_back(-s * factor_weights[i]);
    }
    c.dim = 0;
    c.moment_value = moment - shift;
    c.weights = detail::merge_weights(ks);
    c.cohomology = pt;
    c.euler_class = euler_class_isolated(c, inst.dim_m);
    inst.components.push_back(std::move(c));
  }

  // subsets ordered by size, then lexicographically by lowest member
  std::vector<std::uint32_t> subsets(npoints);
  std::iota(subsets.begin(), subsets.end(), 0u);
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     const int ca = std::popcount(a), cb = std::popcount(b);
                     return ca != cb ? ca < cb : a < b;
                   });

  for (int k = 0; 2 * k <= inst.degree_bound; ++k)
    for (const std::uint32_t tmask : subsets) {
      const int size = std::popcount(tmask);
      if (size > k) continue;
      EquivariantClass cl;
      std::vector<std::pair<std::string, int>> factors;
      for (int i = 0; i < m; ++i)
        factors.emplace_back("u" + std::to_string(i + 1),
                             static_cast<int>((tmask >> i) & 1u));
      factors.emplace_back("t", k - size);
      cl.name = detail::monomial_name(factors);
      cl.degree = 2 * k;
      for (std::uint32_t mask = 0; mask < npoints; ++mask) {
        Rational c(1);
        for (int i = 0; i < m; ++i)
          if ((tmask >> i) & 1u) c *= Rational(sign(mask, i) * factor_weights[i]);
        cl.restrictions.insert_or_assign(
            inst.components[mask].id,
            LaurentElement::scalar_term(pt, c, k));
      }
      inst.classes.push_back(std::move(cl));
    }

  detail::builder_self_check(inst);
  return inst;
}

}  // namespace ihq

#endif
