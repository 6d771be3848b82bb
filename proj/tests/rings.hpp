#ifndef IHQ_TESTS_RINGS_HPP
#define IHQ_TESTS_RINGS_HPP

/* Shared ring fixtures for the test suite. */

#include "ihq/ring.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ihq_tests {

using ihq::Rational;
using ihq::RingPresentation;
using ihq::RingPtr;

struct RingData {
  std::vector<int> dims;
  std::vector<std::vector<std::string>> labels;
  std::vector<std::vector<std::vector<Rational>>> products;
  std::vector<Rational> integral;

  void init_table() {
    std::size_t total = 0;
    for (int d : dims) total += static_cast<std::size_t>(d);
    products.assign(total, std::vector<std::vector<Rational>>(total));
  }
  std::size_t global(int deg, int i) const {
    std::size_t g = static_cast<std::size_t>(i);
    for (int d = 0; d < deg; ++d) g += static_cast<std::size_t>(dims[static_cast<std::size_t>(d)]);
    return g;
  }
  void set(int adeg, int ai, int bdeg, int bi, std::vector<Rational> v) {
    products[global(adeg, ai)][global(bdeg, bi)] = std::move(v);
  }
  RingPtr build() const {
    return std::make_shared<const RingPresentation>(dims, labels, products, integral);
  }
};

/* H*(S^2): generator h in degree 2, h^2 = 0 (above top), integral of h = 1. */
inline RingData sphere2_data() {
  RingData r;
  r.dims = {1, 0, 1};
  r.labels = {{"1"}, {}, {"h"}};
  r.integral = {Rational(1)};
  r.init_table();
  r.set(0, 0, 0, 0, {Rational(1)});
  r.set(0, 0, 2, 0, {Rational(1)});
  r.set(2, 0, 0, 0, {Rational(1)});
  return r;
}
inline RingPtr ring_sphere2() { return sphere2_data().build(); }

/* H*(CP^n): truncated polynomial ring on a degree-2 generator. */
inline RingPtr ring_cpn(int n) {
  RingData r;
  r.dims.assign(static_cast<std::size_t>(2 * n + 1), 0);
  r.labels.assign(static_cast<std::size_t>(2 * n + 1), {});
  for (int k = 0; k <= n; ++k) {
    r.dims[static_cast<std::size_t>(2 * k)] = 1;
    r.labels[static_cast<std::size_t>(2 * k)] = {
        k == 0 ? "1" : (k == 1 ? "h" : "h^" + std::to_string(k))};
  }
  r.integral = {Rational(1)};
  r.init_table();
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) r.set(2 * i, 0, 2 * j, 0, {Rational(1)});
  return r.build();
}

/* Exterior algebra on m degree-1 generators == H*(T^m); basis indexed by
 * subsets in binary-counter order within each degree. Products carry the
 * shuffle sign, so this exercises Koszul bookkeeping. */
inline RingData exterior_data(int m, const std::vector<std::string>& gens) {
  RingData r;
  r.dims.assign(static_cast<std::size_t>(m + 1), 0);
  r.labels.assign(static_cast<std::size_t>(m + 1), {});
  std::vector<std::vector<unsigned>> by_degree(static_cast<std::size_t>(m + 1));
  for (unsigned s = 0; s < (1u << m); ++s) {
    const int d = __builtin_popcount(s);
    by_degree[static_cast<std::size_t>(d)].push_back(s);
  }
  std::vector<int> index_of(1u << m);
  for (int d = 0; d <= m; ++d) {
    r.dims[static_cast<std::size_t>(d)] = static_cast<int>(by_degree[static_cast<std::size_t>(d)].size());
    for (std::size_t i = 0; i < by_degree[static_cast<std::size_t>(d)].size(); ++i) {
      const unsigned s = by_degree[static_cast<std::size_t>(d)][i];
      index_of[s] = static_cast<int>(i);
      std::string name;
      for (int g = 0; g < m; ++g)
        if (s & (1u << g)) name += gens[static_cast<std::size_t>(g)];
      r.labels[static_cast<std::size_t>(d)].push_back(name.empty() ? "1" : name);
    }
  }
  r.integral = {Rational(1)};
  r.init_table();
  for (unsigned s = 0; s < (1u << m); ++s)
    for (unsigned t = 0; t < (1u << m); ++t) {
      if (s & t) continue;  // repeated generator
      int inversions = 0;
      for (int g = 0; g < m; ++g)
        if (s & (1u << g))
          for (int h = 0; h < g; ++h)
            if (t & (1u << h)) ++inversions;
      const unsigned u = s | t;
      const int ds = __builtin_popcount(s), dt = __builtin_popcount(t);
      std::vector<Rational> v(static_cast<std::size_t>(r.dims[static_cast<std::size_t>(ds + dt)]));
      v[static_cast<std::size_t>(index_of[u])] = (inversions % 2 == 0) ? 1 : -1;
      r.set(ds, index_of[s], dt, index_of[t], std::move(v));
    }
  return r;
}
inline RingPtr ring_torus(int m, const std::vector<std::string>& gens) {
  return exterior_data(m, gens).build();
}

}  // namespace ihq_tests

#endif
