#ifndef IHQ_RING_HPP
#define IHQ_RING_HPP

/* Finite graded-commutative ring presentations over Q, and their elements.
 *
 * A presentation lists, per degree, a basis with labels, the full table of
 * basis-by-basis products (coordinates in the target degree), plus a linear
 * integration functional on the top degree. Construction validates the ring
 * axioms: one-dimensional degree 0 spanned by a two-sided unit, associativity
 * on all basis triples, graded commutativity x*y = (-1)^{|x||y|} y*x (a table
 * with wrong Koszul signs is rejected, never repaired), products above the
 * top degree identically zero, and a nonvanishing integration functional when
 * the top degree is nonempty.
 *
 * Elements hold one coordinate vector per degree against a shared immutable
 * presentation; all operations are exact.
 */

#include "ihq/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ihq {

struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class RingPresentation {
 public:
  /* dims[d] = dimension in degree d, d = 0..topDegree (trailing zeros
   * allowed); labels follow the same indexing; products maps global basis
   * pairs to coordinate vectors in the sum degree (empty vector = zero);
   * integral has one entry per top-degree basis element. */
  RingPresentation(std::vector<int> dims,
                   std::vector<std::vector<std::string>> labels,
                   std::vector<std::vector<std::vector<Rational>>> products,
                   std::vector<Rational> integral)
      : dims_(std::move(dims)),
        labels_(std::move(labels)),
        products_(std::move(products)),
        integral_(std::move(integral)) {
    if (dims_.empty()) throw RingError("presentation with no degrees");
    offsets_.assign(dims_.size(), 0);
    total_ = 0;
    for (std::size_t d = 0; d < dims_.size(); ++d) {
      if (dims_[d] < 0) throw RingError("negative dimension");
      offsets_[d] = total_;
      total_ += static_cast<std::size_t>(dims_[d]);
      degree_of_.insert(degree_of_.end(), static_cast<std::size_t>(dims_[d]),
                        static_cast<int>(d));
    }
    validate();
  }

  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int degree) const {
    if (degree < 0 || degree > top_degree()) return 0;
    return dims_[static_cast<std::size_t>(degree)];
  }
  std::size_t total_dim() const { return total_; }
  const std::string& label(int degree, int i) const {
    return labels_[static_cast<std::size_t>(degree)][static_cast<std::size_t>(i)];
  }
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }
  const std::vector<Rational>& integral() const { return integral_; }

  std::size_t global_index(int degree, int i) const {
    return offsets_[static_cast<std::size_t>(degree)] + static_cast<std::size_t>(i);
  }
  int degree_of_global(std::size_t g) const { return degree_of_[g]; }

  /* Coordinates of basis(a,i)*basis(b,j) in degree a+b; empty means zero
   * (including every product landing above the top degree). */
  const std::vector<Rational>& basis_product(int a, int i, int b, int j) const {
    return products_[global_index(a, i)][global_index(b, j)];
  }

  bool same_content(const RingPresentation& o) const {
    return dims_ == o.dims_ && labels_ == o.labels_ &&
           products_ == o.products_ && integral_ == o.integral_;
  }

  /* The cohomology ring of a point: Q in degree 0. */
  static std::shared_ptr<const RingPresentation> point() {
    static const auto pt = std::make_shared<const RingPresentation>(
        std::vector<int>{1}, std::vector<std::vector<std::string>>{{"1"}},
        std::vector<std::vector<std::vector<Rational>>>{{{Rational(1)}}},
        std::vector<Rational>{Rational(1)});
    return pt;
  }

 private:
  void validate() const {
    const int top = top_degree();
    if (dim(0) != 1) throw RingError("degree 0 must be one-dimensional");
    for (std::size_t d = 0; d < dims_.size(); ++d)
      if (labels_[d].size() != static_cast<std::size_t>(dims_[d]))
        throw RingError("label count mismatch in degree " + std::to_string(d));
    if (products_.size() != total_)
      throw RingError("product table has wrong shape");
    for (const auto& row : products_)
      if (row.size() != total_) throw RingError("product table has wrong shape");
    if (integral_.size() != static_cast<std::size_t>(dim(top)))
      throw RingError("integration functional has wrong length");

    auto product_or_throw = [&](std::size_t g, std::size_t h) -> const std::vector<Rational>& {
      const auto& v = products_[g][h];
      const int dsum = degree_of_[g] + degree_of_[h];
      const std::size_t want =
          dsum > top ? 0 : static_cast<std::size_t>(dims_[static_cast<std::size_t>(dsum)]);
      if (!v.empty() && v.size() != want)
        throw RingError("product entry with wrong length");
      if (dsum > top && !v.empty()) {
        for (const auto& x : v)
          if (x != 0) throw RingError("product above top degree must vanish");
      }
      return v;
    };

    // unit axiom: the degree-0 basis element is a two-sided unit
    for (std::size_t g = 0; g < total_; ++g) {
      const auto& left = product_or_throw(0, g);
      const auto& rightv = product_or_throw(g, 0);
      const int dg = degree_of_[g];
      std::vector<Rational> expect(static_cast<std::size_t>(dims_[static_cast<std::size_t>(dg)]));
      expect[g - offsets_[static_cast<std::size_t>(dg)]] = 1;
      auto matches = [&](const std::vector<Rational>& v) {
        if (v.empty())
          return std::all_of(expect.begin(), expect.end(),
                             [](const Rational& x) { return x == 0; });
        return v == expect;
      };
      if (!matches(left) || !matches(rightv))
        throw RingError("unit does not act as identity");
    }

    // graded commutativity with Koszul signs
    for (std::size_t g = 0; g < total_; ++g)
      for (std::size_t h = 0; h < total_; ++h) {
        const auto& xy = product_or_throw(g, h);
        const auto& yx = product_or_throw(h, g);
        const bool flip = (degree_of_[g] % 2 != 0) && (degree_of_[h] % 2 != 0);
        const std::size_t n = std::max(xy.size(), yx.size());
        for (std::size_t k = 0; k < n; ++k) {
          const Rational a = k < xy.size() ? xy[k] : Rational(0);
          const Rational b = k < yx.size() ? yx[k] : Rational(0);
          if (a != (flip ? -b : b))
            throw RingError("graded commutativity violated between '" +
                            labels_[static_cast<std::size_t>(degree_of_[g])]
                                   [g - offsets_[static_cast<std::size_t>(degree_of_[g])]] +
                            "' and '" +
                            labels_[static_cast<std::size_t>(degree_of_[h])]
                                   [h - offsets_[static_cast<std::size_t>(degree_of_[h])]] +
                            "'");
        }
      }

    // associativity on basis triples: (xy)z = x(yz)
    auto expand = [&](const std::vector<Rational>& coords, int deg,
                      std::size_t other, bool other_on_left) {
      // multiply a degree-`deg` coordinate vector by basis element `other`
      const int dother = degree_of_[other];
      const int dout = deg + dother;
      std::vector<Rational> out;
      if (dout > top) return out;
      out.assign(static_cast<std::size_t>(dims_[static_cast<std::size_t>(dout)]), Rational(0));
      for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        const std::size_t g = offsets_[static_cast<std::size_t>(deg)] + i;
        const auto& pv = other_on_left ? products_[other][g] : products_[g][other];
        for (std::size_t k = 0; k < pv.size(); ++k) out[k] += coords[i] * pv[k];
      }
      return out;
    };
    for (std::size_t g = 0; g < total_; ++g)
      for (std::size_t h = 0; h < total_; ++h)
        for (std::size_t l = 0; l < total_; ++l) {
          const int dgh = degree_of_[g] + degree_of_[h];
          if (dgh + degree_of_[l] > top) continue;
          std::vector<Rational> lhs, rhs;
          if (dgh <= top) lhs = expand(products_[g][h], dgh, l, false);
          const int dhl = degree_of_[h] + degree_of_[l];
          if (dhl <= top) rhs = expand(products_[h][l], dhl, g, true);
          const std::size_t n = std::max(lhs.size(), rhs.size());
          for (std::size_t k = 0; k < n; ++k) {
            const Rational a = k < lhs.size() ? lhs[k] : Rational(0);
            const Rational b = k < rhs.size() ? rhs[k] : Rational(0);
            if (a != b) throw RingError("associativity violated");
          }
        }

    if (dim(top) > 0) {
      bool nonzero = false;
      for (const auto& x : integral_) nonzero = nonzero || x != 0;
      if (!nonzero)
        throw RingError("integration functional vanishes on the top degree");
    }
  }

  std::vector<int> dims_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<std::vector<Rational>>> products_;
  std::vector<Rational> integral_;
  std::vector<std::size_t> offsets_;
  std::vector<int> degree_of_;
  std::size_t total_ = 0;
};

using RingPtr = std::shared_ptr<const RingPresentation>;

struct RingMismatch : std::runtime_error {
  RingMismatch() : std::runtime_error("operands refer to different rings") {}
};

class GradedElement {
 public:
  explicit GradedElement(RingPtr ring)
      : ring_(std::move(ring)),
        coords_(static_cast<std::size_t>(ring_->top_degree()) + 1) {
    for (int d = 0; d <= ring_->top_degree(); ++d)
      coords_[static_cast<std::size_t>(d)].assign(
          static_cast<std::size_t>(ring_->dim(d)), Rational(0));
  }

  static GradedElement zero(RingPtr ring) { return GradedElement(std::move(ring)); }
  static GradedElement unit(RingPtr ring) {
    GradedElement e(std::move(ring));
    e.coords_[0][0] = 1;
    return e;
  }
  static GradedElement scalar(RingPtr ring, const Rational& c) {
    GradedElement e(std::move(ring));
    e.coords_[0][0] = c;
    return e;
  }
  static GradedElement basis(RingPtr ring, int degree, int i) {
    GradedElement e(ring);
    if (degree < 0 || degree > ring->top_degree() || i < 0 || i >= ring->dim(degree))
      throw RingError("basis index out of range");
    e.coords_[static_cast<std::size_t>(degree)][static_cast<std::size_t>(i)] = 1;
    return e;
  }

  const RingPtr& ring() const { return ring_; }

  const std::vector<Rational>& component(int degree) const {
    static const std::vector<Rational> none;
    if (degree < 0 || degree > ring_->top_degree()) return none;
    return coords_[static_cast<std::size_t>(degree)];
  }
  std::vector<Rational>& component_mut(int degree) {
    return coords_[static_cast<std::size_t>(degree)];
  }

  bool is_zero() const {
    for (const auto& c : coords_)
      for (const auto& x : c)
        if (x != 0) return false;
    return true;
  }

  /* Degree of a nonzero homogeneous element; nullopt if zero or mixed. */
  std::optional<int> sole_degree() const {
    std::optional<int> found;
    for (int d = 0; d <= ring_->top_degree(); ++d)
      for (const auto& x : coords_[static_cast<std::size_t>(d)])
        if (x != 0) {
          if (found && *found != d) return std::nullopt;
          found = d;
          break;
        }
    return found;
  }

  GradedElement& operator+=(const GradedElement& o) {
    check_ring(o);
    for (std::size_t d = 0; d < coords_.size(); ++d)
      for (std::size_t i = 0; i < coords_[d].size(); ++i)
        coords_[d][i] += o.coords_[d][i];
    return *this;
  }
  GradedElement& operator-=(const GradedElement& o) {
    check_ring(o);
    for (std::size_t d = 0; d < coords_.size(); ++d)
      for (std::size_t i = 0; i < coords_[d].size(); ++i)
        coords_[d][i] -= o.coords_[d][i];
    return *this;
  }
  GradedElement& operator*=(const Rational& c) {
    for (auto& comp : coords_)
      for (auto& x : comp) x *= c;
    return *this;
  }

  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(GradedElement a, const Rational& c) { return a *= c; }
  friend GradedElement operator*(const Rational& c, GradedElement a) { return a *= c; }

  /* Ring product through the structure-constant table. */
  friend GradedElement operator*(const GradedElement& a, const GradedElement& b) {
    a.check_ring(b);
    GradedElement out(a.ring_);
    const int top = a.ring_->top_degree();
    for (int da = 0; da <= top; ++da)
      for (std::size_t i = 0; i < a.coords_[static_cast<std::size_t>(da)].size(); ++i) {
        const Rational& ca = a.coords_[static_cast<std::size_t>(da)][i];
        if (ca == 0) continue;
        for (int db = 0; db + da <= top; ++db)
          for (std::size_t j = 0; j < b.coords_[static_cast<std::size_t>(db)].size(); ++j) {
            const Rational& cb = b.coords_[static_cast<std::size_t>(db)][j];
            if (cb == 0) continue;
            const auto& pv = a.ring_->basis_product(da, static_cast<int>(i), db,
                                                    static_cast<int>(j));
            auto& target = out.coords_[static_cast<std::size_t>(da + db)];
            for (std::size_t k = 0; k < pv.size(); ++k) target[k] += ca * cb * pv[k];
          }
      }
    return out;
  }

  bool operator==(const GradedElement& o) const {
    return ring_ == o.ring_ ? coords_ == o.coords_
                            : (check_ring(o), coords_ == o.coords_);
  }

  /* Integration functional: pairs the top-degree component with the ring's
   * integral; lower degrees contribute nothing. */
  Rational integrate() const {
    const auto& top = coords_.back();
    const auto& w = ring_->integral();
    Rational s(0);
    for (std::size_t i = 0; i < top.size(); ++i) s += w[i] * top[i];
    return s;
  }

 private:
  void check_ring(const GradedElement& o) const {
    if (ring_ != o.ring_ && !ring_->same_content(*o.ring_)) throw RingMismatch();
  }

  RingPtr ring_;
  std::vector<std::vector<Rational>> coords_;
};

}  // namespace ihq

#endif
