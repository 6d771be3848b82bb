#ifndef IHQ_LINALG_HPP
#define IHQ_LINALG_HPP

/* Exact linear algebra over the rationals.
 *
 * The elimination core is fraction-free (Bareiss): each row is first scaled
 * to integer entries, then forward elimination uses the two-term minor update
 * M[i][j] <- (pivot*M[i][j] - M[i][c]*M[r][j]) / previous_pivot, whose
 * divisions are exact. Reduced row echelon form is produced afterwards by
 * exact back-substitution. Everything downstream (rank, right nullspace,
 * solving, span membership) is derived from one deterministic RREF pass, so
 * results are bit-stable across runs.
 */

#include "ihq/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ihq {

struct LinalgError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class MatQ {
 public:
  MatQ() = default;
  MatQ(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static MatQ from_rows(std::vector<std::vector<Rational>> rows) {
    MatQ m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (const auto& r : rows) {
      if (r.size() != m.cols_) throw LinalgError("ragged row list");
      for (const auto& x : r) m.data_.push_back(x);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<Rational> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  MatQ transposed() const {
    MatQ t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  void append_row(const std::vector<Rational>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw LinalgError("appended row has wrong length");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool operator==(const MatQ& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/* Stack the rows of b below those of a (column counts must agree; an empty
 * matrix stacks with anything). */
inline MatQ vstack(const MatQ& a, const MatQ& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw LinalgError("vstack with mismatched widths");
  MatQ out = a;
  for (std::size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

struct Echelon {
  MatQ rref;                       // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column per pivot row
};

inline Echelon reduced_echelon(MatQ m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  // Scale rows to integers so the Bareiss updates below divide exactly.
  for (std::size_t i = 0; i < nr; ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < nc; ++j)
      l = lcm(l, denominator(m.at(i, j)));
    if (l != 1)
      for (std::size_t j = 0; j < nc; ++j) m.at(i, j) *= Rational(l);
  }

  std::vector<std::size_t> pivots;
  Rational prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && m.at(p, c) == 0) ++p;
    if (p == nr) continue;
    if (p != r)
      for (std::size_t j = 0; j < nc; ++j) std::swap(m.at(p, j), m.at(r, j));
    const Rational pivot = m.at(r, c);
    for (std::size_t i = r + 1; i < nr; ++i) {
      const Rational head = m.at(i, c);
      for (std::size_t j = 0; j < nc; ++j)
        m.at(i, j) = (pivot * m.at(i, j) - head * m.at(r, j)) / prev;
    }
    prev = pivot;
    pivots.push_back(c);
    ++r;
  }

  // Normalize pivot rows and clear above the pivots (exact rational steps).
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t c = pivots[k];
    const Rational pivot = m.at(k, c);
    for (std::size_t j = 0; j < nc; ++j) m.at(k, j) /= pivot;
    for (std::size_t i = 0; i < k; ++i) {
      const Rational f = m.at(i, c);
      if (f == 0) continue;
      for (std::size_t j = 0; j < nc; ++j)
        m.at(i, j) -= f * m.at(k, j);
    }
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const MatQ& m) { return reduced_echelon(m).pivots.size(); }

/* Basis of the row space: the nonzero rows of the reduced echelon form. */
inline MatQ row_basis(const MatQ& m) {
  const Echelon e = reduced_echelon(m);
  MatQ out(e.pivots.size(), m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = e.rref.at(i, j);
  return out;
}

/* Basis of {x : m x = 0}, one row per basis vector, built from the RREF by
 * the standard free-column construction (free columns ascending). */
inline MatQ right_nullspace(const MatQ& m) {
  const auto e = reduced_echelon(m);
  const std::size_t nc = m.cols();
  std::vector<bool> is_pivot(nc, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  MatQ basis(0, nc);
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(nc);
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
      v[e.pivots[k]] = -e.rref.at(k, f);
    basis.append_row(v);
  }
  return basis;
}

/* Kernel of x -> x m over row vectors x (rows of m are the constraints'
 * columns): nullspace of the transpose. */
inline MatQ left_nullspace(const MatQ& m) { return right_nullspace(m.transposed()); }

/* Unique solution x of m x = b when b is in the column span and the columns
 * are independent; nullopt when inconsistent. Columns dependent -> the
 * pivot-variable solution with free variables at zero (deterministic). */
inline std::optional<std::vector<Rational>> solve(const MatQ& m,
                                                  const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw LinalgError("solve: rhs length mismatch");
  MatQ aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  const auto e = reduced_echelon(aug);
  for (auto c : e.pivots)
    if (c == m.cols()) return std::nullopt;  // pivot in the rhs column
  std::vector<Rational> x(m.cols());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    x[e.pivots[k]] = e.rref.at(k, m.cols());
  return x;
}

/* Is v in the row span of rows? */
inline bool span_contains(const MatQ& rows, const std::vector<Rational>& v) {
  bool zero = true;
  for (const auto& x : v) zero = zero && x == 0;
  if (zero) return true;
  MatQ stacked = rows;
  stacked.append_row(v);
  return rank(stacked) == rank(rows);
}

inline bool same_row_span(const MatQ& a, const MatQ& b) {
  const std::size_t ra = rank(a), rb = rank(b);
  return ra == rb && rank(vstack(a, b)) == ra;
}

}  // namespace ihq

#endif
