#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mg2/matrix.hpp"

namespace mg2 {

namespace detail {

// Barrett reduction for a < p^2 + p with p < 2^16.
struct Mod32 {
  std::uint32_t p = 0;
  std::uint64_t magic = 0;

  explicit Mod32(std::uint32_t prime) : p(prime) {
    magic = ~std::uint64_t{0} / p + 1;
  }
  std::uint32_t reduce(std::uint64_t a) const {
    std::uint64_t q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(magic) * a) >> 64);
    std::uint64_t r = a - q * p;
    while (r >= p) r -= p;
    return static_cast<std::uint32_t>(r);
  }
};

}  // namespace detail

// Incremental row-echelon accumulator. Rows are fed one at a time; each is
// reduced against the pivots seen so far and kept if independent. finalize()
// back-eliminates so the row set becomes the canonical RREF.
template <FieldType F>
class RowReducer {
 public:
  using Elt = typename F::Element;

  RowReducer(const F& f, std::size_t cols)
      : f_(f), cols_(cols), pivot_row_(cols, -1) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  // Returns the pivot column if the row was independent.
  std::optional<std::size_t> insert(Vec<F> row) {
    if (row.size() != cols_) throw Error("row length mismatch");
    finalized_ = false;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (row[j].is_zero()) continue;
      int pr = pivot_row_[j];
      if (pr < 0) {
        Elt inv = f_.one() / row[j];
        for (std::size_t k = j; k < cols_; ++k) row[k] = inv * row[k];
        pivot_row_[j] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        pivot_col_.push_back(j);
        return j;
      }
      const Vec<F>& pivot = rows_[pr];
      Elt c = row[j];
      for (std::size_t k = j; k < cols_; ++k)
        row[k] = row[k] - c * pivot[k];
    }
    return std::nullopt;
  }

  void finalize() {
    if (finalized_) return;
    // Order rows by pivot column, then eliminate above each pivot.
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pivot_col_[a] < pivot_col_[b];
    });
    std::vector<Vec<F>> sorted;
    std::vector<std::size_t> cols_sorted;
    sorted.reserve(rows_.size());
    for (std::size_t i : order) {
      sorted.push_back(std::move(rows_[i]));
      cols_sorted.push_back(pivot_col_[i]);
    }
    rows_ = std::move(sorted);
    pivot_col_ = std::move(cols_sorted);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      pivot_row_[pivot_col_[i]] = static_cast<int>(i);
    for (std::size_t i = rows_.size(); i-- > 0;) {
      std::size_t pc = pivot_col_[i];
      for (std::size_t r = 0; r < i; ++r) {
        Elt c = rows_[r][pc];
        if (c.is_zero()) continue;
        for (std::size_t k = pc; k < cols_; ++k)
          rows_[r][k] = rows_[r][k] - c * rows_[i][k];
      }
    }
    finalized_ = true;
  }

  Matrix<F> to_matrix() {
    finalize();
    if (rows_.empty()) return Matrix<F>(f_, 0, cols_);
    return Matrix<F>::from_rows(f_, rows_);
  }
  const std::vector<std::size_t>& pivot_columns() {
    finalize();
    return pivot_col_;
  }

 private:
  F f_;
  std::size_t cols_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<int> pivot_row_;
  bool finalized_ = true;
};

// Packed fast path over GF(p): rows live in uint32 buffers and arithmetic
// goes through Barrett reduction. Shares the RowReducer interface.
template <>
class RowReducer<PrimeField> {
 public:
  RowReducer(const PrimeField& f, std::size_t cols)
      : f_(f),
        mod_(f.characteristic()),
        cols_(cols),
        pivot_row_(cols, -1) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  std::optional<std::size_t> insert(const Vec<PrimeField>& row) {
    if (row.size() != cols_) throw Error("row length mismatch");
    scratch_.assign(cols_, 0);
    for (std::size_t j = 0; j < cols_; ++j) scratch_[j] = row[j].value();
    return insert_scratch();
  }

  std::optional<std::size_t> insert_sparse(
      const std::vector<std::pair<std::size_t, Fp>>& entries) {
    scratch_.assign(cols_, 0);
    for (const auto& [j, v] : entries) {
      if (j >= cols_) throw Error("sparse row index out of range");
      std::uint32_t s = scratch_[j] + v.value();
      scratch_[j] = s >= mod_.p ? s - mod_.p : s;
    }
    return insert_scratch();
  }

  void finalize() {
    if (finalized_) return;
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pivot_col_[a] < pivot_col_[b];
    });
    std::vector<std::vector<std::uint32_t>> sorted;
    std::vector<std::size_t> cols_sorted;
    sorted.reserve(rows_.size());
    for (std::size_t i : order) {
      sorted.push_back(std::move(rows_[i]));
      cols_sorted.push_back(pivot_col_[i]);
    }
    rows_ = std::move(sorted);
    pivot_col_ = std::move(cols_sorted);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      pivot_row_[pivot_col_[i]] = static_cast<int>(i);
    for (std::size_t i = rows_.size(); i-- > 0;) {
      std::size_t pc = pivot_col_[i];
      const auto& prow = rows_[i];
      for (std::size_t r = 0; r < i; ++r) {
        std::uint32_t c = rows_[r][pc];
        if (c == 0) continue;
        axpy(rows_[r], prow, mod_.p - c, pc);
      }
    }
    finalized_ = true;
  }

  Matrix<PrimeField> to_matrix() {
    finalize();
    Matrix<PrimeField> m(f_, rows_.size(), cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        m.at(r, c) = Fp::raw(rows_[r][c], mod_.p);
    return m;
  }
  const std::vector<std::size_t>& pivot_columns() {
    finalize();
    return pivot_col_;
  }

 private:
  // dst += c * src, entries reduced mod p, starting at column `from`.
  void axpy(std::vector<std::uint32_t>& dst,
            const std::vector<std::uint32_t>& src, std::uint32_t c,
            std::size_t from) {
    for (std::size_t k = from; k < cols_; ++k) {
      if (src[k] == 0) continue;
      dst[k] = mod_.reduce(dst[k] + std::uint64_t(c) * src[k]);
    }
  }

  std::optional<std::size_t> insert_scratch() {
    finalized_ = false;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (scratch_[j] == 0) continue;
      int pr = pivot_row_[j];
      if (pr < 0) {
        std::uint32_t inv = Fp::raw(scratch_[j], mod_.p).inverse().value();
        for (std::size_t k = j; k < cols_; ++k)
          scratch_[k] = mod_.reduce(std::uint64_t(inv) * scratch_[k]);
        pivot_row_[j] = static_cast<int>(rows_.size());
        rows_.push_back(scratch_);
        pivot_col_.push_back(j);
        return j;
      }
      axpy(scratch_, rows_[pr], mod_.p - scratch_[j], j);
    }
    return std::nullopt;
  }

  PrimeField f_;
  detail::Mod32 mod_;
  std::size_t cols_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<int> pivot_row_;
  std::vector<std::uint32_t> scratch_;
  bool finalized_ = true;
};

template <FieldType F>
std::pair<Matrix<F>, std::size_t> rref(const Matrix<F>& m) {
  RowReducer<F> red(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.insert(m.row(r));
  Matrix<F> echelon = red.to_matrix();
  std::size_t rank = red.rank();
  // Pad with zero rows to preserve the input shape.
  Matrix<F> out(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < echelon.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = echelon.at(r, c);
  return {out, rank};
}

// Subspace of F^ambient, stored as a canonical RREF basis so that equality of
// subspaces is equality of representations.
template <FieldType F>
class Subspace {
 public:
  Subspace(const F& f, std::size_t ambient)
      : f_(f), ambient_(ambient), basis_(f, 0, ambient) {}

  static Subspace from_vectors(const F& f, std::size_t ambient,
                               const std::vector<Vec<F>>& gens) {
    RowReducer<F> red(f, ambient);
    for (const auto& g : gens) red.insert(g);
    Subspace s(f, ambient);
    s.basis_ = red.to_matrix();
    return s;
  }
  static Subspace full(const F& f, std::size_t ambient) {
    Subspace s(f, ambient);
    s.basis_ = Matrix<F>::identity(f, ambient);
    return s;
  }
  static Subspace from_rref(Matrix<F> m) {
    Subspace s(m.field(), m.cols());
    s.basis_ = std::move(m);
    return s;
  }

  const F& field() const { return f_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<F>& basis() const { return basis_; }
  Vec<F> basis_vector(std::size_t i) const { return basis_.row(i); }

  // Reduce v against the basis; returns the residual.
  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
      std::size_t pc = pivot_of_row(r);
      if (v[pc].is_zero()) continue;
      typename F::Element c = v[pc];
      for (std::size_t k = pc; k < ambient_; ++k)
        v[k] = v[k] - c * basis_.at(r, k);
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return vec_is_zero(reduce(v)); }
  bool contains(const Subspace& other) const {
    for (std::size_t r = 0; r < other.basis_.rows(); ++r)
      if (!contains(other.basis_.row(r))) return false;
    return true;
  }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  // Coordinates of v in the RREF basis, if v lies in the subspace.
  std::optional<Vec<F>> coordinates_of(const Vec<F>& v) const {
    Vec<F> coords;
    coords.reserve(basis_.rows());
    for (std::size_t r = 0; r < basis_.rows(); ++r)
      coords.push_back(v[pivot_of_row(r)]);
    // RREF basis rows have unit pivots and zeros at other pivots, so the
    // pivot coordinates are the only candidate combination.
    Vec<F> residual = v;
    for (std::size_t r = 0; r < basis_.rows(); ++r)
      if (!coords[r].is_zero())
        residual = vec_sub(residual, vec_scale(coords[r], basis_.row(r)));
    if (!vec_is_zero(residual)) return std::nullopt;
    return coords;
  }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    a.check(b);
    RowReducer<F> red(a.f_, a.ambient_);
    for (std::size_t r = 0; r < a.basis_.rows(); ++r) red.insert(a.basis_.row(r));
    for (std::size_t r = 0; r < b.basis_.rows(); ++r) red.insert(b.basis_.row(r));
    Subspace s(a.f_, a.ambient_);
    s.basis_ = red.to_matrix();
    return s;
  }

  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check(b);
    // Solve alpha^T A = beta^T B: kernel of the stacked transposed system.
    std::size_t ra = a.dim(), rb = b.dim();
    Matrix<F> sys(a.f_, a.ambient_, ra + rb);
    for (std::size_t i = 0; i < a.ambient_; ++i) {
      for (std::size_t r = 0; r < ra; ++r) sys.at(i, r) = a.basis_.at(r, i);
      for (std::size_t r = 0; r < rb; ++r)
        sys.at(i, ra + r) = a.f_.zero() - b.basis_.at(r, i);
    }
    Subspace ker = kernel_basis(sys);
    std::vector<Vec<F>> gens;
    for (std::size_t r = 0; r < ker.dim(); ++r) {
      Vec<F> coef = ker.basis_vector(r);
      Vec<F> v = zero_vec(a.f_, a.ambient_);
      for (std::size_t i = 0; i < ra; ++i)
        if (!coef[i].is_zero())
          v = vec_add(v, vec_scale(coef[i], a.basis_.row(i)));
      gens.push_back(std::move(v));
    }
    return from_vectors(a.f_, a.ambient_, gens);
  }

 private:
  std::size_t pivot_of_row(std::size_t r) const {
    for (std::size_t c = 0; c < ambient_; ++c)
      if (!basis_.at(r, c).is_zero()) return c;
    throw Error("zero row in subspace basis");
  }
  void check(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw Error("ambient dimension mismatch");
  }

  F f_;
  std::size_t ambient_;
  Matrix<F> basis_;
};

// Basis of the right kernel {v : M v = 0}, returned as a canonical subspace.
template <FieldType F>
Subspace<F> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  RowReducer<F> red(f, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.insert(m.row(r));
  Matrix<F> R = red.to_matrix();
  const auto& pivots = red.pivot_columns();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec<F>> gens;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    Vec<F> v = zero_vec(f, m.cols());
    v[c] = f.one();
    for (std::size_t r = 0; r < R.rows(); ++r)
      v[pivots[r]] = f.zero() - R.at(r, c);
    gens.push_back(std::move(v));
  }
  return Subspace<F>::from_vectors(f, m.cols(), gens);
}

// Inverse of a square matrix, or nullopt when singular.
template <FieldType F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw Error("inverse requires a square matrix");
  const F& f = m.field();
  std::size_t n = m.rows();
  Matrix<F> aug(f, n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = f.one();
  }
  RowReducer<F> red(f, 2 * n);
  for (std::size_t r = 0; r < n; ++r) red.insert(aug.row(r));
  Matrix<F> R = red.to_matrix();
  const auto& pivots = red.pivot_columns();
  if (pivots.size() != n) return std::nullopt;
  for (std::size_t r = 0; r < n; ++r)
    if (pivots[r] != r) return std::nullopt;
  Matrix<F> inv(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = R.at(r, n + c);
  return inv;
}

// One exact solution of M x = b, or nullopt when inconsistent.
template <FieldType F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b) {
  if (b.size() != m.rows()) throw Error("solve shape mismatch");
  const F& f = m.field();
  Matrix<F> aug(f, m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  RowReducer<F> red(f, m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) red.insert(aug.row(r));
  Matrix<F> R = red.to_matrix();
  const auto& pivots = red.pivot_columns();
  for (std::size_t p : pivots)
    if (p == m.cols()) return std::nullopt;
  Vec<F> x = zero_vec(f, m.cols());
  for (std::size_t r = 0; r < R.rows(); ++r) x[pivots[r]] = R.at(r, m.cols());
  return x;
}

}  // namespace mg2
