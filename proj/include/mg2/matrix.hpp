#pragma once

#include <cstddef>
#include <vector>

#include "mg2/fields.hpp"

namespace mg2 {

template <FieldType F>
using Vec = std::vector<typename F::Element>;

// Dense row-major matrix over an exact field. Immutable use is the norm;
// mutation happens only through at() during construction.
template <FieldType F>
class Matrix {
 public:
  using Elt = typename F::Element;

  Matrix(const F& f, std::size_t rows, std::size_t cols)
      : f_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

  static Matrix identity(const F& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }
  static Matrix from_rows(const F& f, const std::vector<Vec<F>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows[0].size();
    Matrix m(f, rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != nc) throw Error("ragged row list");
      for (std::size_t c = 0; c < nc; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
  }
  static Matrix from_columns(const F& f, const std::vector<Vec<F>>& cols) {
    std::size_t nr = cols.empty() ? 0 : cols[0].size();
    Matrix m(f, nr, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != nr) throw Error("ragged column list");
      for (std::size_t r = 0; r < nr; ++r) m.at(r, c) = cols[c][r];
    }
    return m;
  }

  const F& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elt& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Elt& at(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  Vec<F> row(std::size_t r) const {
    Vec<F> v(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
    return v;
  }
  Vec<F> col(std::size_t c) const {
    Vec<F> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
    return v;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + b.a_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - b.a_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    Matrix r(a.f_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Elt& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
      }
    return r;
  }
  Matrix scaled(const Elt& s) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = x * s;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  Matrix transpose() const {
    Matrix r(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Matrix pow(std::uint64_t e) const {
    if (rows_ != cols_) throw Error("matrix power requires a square matrix");
    Matrix acc = identity(f_, rows_);
    Matrix base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  Elt trace() const {
    Elt t = f_.zero();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = t + at(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Vec<F> apply(const Vec<F>& x) const {
    if (x.size() != cols_) throw Error("matrix apply shape mismatch");
    Vec<F> y(rows_, f_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (at(i, j).is_zero() || x[j].is_zero()) continue;
        y[i] = y[i] + at(i, j) * x[j];
      }
    return y;
  }

  // Row-major flattening, used to treat operators as vectors.
  Vec<F> flatten() const { return a_; }
  static Matrix unflatten(const F& f, std::size_t rows, std::size_t cols,
                          const Vec<F>& data) {
    if (data.size() != rows * cols) throw Error("unflatten size mismatch");
    Matrix m(f, rows, cols);
    m.a_ = data;
    return m;
  }

 private:
  void check_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error("matrix shape mismatch");
  }
  F f_;
  std::size_t rows_, cols_;
  std::vector<Elt> a_;
};

template <FieldType F>
Vec<F> zero_vec(const F& f, std::size_t n) {
  return Vec<F>(n, f.zero());
}

template <FieldType F>
Vec<F> unit_vec(const F& f, std::size_t n, std::size_t i) {
  Vec<F> v(n, f.zero());
  v[i] = f.one();
  return v;
}

template <class E>
std::vector<E> vec_add(const std::vector<E>& a, const std::vector<E>& b) {
  std::vector<E> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

template <class E>
std::vector<E> vec_sub(const std::vector<E>& a, const std::vector<E>& b) {
  std::vector<E> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

template <class E>
std::vector<E> vec_scale(const E& s, const std::vector<E>& a) {
  std::vector<E> r = a;
  for (auto& x : r) x = s * x;
  return r;
}

template <class E>
bool vec_is_zero(const std::vector<E>& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace mg2
