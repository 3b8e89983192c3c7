#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mg2/linalg.hpp"

namespace mg2 {

// Finite-dimensional algebra given by structure constants:
// basis[i] * basis[j] = sum_k constant(i,j,k) basis[k].
template <FieldType F>
class StructureTable {
 public:
  using Elt = typename F::Element;

  StructureTable(const F& f, std::size_t dim)
      : f_(f), dim_(dim), c_(dim * dim * dim, f.zero()) {}

  const F& field() const { return f_; }
  std::size_t dim() const { return dim_; }

  Elt& at(std::size_t i, std::size_t j, std::size_t k) {
    return c_[(i * dim_ + j) * dim_ + k];
  }
  const Elt& at(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  std::optional<std::size_t> unit_index() const { return unit_index_; }
  void set_unit_index(std::size_t u) {
    for (std::size_t i = 0; i < dim_; ++i) {
      Vec<F> left = multiply(unit_vec(f_, dim_, u), unit_vec(f_, dim_, i));
      Vec<F> right = multiply(unit_vec(f_, dim_, i), unit_vec(f_, dim_, u));
      if (left != unit_vec(f_, dim_, i) || right != unit_vec(f_, dim_, i))
        throw Error("declared unit index is not a two-sided unit");
    }
    unit_index_ = u;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != dim_) throw Error("label count mismatch");
    labels_ = std::move(labels);
  }

  Vec<F> basis_product(std::size_t i, std::size_t j) const {
    Vec<F> v(dim_, f_.zero());
    for (std::size_t k = 0; k < dim_; ++k) v[k] = at(i, j, k);
    return v;
  }

  // Bilinear extension of the structure constants.
  Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const {
    if (x.size() != dim_ || y.size() != dim_)
      throw Error("vector dimension mismatch in multiply");
    Vec<F> r(dim_, f_.zero());
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j].is_zero()) continue;
        Elt xy = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k) {
          const Elt& ct = at(i, j, k);
          if (!ct.is_zero()) r[k] = r[k] + xy * ct;
        }
      }
    }
    return r;
  }

  Vec<F> commutator(const Vec<F>& x, const Vec<F>& y) const {
    return vec_sub(multiply(x, y), multiply(y, x));
  }

  // Matrix of z -> x z - z x.
  Matrix<F> ad_of(const Vec<F>& x) const {
    Matrix<F> m(f_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      Vec<F> col = commutator(x, unit_vec(f_, dim_, j));
      for (std::size_t k = 0; k < dim_; ++k) m.at(k, j) = col[k];
    }
    return m;
  }
  Matrix<F> ad_basis(std::size_t i) const {
    return ad_of(unit_vec(f_, dim_, i));
  }

  // Matrix of z -> x z (left multiplication).
  Matrix<F> left_mult(const Vec<F>& x) const {
    Matrix<F> m(f_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          const Elt& ct = at(i, j, k);
          if (!ct.is_zero()) m.at(k, j) = m.at(k, j) + x[i] * ct;
        }
    }
    return m;
  }
  Matrix<F> right_mult(const Vec<F>& x) const {
    Matrix<F> m(f_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (x[j].is_zero()) continue;
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
          const Elt& ct = at(i, j, k);
          if (!ct.is_zero()) m.at(k, i) = m.at(k, i) + x[j] * ct;
        }
    }
    return m;
  }

  // Structure table in the basis given by the columns of P.
  StructureTable base_change(const Matrix<F>& p_cols) const {
    if (p_cols.rows() != dim_ || p_cols.cols() != dim_)
      throw Error("base change matrix shape mismatch");
    StructureTable out(f_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        Vec<F> prod = multiply(p_cols.col(i), p_cols.col(j));
        auto coords = solve(p_cols, prod);
        if (!coords) throw Error("base change matrix is singular");
        for (std::size_t k = 0; k < dim_; ++k) out.at(i, j, k) = (*coords)[k];
      }
    return out;
  }

 private:
  F f_;
  std::size_t dim_;
  std::vector<Elt> c_;
  std::optional<std::size_t> unit_index_;
  std::vector<std::string> labels_;
};

// Representation data: one operator per algebra basis element.
template <FieldType F>
struct ModuleAction {
  StructureTable<F> algebra;
  std::vector<Matrix<F>> operators;

  std::size_t module_dim() const {
    return operators.empty() ? 0 : operators[0].rows();
  }
  // Operator of an algebra element given by coordinates.
  Matrix<F> operator_of(const Vec<F>& x) const {
    Matrix<F> m(algebra.field(), module_dim(), module_dim());
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].is_zero()) m = m + operators[i].scaled(x[i]);
    return m;
  }
};

// Degrees in Z^r, one per basis element.
struct Grading {
  std::size_t group_rank = 0;
  std::vector<std::vector<std::int64_t>> degrees;
};

template <FieldType F>
struct IdentityCheck {
  bool holds = true;
  std::vector<std::size_t> witness;  // basis indices of the failing tuple
  Vec<F> value;                      // value of the defect at the witness
};

template <FieldType F>
IdentityCheck<F> check_anticommutative(const StructureTable<F>& t) {
  const F& f = t.field();
  std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec<F> defect =
          i == j ? t.basis_product(i, i)
                 : vec_add(t.basis_product(i, j), t.basis_product(j, i));
      if (!vec_is_zero(defect)) return {false, {i, j}, defect};
    }
  return {true, {}, zero_vec(f, n)};
}

template <FieldType F>
Vec<F> jacobian(const StructureTable<F>& t, const Vec<F>& x, const Vec<F>& y,
                const Vec<F>& z) {
  Vec<F> a = t.multiply(t.multiply(x, y), z);
  Vec<F> b = t.multiply(t.multiply(y, z), x);
  Vec<F> c = t.multiply(t.multiply(z, x), y);
  return vec_add(vec_add(a, b), c);
}

template <FieldType F>
IdentityCheck<F> check_jacobi(const StructureTable<F>& t) {
  std::size_t n = t.dim();
  const F& f = t.field();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        Vec<F> J = jacobian(t, unit_vec(f, n, i), unit_vec(f, n, j),
                            unit_vec(f, n, k));
        if (!vec_is_zero(J)) return {false, {i, j, k}, J};
      }
  return {true, {}, zero_vec(f, n)};
}

// Malcev defect M(x,y,z) = J(x,y,xz) - J(x,y,z)x for an anticommutative
// product (written with the Jacobian J). The identity is quadratic in x, so
// the exhaustive check runs the linearization in x over basis quadruples plus
// the diagonal over basis triples.
template <FieldType F>
Vec<F> malcev_defect(const StructureTable<F>& t, const Vec<F>& x,
                     const Vec<F>& w, const Vec<F>& y, const Vec<F>& z) {
  Vec<F> lhs = vec_add(jacobian(t, x, y, t.multiply(w, z)),
                       jacobian(t, w, y, t.multiply(x, z)));
  Vec<F> rhs = vec_add(t.multiply(jacobian(t, x, y, z), w),
                       t.multiply(jacobian(t, w, y, z), x));
  return vec_sub(lhs, rhs);
}

template <FieldType F>
IdentityCheck<F> check_malcev(const StructureTable<F>& t) {
  std::size_t n = t.dim();
  const F& f = t.field();
  auto e = [&](std::size_t i) { return unit_vec(f, n, i); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec<F> diag = malcev_defect(t, e(i), e(i), e(j), e(k));
        // Diagonal instance equals 2 M(e_i, e_j, e_k); checked separately so
        // characteristic 2 is covered as well.
        Vec<F> m = vec_sub(jacobian(t, e(i), e(j), t.multiply(e(i), e(k))),
                           t.multiply(jacobian(t, e(i), e(j), e(k)), e(i)));
        if (!vec_is_zero(m)) return {false, {i, i, j, k}, m};
        if (!vec_is_zero(diag)) return {false, {i, i, j, k}, diag};
        for (std::size_t l = i + 1; l < n; ++l) {
          Vec<F> d = malcev_defect(t, e(i), e(l), e(j), e(k));
          if (!vec_is_zero(d)) return {false, {i, l, j, k}, d};
        }
      }
  return {true, {}, zero_vec(f, n)};
}

enum class AlgebraIdentity { Anticommutative, Jacobi, Malcev };

template <FieldType F>
IdentityCheck<F> check_identity(const StructureTable<F>& t,
                                AlgebraIdentity which) {
  switch (which) {
    case AlgebraIdentity::Anticommutative:
      return check_anticommutative(t);
    case AlgebraIdentity::Jacobi:
      return check_jacobi(t);
    case AlgebraIdentity::Malcev:
      return check_malcev(t);
  }
  throw Error("unknown identity");
}

template <FieldType F>
struct HomomorphismCheck {
  bool multiplicative = true;
  bool injective = false;
  bool surjective = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// f(x_i x_j) = f(x_i) f(x_j) for all basis pairs; the map is given as a
// target_dim x source_dim matrix.
template <FieldType F>
HomomorphismCheck<F> check_homomorphism(const Matrix<F>& map,
                                        const StructureTable<F>& src,
                                        const StructureTable<F>& dst) {
  if (map.cols() != src.dim() || map.rows() != dst.dim())
    throw Error("homomorphism shape mismatch");
  HomomorphismCheck<F> res;
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j) {
      Vec<F> lhs = map.apply(src.basis_product(i, j));
      Vec<F> rhs = dst.multiply(map.col(i), map.col(j));
      if (lhs != rhs) {
        res.multiplicative = false;
        res.witness = {i, j};
        std::size_t rank = rref(map).second;
        res.injective = rank == src.dim();
        res.surjective = rank == dst.dim();
        return res;
      }
    }
  std::size_t rank = rref(map).second;
  res.injective = rank == src.dim();
  res.surjective = rank == dst.dim();
  return res;
}

template <FieldType F>
struct RepresentationCheck {
  bool valid = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// rho([x_i, x_j]) = [rho(x_i), rho(x_j)] on all basis pairs, brackets taken in
// the given structure table.
template <FieldType F>
RepresentationCheck<F> check_representation(const ModuleAction<F>& act) {
  std::size_t n = act.algebra.dim();
  if (act.operators.size() != n) throw Error("operator count mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<F> lhs = act.operator_of(act.algebra.basis_product(i, j));
      Matrix<F> rhs = act.operators[i] * act.operators[j] -
                      act.operators[j] * act.operators[i];
      if (!(lhs == rhs)) return {false, {{i, j}}};
    }
  return {true, std::nullopt};
}

// rho(x_i)^p = rho(x_i^[p]) where the p-mapping images are given as algebra
// coordinate vectors.
template <FieldType F>
RepresentationCheck<F> verify_p_mapping(const ModuleAction<F>& act,
                                        const std::vector<Vec<F>>& pmap) {
  std::size_t n = act.algebra.dim();
  if (pmap.size() != n) throw Error("p-mapping image count mismatch");
  std::uint32_t p = act.algebra.field().characteristic();
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<F> lhs = act.operators[i].pow(p);
    Matrix<F> rhs = act.operator_of(pmap[i]);
    if (!(lhs == rhs)) return {false, {{i, i}}};
  }
  return {true, std::nullopt};
}

struct GradingCheck {
  bool ok = true;
  std::vector<std::vector<std::int64_t>> support;  // sorted, deduplicated
  std::optional<std::array<std::size_t, 3>> witness;
};

// constants(i,j,k) != 0 implies deg(k) = deg(i) + deg(j).
template <FieldType F>
GradingCheck verify_grading(const StructureTable<F>& t, const Grading& g) {
  if (g.degrees.size() != t.dim()) throw Error("grading degree count mismatch");
  GradingCheck res;
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      for (std::size_t k = 0; k < t.dim(); ++k) {
        if (t.at(i, j, k).is_zero()) continue;
        for (std::size_t r = 0; r < g.group_rank; ++r) {
          if (g.degrees[k][r] != g.degrees[i][r] + g.degrees[j][r]) {
            res.ok = false;
            res.witness = {{i, j, k}};
            return res;
          }
        }
      }
  res.support = g.degrees;
  std::sort(res.support.begin(), res.support.end());
  res.support.erase(std::unique(res.support.begin(), res.support.end()),
                    res.support.end());
  return res;
}

}  // namespace mg2
