#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mg2/cayley.hpp"

namespace mg2 {

// Homogeneous binary form of degree n: coefficients of x^(n-i) y^i.
template <FieldType F>
struct BinaryForm {
  int degree = 0;
  Vec<F> coeffs;  // degree + 1 entries

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.degree == b.degree && a.coeffs == b.coeffs;
  }
};

template <FieldType F>
BinaryForm<F> monomial_form(const F& f, int degree, int i) {
  BinaryForm<F> r{degree, zero_vec(f, degree + 1)};
  r.coeffs[i] = f.one();
  return r;
}

template <FieldType F>
BinaryForm<F> form_add(const BinaryForm<F>& a, const BinaryForm<F>& b) {
  if (a.degree != b.degree) throw Error("form degree mismatch");
  return {a.degree, vec_add(a.coeffs, b.coeffs)};
}
template <FieldType F>
BinaryForm<F> form_sub(const BinaryForm<F>& a, const BinaryForm<F>& b) {
  if (a.degree != b.degree) throw Error("form degree mismatch");
  return {a.degree, vec_sub(a.coeffs, b.coeffs)};
}
template <FieldType F>
BinaryForm<F> form_scale(const typename F::Element& s, const BinaryForm<F>& a) {
  return {a.degree, vec_scale(s, a.coeffs)};
}

namespace detail {

// Falling factorial n (n-1) ... (n-k+1) as a field element.
template <FieldType F>
typename F::Element falling(const F& f, int n, int k) {
  typename F::Element r = f.one();
  for (int s = 0; s < k; ++s) r = r * f.from_int(n - s);
  return r;
}

// Mixed partial d^s/dx^s d^u/dy^u of a degree-n form.
template <FieldType F>
BinaryForm<F> form_derivative(const F& f, const BinaryForm<F>& a, int s,
                              int u) {
  int out_deg = a.degree - s - u;
  if (out_deg < 0) throw Error("derivative order exceeds degree");
  BinaryForm<F> r{out_deg, zero_vec(f, out_deg + 1)};
  for (int i = 0; i <= a.degree; ++i) {
    int xdeg = a.degree - i;
    if (xdeg < s || i < u) continue;
    typename F::Element coeff =
        falling(f, xdeg, s) * falling(f, i, u) * a.coeffs[i];
    r.coeffs[i - u] = r.coeffs[i - u] + coeff;
  }
  return r;
}

template <FieldType F>
BinaryForm<F> form_multiply(const F& f, const BinaryForm<F>& a,
                            const BinaryForm<F>& b) {
  BinaryForm<F> r{a.degree + b.degree, zero_vec(f, a.degree + b.degree + 1)};
  for (int i = 0; i <= a.degree; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (int j = 0; j <= b.degree; ++j)
      r.coeffs[i + j] = r.coeffs[i + j] + a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

}  // namespace detail

// q-transvectant of binary forms: the alternating sum of products of order-q
// mixed partials, with prefactor 1/(falling(deg f, q) falling(deg g, q)).
// Requires both degrees below the characteristic so the prefactor inverts.
template <FieldType F>
BinaryForm<F> transvectant(const F& f, const BinaryForm<F>& a,
                           const BinaryForm<F>& b, int q) {
  std::uint32_t p = f.characteristic();
  if (a.degree >= static_cast<int>(p) || b.degree >= static_cast<int>(p))
    throw Error("transvectant rejected: degree >= characteristic");
  if (q > a.degree || q > b.degree)
    throw Error("transvectant order exceeds a degree");
  int out_deg = a.degree + b.degree - 2 * q;
  BinaryForm<F> acc{out_deg, zero_vec(f, out_deg + 1)};
  typename F::Element binom = f.one();
  for (int r = 0; r <= q; ++r) {
    BinaryForm<F> da = detail::form_derivative(f, a, q - r, r);
    BinaryForm<F> db = detail::form_derivative(f, b, r, q - r);
    typename F::Element sign =
        (r % 2 == 0) ? f.one() : f.zero() - f.one();
    acc = form_add(acc,
                   form_scale(sign * binom, detail::form_multiply(f, da, db)));
    // C(q, r+1) = C(q, r) (q - r) / (r + 1).
    binom = binom * f.from_int(q - r) / f.from_int(r + 1);
  }
  typename F::Element denom =
      detail::falling(f, a.degree, q) * detail::falling(f, b.degree, q);
  if (denom.is_zero()) throw Error("transvectant prefactor not invertible");
  return form_scale(f.one() / denom, acc);
}

// c(i, j) = 2 (j - i)(4i + j - 1)(4j + i - 1) with i, j taken mod 7.
template <FieldType F>
typename F::Element c_coeff(const F& f, std::int64_t i, std::int64_t j) {
  if (f.characteristic() != 7) throw Error("c(i,j) lives in characteristic 7");
  i = ((i % 7) + 7) % 7;
  j = ((j % 7) + 7) % 7;
  return f.from_int(2) * f.from_int(j - i) * f.from_int(4 * i + j - 1) *
         f.from_int(4 * j + i - 1);
}

// Multiplication m_i . m_j = c(i,j) m_{i+j-3 mod 7} on V6; construction
// cross-checks every entry against the 3-transvectant.
template <FieldType F>
StructureTable<F> v6_product_table(const F& f) {
  if (f.characteristic() != 7)
    throw Error("V6 product table requires characteristic 7");
  StructureTable<F> t(f, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      typename F::Element c = c_coeff(f, i, j);
      if (!c.is_zero()) t.at(i, j, ((i + j - 3) % 7 + 7) % 7) = c;
    }
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      BinaryForm<F> tr = transvectant(f, monomial_form(f, 6, i),
                                      monomial_form(f, 6, j), 3);
      if (tr.coeffs != t.basis_product(i, j))
        throw Error("V6 table disagrees with the 3-transvectant");
    }
  t.set_labels({"m0", "m1", "m2", "m3", "m4", "m5", "m6"});
  return t;
}

// (i+j+4k+1) c(i,j) = (i+4k+4) c(i+k,j) + (j+4k+4) c(i,j+k) over all of F7^3.
// The coefficient function is injectable so corrupted tables are detectable.
template <FieldType F>
bool cij_recursion_holds(
    const F& f,
    const std::function<typename F::Element(std::int64_t, std::int64_t)>& c) {
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        typename F::Element lhs = f.from_int(i + j + 4 * k + 1) * c(i, j);
        typename F::Element rhs = f.from_int(i + 4 * k + 4) * c(i + k, j) +
                                  f.from_int(j + 4 * k + 4) * c(i, j + k);
        if (lhs != rhs) return false;
      }
  return true;
}

template <FieldType F>
bool check_cij_recursion(const F& f) {
  return cij_recursion_holds<F>(
      f, [&](std::int64_t i, std::int64_t j) { return c_coeff(f, i, j); });
}

// Dixmier model of the split Cayley algebra on basis {1, m0, ..., m6}:
// (a 1 + f)(b 1 + g) = (ab + (f,g)_6) 1 + (a g + b f + f.g).
template <FieldType F>
CayleyAlgebra<F> dixmier_cayley(const F& f) {
  StructureTable<F> v6 = v6_product_table(f);
  StructureTable<F> t(f, 8);
  t.at(0, 0, 0) = f.one();
  for (int i = 0; i < 7; ++i) {
    t.at(0, 1 + i, 1 + i) = f.one();
    t.at(1 + i, 0, 1 + i) = f.one();
    for (int j = 0; j < 7; ++j) {
      BinaryForm<F> s = transvectant(f, monomial_form(f, 6, i),
                                     monomial_form(f, 6, j), 6);
      t.at(1 + i, 1 + j, 0) = s.coeffs[0];
      Vec<F> prod = v6.basis_product(i, j);
      for (int k = 0; k < 7; ++k) t.at(1 + i, 1 + j, 1 + k) = prod[k];
    }
  }
  t.set_labels({"1", "m0", "m1", "m2", "m3", "m4", "m5", "m6"});
  t.set_unit_index(0);
  Vec<F> unit = unit_vec(f, 8, 0);
  return {std::move(t), std::move(unit), CayleyBasis::Dixmier};
}

// Explicit isomorphism from the Dixmier model to the good basis:
// 1 -> p1+p2, m0 -> -3 v3, m1 -> 3 u2, m2 -> 3 u1, m3 -> -p1+p2,
// m4 -> -3 v1, m5 -> -3 v2, m6 -> 3 u3. Columns are images.
template <FieldType F>
Matrix<F> explicit_good_basis_iso(const F& f) {
  if (f.characteristic() != 7) throw Error("iso requires characteristic 7");
  Matrix<F> psi(f, 8, 8);
  enum { P1, P2, U1, U2, U3, V1, V2, V3 };
  auto set = [&](std::size_t col, std::size_t row, std::int64_t v) {
    psi.at(row, col) = f.from_int(v);
  };
  set(0, P1, 1);
  set(0, P2, 1);
  set(1, V3, -3);
  set(2, U2, 3);
  set(3, U1, 3);
  set(4, P1, -1);
  set(4, P2, 1);
  set(5, V1, -3);
  set(6, V2, -3);
  set(7, U3, 3);
  return psi;
}

template <FieldType F>
struct WittAlgebra {
  StructureTable<F> table;          // basis e_{-1}, ..., e_{p-2}
  std::vector<Vec<F>> p_mapping;    // e_i^[p] = delta_{i,0} e_i
};

// Witt algebra W1 = Der(F[X]/(X^p)): [e_i, e_j] = (j - i) e_{i+j}, with
// e_k = 0 outside -1 <= k <= p-2.
template <FieldType F>
WittAlgebra<F> witt_algebra(const F& f) {
  std::uint32_t p = f.characteristic();
  if (p != 5 && p != 7 && p != 11 && p != 13)
    throw Error("Witt algebra supported for characteristic 5, 7, 11, 13");
  int n = static_cast<int>(p);
  StructureTable<F> t(f, n);
  for (int i = -1; i <= n - 2; ++i)
    for (int j = -1; j <= n - 2; ++j) {
      int s = i + j;
      if (s < -1 || s > n - 2) continue;
      t.at(i + 1, j + 1, s + 1) = f.from_int(j - i);
    }
  std::vector<std::string> labels;
  for (int i = -1; i <= n - 2; ++i) labels.push_back("e" + std::to_string(i));
  t.set_labels(std::move(labels));
  std::vector<Vec<F>> pmap;
  for (int i = -1; i <= n - 2; ++i)
    pmap.push_back(i == 0 ? unit_vec(f, n, 1) : zero_vec(f, n));
  return {std::move(t), std::move(pmap)};
}

template <FieldType F>
Subspace<F> sl2_inside(const WittAlgebra<F>& w) {
  const F& f = w.table.field();
  std::size_t n = w.table.dim();
  return Subspace<F>::from_vectors(
      f, n, {unit_vec(f, n, 0), unit_vec(f, n, 1), unit_vec(f, n, 2)});
}

enum class WittActionVariant { Polynomial, Circle };

// Action of the Witt basis on V6 in characteristic 7:
//   polynomial: e_k(m_i) = (i + 4k + 4) m_{i+k} when 0 <= i+k <= 6, else 0;
//   circle:     f_k(m_i) = (i + 4k + 4) m_{(i+k) mod 7}.
template <FieldType F>
ModuleAction<F> witt_action_on_v6(const F& f, WittActionVariant variant) {
  if (f.characteristic() != 7)
    throw Error("V6 action requires characteristic 7");
  WittAlgebra<F> w = witt_algebra(f);
  std::vector<Matrix<F>> ops;
  for (int k = -1; k <= 5; ++k) {
    Matrix<F> op(f, 7, 7);
    for (int i = 0; i <= 6; ++i) {
      typename F::Element coeff = f.from_int(i + 4 * k + 4);
      if (coeff.is_zero()) continue;
      int target = i + k;
      if (variant == WittActionVariant::Polynomial) {
        if (target < 0 || target > 6) continue;
      } else {
        target = ((target % 7) + 7) % 7;
      }
      op.at(target, i) = coeff;
    }
    ops.push_back(std::move(op));
  }
  return {std::move(w.table), std::move(ops)};
}

// Extends a V6 operator to the eight-dimensional Dixmier model by zero on the
// unit coordinate.
template <FieldType F>
Matrix<F> extend_to_dixmier(const Matrix<F>& op) {
  const F& f = op.field();
  Matrix<F> out(f, 8, 8);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) out.at(1 + i, 1 + j) = op.at(i, j);
  return out;
}

// The seven Witt basis images inside Der of the split Cayley algebra, as
// combinations of inner derivations D_{x,y} of the good basis. The raw
// combinations below close under bracket only up to a global factor of 4;
// the quarter normalization makes them satisfy [E_i, E_j] = (j-i) E_{i+j}
// exactly and coincide with the transport of the V6 action through the
// explicit isomorphism.
template <FieldType F>
std::vector<Matrix<F>> witt_embedding_der(const F& f) {
  if (f.characteristic() != 7)
    throw Error("Witt embedding requires characteristic 7");
  CayleyAlgebra<F> c = split_cayley(f);
  const StructureTable<F>& t = c.table;
  enum { P1, P2, U1, U2, U3, V1, V2, V3 };
  auto e = [&](std::size_t i) { return unit_vec(f, std::size_t{8}, i); };
  Vec<F> h = vec_sub(e(P1), e(P2));
  auto D = [&](const Vec<F>& x, const Vec<F>& y) {
    return inner_derivation(t, x, y);
  };
  std::vector<Matrix<F>> img;
  img.push_back(D(h, e(U1)) + D(e(U2), e(V1)));
  img.push_back(D(e(U3), e(V3)).scaled(f.from_int(2)) +
                D(e(U2), e(V2)).scaled(f.from_int(3)));
  img.push_back(D(h, e(V1)) + D(e(U1), e(V2)));
  img.push_back(D(e(U1), e(U3)).scaled(f.from_int(3)));
  img.push_back(D(e(V1), e(V2)).scaled(f.from_int(-1)));
  img.push_back(D(e(V1), e(U3)).scaled(f.from_int(3)));
  img.push_back(D(e(V2), e(U3)).scaled(f.from_int(5)));
  typename F::Element quarter = f.one() / f.from_int(4);
  for (auto& m : img) m = m.scaled(quarter);
  return img;
}

template <FieldType F>
struct TwistedWitt {
  typename F::Element alpha;
  StructureTable<F> table;   // basis f_{-1}, ..., f_5 with f_{k+7} = alpha f_k
  ModuleAction<F> v6_action;  // on m_0..m_6 with m_{i+7} = alpha m_i
};

template <FieldType F>
TwistedWitt<F> twisted_witt(const F& f, const typename F::Element& alpha) {
  if (f.characteristic() != 7)
    throw Error("twisted Witt algebra requires characteristic 7");
  if (alpha.is_zero()) throw Error("twist parameter must be nonzero");
  StructureTable<F> t(f, 7);
  for (int i = -1; i <= 5; ++i)
    for (int j = -1; j <= 5; ++j) {
      typename F::Element coeff = f.from_int(j - i);
      if (coeff.is_zero()) continue;
      int s = i + j;
      if (s >= -1 && s <= 5) {
        t.at(i + 1, j + 1, s + 1) = coeff;
      } else if (s >= 6) {
        t.at(i + 1, j + 1, s - 7 + 1) = coeff * alpha;
      }
    }
  std::vector<std::string> labels;
  for (int i = -1; i <= 5; ++i) labels.push_back("f" + std::to_string(i));
  t.set_labels(std::move(labels));
  std::vector<Matrix<F>> ops;
  for (int k = -1; k <= 5; ++k) {
    Matrix<F> op(f, 7, 7);
    for (int i = 0; i <= 6; ++i) {
      typename F::Element coeff = f.from_int(i + 4 * k + 4);
      if (coeff.is_zero()) continue;
      int target = i + k;
      if (target >= 0 && target <= 6)
        op.at(target, i) = coeff;
      else if (target >= 7)
        op.at(target - 7, i) = coeff * alpha;
      else
        throw Error("negative index with nonzero coefficient");
    }
    ops.push_back(std::move(op));
  }
  ModuleAction<F> action{t, std::move(ops)};
  return {alpha, std::move(t), std::move(action)};
}

template <FieldType F>
struct VermaModule {
  std::uint32_t lambda = 0;
  ModuleAction<F> action;
  std::vector<Vec<F>> p_mapping;
};

// p-dimensional module L(lambda) for the Witt algebra:
// e_k(m_j) = (j + (lambda+1)(k+1)) m_{k+j}, m out of range = 0.
template <FieldType F>
VermaModule<F> verma_module(const F& f, std::uint32_t lambda) {
  WittAlgebra<F> w = witt_algebra(f);
  std::uint32_t p = f.characteristic();
  if (lambda > p - 1) throw Error("weight out of range");
  int n = static_cast<int>(p);
  std::vector<Matrix<F>> ops;
  for (int k = -1; k <= n - 2; ++k) {
    Matrix<F> op(f, n, n);
    for (int j = 0; j <= n - 1; ++j) {
      int target = j + k;
      if (target < 0 || target > n - 1) continue;
      op.at(target, j) =
          f.from_int(j + std::int64_t(lambda + 1) * (k + 1));
    }
    ops.push_back(std::move(op));
  }
  return {lambda, {std::move(w.table), std::move(ops)}, std::move(w.p_mapping)};
}

// (p-1)-dimensional quotient L(p-1)/<m_0>: with lambda = p-1 the coefficient
// reduces to j, and m_0 spans a submodule.
template <FieldType F>
ModuleAction<F> quotient_l_pminus1(const F& f) {
  std::uint32_t p = f.characteristic();
  VermaModule<F> big = verma_module(f, p - 1);
  int n = static_cast<int>(p);
  std::vector<Matrix<F>> ops;
  for (auto& op : big.action.operators) {
    Matrix<F> q(f, n - 1, n - 1);
    for (int j = 1; j <= n - 1; ++j)
      for (int i = 1; i <= n - 1; ++i) q.at(i - 1, j - 1) = op.at(i, j);
    ops.push_back(std::move(q));
  }
  return {std::move(big.action.algebra), std::move(ops)};
}

template <FieldType F>
struct InvariantProductSpace {
  std::size_t dim = 0;
  std::vector<Vec<F>> basis;  // flattened tensors T[c][a][b]
};

// Bilinear products T on the module with x(T(u,v)) = T(xu, v) + T(u, xv) for
// all x in the acting algebra: the kernel of a (dim L * m^2 * m) x m^3 system
// with unknowns T[c][a][b] (coefficient of basis c in T(m_a, m_b)).
template <FieldType F>
InvariantProductSpace<F> invariant_product_space(const ModuleAction<F>& act,
                                                 std::size_t max_unknowns =
                                                     10000) {
  const F& f = act.algebra.field();
  std::size_t m = act.module_dim();
  std::size_t unknowns = m * m * m;
  if (unknowns > max_unknowns)
    throw Error("invariant product system exceeds the unknown bound (" +
                std::to_string(unknowns) + " > " +
                std::to_string(max_unknowns) + ")");
  auto tindex = [m](std::size_t c, std::size_t a, std::size_t b) {
    return (c * m + a) * m + b;
  };
  RowReducer<F> red(f, unknowns);
  // Sparse columns of each operator: op[.][col].
  std::size_t nops = act.operators.size();
  std::vector<std::vector<std::vector<std::pair<std::size_t,
                                                typename F::Element>>>>
      col_entries(nops);
  for (std::size_t k = 0; k < nops; ++k) {
    col_entries[k].resize(m);
    for (std::size_t col = 0; col < m; ++col)
      for (std::size_t row = 0; row < m; ++row)
        if (!act.operators[k].at(row, col).is_zero())
          col_entries[k][col].push_back({row, act.operators[k].at(row, col)});
  }
  std::vector<std::pair<std::size_t, typename F::Element>> entries;
  bool full = false;
  for (std::size_t k = 0; k < nops && !full; ++k) {
    for (std::size_t a = 0; a < m && !full; ++a)
      for (std::size_t b = 0; b < m && !full; ++b)
        for (std::size_t cc = 0; cc < m; ++cc) {
          entries.clear();
          // rho(x) applied to the output coordinate: sum_d rho[cc][d] T[d][a][b]
          for (std::size_t d = 0; d < m; ++d) {
            const auto& v = act.operators[k].at(cc, d);
            if (!v.is_zero()) entries.push_back({tindex(d, a, b), v});
          }
          // -T(rho(x) m_a, m_b)
          for (const auto& [row, v] : col_entries[k][a])
            entries.push_back({tindex(cc, row, b), f.zero() - v});
          // -T(m_a, rho(x) m_b)
          for (const auto& [row, v] : col_entries[k][b])
            entries.push_back({tindex(cc, a, row), f.zero() - v});
          if (entries.empty()) continue;
          if constexpr (std::is_same_v<F, PrimeField>) {
            red.insert_sparse(entries);
          } else {
            Vec<F> row(unknowns, f.zero());
            for (const auto& [idx, v] : entries) row[idx] = row[idx] + v;
            red.insert(row);
          }
          if (red.rank() == unknowns) {
            full = true;
            break;
          }
        }
  }
  InvariantProductSpace<F> out;
  if (full) return out;  // kernel is zero
  Subspace<F> ker = kernel_basis(red.to_matrix());
  out.dim = ker.dim();
  for (std::size_t r = 0; r < ker.dim(); ++r)
    out.basis.push_back(ker.basis_vector(r));
  return out;
}

// ((f,g)_3, g)_3 = (1/20) ((f,g)_6 g - (g,g)_6 f) on all monomial pairs and
// the requested number of random pairs.
template <FieldType F>
bool check_fgg_identity(const F& f, std::size_t trials, Rng& rng) {
  if (f.characteristic() < 7) throw Error("identity requires p >= 7");
  typename F::Element inv20 = f.one() / f.from_int(20);
  auto holds = [&](const BinaryForm<F>& a, const BinaryForm<F>& b) {
    BinaryForm<F> lhs = transvectant(f, transvectant(f, a, b, 3), b, 3);
    typename F::Element ab6 = transvectant(f, a, b, 6).coeffs[0];
    typename F::Element bb6 = transvectant(f, b, b, 6).coeffs[0];
    BinaryForm<F> rhs =
        form_scale(inv20, form_sub(form_scale(ab6, b), form_scale(bb6, a)));
    return lhs == rhs;
  };
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      if (!holds(monomial_form(f, 6, i), monomial_form(f, 6, j))) return false;
  for (std::size_t s = 0; s < trials; ++s) {
    BinaryForm<F> a{6, zero_vec(f, 7)}, b{6, zero_vec(f, 7)};
    for (int i = 0; i <= 6; ++i) {
      a.coeffs[i] = random_element(f, rng);
      b.coeffs[i] = random_element(f, rng);
    }
    if (!holds(a, b)) return false;
  }
  return true;
}

template <FieldType F>
struct WittConjugation {
  Matrix<F> phi;              // automorphism of the split Cayley algebra
  std::size_t intertwiner_dim = 0;
  typename F::Element mu;
};

// Conjugates the standard embedded Witt subalgebra onto the given one. The
// input is a Witt basis (seven derivations of the split Cayley algebra in the
// good basis, indexed -1..5, satisfying the Witt bracket relations). The
// returned phi satisfies phi E_k phi^{-1} = tilde_e_k exactly.
template <FieldType F>
WittConjugation<F> witt_conjugator(const F& f,
                                   const std::vector<Matrix<F>>& tilde) {
  if (tilde.size() != 7) throw Error("expected seven Witt basis derivations");
  CayleyAlgebra<F> c = split_cayley(f);
  // Precondition: derivations satisfying the Witt relations.
  for (const auto& d : tilde)
    if (!is_derivation(c.table, d))
      throw Error("input is not made of derivations");
  for (int i = -1; i <= 5; ++i)
    for (int j = -1; j <= 5; ++j) {
      Matrix<F> lhs = tilde[i + 1] * tilde[j + 1] - tilde[j + 1] * tilde[i + 1];
      Matrix<F> rhs(f, 8, 8);
      int s = i + j;
      if (s >= -1 && s <= 5) rhs = tilde[s + 1].scaled(f.from_int(j - i));
      if (!(lhs == rhs)) throw Error("input does not satisfy Witt brackets");
    }
  QuadraticData<F> qd = quadratic_data(c);
  Subspace<F> c0 = trace_zero_subspace(c, qd);
  // Restrictions to the trace-zero subspace.
  std::vector<Matrix<F>> restricted;
  for (const auto& d : tilde) {
    Matrix<F> r(f, 7, 7);
    for (std::size_t col = 0; col < 7; ++col) {
      Vec<F> img = d.apply(c0.basis_vector(col));
      auto coords = c0.coordinates_of(img);
      if (!coords) throw Error("input does not preserve the trace-zero space");
      for (std::size_t row = 0; row < 7; ++row) r.at(row, col) = (*coords)[row];
    }
    restricted.push_back(std::move(r));
  }
  ModuleAction<F> std_act = witt_action_on_v6(f, WittActionVariant::Polynomial);
  // Intertwiners T with restricted_k T = T A_k for all k.
  Matrix<F> sys(f, 7 * 49, 49);
  std::size_t eq = 0;
  for (std::size_t k = 0; k < 7; ++k) {
    for (std::size_t r = 0; r < 7; ++r)
      for (std::size_t ccol = 0; ccol < 7; ++ccol) {
        for (std::size_t d = 0; d < 7; ++d) {
          sys.at(eq, d * 7 + ccol) =
              sys.at(eq, d * 7 + ccol) + restricted[k].at(r, d);
          sys.at(eq, r * 7 + d) =
              sys.at(eq, r * 7 + d) - std_act.operators[k].at(d, ccol);
        }
        ++eq;
      }
  }
  Subspace<F> inter = kernel_basis(sys);
  WittConjugation<F> out{Matrix<F>(f, 8, 8), inter.dim(), f.zero()};
  if (inter.dim() != 1)
    throw Error("input not a Witt subalgebra acting irreducibly: intertwiner "
                "dimension " +
                std::to_string(inter.dim()));
  Matrix<F> T = Matrix<F>::unflatten(f, 7, 7, inter.basis_vector(0));
  // Ambient images x_i of the module basis.
  std::vector<Vec<F>> x;
  for (std::size_t i = 0; i < 7; ++i) {
    Vec<F> amb = zero_vec(f, 8);
    for (std::size_t r = 0; r < 7; ++r)
      if (!T.at(r, i).is_zero())
        amb = vec_add(amb, vec_scale(T.at(r, i), c0.basis_vector(r)));
    x.push_back(std::move(amb));
  }
  // Half-bracket of images must be mu c(i,j) x_{i+j-3} for a single scalar.
  typename F::Element half = f.one() / f.from_int(2);
  std::optional<typename F::Element> mu;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      Vec<F> w = vec_scale(half, c.table.commutator(x[i], x[j]));
      typename F::Element cij = c_coeff(f, i, j);
      if (cij.is_zero()) {
        if (!vec_is_zero(w))
          throw Error("images do not reproduce the V6 product pattern");
        continue;
      }
      const Vec<F>& target = x[((i + j - 3) % 7 + 7) % 7];
      std::size_t pos = 0;
      while (pos < 8 && target[pos].is_zero()) ++pos;
      if (pos == 8) throw Error("degenerate intertwiner image");
      typename F::Element ratio = w[pos] / (cij * target[pos]);
      if (w != vec_scale(ratio * cij, target))
        throw Error("images do not reproduce the V6 product pattern");
      if (!mu)
        mu = ratio;
      else if (*mu != ratio)
        throw Error("product scalar is not well defined");
    }
  if (!mu) throw Error("no nonzero products to normalize against");
  out.mu = *mu;
  typename F::Element scale = f.one() / *mu;
  // phi: 1 -> 1, m_i -> (1/mu) x_i, expressed against the explicit iso.
  Matrix<F> theta(f, 8, 8);
  for (std::size_t r = 0; r < 8; ++r) theta.at(r, 0) = c.unit[r];
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t r = 0; r < 8; ++r)
      theta.at(r, 1 + i) = scale * x[i][r];
  Matrix<F> psi = explicit_good_basis_iso(f);
  auto psi_inv = inverse(psi);
  if (!psi_inv) throw Error("explicit isomorphism matrix is singular");
  out.phi = theta * (*psi_inv);
  // Certify: phi is an automorphism conjugating the standard embedding.
  auto hom = check_homomorphism(out.phi, c.table, c.table);
  if (!hom.multiplicative || !hom.injective || !hom.surjective)
    throw Error("constructed map is not an automorphism");
  auto phi_inv = inverse(out.phi);
  std::vector<Matrix<F>> standard = witt_embedding_der(f);
  for (std::size_t k = 0; k < 7; ++k) {
    Matrix<F> conj = out.phi * standard[k] * (*phi_inv);
    if (!(conj == tilde[k]))
      throw Error("conjugation does not match the target basis");
  }
  return out;
}

}  // namespace mg2
