#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mg2/algkit.hpp"
#include "mg2/rng.hpp"

namespace mg2 {

enum class CayleyBasis { GoodBasis, Dixmier, Doubled };

template <FieldType F>
struct CayleyAlgebra {
  StructureTable<F> table;
  Vec<F> unit;
  CayleyBasis basis_kind;
};

// Split Cayley algebra in the good basis p1, p2, u1, u2, u3, v1, v2, v3.
// The unit is p1 + p2.
template <FieldType F>
CayleyAlgebra<F> split_cayley(const F& f) {
  enum { P1, P2, U1, U2, U3, V1, V2, V3 };
  StructureTable<F> t(f, 8);
  struct Entry {
    int i, j, k, sign;
  };
  static constexpr std::array<Entry, 32> kGoodBasis{{
      {P1, P1, P1, 1},  {P1, U1, U1, 1},  {P1, U2, U2, 1},  {P1, U3, U3, 1},
      {P2, P2, P2, 1},  {P2, V1, V1, 1},  {P2, V2, V2, 1},  {P2, V3, V3, 1},
      {U1, P2, U1, 1},  {U1, U2, V3, 1},  {U1, U3, V2, -1}, {U1, V1, P1, -1},
      {U2, P2, U2, 1},  {U2, U1, V3, -1}, {U2, U3, V1, 1},  {U2, V2, P1, -1},
      {U3, P2, U3, 1},  {U3, U1, V2, 1},  {U3, U2, V1, -1}, {U3, V3, P1, -1},
      {V1, P1, V1, 1},  {V1, U1, P2, -1}, {V1, V2, U3, 1},  {V1, V3, U2, -1},
      {V2, P1, V2, 1},  {V2, U2, P2, -1}, {V2, V1, U3, -1}, {V2, V3, U1, 1},
      {V3, P1, V3, 1},  {V3, U3, P2, -1}, {V3, V1, U2, 1},  {V3, V2, U1, -1},
  }};
  for (const auto& e : kGoodBasis)
    t.at(e.i, e.j, e.k) = f.from_int(e.sign);
  t.set_labels({"p1", "p2", "u1", "u2", "u3", "v1", "v2", "v3"});
  Vec<F> unit = zero_vec(f, 8);
  unit[P1] = f.one();
  unit[P2] = f.one();
  return {std::move(t), std::move(unit), CayleyBasis::GoodBasis};
}

// Trace, norm and polar data recovered from the multiplication alone: each x
// with {1, x} independent satisfies x^2 = t(x) x - q(x) 1 with unique
// coefficients, and b_q(x, y) = t(x) t(y) - t(xy). Works in characteristic 2.
template <FieldType F>
struct QuadraticData {
  Vec<F> trace_on_basis;
  Vec<F> norm_on_basis;
  Matrix<F> polar;

  typename F::Element trace_of(const Vec<F>& x) const {
    typename F::Element s = x[0] - x[0];
    for (std::size_t i = 0; i < x.size(); ++i)
      s = s + trace_on_basis[i] * x[i];
    return s;
  }
  typename F::Element polar_of(const Vec<F>& x, const Vec<F>& y) const {
    typename F::Element s = x[0] - x[0];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.size(); ++j)
        if (!y[j].is_zero()) s = s + x[i] * polar.at(i, j) * y[j];
    }
    return s;
  }
  // q(sum x_i b_i) = sum x_i^2 q(b_i) + sum_{i<j} x_i x_j b_q(b_i, b_j).
  typename F::Element norm_of(const Vec<F>& x) const {
    typename F::Element s = x[0] - x[0];
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].is_zero()) continue;
      s = s + x[i] * x[i] * norm_on_basis[i];
      for (std::size_t j = i + 1; j < x.size(); ++j)
        if (!x[j].is_zero()) s = s + x[i] * x[j] * polar.at(i, j);
    }
    return s;
  }
};

template <FieldType F>
QuadraticData<F> quadratic_data(const CayleyAlgebra<F>& c) {
  const F& f = c.table.field();
  std::size_t n = c.table.dim();
  QuadraticData<F> qd{zero_vec(f, n), zero_vec(f, n), Matrix<F>(f, n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    Vec<F> x = unit_vec(f, n, i);
    Vec<F> sq = c.table.multiply(x, x);
    // Solve sq = t * x - q * unit.
    Matrix<F> sys(f, n, 2);
    for (std::size_t r = 0; r < n; ++r) {
      sys.at(r, 0) = x[r];
      sys.at(r, 1) = f.zero() - c.unit[r];
    }
    auto coeffs = solve(sys, sq);
    if (!coeffs) throw Error("not a degree-2 algebra element");
    // {1, x} dependent: x = lambda 1 has t = 2 lambda, q = lambda^2. The
    // system is then underdetermined, so handle the scalar case explicitly.
    std::size_t nz = 0, pos = 0;
    for (std::size_t r = 0; r < n; ++r)
      if (!c.unit[r].is_zero()) {
        ++nz;
        pos = r;
      }
    bool scalar = true;
    typename F::Element lambda = f.zero();
    // x is a multiple of the unit iff x = (x[pos]/unit[pos]) * unit.
    lambda = x[pos] / c.unit[pos];
    for (std::size_t r = 0; r < n; ++r)
      if (x[r] != lambda * c.unit[r]) {
        scalar = false;
        break;
      }
    (void)nz;
    if (scalar) {
      qd.trace_on_basis[i] = f.from_int(2) * lambda;
      qd.norm_on_basis[i] = lambda * lambda;
    } else {
      qd.trace_on_basis[i] = (*coeffs)[0];
      qd.norm_on_basis[i] = (*coeffs)[1];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<F> prod = c.table.multiply(unit_vec(f, n, i), unit_vec(f, n, j));
      qd.polar.at(i, j) = qd.trace_on_basis[i] * qd.trace_on_basis[j] -
                          qd.trace_of(prod);
    }
  return qd;
}

template <FieldType F>
Vec<F> conjugate(const CayleyAlgebra<F>& c, const QuadraticData<F>& qd,
                 const Vec<F>& x) {
  return vec_sub(vec_scale(qd.trace_of(x), c.unit), x);
}

template <FieldType F>
Subspace<F> trace_zero_subspace(const CayleyAlgebra<F>& c,
                                const QuadraticData<F>& qd) {
  const F& f = c.table.field();
  Matrix<F> row(f, 1, c.table.dim());
  for (std::size_t i = 0; i < c.table.dim(); ++i)
    row.at(0, i) = qd.trace_on_basis[i];
  return kernel_basis(row);
}

template <FieldType F>
struct TraceZeroBracket {
  StructureTable<F> table;  // commutator on the trace-zero subspace
  Subspace<F> c0;
};

// [x, y] = xy - yx restricted to the trace-zero subspace; characteristic != 2.
template <FieldType F>
TraceZeroBracket<F> c0_bracket_algebra(const CayleyAlgebra<F>& c) {
  const F& f = c.table.field();
  if (f.characteristic() == 2)
    throw Error("trace-zero bracket algebra requires characteristic != 2");
  QuadraticData<F> qd = quadratic_data(c);
  Subspace<F> c0 = trace_zero_subspace(c, qd);
  std::size_t m = c0.dim();
  StructureTable<F> t(f, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Vec<F> br = c.table.commutator(c0.basis_vector(a), c0.basis_vector(b));
      auto coords = c0.coordinates_of(br);
      if (!coords) throw Error("commutator left the trace-zero subspace");
      for (std::size_t k = 0; k < m; ++k) t.at(a, b, k) = (*coords)[k];
    }
  return {std::move(t), std::move(c0)};
}

// Characteristic-2 quotient C0 / F1 with the induced alternating form and the
// descent of derivations to symplectic operators.
template <FieldType F>
struct CZeroModUnit {
  Subspace<F> c0;
  std::vector<Vec<F>> representatives;  // 6 coset representatives, ambient
  Matrix<F> form;                       // induced alternating 6x6 form
  Subspace<F> unit_line;

  Vec<F> project(const Vec<F>& x) const {
    // Coordinates in the representative basis after reducing mod F1.
    Vec<F> red = unit_line.reduce(x);
    auto coords = rep_space.coordinates_of(red);
    if (!coords) throw Error("vector not in the trace-zero subspace");
    return *coords;
  }
  Matrix<F> descend(const Matrix<F>& d) const {
    const F& f = form.field();
    Matrix<F> out(f, representatives.size(), representatives.size());
    for (std::size_t j = 0; j < representatives.size(); ++j) {
      Vec<F> img = d.apply(representatives[j]);
      Vec<F> coords = project(img);
      for (std::size_t i = 0; i < representatives.size(); ++i)
        out.at(i, j) = coords[i];
    }
    return out;
  }

  Subspace<F> rep_space;  // span of the reduced representatives
};

template <FieldType F>
CZeroModUnit<F> c0_mod_unit(const CayleyAlgebra<F>& c) {
  const F& f = c.table.field();
  if (f.characteristic() != 2)
    throw Error("c0 mod unit is a characteristic-2 construction");
  QuadraticData<F> qd = quadratic_data(c);
  Subspace<F> c0 = trace_zero_subspace(c, qd);
  if (!c0.contains(c.unit))
    throw Error("unit is not trace-zero; table is corrupted");
  Subspace<F> unit_line =
      Subspace<F>::from_vectors(f, c.table.dim(), {c.unit});
  // Representatives: trace-zero basis vectors whose reduction mod F1 stays
  // independent.
  RowReducer<F> red(f, c.table.dim());
  red.insert(c.unit);
  std::vector<Vec<F>> reps;
  for (std::size_t r = 0; r < c0.dim(); ++r) {
    Vec<F> v = c0.basis_vector(r);
    if (red.insert(v)) reps.push_back(v);
  }
  if (reps.size() != c0.dim() - 1) throw Error("quotient dimension mismatch");
  std::vector<Vec<F>> reduced;
  for (const auto& v : reps) reduced.push_back(unit_line.reduce(v));
  Subspace<F> rep_space =
      Subspace<F>::from_vectors(f, c.table.dim(), reduced);
  if (rep_space.dim() != reps.size())
    throw Error("quotient representative basis degenerate");
  CZeroModUnit<F> out{std::move(c0), {}, Matrix<F>(f, reps.size(), reps.size()),
                      std::move(unit_line), std::move(rep_space)};
  out.representatives = std::move(reps);
  for (std::size_t i = 0; i < out.representatives.size(); ++i)
    for (std::size_t j = 0; j < out.representatives.size(); ++j)
      out.form.at(i, j) =
          qd.polar_of(out.representatives[i], out.representatives[j]);
  // The induced form must be alternating and nondegenerate.
  for (std::size_t i = 0; i < out.representatives.size(); ++i)
    if (!out.form.at(i, i).is_zero())
      throw Error("induced form is not alternating");
  if (rref(out.form).second != out.representatives.size())
    throw Error("induced form is degenerate");
  return out;
}

// Split quaternion algebra (2x2 matrices) with basis p1=E11, p2=E22, u=E12,
// v=E21 and its standard involution x -> t(x) 1 - x.
template <FieldType F>
struct QuaternionData {
  StructureTable<F> table;
  Vec<F> unit;
  Matrix<F> involution;
};

template <FieldType F>
QuaternionData<F> split_quaternions(const F& f) {
  enum { P1, P2, U, V };
  StructureTable<F> t(f, 4);
  auto one = f.one();
  t.at(P1, P1, P1) = one;
  t.at(P2, P2, P2) = one;
  t.at(P1, U, U) = one;
  t.at(U, P2, U) = one;
  t.at(P2, V, V) = one;
  t.at(V, P1, V) = one;
  t.at(U, V, P1) = one;
  t.at(V, U, P2) = one;
  t.set_labels({"p1", "p2", "u", "v"});
  Vec<F> unit = zero_vec(f, 4);
  unit[P1] = one;
  unit[P2] = one;
  Matrix<F> inv(f, 4, 4);
  inv.at(P1, P2) = one;
  inv.at(P2, P1) = one;
  inv.at(U, U) = f.zero() - one;
  inv.at(V, V) = f.zero() - one;
  return {std::move(t), std::move(unit), std::move(inv)};
}

template <FieldType F>
struct CompositionCheck {
  bool ok = true;
  std::optional<std::pair<Vec<F>, Vec<F>>> witness;
  std::uint64_t seed = 0;
};

// q(xy) = q(x) q(y) on all basis pairs, all pairs of basis-pair sums, and the
// requested number of seeded random pairs.
template <FieldType F>
CompositionCheck<F> check_composition(const CayleyAlgebra<F>& c,
                                      const QuadraticData<F>& qd,
                                      std::size_t samples, Rng& rng,
                                      std::uint64_t seed = kDefaultSeed) {
  const F& f = c.table.field();
  std::size_t n = c.table.dim();
  CompositionCheck<F> res;
  res.seed = seed;
  auto verify = [&](const Vec<F>& x, const Vec<F>& y) {
    Vec<F> xy = c.table.multiply(x, y);
    if (qd.norm_of(xy) != qd.norm_of(x) * qd.norm_of(y)) {
      res.ok = false;
      res.witness = {x, y};
      return false;
    }
    return true;
  };
  std::vector<Vec<F>> pool;
  for (std::size_t i = 0; i < n; ++i) pool.push_back(unit_vec(f, n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pool.push_back(vec_add(unit_vec(f, n, i), unit_vec(f, n, j)));
  for (const auto& x : pool)
    for (const auto& y : pool)
      if (!verify(x, y)) return res;
  for (std::size_t s = 0; s < samples; ++s) {
    Vec<F> x(n, f.zero()), y(n, f.zero());
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = random_element(f, rng);
      y[i] = random_element(f, rng);
    }
    if (!verify(x, y)) return res;
  }
  return res;
}

// Cayley-Dickson double of a quaternion algebra: on Q + Q w,
// (a, b)(c, d) = (ac + mu conj(d) b, d a + b conj(c)).
template <FieldType F>
CayleyAlgebra<F> cayley_dickson_double(const QuaternionData<F>& q,
                                       const typename F::Element& mu) {
  const F& f = q.table.field();
  if (mu.is_zero()) throw Error("doubling parameter must be nonzero");
  if (q.table.dim() != 4) throw Error("doubling expects a quaternion table");
  std::size_t n = 8;
  StructureTable<F> t(f, n);
  auto emb = [&](const Vec<F>& a, const Vec<F>& b) {
    Vec<F> r = zero_vec(f, n);
    for (std::size_t i = 0; i < 4; ++i) {
      r[i] = a[i];
      r[4 + i] = b[i];
    }
    return r;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<F> a = zero_vec(f, 4), b = zero_vec(f, 4);
      Vec<F> c = zero_vec(f, 4), d = zero_vec(f, 4);
      (i < 4 ? a[i] : b[i - 4]) = f.one();
      (j < 4 ? c[j] : d[j - 4]) = f.one();
      Vec<F> first = vec_add(
          q.table.multiply(a, c),
          vec_scale(mu, q.table.multiply(q.involution.apply(d), b)));
      Vec<F> second = vec_add(q.table.multiply(d, a),
                              q.table.multiply(b, q.involution.apply(c)));
      Vec<F> prod = emb(first, second);
      for (std::size_t k = 0; k < n; ++k) t.at(i, j, k) = prod[k];
    }
  std::vector<std::string> labels;
  for (const auto& l : q.table.labels()) labels.push_back(l);
  for (const auto& l : q.table.labels()) labels.push_back(l + "w");
  t.set_labels(std::move(labels));
  CayleyAlgebra<F> out{std::move(t), emb(q.unit, zero_vec(f, 4)),
                       CayleyBasis::Doubled};
  // The double must still compose; reject parameters that break it.
  QuadraticData<F> qd = quadratic_data(out);
  Rng rng(kDefaultSeed);
  if (!check_composition(out, qd, 50, rng).ok)
    throw Error("doubled table fails the composition law");
  return out;
}

template <FieldType F>
struct IsotropicSearch {
  std::optional<Vec<F>> vector;
  bool exhaustive = false;
};

// Nonzero x with q(x) = 0. Exhaustive over prime fields with p^dim within
// bounds; over function fields only constant coordinates are searched, so a
// negative result is inconclusive.
template <FieldType F>
IsotropicSearch<F> find_isotropic_vector(const CayleyAlgebra<F>& c,
                                         const QuadraticData<F>& qd,
                                         std::uint64_t max_vectors = 6000000) {
  const F& f = c.table.field();
  std::size_t n = c.table.dim();
  std::uint32_t p = f.characteristic();
  std::uint64_t total = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i < n; ++i) {
    total *= p;
    if (total > max_vectors) {
      exhaustive = false;
      break;
    }
  }
  if constexpr (F::is_rational_function_field) exhaustive = false;
  std::uint64_t limit = exhaustive ? total : std::min<std::uint64_t>(
                                                 max_vectors, 1 << 16);
  Vec<F> x(n, f.zero());
  std::vector<std::uint32_t> digits(n, 0);
  for (std::uint64_t idx = 1; idx < limit; ++idx) {
    // Increment base-p odometer.
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
    for (std::size_t i = 0; i < n; ++i)
      x[i] = f.from_int(static_cast<std::int64_t>(digits[i]));
    if (qd.norm_of(x).is_zero()) return {x, exhaustive};
  }
  return {std::nullopt, exhaustive};
}

}  // namespace mg2
