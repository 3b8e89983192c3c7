#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mg2/algebra.hpp"

namespace mg2 {

// Derivations d of a structure-constant algebra: the kernel of the Leibniz
// system d(b_i b_j) - d(b_i) b_j - b_i d(b_j) = 0, one equation per (i,j,k),
// with d an unknown n x n matrix flattened row-major.
template <FieldType F>
struct DerivationAlgebra {
  Subspace<F> space;                   // subspace of the n^2 matrix space
  std::vector<Matrix<F>> basis_mats;   // the RREF basis, unflattened
  StructureTable<F> bracket;           // commutator table on that basis
};

template <FieldType F>
Subspace<F> derivation_space(const StructureTable<F>& t) {
  const F& f = t.field();
  std::size_t n = t.dim();
  RowReducer<F> red(f, n * n);
  Vec<F> row(n * n, f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<F> prod = t.basis_product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        for (auto& x : row) x = f.zero();
        // d(b_i b_j) contributes d[k][l] * c(i,j,l).
        for (std::size_t l = 0; l < n; ++l) {
          if (!prod[l].is_zero()) row[k * n + l] = row[k * n + l] + prod[l];
        }
        // -d(b_i) b_j contributes -d[l][i] c(l,j,k).
        for (std::size_t l = 0; l < n; ++l) {
          const auto& c = t.at(l, j, k);
          if (!c.is_zero()) row[l * n + i] = row[l * n + i] - c;
        }
        // -b_i d(b_j) contributes -d[l][j] c(i,l,k).
        for (std::size_t l = 0; l < n; ++l) {
          const auto& c = t.at(i, l, k);
          if (!c.is_zero()) row[l * n + j] = row[l * n + j] - c;
        }
        red.insert(row);
      }
    }
  // Kernel of the accumulated system.
  Matrix<F> R = red.to_matrix();
  return kernel_basis(R);
}

template <FieldType F>
StructureTable<F> commutator_table_on(const Subspace<F>& space,
                                      const std::vector<Matrix<F>>& mats) {
  const F& f = space.field();
  std::size_t m = mats.size();
  StructureTable<F> bracket(f, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Matrix<F> lie = mats[a] * mats[b] - mats[b] * mats[a];
      auto coords = space.coordinates_of(lie.flatten());
      if (!coords) throw Error("commutator left the span");
      for (std::size_t k = 0; k < m; ++k) bracket.at(a, b, k) = (*coords)[k];
    }
  return bracket;
}

template <FieldType F>
DerivationAlgebra<F> derivation_algebra(const StructureTable<F>& t) {
  const F& f = t.field();
  std::size_t n = t.dim();
  Subspace<F> space = derivation_space(t);
  std::vector<Matrix<F>> mats;
  mats.reserve(space.dim());
  for (std::size_t r = 0; r < space.dim(); ++r)
    mats.push_back(Matrix<F>::unflatten(f, n, n, space.basis_vector(r)));
  StructureTable<F> bracket = commutator_table_on(space, mats);
  return {std::move(space), std::move(mats), std::move(bracket)};
}

template <FieldType F>
bool is_derivation(const StructureTable<F>& t, const Matrix<F>& d) {
  std::size_t n = t.dim();
  const F& f = t.field();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<F> lhs = d.apply(t.basis_product(i, j));
      Vec<F> rhs = vec_add(
          t.multiply(d.col(i), unit_vec(f, n, j)),
          t.multiply(unit_vec(f, n, i), d.col(j)));
      if (lhs != rhs) return false;
    }
  return true;
}

// D_{x,y} = ad_{[x,y]} + [ad_x, ad_y] with ad_x(z) = xz - zx.
template <FieldType F>
Matrix<F> inner_derivation(const StructureTable<F>& t, const Vec<F>& x,
                           const Vec<F>& y) {
  Matrix<F> adx = t.ad_of(x);
  Matrix<F> ady = t.ad_of(y);
  return t.ad_of(t.commutator(x, y)) + adx * ady - ady * adx;
}

// Span of pairwise brackets of the given subspaces.
template <FieldType F>
Subspace<F> bracket_span(const StructureTable<F>& t, const Subspace<F>& a,
                         const Subspace<F>& b) {
  std::vector<Vec<F>> gens;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      gens.push_back(t.multiply(a.basis_vector(i), b.basis_vector(j)));
  return Subspace<F>::from_vectors(t.field(), t.dim(), gens);
}

// L^(0) = L, L^(k+1) = [L^(k), L^(k)].
template <FieldType F>
Subspace<F> derived_power(const StructureTable<F>& t, std::size_t k) {
  Subspace<F> s = Subspace<F>::full(t.field(), t.dim());
  for (std::size_t step = 0; step < k; ++step) s = bracket_span(t, s, s);
  return s;
}

template <FieldType F>
std::vector<std::size_t> derived_series_dims(const StructureTable<F>& t,
                                             std::size_t max_steps = 16) {
  std::vector<std::size_t> dims;
  Subspace<F> s = Subspace<F>::full(t.field(), t.dim());
  dims.push_back(s.dim());
  for (std::size_t step = 0; step < max_steps; ++step) {
    Subspace<F> next = bracket_span(t, s, s);
    dims.push_back(next.dim());
    if (next.dim() == s.dim()) break;
    s = std::move(next);
  }
  return dims;
}

// {x : x b_j = 0 for all j}; for anticommutative tables this is the center.
template <FieldType F>
Subspace<F> center(const StructureTable<F>& t) {
  const F& f = t.field();
  std::size_t n = t.dim();
  Matrix<F> sys(f, n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        sys.at(j * n + k, i) = t.at(i, j, k);
  return kernel_basis(sys);
}

// {x : x s = 0 for all s in S}.
template <FieldType F>
Subspace<F> centralizer(const StructureTable<F>& t, const Subspace<F>& s) {
  const F& f = t.field();
  std::size_t n = t.dim();
  std::size_t m = s.dim();
  Matrix<F> sys(f, m * n, n);
  for (std::size_t a = 0; a < m; ++a) {
    Vec<F> sv = s.basis_vector(a);
    for (std::size_t i = 0; i < n; ++i) {
      Vec<F> prod = t.multiply(unit_vec(f, n, i), sv);
      for (std::size_t k = 0; k < n; ++k) sys.at(a * n + k, i) = prod[k];
    }
  }
  return kernel_basis(sys);
}

template <FieldType F>
bool is_ideal(const StructureTable<F>& t, const Subspace<F>& s) {
  const F& f = t.field();
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t a = 0; a < s.dim(); ++a) {
      if (!s.contains(t.multiply(unit_vec(f, t.dim(), i), s.basis_vector(a))))
        return false;
      if (!s.contains(t.multiply(s.basis_vector(a), unit_vec(f, t.dim(), i))))
        return false;
    }
  return true;
}

// Smallest subspace containing the seeds and closed under left bracketing by
// all basis elements (two-sided for anticommutative tables).
template <FieldType F>
Subspace<F> ideal_closure(const StructureTable<F>& t,
                          const std::vector<Vec<F>>& seeds) {
  const F& f = t.field();
  std::size_t n = t.dim();
  RowReducer<F> red(f, n);
  std::vector<Vec<F>> frontier;
  for (const auto& v : seeds)
    if (red.insert(v)) frontier.push_back(v);
  while (!frontier.empty() && red.rank() < n) {
    std::vector<Vec<F>> next;
    for (const auto& v : frontier) {
      for (std::size_t i = 0; i < n; ++i) {
        Vec<F> w = t.multiply(unit_vec(f, n, i), v);
        if (red.insert(w)) next.push_back(std::move(w));
        if (red.rank() == n) break;
      }
      if (red.rank() == n) break;
    }
    frontier = std::move(next);
  }
  return Subspace<F>::from_rref(red.to_matrix());
}

enum class Simplicity { Simple, NotSimple, Undecided };

template <FieldType F>
struct SimplicityResult {
  Simplicity status = Simplicity::Undecided;
  std::string note;
  std::optional<Vec<F>> witness_seed;      // spins to a proper nonzero ideal
  std::optional<Subspace<F>> witness_ideal;
  std::uint64_t points_spun = 0;
};

// Exhaustive simplicity certificate for anticommutative algebras over a prime
// field: spins one representative per projective point (first nonzero
// coordinate 1, lexicographic) and requires every closure to be everything.
// Never sampled; out-of-bounds inputs come back Undecided.
template <FieldType F>
SimplicityResult<F> is_simple(const StructureTable<F>& t,
                              std::uint64_t max_points = 1000000) {
  SimplicityResult<F> res;
  if constexpr (F::is_rational_function_field) {
    res.note = "enumeration requires a prime field";
    return res;
  } else {
    const F& f = t.field();
    std::size_t n = t.dim();
    std::uint64_t p = f.characteristic();
    // (p^n - 1) / (p - 1) projective points, with overflow-safe bounding.
    std::uint64_t points = 0, power = 1;
    for (std::size_t i = 0; i < n; ++i) {
      points += power;
      if (points > max_points || power > max_points) {
        res.note = "projective point bound exceeded";
        return res;
      }
      power *= p;
    }
    // Abelian algebras are not simple by convention here.
    bool nonabelian = false;
    for (std::size_t i = 0; i < n && !nonabelian; ++i)
      for (std::size_t j = 0; j < n && !nonabelian; ++j)
        if (!vec_is_zero(t.basis_product(i, j))) nonabelian = true;
    if (!nonabelian || n == 0) {
      res.status = Simplicity::NotSimple;
      res.note = "abelian";
      return res;
    }
    for (std::size_t lead = 0; lead < n; ++lead) {
      std::uint64_t count = 1;
      for (std::size_t i = lead + 1; i < n; ++i) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        // Representative: leading 1 at `lead`, free digits of idx after it.
        Vec<F> v(n, f.zero());
        v[lead] = f.one();
        std::uint64_t x = idx;
        for (std::size_t i = n; i-- > lead + 1;) {
          v[i] = f.from_int(static_cast<std::int64_t>(x % p));
          x /= p;
        }
        Subspace<F> closure = ideal_closure(t, {v});
        ++res.points_spun;
        if (closure.dim() != n) {
          res.status = Simplicity::NotSimple;
          res.witness_seed = v;
          res.witness_ideal = closure;
          return res;
        }
      }
    }
    res.status = Simplicity::Simple;
    return res;
  }
}

// Structure table of a bracket-closed subspace, in its RREF basis.
template <FieldType F>
StructureTable<F> subalgebra_table(const StructureTable<F>& t,
                                   const Subspace<F>& s) {
  std::size_t m = s.dim();
  StructureTable<F> out(t.field(), m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Vec<F> prod = t.multiply(s.basis_vector(a), s.basis_vector(b));
      auto coords = s.coordinates_of(prod);
      if (!coords) throw Error("subspace is not closed under the product");
      for (std::size_t k = 0; k < m; ++k) out.at(a, b, k) = (*coords)[k];
    }
  return out;
}

template <FieldType F>
struct QuotientResult {
  StructureTable<F> table;
  Matrix<F> projection;                    // (n - dim I) x n
  std::vector<std::size_t> complement_cols;
};

// Quotient by a verified ideal. The complement basis is the set of standard
// coordinate vectors away from the ideal's pivot columns.
template <FieldType F>
QuotientResult<F> quotient(const StructureTable<F>& t, const Subspace<F>& ideal) {
  if (!is_ideal(t, ideal)) throw Error("quotient requires an ideal");
  const F& f = t.field();
  std::size_t n = t.dim();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < ideal.dim(); ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (!ideal.basis().at(r, c).is_zero()) {
        is_pivot[c] = true;
        break;
      }
  }
  std::vector<std::size_t> comp;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) comp.push_back(c);
  std::size_t m = comp.size();
  // Projection: reduce mod the ideal, then read off complement coordinates.
  Matrix<F> proj(f, m, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec<F> red = ideal.reduce(unit_vec(f, n, j));
    for (std::size_t a = 0; a < m; ++a) proj.at(a, j) = red[comp[a]];
  }
  StructureTable<F> table(f, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Vec<F> prod = t.multiply(unit_vec(f, n, comp[a]), unit_vec(f, n, comp[b]));
      Vec<F> red = ideal.reduce(prod);
      for (std::size_t k = 0; k < m; ++k) table.at(a, b, k) = red[comp[k]];
    }
  return {std::move(table), std::move(proj), std::move(comp)};
}

// kappa(x, y) = trace(ad_x ad_y) on the basis.
template <FieldType F>
Matrix<F> killing_form(const StructureTable<F>& t) {
  std::size_t n = t.dim();
  const F& f = t.field();
  std::vector<Matrix<F>> ads;
  ads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ads.push_back(t.ad_basis(i));
  Matrix<F> kappa(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      typename F::Element tr = f.zero();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (ads[i].at(a, b).is_zero() || ads[j].at(b, a).is_zero()) continue;
          tr = tr + ads[i].at(a, b) * ads[j].at(b, a);
        }
      kappa.at(i, j) = tr;
      kappa.at(j, i) = tr;
    }
  return kappa;
}

// Killing form evaluated on a list of elements (kappa restricted to a span).
template <FieldType F>
Matrix<F> killing_restricted(const StructureTable<F>& t,
                             const std::vector<Vec<F>>& vectors) {
  Matrix<F> kappa = killing_form(t);
  const F& f = t.field();
  std::size_t m = vectors.size();
  Matrix<F> out(f, m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      typename F::Element s = f.zero();
      for (std::size_t i = 0; i < t.dim(); ++i) {
        if (vectors[a][i].is_zero()) continue;
        for (std::size_t j = 0; j < t.dim(); ++j)
          if (!vectors[b][j].is_zero())
            s = s + vectors[a][i] * kappa.at(i, j) * vectors[b][j];
      }
      out.at(a, b) = s;
    }
  return out;
}

}  // namespace mg2
