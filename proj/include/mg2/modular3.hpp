#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mg2/cayley.hpp"

namespace mg2 {

namespace detail {

// sl_n basis: E_ij for i != j, then H_i = E_ii - E_{i+1,i+1}.
template <FieldType F>
std::vector<Matrix<F>> sl_basis(const F& f, std::size_t n) {
  std::vector<Matrix<F>> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Matrix<F> m(f, n, n);
      m.at(i, j) = f.one();
      basis.push_back(std::move(m));
    }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Matrix<F> m(f, n, n);
    m.at(i, i) = f.one();
    m.at(i + 1, i + 1) = f.zero() - f.one();
    basis.push_back(std::move(m));
  }
  return basis;
}

template <FieldType F>
std::vector<std::string> sl_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  for (std::size_t i = 0; i + 1 < n; ++i)
    labels.push_back("H" + std::to_string(i + 1));
  return labels;
}

}  // namespace detail

// Commutator structure table of sl_n in the standard basis.
template <FieldType F>
StructureTable<F> sl_algebra(const F& f, std::size_t n) {
  auto basis = detail::sl_basis(f, n);
  std::size_t dim = basis.size();
  Subspace<F> space = Subspace<F>::from_vectors(f, n * n, [&] {
    std::vector<Vec<F>> rows;
    for (const auto& b : basis) rows.push_back(b.flatten());
    return rows;
  }());
  if (space.dim() != dim) throw Error("sl basis degenerate");
  StructureTable<F> t(f, dim);
  Matrix<F> cols = Matrix<F>::from_columns(f, [&] {
    std::vector<Vec<F>> c;
    for (const auto& m : basis) c.push_back(m.flatten());
    return c;
  }());
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      Matrix<F> lie = basis[a] * basis[b] - basis[b] * basis[a];
      auto coords = solve(cols, lie.flatten());
      if (!coords) throw Error("commutator left sl_n");
      for (std::size_t k = 0; k < dim; ++k) t.at(a, b, k) = (*coords)[k];
    }
  t.set_labels(detail::sl_labels<F>(n));
  return t;
}

// Coordinates of the identity matrix in the sl_n basis (requires char | n).
template <FieldType F>
Vec<F> identity_in_sl_coords(const F& f, std::size_t n) {
  auto basis = detail::sl_basis(f, n);
  Matrix<F> cols = Matrix<F>::from_columns(f, [&] {
    std::vector<Vec<F>> c;
    for (const auto& m : basis) c.push_back(m.flatten());
    return c;
  }());
  auto coords = solve(cols, Matrix<F>::identity(f, n).flatten());
  if (!coords) throw Error("identity not in sl_n; characteristic must divide n");
  return *coords;
}

// psl_3 = sl_3 / <I_3> in characteristic 3 (dimension 7).
template <FieldType F>
QuotientResult<F> psl3(const F& f) {
  if (f.characteristic() != 3) throw Error("psl3 requires characteristic 3");
  StructureTable<F> sl3 = sl_algebra(f, 3);
  Subspace<F> centre = Subspace<F>::from_vectors(
      f, sl3.dim(), {identity_in_sl_coords(f, 3)});
  return quotient(sl3, centre);
}

// Derivations of the trace-zero algebra of the split Cayley algebra in
// characteristic 3, together with the inner ideal ad(C0).
struct Char3IdealStructure {
  bool restriction_identification = false;  // Der(C) = Der(C0) via restriction
  std::size_t der_dim = 0;
  std::size_t ideal_dim = 0;
  bool ideal_is_ideal = false;
  Simplicity ideal_simple = Simplicity::Undecided;
  std::size_t centralizer_dim = 0;
  std::size_t quotient_dim = 0;
  Simplicity quotient_simple = Simplicity::Undecided;
  bool ad_isomorphism = false;  // C0 -> ad(C0) bijective homomorphism
  bool ok = false;
};

template <FieldType F>
struct Char3DerData {
  TraceZeroBracket<F> c0;
  DerivationAlgebra<F> der;        // derivations of the 7-dim bracket algebra
  Subspace<F> inner;               // span of ad_x, x in C0
  StructureTable<F> inner_table;   // bracket table on the inner ideal
};

template <FieldType F>
Char3DerData<F> char3_der_data(const F& f) {
  CayleyAlgebra<F> c = split_cayley(f);
  TraceZeroBracket<F> c0 = c0_bracket_algebra(c);
  DerivationAlgebra<F> der = derivation_algebra(c0.table);
  std::vector<Vec<F>> ads;
  for (std::size_t i = 0; i < c0.table.dim(); ++i)
    ads.push_back(c0.table.ad_basis(i).flatten());
  Subspace<F> inner = Subspace<F>::from_vectors(f, 49, ads);
  // Bracket table of the inner ideal on its own basis.
  std::vector<Matrix<F>> mats;
  for (std::size_t r = 0; r < inner.dim(); ++r)
    mats.push_back(Matrix<F>::unflatten(f, 7, 7, inner.basis_vector(r)));
  StructureTable<F> inner_table = commutator_table_on(inner, mats);
  return {std::move(c0), std::move(der), std::move(inner),
          std::move(inner_table)};
}

template <FieldType F>
Char3IdealStructure ideal_structure_report(const F& f) {
  if (f.characteristic() != 3)
    throw Error("check requires characteristic 3");
  Char3IdealStructure rep;
  CayleyAlgebra<F> c = split_cayley(f);
  Char3DerData<F> data = char3_der_data(f);
  rep.der_dim = data.der.space.dim();
  rep.ideal_dim = data.inner.dim();
  // Identification of Der(C) with Der(C0) through restriction.
  DerivationAlgebra<F> der8 = derivation_algebra(c.table);
  std::vector<Vec<F>> restricted;
  bool identify = der8.space.dim() == rep.der_dim;
  for (std::size_t r = 0; identify && r < der8.basis_mats.size(); ++r) {
    const Matrix<F>& d = der8.basis_mats[r];
    if (!vec_is_zero(d.apply(c.unit))) {
      identify = false;
      break;
    }
    Matrix<F> rm(f, 7, 7);
    for (std::size_t col = 0; col < 7; ++col) {
      Vec<F> img = d.apply(data.c0.c0.basis_vector(col));
      auto coords = data.c0.c0.coordinates_of(img);
      if (!coords) {
        identify = false;
        break;
      }
      for (std::size_t row = 0; row < 7; ++row) rm.at(row, col) = (*coords)[row];
    }
    if (identify) restricted.push_back(rm.flatten());
  }
  if (identify) {
    Subspace<F> image = Subspace<F>::from_vectors(f, 49, restricted);
    identify = image.dim() == rep.der_dim && image == data.der.space;
  }
  rep.restriction_identification = identify;
  // The inner ideal: an ideal of Der(C0), simple, with trivial centralizer.
  std::vector<Vec<F>> inner_in_der;
  for (std::size_t r = 0; r < data.inner.dim(); ++r) {
    auto cds = data.der.space.coordinates_of(data.inner.basis_vector(r));
    if (!cds) throw Error("inner derivations are not derivations");
    inner_in_der.push_back(*cds);
  }
  Subspace<F> inner_coords =
      Subspace<F>::from_vectors(f, rep.der_dim, inner_in_der);
  rep.ideal_is_ideal = is_ideal(data.der.bracket, inner_coords);
  rep.ideal_simple = is_simple(data.inner_table).status;
  rep.centralizer_dim = centralizer(data.der.bracket, inner_coords).dim();
  QuotientResult<F> quot = quotient(data.der.bracket, inner_coords);
  rep.quotient_dim = quot.table.dim();
  rep.quotient_simple = is_simple(quot.table).status;
  // ad : C0 -> inner ideal is an isomorphism of Lie algebras.
  Matrix<F> ad_map(f, data.inner.dim(), 7);
  for (std::size_t i = 0; i < 7; ++i) {
    auto cds = data.inner.coordinates_of(data.c0.table.ad_basis(i).flatten());
    if (!cds) throw Error("ad image escaped its span");
    for (std::size_t r = 0; r < data.inner.dim(); ++r)
      ad_map.at(r, i) = (*cds)[r];
  }
  auto hom = check_homomorphism(ad_map, data.c0.table, data.inner_table);
  rep.ad_isomorphism = hom.multiplicative && hom.injective && hom.surjective;
  rep.ok = rep.restriction_identification && rep.der_dim == 14 &&
           rep.ideal_dim == 7 && rep.ideal_is_ideal &&
           rep.ideal_simple == Simplicity::Simple && rep.centralizer_dim == 0 &&
           rep.quotient_dim == 7 &&
           rep.quotient_simple == Simplicity::Simple && rep.ad_isomorphism;
  return rep;
}

struct InnerDerivationReport {
  std::size_t der_of_der_dim = 0;
  std::size_t ad_dim = 0;
  bool equal = false;
};

// Der(Der(C_s)) = ad(Der(C_s)) as subspaces of the 14 x 14 matrix space.
template <FieldType F>
InnerDerivationReport derivations_are_inner(const F& f) {
  if (f.characteristic() != 3)
    throw Error("check requires characteristic 3");
  Char3DerData<F> data = char3_der_data(f);
  const StructureTable<F>& g = data.der.bracket;
  Subspace<F> der_g = derivation_space(g);
  std::vector<Vec<F>> ads;
  for (std::size_t i = 0; i < g.dim(); ++i)
    ads.push_back(g.ad_basis(i).flatten());
  Subspace<F> ad_g = Subspace<F>::from_vectors(f, g.dim() * g.dim(), ads);
  return {der_g.dim(), ad_g.dim(), der_g == ad_g};
}

// Isomorphism-invariant record used as a necessary condition when comparing
// algebras. The ad profile is the multiset over projective points of
// (ad nilpotent?, dim ker ad); computed only within the enumeration bound.
struct Fingerprint {
  std::size_t dim = 0;
  Simplicity simple = Simplicity::Undecided;
  std::size_t killing_rank = 0;
  std::vector<std::size_t> derived_dims;
  std::size_t der_dim = 0;
  bool ad_profile_complete = false;
  std::vector<std::pair<bool, std::size_t>> ad_profile;  // sorted multiset

  friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
    return a.dim == b.dim && a.simple == b.simple &&
           a.killing_rank == b.killing_rank &&
           a.derived_dims == b.derived_dims && a.der_dim == b.der_dim &&
           a.ad_profile_complete == b.ad_profile_complete &&
           a.ad_profile == b.ad_profile;
  }
};

template <FieldType F>
Fingerprint invariant_fingerprint(const StructureTable<F>& t,
                                  std::uint64_t max_points = 1000000) {
  Fingerprint fp;
  fp.dim = t.dim();
  fp.simple = is_simple(t, max_points).status;
  fp.killing_rank = rref(killing_form(t)).second;
  fp.derived_dims = derived_series_dims(t);
  fp.der_dim = derivation_space(t).dim();
  if constexpr (!F::is_rational_function_field) {
    const F& f = t.field();
    std::size_t n = t.dim();
    std::uint64_t p = f.characteristic();
    std::uint64_t points = 0, power = 1;
    bool in_bounds = true;
    for (std::size_t i = 0; i < n; ++i) {
      points += power;
      if (points > max_points || power > max_points) {
        in_bounds = false;
        break;
      }
      power *= p;
    }
    if (in_bounds) {
      for (std::size_t lead = 0; lead < n; ++lead) {
        std::uint64_t count = 1;
        for (std::size_t i = lead + 1; i < n; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
          Vec<F> v(n, f.zero());
          v[lead] = f.one();
          std::uint64_t x = idx;
          for (std::size_t i = n; i-- > lead + 1;) {
            v[i] = f.from_int(static_cast<std::int64_t>(x % p));
            x /= p;
          }
          Matrix<F> ad = t.ad_of(v);
          bool nilpotent = ad.pow(n).is_zero();
          std::size_t kdim = n - rref(ad).second;
          fp.ad_profile.push_back({nilpotent, kdim});
        }
      }
      std::sort(fp.ad_profile.begin(), fp.ad_profile.end());
      fp.ad_profile_complete = true;
    }
  }
  return fp;
}

}  // namespace mg2
