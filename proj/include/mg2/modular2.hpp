#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mg2/cayley.hpp"
#include "mg2/modular3.hpp"

namespace mg2 {

template <FieldType F>
Matrix<F> standard_symplectic_form(const F& f, std::size_t n) {
  Matrix<F> b(f, 2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    b.at(i, n + i) = f.one();
    b.at(n + i, i) = f.zero() - f.one();
  }
  return b;
}

template <FieldType F>
struct SpAlgebra {
  Matrix<F> form;
  Subspace<F> space;                  // subspace of the N^2 matrix space
  std::vector<Matrix<F>> basis_mats;  // N x N matrices
  StructureTable<F> table;            // commutator table on that basis
};

// sp(V, b) = {X : b(Xu, v) + b(u, Xv) = 0}, i.e. X^T B + B X = 0.
template <FieldType F>
SpAlgebra<F> sp_algebra(const F& f, const Matrix<F>& form) {
  std::size_t n = form.rows();
  if (form.cols() != n) throw Error("form must be square");
  if (rref(form).second != n) throw Error("form is degenerate");
  Matrix<F> sys(f, n * n, n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t d = 0; d < n; ++d) {
        // (X^T B)[r][s] = X[d][r] B[d][s];  (B X)[r][s] = B[r][d] X[d][s].
        sys.at(r * n + s, d * n + r) =
            sys.at(r * n + s, d * n + r) + form.at(d, s);
        sys.at(r * n + s, d * n + s) =
            sys.at(r * n + s, d * n + s) + form.at(r, d);
      }
  Subspace<F> space = kernel_basis(sys);
  std::vector<Matrix<F>> mats;
  for (std::size_t r = 0; r < space.dim(); ++r)
    mats.push_back(Matrix<F>::unflatten(f, n, n, space.basis_vector(r)));
  StructureTable<F> table = commutator_table_on(space, mats);
  return {form, std::move(space), std::move(mats), std::move(table)};
}

// Block membership in sp_6 over characteristic 2 with the standard form:
// X = [[a, b], [c, a^T]] with b, c symmetric; the first derived power has b, c
// alternating (zero diagonal) and the second additionally trace(a) = 0.
template <FieldType F>
bool sp6_block_membership(const Matrix<F>& x, int level) {
  const F& f = x.field();
  if (f.characteristic() != 2) throw Error("block shapes are characteristic 2");
  auto a = [&](std::size_t i, std::size_t j) { return x.at(i, j); };
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (!(x.at(3 + i, 3 + j) == x.at(j, i))) return false;          // a^T
      if (!(x.at(i, 3 + j) == x.at(j, 3 + i))) return false;          // b sym
      if (!(x.at(3 + i, j) == x.at(3 + j, i))) return false;          // c sym
    }
  if (level >= 1)
    for (std::size_t i = 0; i < 3; ++i)
      if (!x.at(i, 3 + i).is_zero() || !x.at(3 + i, i).is_zero()) return false;
  if (level >= 2) {
    typename F::Element tr = f.zero();
    for (std::size_t i = 0; i < 3; ++i) tr = tr + a(i, i);
    if (!tr.is_zero()) return false;
  }
  return true;
}

// Subspace of N^2 coordinates spanned by combinations of basis matrices
// selected by a subspace in basis coordinates.
template <FieldType F>
Subspace<F> lift_to_matrix_space(const Subspace<F>& coords,
                                 const std::vector<Matrix<F>>& basis_mats) {
  const F& f = coords.field();
  std::size_t n2 = basis_mats.empty() ? 0 : basis_mats[0].rows() *
                                                basis_mats[0].cols();
  std::vector<Vec<F>> gens;
  for (std::size_t r = 0; r < coords.dim(); ++r) {
    Vec<F> v = coords.basis_vector(r);
    Vec<F> acc = zero_vec(f, n2);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero())
        acc = vec_add(acc, vec_scale(v[i], basis_mats[i].flatten()));
    gens.push_back(std::move(acc));
  }
  return Subspace<F>::from_vectors(f, n2, gens);
}

// Second exterior power of a 4x4 matrix, on the lexicographic basis
// e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4.
template <FieldType F>
Matrix<F> exterior_square(const Matrix<F>& m) {
  const F& f = m.field();
  static constexpr std::array<std::pair<int, int>, 6> kPairs{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  auto index_of = [&](int a, int b, typename F::Element& sign) -> int {
    if (a == b) return -1;
    bool swapped = a > b;
    if (swapped) std::swap(a, b);
    for (int k = 0; k < 6; ++k)
      if (kPairs[k].first == a && kPairs[k].second == b) {
        sign = swapped ? f.zero() - f.one() : f.one();
        return k;
      }
    return -1;
  };
  Matrix<F> out(f, 6, 6);
  for (int col = 0; col < 6; ++col) {
    auto [a, b] = kPairs[col];
    // M e_a ^ e_b + e_a ^ M e_b.
    for (int c = 0; c < 4; ++c) {
      typename F::Element sign = f.one();
      int idx = index_of(c, b, sign);
      if (idx >= 0 && !m.at(c, a).is_zero())
        out.at(idx, col) = out.at(idx, col) + sign * m.at(c, a);
      idx = index_of(a, c, sign);
      if (idx >= 0 && !m.at(c, b).is_zero())
        out.at(idx, col) = out.at(idx, col) + sign * m.at(c, b);
    }
  }
  return out;
}

// Alternating form on the second exterior power induced by a fixed volume
// form: b(u1^u2, v1^v2) = det(u1 u2 v1 v2).
template <FieldType F>
Matrix<F> exterior_square_form(const F& f) {
  static constexpr std::array<std::pair<int, int>, 6> kPairs{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  Matrix<F> b(f, 6, 6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) {
      std::array<int, 4> perm{kPairs[r].first, kPairs[r].second,
                              kPairs[c].first, kPairs[c].second};
      std::array<bool, 4> seen{false, false, false, false};
      bool valid = true;
      for (int x : perm) {
        if (seen[x]) valid = false;
        seen[x] = true;
      }
      if (!valid) continue;
      int inversions = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (perm[i] > perm[j]) ++inversions;
      b.at(r, c) = inversions % 2 == 0 ? f.one() : f.zero() - f.one();
    }
  return b;
}

template <FieldType F>
QuotientResult<F> psl4(const F& f) {
  if (f.characteristic() != 2) throw Error("psl4 requires characteristic 2");
  StructureTable<F> sl4 = sl_algebra(f, 4);
  Subspace<F> centre =
      Subspace<F>::from_vectors(f, sl4.dim(), {identity_in_sl_coords(f, 4)});
  return quotient(sl4, centre);
}

template <FieldType F>
struct ExteriorSquareIso {
  Matrix<F> form;                  // the induced form on wedge^2
  Subspace<F> image;               // image of sl4 in the 36-dim matrix space
  Subspace<F> kernel;              // kernel inside sl4 coordinates (dim 1)
  Matrix<F> iso;                   // psl4 coords -> sp^(2) basis coords
  SpAlgebra<F> sp;                 // sp of the induced form
  Subspace<F> sp2_in_gl6;          // second derived power, 36-dim coords
  StructureTable<F> sp2_table;     // bracket table on the sp^(2) RREF basis
  std::vector<Matrix<F>> sp2_mats;
  bool iso_valid = false;
};

// The action of sl4 on wedge^2 F^4 lands in sp of the induced form, has
// kernel F I_4, and identifies psl4 with the second derived power.
template <FieldType F>
ExteriorSquareIso<F> exterior_square_iso(const F& f) {
  if (f.characteristic() != 2)
    throw Error("exterior-square identification is characteristic 2 here");
  auto sl4_basis = detail::sl_basis(f, 4);
  Matrix<F> form = exterior_square_form(f);
  SpAlgebra<F> sp = sp_algebra(f, form);
  // Map on basis elements; kernel and image.
  std::vector<Vec<F>> images;
  Matrix<F> map36(f, 36, sl4_basis.size());
  for (std::size_t i = 0; i < sl4_basis.size(); ++i) {
    Matrix<F> lm = exterior_square(sl4_basis[i]);
    Vec<F> flat = lm.flatten();
    images.push_back(flat);
    for (std::size_t r = 0; r < 36; ++r) map36.at(r, i) = flat[r];
  }
  ExteriorSquareIso<F> out{form,
                           Subspace<F>::from_vectors(f, 36, images),
                           kernel_basis(map36),
                           Matrix<F>(f, 14, 14),
                           std::move(sp),
                           Subspace<F>(f, 36),
                           StructureTable<F>(f, 14),
                           {},
                           false};
  Subspace<F> sp2_coords = derived_power(out.sp.table, 2);
  out.sp2_in_gl6 = lift_to_matrix_space(sp2_coords, out.sp.basis_mats);
  if (out.sp2_in_gl6.dim() != 14) return out;
  for (std::size_t r = 0; r < 14; ++r)
    out.sp2_mats.push_back(
        Matrix<F>::unflatten(f, 6, 6, out.sp2_in_gl6.basis_vector(r)));
  out.sp2_table = commutator_table_on(out.sp2_in_gl6, out.sp2_mats);
  // Induced map on the quotient: complement representative -> wedge action.
  QuotientResult<F> p = psl4(f);
  if (p.table.dim() != 14) return out;
  for (std::size_t a = 0; a < 14; ++a) {
    Matrix<F> lm = exterior_square(sl4_basis[p.complement_cols[a]]);
    auto coords = out.sp2_in_gl6.coordinates_of(lm.flatten());
    if (!coords) return out;
    for (std::size_t r = 0; r < 14; ++r) out.iso.at(r, a) = (*coords)[r];
  }
  auto hom = check_homomorphism(out.iso, p.table, out.sp2_table);
  out.iso_valid = hom.multiplicative && hom.injective && hom.surjective;
  return out;
}

template <FieldType F>
struct GspAlgebras {
  Subspace<F> gsp_space;  // 36-dim coordinates
  std::vector<Matrix<F>> gsp_mats;
  StructureTable<F> gsp_table;
  StructureTable<F> pgsp_table;
  bool decomposition_ok = false;  // gsp = sp + F diag(I3, 0)
  bool derived_is_sp = false;     // [gsp, gsp] = sp
};

template <FieldType F>
GspAlgebras<F> gsp_pgsp(const F& f) {
  if (f.characteristic() != 2) throw Error("gsp report is characteristic 2");
  Matrix<F> form = standard_symplectic_form(f, 3);
  SpAlgebra<F> sp = sp_algebra(f, form);
  // X^T B + B X = lambda B with one extra unknown.
  std::size_t n = 6;
  Matrix<F> sys(f, n * n, n * n + 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t d = 0; d < n; ++d) {
        sys.at(r * n + s, d * n + r) =
            sys.at(r * n + s, d * n + r) + form.at(d, s);
        sys.at(r * n + s, d * n + s) =
            sys.at(r * n + s, d * n + s) + form.at(r, d);
      }
      sys.at(r * n + s, n * n) = f.zero() - form.at(r, s);
    }
  Subspace<F> aug = kernel_basis(sys);
  std::vector<Vec<F>> mats;
  for (std::size_t r = 0; r < aug.dim(); ++r) {
    Vec<F> v = aug.basis_vector(r);
    mats.push_back(Vec<F>(v.begin(), v.begin() + n * n));
  }
  GspAlgebras<F> out{Subspace<F>::from_vectors(f, n * n, mats),
                     {},
                     StructureTable<F>(f, 0),
                     StructureTable<F>(f, 0),
                     false,
                     false};
  for (std::size_t r = 0; r < out.gsp_space.dim(); ++r)
    out.gsp_mats.push_back(
        Matrix<F>::unflatten(f, n, n, out.gsp_space.basis_vector(r)));
  out.gsp_table = commutator_table_on(out.gsp_space, out.gsp_mats);
  // Decomposition sp + F diag(I3, 0).
  Matrix<F> sim(f, n, n);
  for (std::size_t i = 0; i < 3; ++i) sim.at(i, i) = f.one();
  Subspace<F> line = Subspace<F>::from_vectors(f, n * n, {sim.flatten()});
  out.decomposition_ok =
      out.gsp_space.dim() == 22 && sum(sp.space, line) == out.gsp_space;
  Subspace<F> derived_coords = derived_power(out.gsp_table, 1);
  out.derived_is_sp =
      lift_to_matrix_space(derived_coords, out.gsp_mats) == sp.space;
  // pgsp = gsp / <I_6>.
  auto id_coords = out.gsp_space.coordinates_of(
      Matrix<F>::identity(f, n).flatten());
  if (!id_coords) throw Error("identity is not a similitude");
  Subspace<F> centre = Subspace<F>::from_vectors(
      f, out.gsp_space.dim(), {*id_coords});
  out.pgsp_table = quotient(out.gsp_table, centre).table;
  return out;
}

template <FieldType F>
struct DerPsl4Report {
  std::size_t der_dim = 0;
  std::size_t inner_dim = 0;
  std::size_t phi_kernel_dim = 0;
  bool phi_kernel_is_identity_line = false;
  bool image_equals_der = false;
  bool ok = false;
};

// Der(psl4) has dimension 21 and is exactly the image of gsp_6 acting by
// brackets on the second derived power of sp_6, transported through the
// exterior-square identification; the kernel of that action is F I_6.
template <FieldType F>
DerPsl4Report<F> der_psl4_report(const F& f) {
  DerPsl4Report<F> rep;
  QuotientResult<F> p = psl4(f);
  Subspace<F> der = derivation_space(p.table);
  rep.der_dim = der.dim();
  std::vector<Vec<F>> inner;
  for (std::size_t i = 0; i < p.table.dim(); ++i)
    inner.push_back(p.table.ad_basis(i).flatten());
  rep.inner_dim = Subspace<F>::from_vectors(f, 196, inner).dim();
  ExteriorSquareIso<F> ext = exterior_square_iso(f);
  if (!ext.iso_valid) return rep;
  GspAlgebras<F> gsp = gsp_pgsp(f);
  auto iso_inv = inverse(ext.iso);
  if (!iso_inv) return rep;
  // Flattened transported operators, one per gsp basis element.
  Matrix<F> action(f, 196, gsp.gsp_mats.size());
  std::vector<Vec<F>> transported;
  for (std::size_t g = 0; g < gsp.gsp_mats.size(); ++g) {
    Matrix<F> m_a(f, 14, 14);
    for (std::size_t b = 0; b < 14; ++b) {
      Matrix<F> lie = gsp.gsp_mats[g] * ext.sp2_mats[b] -
                      ext.sp2_mats[b] * gsp.gsp_mats[g];
      auto coords = ext.sp2_in_gl6.coordinates_of(lie.flatten());
      if (!coords) throw Error("bracket left the second derived power");
      for (std::size_t r = 0; r < 14; ++r) m_a.at(r, b) = (*coords)[r];
    }
    Matrix<F> transported_op = (*iso_inv) * m_a * ext.iso;
    Vec<F> flat = transported_op.flatten();
    transported.push_back(flat);
    for (std::size_t r = 0; r < 196; ++r) action.at(r, g) = flat[r];
  }
  Subspace<F> phi_kernel = kernel_basis(action);
  rep.phi_kernel_dim = phi_kernel.dim();
  auto id_coords =
      gsp.gsp_space.coordinates_of(Matrix<F>::identity(f, 6).flatten());
  if (id_coords && phi_kernel.dim() == 1)
    rep.phi_kernel_is_identity_line = phi_kernel.contains(*id_coords);
  Subspace<F> image = Subspace<F>::from_vectors(f, 196, transported);
  rep.image_equals_der = image == der;
  rep.ok = rep.der_dim == 21 && rep.inner_dim == 14 &&
           rep.phi_kernel_dim == 1 && rep.phi_kernel_is_identity_line &&
           rep.image_equals_der;
  return rep;
}

// Z^3 grading data for psl4 and the homogeneous pieces of its derivations.
template <FieldType F>
struct GradingReport {
  Grading grading;
  std::vector<std::vector<std::int64_t>> support;
  bool grading_ok = false;
  std::size_t h_dim = 0;  // degree-(0,0,0) component of psl4
  std::map<std::vector<std::int64_t>, std::size_t> der_dims;
  std::size_t der_total = 0;
  std::size_t der_dim_zero = 0;
  std::size_t der_dim_x_max = 0;  // max over the six exceptional degrees
  std::vector<std::vector<std::int64_t>> x_set;
};

template <FieldType F>
std::size_t homogeneous_derivation_dim(
    const StructureTable<F>& t, const Grading& g,
    const std::vector<std::int64_t>& alpha) {
  const F& f = t.field();
  std::size_t n = t.dim();
  // Unknowns: entries d[r][c] with deg(r) = deg(c) + alpha.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<std::vector<int>> slot_of(n, std::vector<int>(n, -1));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      bool match = true;
      for (std::size_t k = 0; k < g.group_rank; ++k)
        if (g.degrees[r][k] != g.degrees[c][k] + alpha[k]) match = false;
      if (match) {
        slot_of[r][c] = static_cast<int>(slots.size());
        slots.push_back({r, c});
      }
    }
  if (slots.empty()) return 0;
  RowReducer<F> red(f, slots.size());
  Vec<F> row(slots.size(), f.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec<F> prod = t.basis_product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        for (auto& x : row) x = f.zero();
        bool nonzero = false;
        for (std::size_t l = 0; l < n; ++l) {
          if (!prod[l].is_zero() && slot_of[k][l] >= 0) {
            row[slot_of[k][l]] = row[slot_of[k][l]] + prod[l];
            nonzero = true;
          }
          const auto& c1 = t.at(l, j, k);
          if (!c1.is_zero() && slot_of[l][i] >= 0) {
            row[slot_of[l][i]] = row[slot_of[l][i]] - c1;
            nonzero = true;
          }
          const auto& c2 = t.at(i, l, k);
          if (!c2.is_zero() && slot_of[l][j] >= 0) {
            row[slot_of[l][j]] = row[slot_of[l][j]] - c2;
            nonzero = true;
          }
        }
        if (nonzero) red.insert(row);
      }
    }
  return slots.size() - red.rank();
}

template <FieldType F>
GradingReport<F> grading_bound_data(const F& f) {
  if (f.characteristic() != 2)
    throw Error("grading report is characteristic 2");
  GradingReport<F> rep;
  QuotientResult<F> p = psl4(f);
  // Degrees of the sl4 standard basis: deg E_(i,j) = sum of the simple
  // degrees between i and j; diagonal elements have degree zero.
  std::vector<std::vector<std::int64_t>> sl_degrees;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      std::vector<std::int64_t> d(3, 0);
      std::size_t lo = std::min(i, j), hi = std::max(i, j);
      for (std::size_t k = lo; k < hi; ++k) d[k] = (i < j) ? 1 : -1;
      sl_degrees.push_back(std::move(d));
    }
  for (int h = 0; h < 3; ++h) sl_degrees.push_back({0, 0, 0});
  rep.grading.group_rank = 3;
  for (std::size_t a = 0; a < p.table.dim(); ++a)
    rep.grading.degrees.push_back(sl_degrees[p.complement_cols[a]]);
  GradingCheck chk = verify_grading(p.table, rep.grading);
  rep.grading_ok = chk.ok;
  rep.support = chk.support;
  for (const auto& d : rep.grading.degrees)
    if (d == std::vector<std::int64_t>{0, 0, 0}) ++rep.h_dim;
  // Homogeneous derivation components over all candidate degrees
  // (differences of support degrees).
  std::vector<std::vector<std::int64_t>> candidates;
  for (const auto& a : rep.support)
    for (const auto& b : rep.support) {
      std::vector<std::int64_t> d(3);
      for (int k = 0; k < 3; ++k) d[k] = a[k] - b[k];
      candidates.push_back(std::move(d));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (const auto& alpha : candidates) {
    std::size_t d = homogeneous_derivation_dim(p.table, rep.grading, alpha);
    if (d > 0) rep.der_dims[alpha] = d;
    rep.der_total += d;
  }
  rep.der_dim_zero = rep.der_dims.count({0, 0, 0}) ? rep.der_dims[{0, 0, 0}] : 0;
  rep.x_set = {{1, 0, 1},  {-1, 0, -1}, {1, 0, -1},
               {-1, 0, 1}, {1, 2, 1},   {-1, -2, -1}};
  for (const auto& alpha : rep.x_set) {
    auto it = rep.der_dims.find(alpha);
    std::size_t d = it == rep.der_dims.end() ? 0 : it->second;
    rep.der_dim_x_max = std::max(rep.der_dim_x_max, d);
  }
  return rep;
}

// Hyperbolic basis for a nondegenerate alternating form in characteristic 2:
// returns P with P^T B P the standard form.
template <FieldType F>
Matrix<F> symplectic_basis(const Matrix<F>& form) {
  const F& f = form.field();
  if (f.characteristic() != 2)
    throw Error("hyperbolic pairing implemented for characteristic 2");
  std::size_t n = form.rows();
  auto bval = [&](const Vec<F>& x, const Vec<F>& y) {
    typename F::Element s = f.zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!y[j].is_zero()) s = s + x[i] * form.at(i, j) * y[j];
    }
    return s;
  };
  std::vector<Vec<F>> remaining;
  for (std::size_t i = 0; i < n; ++i) remaining.push_back(unit_vec(f, n, i));
  std::vector<Vec<F>> es, ws;
  while (!remaining.empty()) {
    Vec<F> u = remaining.front();
    remaining.erase(remaining.begin());
    std::size_t wi = remaining.size();
    for (std::size_t i = 0; i < remaining.size(); ++i)
      if (!bval(u, remaining[i]).is_zero()) {
        wi = i;
        break;
      }
    if (wi == remaining.size())
      throw Error("form degenerate on the residual space");
    Vec<F> w = vec_scale(f.one() / bval(u, remaining[wi]), remaining[wi]);
    remaining.erase(remaining.begin() + wi);
    std::vector<Vec<F>> next;
    for (const auto& v : remaining) {
      Vec<F> adj = vec_add(v, vec_add(vec_scale(bval(v, w), u),
                                      vec_scale(bval(v, u), w)));
      if (!vec_is_zero(adj)) next.push_back(adj);
    }
    // Keep an independent set.
    RowReducer<F> red(f, n);
    std::vector<Vec<F>> indep;
    for (const auto& v : next)
      if (red.insert(v)) indep.push_back(v);
    remaining = std::move(indep);
    es.push_back(std::move(u));
    ws.push_back(std::move(w));
  }
  Matrix<F> p_cols(f, n, n);
  for (std::size_t k = 0; k < es.size(); ++k)
    for (std::size_t r = 0; r < n; ++r) {
      p_cols.at(r, k) = es[k][r];
      p_cols.at(r, es.size() + k) = ws[k][r];
    }
  // Certify the congruence.
  Matrix<F> g = p_cols.transpose() * form * p_cols;
  if (!(g == standard_symplectic_form(f, es.size())))
    throw Error("hyperbolic pairing failed to standardize the form");
  return p_cols;
}

template <FieldType F>
struct DerCayleyChar2Report {
  std::size_t der_dim = 0;
  bool descends = false;          // every derivation kills 1, preserves C0
  bool image_in_sp = false;
  std::size_t image_dim = 0;      // dimension of the descended image
  bool image_is_sp2 = false;      // image equals sp(b~)^(2)
  bool iso_to_psl4 = false;       // composed map is a bijective homomorphism
  bool ok = false;
};

// Derivations of a characteristic-2 Cayley algebra descend to C0/F1 and land
// exactly on the second derived power of the symplectic algebra of the
// induced form; composing with the exterior-square identification exhibits
// Der(C) as psl4.
template <FieldType F>
DerCayleyChar2Report<F> der_cayley_char2_report(const CayleyAlgebra<F>& c) {
  const F& f = c.table.field();
  DerCayleyChar2Report<F> rep;
  DerivationAlgebra<F> der = derivation_algebra(c.table);
  rep.der_dim = der.space.dim();
  CZeroModUnit<F> quo = c0_mod_unit(c);
  rep.descends = true;
  std::vector<Matrix<F>> descended;
  for (const auto& d : der.basis_mats) {
    if (!vec_is_zero(d.apply(c.unit))) {
      rep.descends = false;
      return rep;
    }
    for (std::size_t r = 0; r < quo.c0.dim(); ++r)
      if (!quo.c0.contains(d.apply(quo.c0.basis_vector(r)))) {
        rep.descends = false;
        return rep;
      }
    descended.push_back(quo.descend(d));
  }
  // Membership in sp of the induced form: X^T B + B X = 0.
  rep.image_in_sp = true;
  for (const auto& x : descended) {
    Matrix<F> defect = x.transpose() * quo.form + quo.form * x;
    if (!defect.is_zero()) {
      rep.image_in_sp = false;
      return rep;
    }
  }
  std::vector<Vec<F>> flats;
  for (const auto& x : descended) flats.push_back(x.flatten());
  Subspace<F> image = Subspace<F>::from_vectors(f, 36, flats);
  rep.image_dim = image.dim();
  SpAlgebra<F> sp = sp_algebra(f, quo.form);
  Subspace<F> sp2 =
      lift_to_matrix_space(derived_power(sp.table, 2), sp.basis_mats);
  rep.image_is_sp2 = image == sp2;
  if (!rep.image_is_sp2) return rep;
  // Transport to the standard form, then through the exterior square to psl4.
  Matrix<F> p_cols = symplectic_basis(quo.form);
  auto p_inv = inverse(p_cols);
  if (!p_inv) return rep;
  ExteriorSquareIso<F> ext = exterior_square_iso(f);
  if (!ext.iso_valid) return rep;
  auto iso_inv = inverse(ext.iso);
  if (!iso_inv) return rep;
  QuotientResult<F> p4 = psl4(f);
  Matrix<F> composed(f, 14, der.space.dim());
  for (std::size_t g = 0; g < descended.size(); ++g) {
    Matrix<F> standard = (*p_inv) * descended[g] * p_cols;
    auto coords = ext.sp2_in_gl6.coordinates_of(standard.flatten());
    if (!coords) return rep;
    Vec<F> target = iso_inv->apply(*coords);
    for (std::size_t r = 0; r < 14; ++r) composed.at(r, g) = target[r];
  }
  auto hom = check_homomorphism(composed, der.bracket, p4.table);
  rep.iso_to_psl4 = hom.multiplicative && hom.injective && hom.surjective;
  rep.ok = rep.der_dim == 14 && rep.descends && rep.image_in_sp &&
           rep.image_dim == 14 && rep.image_is_sp2 && rep.iso_to_psl4;
  return rep;
}

}  // namespace mg2
