// Trace bilinear forms, dual bases, and orthogonal complements.
#pragma once

#include <vector>

#include "linsets/common.hpp"
#include "linsets/fields.hpp"
#include "linsets/fqlinalg.hpp"
#include "linsets/polynomials.hpp"

namespace linsets {

/// The symmetric bilinear form (a, b) -> Tr_{p^src / p^tgt}(a b).
struct TraceForm {
  const Tower* tw = nullptr;
  int src = 0;  // absolute degree of the source field
  int tgt = 0;  // absolute degree of the target field

  Element apply(const Element& a, const Element& b) const {
    return tw->trace(tw->mul(a, b), src, tgt);
  }

  /// Gram matrix of a family of source-field elements, over the target field.
  FqMat gram(const std::vector<Element>& basis) const {
    const SmallField& F = tw->small_field(tgt);
    int n = static_cast<int>(basis.size());
    FqMat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g.at(i, j) = tw->expand(apply(basis[i], basis[j]), tgt, tgt)[0];
    return g;
  }

  bool non_degenerate_on(const std::vector<Element>& basis) const {
    FqMat g = gram(basis);
    return fq_rank(g, tw->small_field(tgt)) == g.rows;
  }
};

/// Dual basis via Gram-matrix inversion: the unique family with
/// Tr(xi_i * xi_j^*) = delta_ij.
inline std::vector<Element> dual_basis(const Tower& t, int e, int m,
                                       const std::vector<Element>& basis) {
  require(static_cast<int>(basis.size()) == m / e, "basis size must equal the extension degree");
  TraceForm form{&t, m, e};
  const SmallField& F = t.small_field(e);
  int n = static_cast<int>(basis.size());
  FqMat aug(n, 2 * n);
  FqMat g = form.gram(basis);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = g.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = fq_rref(aug, F);
  require(static_cast<int>(pivots.size()) == n && pivots[n - 1] == n - 1,
          "not a basis: the trace Gram matrix is singular");
  std::vector<Element> dual(n, t.zero());
  // column j of the inverse gives the coefficients of xi_j^*
  for (int j = 0; j < n; ++j) {
    Element s = t.zero();
    for (int i = 0; i < n; ++i) {
      std::uint16_t cij = aug.at(i, n + j);  // (G^{-1})_{ij}
      if (cij) s = t.add(s, t.mul(F.elems[cij], basis[i]));
    }
    dual[j] = s;
  }
  return dual;
}

/// Closed-form dual of a power basis (1, lambda, ..., lambda^{n-1}):
/// with f the minimal polynomial of lambda, delta = f'(lambda) and
/// gamma_i = sum_{j=1}^{n-i} lambda^{j-1} a_{i+j}, the dual basis is
/// (delta^{-1} gamma_0, ..., delta^{-1} gamma_{n-1}).
inline std::vector<Element> dual_basis_power_closed_form(const Tower& t, int e, int m,
                                                         const Element& lambda) {
  int n = m / e;
  require(t.degree_over(lambda, e) == n, "lambda must generate the extension");
  auto [f, deg] = minimal_poly_and_degree(t, lambda, e);
  check(deg == n, "minimal polynomial degree mismatch");
  Element delta = f.derivative().eval(lambda);
  check(!elt_is_zero(delta), "derivative of the minimal polynomial vanished");
  Element dinv = t.inv(delta);
  std::vector<Element> dual(n, t.zero());
  for (int i = 0; i < n; ++i) {
    Element gamma = t.zero();
    Element lp = t.one();  // lambda^{j-1}
    for (int j = 1; j <= n - i; ++j) {
      gamma = t.add(gamma, t.mul(lp, f.c[i + j]));
      lp = t.mul(lp, lambda);
    }
    dual[i] = t.mul(dinv, gamma);
  }
  return dual;
}

/// An F_{p^s}-subspace of the field F_{p^m}, kept in RREF over F_{p^s} with
/// respect to the power basis of the level-m generator.
struct ModSubspace {
  const Tower* tw = nullptr;
  int s = 0;  // absolute degree of the scalar field
  int m = 0;  // absolute degree of the ambient field
  FqMat mat;  // RREF, cols = m/s
  std::vector<int> pivots;

  int dim() const { return mat.rows; }

  bool contains(const Element& a) const {
    auto coords = tw->expand(a, s, m);
    std::vector<std::uint16_t> row(coords.begin(), coords.end());
    fq_reduce_row(row.data(), mat, pivots, tw->small_field(s));
    return fq_row_is_zero(row.data(), mat.cols);
  }

  std::vector<Element> basis_elements() const {
    std::vector<Element> out;
    for (int i = 0; i < mat.rows; ++i) out.push_back(tw->fold(mat.row(i), s, m));
    return out;
  }

  bool operator==(const ModSubspace& o) const { return s == o.s && m == o.m && mat == o.mat; }
};

inline ModSubspace span_mod(const Tower& t, int s, int m, const std::vector<Element>& gens) {
  ModSubspace S;
  S.tw = &t;
  S.s = s;
  S.m = m;
  int cols = m / s;
  S.mat = FqMat(static_cast<int>(gens.size()), cols);
  for (size_t i = 0; i < gens.size(); ++i) {
    auto coords = t.expand(gens[i], s, m);
    for (int j = 0; j < cols; ++j) S.mat.at(static_cast<int>(i), j) = coords[j];
  }
  S.pivots = fq_rref(S.mat, t.small_field(s));
  return S;
}

/// Orthogonal complement of an F_{q^t}-subspace S of F_{q^n} with respect to
/// the form Tr_{q^n/q}(ab). The result is again F_{q^t}-closed.
inline ModSubspace orthogonal_complement(const ModSubspace& S, int e) {
  const Tower& t = *S.tw;
  require(S.s % e == 0, "the base field must sit under the scalar field");
  const SmallField& F = t.small_field(e);
  int m = S.m;
  int ne = m / e;

  // F_q-generators of S: scalar-field basis times each F_{q^t}-basis vector
  std::vector<Element> gens;
  for (const Element& b : S.basis_elements())
    for (int j = 0; j < S.s / e; ++j) gens.push_back(t.mul(b, t.gen_pow(S.s, j)));

  // conditions Tr(beta_i * g) = 0 on the coordinates of a
  // (beta_i = expansion basis of F_{q^n} over F_q)
  std::vector<Element> beta(ne);
  for (int i = 0; i < ne; ++i) {
    std::vector<std::uint16_t> unit(ne, 0);
    unit[i] = 1;
    beta[i] = t.fold(unit.data(), e, m);
  }
  FqMat mt(ne, static_cast<int>(gens.size()));
  for (int i = 0; i < ne; ++i)
    for (size_t gidx = 0; gidx < gens.size(); ++gidx)
      mt.at(i, static_cast<int>(gidx)) =
          t.expand(t.trace(t.mul(beta[i], gens[gidx]), m, e), e, e)[0];
  FqMat ker = fq_null_space(mt, F);

  std::vector<Element> perp;
  for (int i = 0; i < ker.rows; ++i) {
    std::vector<std::uint16_t> row(ker.row(i), ker.row(i) + ne);
    perp.push_back(t.fold(row.data(), e, m));
  }
  check(static_cast<int>(perp.size()) == ne - S.dim() * (S.s / e),
        "complement dimension mismatch");

  ModSubspace out = span_mod(t, S.s, m, perp);
  check(out.dim() * (S.s / e) == static_cast<int>(perp.size()),
        "orthogonal complement is not closed under the scalar field");
  return out;
}

}  // namespace linsets
