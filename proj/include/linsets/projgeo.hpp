// Projective subspaces over F_{q^n}: spans, independence, canonical
// subgeometry sections, projection from a subspace, and the count of
// r-spaces through a subspace meeting a linear set outside it.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "linsets/common.hpp"
#include "linsets/fields.hpp"
#include "linsets/linset.hpp"

namespace linsets {

namespace detail {

/// RREF over the working field with Element entries. Rows are ambient
/// vectors; zero rows are dropped. Returns pivot columns.
inline std::vector<int> element_rref(const Tower& t, std::vector<std::vector<Element>>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t sel = r;
    while (sel < rows.size() && elt_is_zero(rows[sel][c])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Element inv = t.inv(rows[r][c]);
    for (auto& x : rows[r]) x = t.mul(inv, x);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || elt_is_zero(rows[i][c])) continue;
      Element f = rows[i][c];
      for (size_t j = 0; j < cols; ++j) rows[i][j] = t.sub(rows[i][j], t.mul(f, rows[r][j]));
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace detail

/// An F_{q^n}-subspace W of F_{q^n}^{d+1}, i.e. a projective subspace
/// PG(W, F_{q^n}) of dimension dim W - 1, in canonical echelon form.
struct ProjSubspace {
  Context ctx;
  std::vector<std::vector<Element>> rows;
  std::vector<int> pivots;

  int dim_vec() const { return static_cast<int>(rows.size()); }
  int dim_proj() const { return dim_vec() - 1; }

  bool contains(const std::vector<Element>& v) const {
    std::vector<Element> w = v;
    const Tower& t = *ctx.tw;
    for (size_t i = 0; i < rows.size(); ++i) {
      Element f = w[pivots[i]];
      if (elt_is_zero(f)) continue;
      for (size_t j = 0; j < w.size(); ++j) w[j] = t.sub(w[j], t.mul(f, rows[i][j]));
    }
    for (const auto& x : w)
      if (!elt_is_zero(x)) return false;
    return true;
  }

  std::string key() const {
    std::string s;
    for (const auto& row : rows) s += point_key(ctx, row);
    return s;
  }

  bool operator==(const ProjSubspace& o) const { return ctx == o.ctx && rows == o.rows; }
};

inline ProjSubspace proj_span(const Context& ctx, std::vector<std::vector<Element>> vectors) {
  ctx.validate();
  for (auto& v : vectors) require(static_cast<int>(v.size()) == ctx.d + 1, "dimension mismatch");
  ProjSubspace W;
  W.ctx = ctx;
  W.rows = std::move(vectors);
  W.pivots = detail::element_rref(*ctx.tw, W.rows);
  return W;
}

inline ProjSubspace proj_point(const Context& ctx, const std::vector<Element>& v) {
  return proj_span(ctx, {v});
}

/// Span of a family of subspaces together with the independence flag:
/// independent iff the span's dimension is the sum of the dimensions.
inline std::pair<ProjSubspace, bool> span_and_independence(
    const std::vector<ProjSubspace>& parts) {
  require(!parts.empty(), "span of an empty family");
  const Context& ctx = parts[0].ctx;
  std::vector<std::vector<Element>> all;
  int dim_sum = 0;
  for (const auto& p : parts) {
    require(p.ctx == ctx, "mixed ambient spaces");
    dim_sum += p.dim_vec();
    for (const auto& r : p.rows) all.push_back(r);
  }
  ProjSubspace span = proj_span(ctx, std::move(all));
  return {span, span.dim_vec() == dim_sum};
}

/// Weight of a projective subspace: dim_{F_q}(U cap W).
inline int weight(const FqSubspace& U, const ProjSubspace& W) {
  const Context& ctx = U.ctx;
  require(W.ctx == ctx, "subspace from a different ambient space");
  const SmallField& F = ctx.tw->small_field(ctx.e);
  int cols = ctx.cols();
  // F_q-generators of W: zeta^l * w_j
  FqMat residuals(0, cols);
  for (const auto& wrow : W.rows) {
    std::vector<Element> v = wrow;
    for (int l = 0; l < ctx.n(); ++l) {
      std::vector<Element> scaled(ctx.d + 1);
      Element zl = ctx.tw->gen_pow(ctx.m, l);
      for (int j = 0; j <= ctx.d; ++j) scaled[j] = ctx.tw->mul(zl, v[j]);
      auto row = U.expand_vec(scaled);
      fq_reduce_row(row.data(), U.mat, U.pivots, F);
      if (!fq_row_is_zero(row.data(), cols)) {
        residuals.rows += 1;
        residuals.a.insert(residuals.a.end(), row.begin(), row.end());
      }
    }
  }
  int extra = residuals.rows ? fq_rank(residuals, F) : 0;
  int dim_w_fq = W.dim_vec() * ctx.n();
  return dim_w_fq - extra;  // dim(U cap W) = dim_Fq W - rank of residuals
}

/// The F_q-subspace U cap W inside the same ambient space.
inline FqSubspace intersect(const FqSubspace& U, const ProjSubspace& W) {
  const Context& ctx = U.ctx;
  require(W.ctx == ctx, "subspace from a different ambient space");
  const Tower& t = *ctx.tw;
  const SmallField& F = ctx.tw->small_field(ctx.e);
  int k = U.rank();
  // residual of each U-row modulo W, expanded over F_q
  FqMat res(k, ctx.cols());
  for (int i = 0; i < k; ++i) {
    std::vector<Element> v = U.fold_row(i);
    for (size_t r = 0; r < W.rows.size(); ++r) {
      Element f = v[W.pivots[r]];
      if (elt_is_zero(f)) continue;
      for (int j = 0; j <= ctx.d; ++j) v[j] = t.sub(v[j], t.mul(f, W.rows[r][j]));
    }
    auto row = U.expand_vec(v);
    for (int j = 0; j < ctx.cols(); ++j) res.at(i, j) = row[j];
  }
  FqMat ker = fq_null_space(res, F);  // combos of U-rows landing in W
  require(ker.rows > 0, "trivial intersection");
  FqMat basis(ker.rows, ctx.cols());
  for (int i = 0; i < ker.rows; ++i) {
    for (int t2 = 0; t2 < k; ++t2) {
      std::uint16_t c = ker.at(i, t2);
      if (!c) continue;
      for (int j = 0; j < ctx.cols(); ++j)
        basis.at(i, j) = F.add(basis.at(i, j), F.mul(c, U.mat.at(t2, j)));
    }
  }
  FqSubspace T;
  T.ctx = ctx;
  T.mat = std::move(basis);
  T.pivots = fq_rref(T.mat, F);
  return T;
}

/// Projective span over F_{q^n} of the vectors of U.
inline ProjSubspace proj_closure(const FqSubspace& U) {
  std::vector<std::vector<Element>> rows;
  for (int i = 0; i < U.rank(); ++i) rows.push_back(U.fold_row(i));
  return proj_span(U.ctx, std::move(rows));
}

inline bool spans_whole_space(const FqSubspace& U) {
  return proj_closure(U).dim_vec() == U.ctx.d + 1;
}

/// True iff L_U meets Omega in a canonical F_q-subgeometry of Omega.
///
/// Two routes are evaluated: the definition (weight r, every section point of
/// weight 1, section spans Omega) and, for r >= 2, the size-plus-spanning
/// characterization. Disagreement fails hard.
inline bool is_canonical_subgeometry(const FqSubspace& U, const ProjSubspace& W,
                                     u64 cap = kDefaultFieldCap) {
  const Context& ctx = U.ctx;
  int r = W.dim_vec();
  require(r >= 1, "empty subspace");
  int w = weight(U, W);
  bool route1 = false;
  bool have_section = w > 0;
  u64 section_size = 0;
  bool section_spans = false;
  if (have_section) {
    FqSubspace T = intersect(U, W);
    check(T.rank() == w, "intersection rank disagrees with weight");
    LinearSetReport tr = report(T, cap);
    section_size = tr.size;
    section_spans = proj_closure(T).dim_vec() == r;
    bool all_weight_one = tr.spectrum == std::vector<int>{1};
    route1 = (w == r) && all_weight_one && section_spans;
  }
  if (r >= 2) {
    bool route2 = have_section && section_size == geom_sum(ctx.q(), static_cast<unsigned>(r)) &&
                  section_spans;
    check(route1 == route2, "canonical-subgeometry characterizations disagree");
  }
  return route1;
}

/// Projection map from Omega: quotient coordinates are the pivot-free
/// coordinates of W, a fixed deterministic complement.
struct QuotientMap {
  ProjSubspace W;
  std::vector<int> keep;  // non-pivot coordinate indices, ascending
  Context quotient_ctx;

  std::vector<Element> apply(const std::vector<Element>& v) const {
    const Tower& t = *W.ctx.tw;
    std::vector<Element> w = v;
    for (size_t i = 0; i < W.rows.size(); ++i) {
      Element f = w[W.pivots[i]];
      if (elt_is_zero(f)) continue;
      for (size_t j = 0; j < w.size(); ++j) w[j] = t.sub(w[j], t.mul(f, W.rows[i][j]));
    }
    std::vector<Element> out;
    out.reserve(keep.size());
    for (int c : keep) out.push_back(w[c]);
    return out;
  }

  /// Section of the quotient back into the ambient space (zero at pivots).
  std::vector<Element> lift(const std::vector<Element>& v) const {
    std::vector<Element> out(W.ctx.d + 1, W.ctx.tw->zero());
    for (size_t i = 0; i < keep.size(); ++i) out[keep[i]] = v[i];
    return out;
  }
};

inline QuotientMap make_quotient(const ProjSubspace& W) {
  require(W.dim_vec() <= W.ctx.d, "cannot project from the whole space");
  QuotientMap qm;
  qm.W = W;
  std::set<int> piv(W.pivots.begin(), W.pivots.end());
  for (int c = 0; c <= W.ctx.d; ++c)
    if (!piv.count(c)) qm.keep.push_back(c);
  qm.quotient_ctx = Context{W.ctx.tw, W.ctx.e, W.ctx.m, W.ctx.d - W.dim_vec()};
  return qm;
}

/// Image of U in the quotient by Omega; rank drops by the weight of Omega.
inline FqSubspace project(const FqSubspace& U, const ProjSubspace& W) {
  require(W.ctx == U.ctx, "subspace from a different ambient space");
  require(W.dim_vec() <= U.ctx.d, "cannot project from the whole space");
  QuotientMap qm = make_quotient(W);
  std::vector<std::vector<Element>> imgs;
  for (int i = 0; i < U.rank(); ++i) {
    auto img = qm.apply(U.fold_row(i));
    bool zero = true;
    for (const auto& x : img)
      if (!elt_is_zero(x)) zero = false;
    if (!zero) imgs.push_back(std::move(img));
  }
  require(!imgs.empty(), "projection is trivial: U lies inside Omega");
  FqSubspace img = span_fq(qm.quotient_ctx, imgs);
  check(img.rank() == U.rank() - weight(U, W), "projection rank mismatch");
  if (spans_whole_space(U)) check(spans_whole_space(img), "projection lost the spanning property");
  return img;
}

/// Number of r-spaces through Omega (dim_proj r-1) containing a point of
/// L_U outside Omega, computed two independent ways: the size of the
/// projected linear set and direct bucketing of points by the span <Omega, P>.
inline u64 count_I_Omega(const FqSubspace& U, const ProjSubspace& W, u64 cap = kDefaultFieldCap) {
  // route (a): size of the projection
  FqSubspace img = project(U, W);
  u64 via_projection = enumerate_points(img, cap).size();

  // route (b): bucket points of L_U \ Omega by the r-space they span with Omega
  std::set<std::string> buckets;
  for (const ProjPoint& P : enumerate_points(U, cap)) {
    if (W.contains(P.v)) continue;
    std::vector<std::vector<Element>> gen = W.rows;
    gen.push_back(P.v);
    ProjSubspace span = proj_span(U.ctx, std::move(gen));
    buckets.insert(span.key());
  }
  check(via_projection == buckets.size(),
        "I_Omega disagreement between projection and bucketing");
  return via_projection;
}

}  // namespace linsets
