// F_q-subspaces U of F_{q^n}^{d+1} and their linear sets L_U: point
// enumeration, weights, weight distribution and spectrum, identity checks,
// and field-of-linearity tests.
//
// A subspace is stored as the reduced row echelon form, over F_q, of the
// expansion of its vectors into F_q-coordinates (n per ambient coordinate,
// with respect to the power basis of the working-field generator). Two
// subspaces are equal iff their matrices are identical.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "linsets/common.hpp"
#include "linsets/fields.hpp"
#include "linsets/fqlinalg.hpp"

namespace linsets {

struct FqSubspace {
  Context ctx;
  FqMat mat;  // RREF over F_q, cols = (d+1) * n
  std::vector<int> pivots;

  int rank() const { return mat.rows; }

  /// Folds row i back into a vector of F_{q^n}^{d+1}.
  std::vector<Element> fold_row(int i) const {
    std::vector<Element> v(ctx.d + 1);
    for (int j = 0; j <= ctx.d; ++j)
      v[j] = ctx.tw->fold(mat.row(i) + static_cast<size_t>(j) * ctx.n(), ctx.e, ctx.m);
    return v;
  }

  std::vector<std::uint16_t> expand_vec(const std::vector<Element>& v) const {
    require(static_cast<int>(v.size()) == ctx.d + 1, "ambient dimension mismatch");
    std::vector<std::uint16_t> row(ctx.cols());
    for (int j = 0; j <= ctx.d; ++j) {
      auto coords = ctx.tw->expand(v[j], ctx.e, ctx.m);
      std::copy(coords.begin(), coords.end(), row.begin() + static_cast<size_t>(j) * ctx.n());
    }
    return row;
  }

  bool contains(const std::vector<Element>& v) const {
    auto row = expand_vec(v);
    fq_reduce_row(row.data(), mat, pivots, ctx.tw->small_field(ctx.e));
    return fq_row_is_zero(row.data(), mat.cols);
  }

  bool operator==(const FqSubspace& o) const { return ctx == o.ctx && mat == o.mat; }
};

/// Canonical F_q-span of ambient vectors; errors when the span is trivial.
inline FqSubspace span_fq(const Context& ctx, const std::vector<std::vector<Element>>& vectors) {
  ctx.validate();
  require(!vectors.empty(), "span of an empty family");
  FqSubspace U;
  U.ctx = ctx;
  U.mat = FqMat(static_cast<int>(vectors.size()), ctx.cols());
  for (size_t i = 0; i < vectors.size(); ++i) {
    require(static_cast<int>(vectors[i].size()) == ctx.d + 1, "ambient dimension mismatch");
    for (int j = 0; j <= ctx.d; ++j) {
      auto coords = ctx.tw->expand(vectors[i][j], ctx.e, ctx.m);
      for (int l = 0; l < ctx.n(); ++l) U.mat.at(static_cast<int>(i), j * ctx.n() + l) = coords[l];
    }
  }
  U.pivots = fq_rref(U.mat, ctx.tw->small_field(ctx.e));
  require(U.mat.rows > 0, "all input vectors are zero");
  return U;
}

/// Projective point, stored with its first nonzero coordinate normalized to 1.
struct ProjPoint {
  std::vector<Element> v;
  bool operator==(const ProjPoint&) const = default;
};

inline ProjPoint normalize_point(const Context& ctx, std::vector<Element> v) {
  int pos = -1;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!elt_is_zero(v[i])) {
      pos = static_cast<int>(i);
      break;
    }
  }
  require(pos >= 0, "cannot normalize the zero vector");
  Element s = ctx.tw->inv(v[pos]);
  for (auto& x : v) x = ctx.tw->mul(s, x);
  return ProjPoint{std::move(v)};
}

/// Byte key whose lexicographic order equals the canonical point order
/// (coordinate 0 most significant; each coordinate by integer value).
inline std::string point_key(const Context& ctx, const std::vector<Element>& v) {
  std::string key;
  int nn = ctx.tw->top_degree();
  key.reserve(v.size() * nn * 2);
  for (const Element& a : v) {
    for (int i = nn - 1; i >= 0; --i) {
      key.push_back(static_cast<char>(a.c[i] >> 8));
      key.push_back(static_cast<char>(a.c[i] & 0xff));
    }
  }
  return key;
}

namespace detail {

/// Visits one coordinate row per F_q-class of U \ {0}: scalar tuples over the
/// echelon basis whose first nonzero entry is 1, which is exactly
/// (q^k - 1)/(q - 1) representatives, one per class.
template <class Fn>
void for_each_class(const FqSubspace& U, Fn&& fn) {
  const SmallField& F = U.ctx.tw->small_field(U.ctx.e);
  int k = U.rank();
  int cols = U.mat.cols;
  u64 q = F.q;
  // scaled[i][c] = c * row_i
  std::vector<std::vector<std::uint16_t>> scaled(static_cast<size_t>(k) * q);
  for (int i = 0; i < k; ++i) {
    for (u64 c = 0; c < q; ++c) {
      auto& row = scaled[i * q + c];
      row.resize(cols);
      for (int j = 0; j < cols; ++j)
        row[j] = F.mul(static_cast<std::uint16_t>(c), U.mat.at(i, j));
    }
  }
  std::vector<std::vector<std::uint16_t>> buf(k + 1, std::vector<std::uint16_t>(cols, 0));
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      fn(buf[k].data());
      return;
    }
    for (u64 c = 0; c < q; ++c) {
      const auto& add = scaled[i * q + c];
      for (int j = 0; j < cols; ++j) buf[i + 1][j] = F.add(buf[i][j], add[j]);
      self(self, i + 1);
    }
  };
  for (int first = 0; first < k; ++first) {
    // digits before `first` are zero, digit at `first` is 1
    std::copy(U.mat.row(first), U.mat.row(first) + cols, buf[first + 1].begin());
    rec(rec, first + 1);
  }
}

/// Multiplication-by-zeta data for weight solves: applying the working-field
/// generator to a coordinate block is a shift plus a tail correction.
struct Companion {
  std::vector<std::uint16_t> z;  // coordinates of zeta^n over F_q

  static Companion make(const Context& ctx) {
    Companion c;
    Element zn = ctx.tw->gen_pow(ctx.m, ctx.n());
    auto coords = ctx.tw->expand(zn, ctx.e, ctx.m);
    c.z.assign(coords.begin(), coords.end());
    return c;
  }

  void apply(const Context& ctx, const SmallField& F, std::uint16_t* row) const {
    int n = ctx.n();
    for (int b = 0; b <= ctx.d; ++b) {
      std::uint16_t* blk = row + static_cast<size_t>(b) * n;
      std::uint16_t top = blk[n - 1];
      for (int i = n - 1; i >= 1; --i) blk[i] = blk[i - 1];
      blk[0] = 0;
      if (top)
        for (int i = 0; i < n; ++i) blk[i] = F.add(blk[i], F.mul(top, z[i]));
    }
  }
};

/// Weight of the point with representative row `rep` (any F_q-class of it):
/// n minus the rank of the residuals of zeta^l * v modulo U, l = 1..n-1.
inline int weight_from_rep(const FqSubspace& U, const Companion& comp,
                           const std::uint16_t* rep, std::vector<std::uint16_t>& scratch,
                           FqMat& residuals) {
  const Context& ctx = U.ctx;
  const SmallField& F = ctx.tw->small_field(ctx.e);
  int cols = ctx.cols();
  int n = ctx.n();
  scratch.assign(rep, rep + cols);
  residuals.rows = 0;
  residuals.cols = cols;
  residuals.a.clear();
  for (int l = 1; l < n; ++l) {
    comp.apply(ctx, F, scratch.data());
    std::vector<std::uint16_t> r(scratch);
    fq_reduce_row(r.data(), U.mat, U.pivots, F);
    if (!fq_row_is_zero(r.data(), cols)) {
      residuals.rows += 1;
      residuals.a.insert(residuals.a.end(), r.begin(), r.end());
    }
  }
  int rank = residuals.rows ? fq_rank(residuals, F) : 0;
  return n - rank;
}

}  // namespace detail

/// Deduplicated, canonically sorted points of L_U.
inline std::vector<ProjPoint> enumerate_points(const FqSubspace& U,
                                               u64 cap = kDefaultFieldCap) {
  const Context& ctx = U.ctx;
  u64 vectors = checked_pow(ctx.q(), static_cast<unsigned>(U.rank()));
  if (vectors > cap) throw CapExceeded("subspace enumeration exceeds cap");
  std::map<std::string, ProjPoint> seen;
  detail::for_each_class(U, [&](const std::uint16_t* row) {
    std::vector<Element> v(ctx.d + 1);
    for (int j = 0; j <= ctx.d; ++j)
      v[j] = ctx.tw->fold(row + static_cast<size_t>(j) * ctx.n(), ctx.e, ctx.m);
    ProjPoint p = normalize_point(ctx, std::move(v));
    std::string key = point_key(ctx, p.v);
    seen.emplace(std::move(key), std::move(p));
  });
  std::vector<ProjPoint> out;
  out.reserve(seen.size());
  for (auto& [k, p] : seen) out.push_back(std::move(p));
  return out;
}

/// Weight of a point: dim_{F_q} { alpha in F_{q^n} : alpha * v in U },
/// computed by an n-dimensional linear solve (never by field enumeration).
inline int weight(const FqSubspace& U, const std::vector<Element>& point_rep) {
  const Context& ctx = U.ctx;
  auto rep = U.expand_vec(point_rep);
  // the point need not lie in L_U; include l = 0 in the residual stack then
  const SmallField& F = ctx.tw->small_field(ctx.e);
  detail::Companion comp = detail::Companion::make(ctx);
  int cols = ctx.cols();
  FqMat residuals(0, cols);
  std::vector<std::uint16_t> cur(rep);
  for (int l = 0; l < ctx.n(); ++l) {
    if (l) comp.apply(ctx, F, cur.data());
    std::vector<std::uint16_t> r(cur);
    fq_reduce_row(r.data(), U.mat, U.pivots, F);
    if (!fq_row_is_zero(r.data(), cols)) {
      residuals.rows += 1;
      residuals.a.insert(residuals.a.end(), r.begin(), r.end());
    }
  }
  int rank = residuals.rows ? fq_rank(residuals, F) : 0;
  return ctx.n() - rank;
}

inline int weight(const FqSubspace& U, const ProjPoint& p) { return weight(U, p.v); }

struct LinearSetReport {
  u64 size = 0;
  int rank = 0;
  std::vector<u64> N;          // N[i] = number of points of weight i, i = 1..n
  std::vector<int> spectrum;   // sorted distinct weights
  bool id_card_sum = false;    // (1) |L_U| = sum N_i
  bool id_vector_count = false;  // (2) sum N_i (q^i-1)/(q-1) = (q^k-1)/(q-1)
  bool id_upper_bound = false;   // (3) |L_U| <= (q^k-1)/(q-1)
  bool id_mod_q = false;         // (4) |L_U| = 1 mod q
  std::vector<ProjPoint> points;
  std::vector<int> weights;  // aligned with points

  bool identities_hold() const {
    return id_card_sum && id_vector_count && id_upper_bound && id_mod_q;
  }
};

/// Full weight data of L_U with the four weight-distribution identities.
/// Violations of (1) or (2) mean an internal bug and fail hard.
inline LinearSetReport report(const FqSubspace& U, u64 cap = kDefaultFieldCap) {
  const Context& ctx = U.ctx;
  u64 q = ctx.q();
  u64 vectors = checked_pow(q, static_cast<unsigned>(U.rank()));
  if (vectors > cap) throw CapExceeded("report enumeration exceeds cap");
  const SmallField& F = ctx.tw->small_field(ctx.e);
  detail::Companion comp = detail::Companion::make(ctx);

  // collect one representative row per distinct point
  std::map<std::string, std::vector<std::uint16_t>> reps;
  detail::for_each_class(U, [&](const std::uint16_t* row) {
    std::vector<Element> v(ctx.d + 1);
    for (int j = 0; j <= ctx.d; ++j)
      v[j] = ctx.tw->fold(row + static_cast<size_t>(j) * ctx.n(), ctx.e, ctx.m);
    ProjPoint p = normalize_point(ctx, std::move(v));
    std::string key = point_key(ctx, p.v);
    auto it = reps.find(key);
    if (it == reps.end()) reps.emplace(std::move(key), std::vector<std::uint16_t>(row, row + ctx.cols()));
  });

  LinearSetReport rep;
  rep.rank = U.rank();
  rep.size = reps.size();
  rep.N.assign(ctx.n() + 1, 0);
  std::vector<std::uint16_t> scratch;
  FqMat residuals(0, ctx.cols());
  for (auto& [key, row] : reps) {
    int w = detail::weight_from_rep(U, comp, row.data(), scratch, residuals);
    check(w >= 1 && w <= ctx.n(), "point weight out of range");
    rep.N[w] += 1;
    rep.weights.push_back(w);
    std::vector<Element> v(ctx.d + 1);
    for (int j = 0; j <= ctx.d; ++j)
      v[j] = ctx.tw->fold(row.data() + static_cast<size_t>(j) * ctx.n(), ctx.e, ctx.m);
    rep.points.push_back(normalize_point(ctx, std::move(v)));
  }
  for (int i = 1; i <= ctx.n(); ++i)
    if (rep.N[i]) rep.spectrum.push_back(i);

  u64 nsum = 0, vsum = 0;
  for (int i = 1; i <= ctx.n(); ++i) {
    nsum += rep.N[i];
    vsum += rep.N[i] * geom_sum(q, static_cast<unsigned>(i));
  }
  u64 classes = geom_sum(q, static_cast<unsigned>(rep.rank));
  rep.id_card_sum = (nsum == rep.size);
  rep.id_vector_count = (vsum == classes);
  rep.id_upper_bound = (rep.size <= classes);
  rep.id_mod_q = (rep.size % q == 1);
  check(rep.id_card_sum, "identity (1) violated: weight counts do not sum to the size");
  check(rep.id_vector_count, "identity (2) violated: weighted class count mismatch");
  return rep;
}

/// Largest divisor s of n such that U is closed under F_{q^s}-multiplication.
inline int max_field_of_linearity(const FqSubspace& U) {
  const Context& ctx = U.ctx;
  auto divs = divisors_of(ctx.n());
  for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
    int s = *it;
    Element g = ctx.tw->generator(ctx.e * s);
    bool closed = true;
    for (int i = 0; i < U.rank() && closed; ++i) {
      auto v = U.fold_row(i);
      for (auto& x : v) x = ctx.tw->mul(g, x);
      closed = U.contains(v);
    }
    if (closed) return s;
  }
  return 1;
}

struct Secant {
  ProjPoint a, b;  // two points of L_U spanning the line
};

/// A line meeting L_U in exactly q+1 points, if one exists. Such a line
/// certifies that the maximum geometric field of linearity is F_q itself.
inline std::optional<Secant> secant_witness(const FqSubspace& U, u64 cap = kDefaultFieldCap,
                                            u64 work_budget = u64(200) * 1000 * 1000) {
  const Context& ctx = U.ctx;
  require(ctx.d >= 1, "secants need an ambient line at least");
  auto pts = enumerate_points(U, cap);
  size_t P = pts.size();
  if (P * P * P > work_budget) throw CapExceeded("secant scan exceeds its work budget");
  u64 target = ctx.q() + 1;
  const Tower& t = *ctx.tw;
  for (size_t i = 0; i < P; ++i) {
    for (size_t j = i + 1; j < P; ++j) {
      // echelonize the two spanning vectors over F_{q^n}
      std::vector<std::vector<Element>> basis = {pts[i].v, pts[j].v};
      // positions of the two leading coordinates
      int p0 = 0;
      while (elt_is_zero(basis[0][p0])) ++p0;
      // clear row 1 at p0 then normalize
      if (!elt_is_zero(basis[1][p0])) {
        Element f = basis[1][p0];  // basis[0][p0] == 1 already
        for (int c = 0; c <= ctx.d; ++c) basis[1][c] = t.sub(basis[1][c], t.mul(f, basis[0][c]));
      }
      int p1 = 0;
      while (p1 <= ctx.d && elt_is_zero(basis[1][p1])) ++p1;
      if (p1 > ctx.d) continue;  // same point (cannot happen: points distinct)
      Element inv1 = t.inv(basis[1][p1]);
      for (int c = 0; c <= ctx.d; ++c) basis[1][c] = t.mul(inv1, basis[1][c]);
      Element f0 = basis[0][p1];
      for (int c = 0; c <= ctx.d; ++c) basis[0][c] = t.sub(basis[0][c], t.mul(f0, basis[1][c]));

      u64 on_line = 0;
      for (size_t r = 0; r < P; ++r) {
        std::vector<Element> w = pts[r].v;
        if (!elt_is_zero(w[p0])) {
          Element f = w[p0];
          for (int c = 0; c <= ctx.d; ++c) w[c] = t.sub(w[c], t.mul(f, basis[0][c]));
        }
        if (!elt_is_zero(w[p1])) {
          Element f = w[p1];
          for (int c = 0; c <= ctx.d; ++c) w[c] = t.sub(w[c], t.mul(f, basis[1][c]));
        }
        bool zero = true;
        for (int c = 0; c <= ctx.d && zero; ++c) zero = elt_is_zero(w[c]);
        if (zero) ++on_line;
      }
      if (on_line == target) return Secant{pts[i], pts[j]};
    }
  }
  return std::nullopt;
}

}  // namespace linsets
