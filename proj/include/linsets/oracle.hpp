// Independent brute-force recomputation of linear-set reports, random
// instance generation, and the tiny geometric-field-of-linearity search.
//
// The oracle deliberately stays dumb: it iterates all q^k - 1 nonzero vectors
// of U, normalizes each, and reads weights off point multiplicities. It
// shares only the field-arithmetic layer with the fast path.
#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linsets/common.hpp"
#include "linsets/fields.hpp"
#include "linsets/linset.hpp"
#include "linsets/projgeo.hpp"

namespace linsets::oracle {

struct OracleConfig {
  u64 max_vectors = kDefaultFieldCap;
  u64 seed = 1;

  void validate() const { require(max_vectors > 0, "cap must be positive"); }
};

namespace detail {

inline std::string raw_key(const std::vector<Element>& v, int top_degree) {
  std::string key;
  key.reserve(v.size() * top_degree * 2);
  for (const Element& a : v) {
    for (int i = top_degree - 1; i >= 0; --i) {
      key.push_back(static_cast<char>(a.c[i] >> 8));
      key.push_back(static_cast<char>(a.c[i] & 0xff));
    }
  }
  return key;
}

}  // namespace detail

/// Exhaustive report: every nonzero vector of U, normalized and tallied.
/// A point of weight w is hit by exactly q^w - 1 vectors, so weights are
/// exact logarithms of multiplicities (asserted).
inline LinearSetReport exhaustive_report(const FqSubspace& U, OracleConfig cfg = {}) {
  cfg.validate();
  const Context& ctx = U.ctx;
  const Tower& t = *ctx.tw;
  u64 q = ctx.q();
  int k = U.rank();
  u64 vectors = checked_pow(q, static_cast<unsigned>(k));
  if (vectors > cfg.max_vectors) throw CapExceeded("oracle enumeration exceeds cap");

  const SmallField& F = t.small_field(ctx.e);
  int width = ctx.d + 1;
  std::vector<std::vector<Element>> basis;
  for (int i = 0; i < k; ++i) basis.push_back(U.fold_row(i));

  // scaled[i][c] = c * basis_i, so each enumeration step is a vector add
  std::vector<std::vector<Element>> scaled(static_cast<size_t>(k) * q);
  for (int i = 0; i < k; ++i)
    for (u64 c = 0; c < q; ++c) {
      auto& row = scaled[i * q + c];
      row.resize(width);
      for (int j = 0; j < width; ++j) row[j] = t.mul(F.elems[c], basis[i][j]);
    }

  std::map<std::string, std::pair<std::vector<Element>, u64>> tally;
  std::vector<std::vector<Element>> buf(k + 1, std::vector<Element>(width, t.zero()));
  auto rec = [&](auto&& self, int i, bool nonzero) -> void {
    if (i == k) {
      if (!nonzero) return;
      std::vector<Element> v = buf[k];
      int pos = 0;
      while (elt_is_zero(v[pos])) ++pos;
      Element s = t.inv(v[pos]);
      for (auto& x : v) x = t.mul(s, x);
      auto key = detail::raw_key(v, t.top_degree());
      auto it = tally.find(key);
      if (it == tally.end()) tally.emplace(std::move(key), std::make_pair(std::move(v), u64(1)));
      else it->second.second += 1;
      return;
    }
    for (u64 c = 0; c < q; ++c) {
      const auto& add = scaled[i * q + c];
      for (int j = 0; j < width; ++j) buf[i + 1][j] = t.add(buf[i][j], add[j]);
      self(self, i + 1, nonzero || c != 0);
    }
  };
  rec(rec, 0, false);

  LinearSetReport rep;
  rep.rank = k;
  rep.size = tally.size();
  rep.N.assign(ctx.n() + 1, 0);
  for (auto& [key, entry] : tally) {
    u64 mult = entry.second;
    // mult = q^w - 1
    u64 x = mult + 1;
    int w = 0;
    while (x > 1) {
      check(x % q == 0, "oracle multiplicity is not q^w - 1");
      x /= q;
      ++w;
    }
    check(w >= 1 && w <= ctx.n(), "oracle weight out of range");
    rep.N[w] += 1;
    rep.points.push_back(ProjPoint{entry.first});
    rep.weights.push_back(w);
  }
  for (int i = 1; i <= ctx.n(); ++i)
    if (rep.N[i]) rep.spectrum.push_back(i);
  u64 nsum = 0, vsum = 0;
  for (int i = 1; i <= ctx.n(); ++i) {
    nsum += rep.N[i];
    vsum += rep.N[i] * geom_sum(q, static_cast<unsigned>(i));
  }
  rep.id_card_sum = nsum == rep.size;
  rep.id_vector_count = vsum == geom_sum(q, static_cast<unsigned>(k));
  rep.id_upper_bound = rep.size <= geom_sum(q, static_cast<unsigned>(k));
  rep.id_mod_q = rep.size % q == 1;
  return rep;
}

/// Field-by-field equality of two reports, points and weights included.
inline bool same_report(const LinearSetReport& a, const LinearSetReport& b) {
  return a.size == b.size && a.rank == b.rank && a.N == b.N && a.spectrum == b.spectrum &&
         a.points == b.points && a.weights == b.weights &&
         a.id_card_sum == b.id_card_sum && a.id_vector_count == b.id_vector_count &&
         a.id_upper_bound == b.id_upper_bound && a.id_mod_q == b.id_mod_q;
}

/// Uniform random k-dimensional subspace via a random full-rank matrix over
/// F_q with rejection; reproducible from the seed.
inline FqSubspace random_subspace(const Context& ctx, int k, u64 seed) {
  ctx.validate();
  require(k >= 1 && k <= ctx.cols(), "k must lie in [1, (d+1) n]");
  const SmallField& F = ctx.tw->small_field(ctx.e);
  std::mt19937_64 rng(seed);
  while (true) {
    FqMat m(k, ctx.cols());
    for (auto& x : m.a) x = static_cast<std::uint16_t>(rng() % F.q);
    FqMat probe = m;
    if (static_cast<int>(fq_rref(probe, F).size()) != k) continue;
    FqSubspace U;
    U.ctx = ctx;
    U.mat = std::move(m);
    U.pivots = fq_rref(U.mat, F);
    return U;
  }
}

enum class GeomStatus { Yes, No, Inconclusive };

struct GeomSearchResult {
  GeomStatus status = GeomStatus::Inconclusive;
  std::string how;
};

/// Is L_U, as a point set, equal to some F_{q^s}-linear set? Answers with a
/// certificate where one is cheap: base-field closure or full-subspace point
/// sets give yes; a line section of size strictly between 1 and q^s + 1
/// gives no; otherwise F_{q^s}-spans of subsets of point representatives are
/// tried within the budget, and exhaustion is reported as inconclusive.
inline GeomSearchResult tiny_geometric_field_search(const FqSubspace& U, int s,
                                                    u64 cap = kDefaultFieldCap,
                                                    u64 budget = 2000) {
  const Context& ctx = U.ctx;
  const Tower& t = *ctx.tw;
  require(s >= 1 && ctx.n() % s == 0, "s must divide n");
  if (s == 1) return {GeomStatus::Yes, "every F_q-linear set is F_q-linear"};

  // closure of U itself under F_{q^s}
  {
    Element g = t.generator(ctx.e * s);
    bool closed = true;
    for (int i = 0; i < U.rank() && closed; ++i) {
      auto v = U.fold_row(i);
      for (auto& x : v) x = t.mul(g, x);
      closed = U.contains(v);
    }
    if (closed) return {GeomStatus::Yes, "U is itself an F_{q^s}-subspace"};
  }

  auto pts = enumerate_points(U, cap);
  u64 qs = checked_pow(ctx.q(), static_cast<unsigned>(s));

  // full projective subspace as a point set
  {
    std::vector<std::vector<Element>> rows;
    for (const auto& p : pts) rows.push_back(p.v);
    ProjSubspace closure = proj_span(ctx, std::move(rows));
    if (pts.size() == geom_sum(ctx.qn(), static_cast<unsigned>(closure.dim_vec())))
      return {GeomStatus::Yes, "L_U is the full point set of a projective subspace"};
  }

  // line-section certificate: an F_{q^s}-linear set meets every line in
  // 0, 1, or at least q^s + 1 points
  size_t P = pts.size();
  if (ctx.d >= 1 && P * P * P <= u64(200) * 1000 * 1000) {
    for (size_t i = 0; i < P; ++i) {
      for (size_t j = i + 1; j < P; ++j) {
        std::vector<std::vector<Element>> line_rows = {pts[i].v, pts[j].v};
        ProjSubspace line = proj_span(ctx, std::move(line_rows));
        u64 on_line = 0;
        for (size_t r = 0; r < P; ++r)
          if (line.contains(pts[r].v)) ++on_line;
        if (on_line > 1 && on_line < qs + 1) {
          std::ostringstream os;
          os << "a line meets L_U in " << on_line << " points, impossible for an F_{q^" << s
             << "}-linear set";
          return {GeomStatus::No, os.str()};
        }
      }
    }
  }

  // exhaustive search over F_{q^s}-spans of subsets of point representatives
  if (!t.has_small_field(ctx.e * s))
    return {GeomStatus::Inconclusive, "no tabled field of degree q^s in this tower"};
  Context sctx{ctx.tw, ctx.e * s, ctx.m, ctx.d};
  std::set<std::string> target;
  for (const auto& p : pts) target.insert(point_key(ctx, p.v));
  std::set<std::string> seen_spans;
  u64 tried = 0;
  // subsets by increasing size, lexicographic within a size
  for (size_t sz = 1; sz <= P; ++sz) {
    std::vector<size_t> idx(sz);
    for (size_t i = 0; i < sz; ++i) idx[i] = i;
    while (true) {
      if (++tried > budget)
        return {GeomStatus::Inconclusive, "subset-search budget exhausted"};
      std::vector<std::vector<Element>> gens;
      for (size_t i : idx) gens.push_back(pts[i].v);
      FqSubspace Us = span_fq(sctx, gens);
      std::string mkey(reinterpret_cast<const char*>(Us.mat.a.data()),
                       Us.mat.a.size() * sizeof(std::uint16_t));
      if (seen_spans.insert(mkey).second) {
        u64 sz_vectors = checked_pow(sctx.q(), static_cast<unsigned>(Us.rank()));
        if (sz_vectors <= cap) {
          auto spts = enumerate_points(Us, cap);
          if (spts.size() == P) {
            bool equal = true;
            for (const auto& p : spts)
              if (!target.count(point_key(ctx, p.v))) {
                equal = false;
                break;
              }
            if (equal)
              return {GeomStatus::Yes, "found an F_{q^s}-subspace with the same point set"};
          }
        }
      }
      int i = static_cast<int>(sz) - 1;
      while (i >= 0 && idx[i] == P - sz + static_cast<size_t>(i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (size_t j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return {GeomStatus::Inconclusive, "search space exhausted without a witness"};
}

}  // namespace linsets::oracle
