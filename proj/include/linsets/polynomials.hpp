// Univariate polynomials over a base field F_q of a tower: gcd, coprimality,
// irreducibility, Gauss's irreducible count, and pairwise-coprime systems.
#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "linsets/common.hpp"
#include "linsets/fields.hpp"
#include "linsets/fqlinalg.hpp"

namespace linsets {

/// Polynomial degree with the minus-infinity convention for the zero
/// polynomial, so deg(f*g) = deg(f) + deg(g) holds without exceptions.
struct Degree {
  bool finite = false;
  int v = 0;

  static Degree neg_inf() { return Degree{false, 0}; }
  static Degree of(int d) { return Degree{true, d}; }

  Degree operator+(const Degree& o) const {
    if (!finite || !o.finite) return neg_inf();
    return of(v + o.v);
  }
  bool operator==(const Degree&) const = default;
  bool operator<(const Degree& o) const {
    if (!finite) return o.finite;
    if (!o.finite) return false;
    return v < o.v;
  }
};

/// Polynomial over the base level of degree e; coefficients live in the tower
/// and are constrained to that level, stored low degree first and trimmed.
struct Poly {
  const Tower* tw = nullptr;
  int e = 1;
  std::vector<Element> c;

  static Poly zero(const Tower& t, int e) { return Poly{&t, e, {}}; }

  static Poly constant(const Tower& t, int e, const Element& a) {
    Poly f{&t, e, {a}};
    f.trim();
    return f;
  }

  static Poly one(const Tower& t, int e) { return constant(t, e, t.one()); }

  static Poly x(const Tower& t, int e) { return Poly{&t, e, {t.zero(), t.one()}}; }

  /// From base-field digit indices, low degree first (the text format).
  static Poly from_indices(const Tower& t, int e, const std::vector<std::uint32_t>& idx) {
    const SmallField& F = t.small_field(e);
    Poly f{&t, e, {}};
    for (auto i : idx) {
      require(i < F.q, "coefficient index out of range");
      f.c.push_back(F.elems[i]);
    }
    f.trim();
    return f;
  }

  void trim() {
    while (!c.empty() && elt_is_zero(c.back())) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }

  Degree degree() const {
    return c.empty() ? Degree::neg_inf() : Degree::of(static_cast<int>(c.size()) - 1);
  }

  int degree_int() const {
    require(!c.empty(), "zero polynomial has no finite degree");
    return static_cast<int>(c.size()) - 1;
  }

  const Element& lead() const {
    require(!c.empty(), "zero polynomial has no leading coefficient");
    return c.back();
  }

  bool is_monic() const { return !c.empty() && c.back() == tw->one(); }

  Poly add(const Poly& g) const {
    Poly r{tw, e, {}};
    r.c.resize(std::max(c.size(), g.c.size()), tw->zero());
    for (size_t i = 0; i < r.c.size(); ++i) {
      Element x = i < c.size() ? c[i] : tw->zero();
      Element y = i < g.c.size() ? g.c[i] : tw->zero();
      r.c[i] = tw->add(x, y);
    }
    r.trim();
    return r;
  }

  Poly sub(const Poly& g) const {
    Poly r{tw, e, {}};
    r.c.resize(std::max(c.size(), g.c.size()), tw->zero());
    for (size_t i = 0; i < r.c.size(); ++i) {
      Element x = i < c.size() ? c[i] : tw->zero();
      Element y = i < g.c.size() ? g.c[i] : tw->zero();
      r.c[i] = tw->sub(x, y);
    }
    r.trim();
    return r;
  }

  Poly mul(const Poly& g) const {
    Poly r{tw, e, {}};
    if (is_zero() || g.is_zero()) return r;
    r.c.assign(c.size() + g.c.size() - 1, tw->zero());
    for (size_t i = 0; i < c.size(); ++i) {
      if (elt_is_zero(c[i])) continue;
      for (size_t j = 0; j < g.c.size(); ++j)
        r.c[i + j] = tw->add(r.c[i + j], tw->mul(c[i], g.c[j]));
    }
    r.trim();
    return r;
  }

  /// Division with remainder; g nonzero.
  std::pair<Poly, Poly> divmod(const Poly& g) const {
    require(!g.is_zero(), "polynomial division by zero");
    Poly rem = *this;
    Poly quot{tw, e, {}};
    Element li = tw->inv(g.lead());
    int dg = g.degree_int();
    while (!rem.is_zero() && rem.degree_int() >= dg) {
      int shift = rem.degree_int() - dg;
      Element f = tw->mul(rem.lead(), li);
      if (quot.c.size() < static_cast<size_t>(shift + 1)) quot.c.resize(shift + 1, tw->zero());
      quot.c[shift] = tw->add(quot.c[shift], f);
      for (int i = 0; i <= dg; ++i)
        rem.c[shift + i] = tw->sub(rem.c[shift + i], tw->mul(f, g.c[i]));
      rem.trim();
    }
    quot.trim();
    return {quot, rem};
  }

  Poly mod(const Poly& g) const { return divmod(g).second; }

  Poly monic() const {
    require(!is_zero(), "cannot normalize the zero polynomial");
    Element li = tw->inv(lead());
    Poly r = *this;
    for (auto& a : r.c) a = tw->mul(li, a);
    return r;
  }

  /// Evaluate at a point of any tower level (Horner).
  Element eval(const Element& at) const {
    Element acc = tw->zero();
    for (size_t i = c.size(); i-- > 0;) acc = tw->add(tw->mul(acc, at), c[i]);
    return acc;
  }

  /// Formal derivative.
  Poly derivative() const {
    Poly r{tw, e, {}};
    for (size_t i = 1; i < c.size(); ++i) r.c.push_back(tw->scalar_mul(i, c[i]));
    r.trim();
    return r;
  }

  bool operator==(const Poly& o) const { return e == o.e && c == o.c; }

  /// Text format: base-field digit indices, low degree first ("1,1,0,1").
  std::string text() const {
    const SmallField& F = tw->small_field(e);
    std::ostringstream os;
    if (c.empty()) return "0";
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) os << ",";
      os << tw->expand(c[i], e, e)[0] % F.q;
    }
    return os.str();
  }

  static Poly parse(const Tower& t, int e, const std::string& s) {
    std::vector<std::uint32_t> idx;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) idx.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return from_indices(t, e, idx);
  }
};

/// Unique monic gcd; errors if both inputs are zero.
inline Poly gcd_monic(Poly f, Poly g) {
  require(!(f.is_zero() && g.is_zero()), "gcd of two zero polynomials");
  while (!g.is_zero()) {
    Poly r = f.mod(g);
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

inline bool coprime(const Poly& f, const Poly& g) {
  Poly d = gcd_monic(f, g);
  return d.degree() == Degree::of(0);
}

/// All monic polynomials of the given degree over F_q, in the canonical order
/// (coefficient tuples compared highest power first).
inline std::vector<Poly> monic_polys_of_degree(const Tower& t, int e, int deg) {
  const SmallField& F = t.small_field(e);
  std::vector<Element> sorted = F.elems;
  std::sort(sorted.begin(), sorted.end(), elt_less);
  u64 total = checked_pow(F.q, static_cast<unsigned>(deg));
  std::vector<Poly> out;
  out.reserve(total);
  for (u64 v = 0; v < total; ++v) {
    Poly f{&t, e, {}};
    f.c.assign(deg + 1, t.zero());
    u64 x = v;
    for (int i = 0; i < deg; ++i) {
      f.c[i] = sorted[x % F.q];
      x /= F.q;
    }
    f.c[deg] = t.one();
    out.push_back(std::move(f));
  }
  return out;
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most deg/2. Exact and fast at desk scale; refuses degrees above 16.
inline bool is_irreducible(const Poly& f) {
  if (f.is_zero()) return false;
  int d = f.degree_int();
  if (d == 0) return false;
  if (d == 1) return true;
  require(d <= 16, "irreducibility test limited to degree 16");
  for (int dd = 1; 2 * dd <= d; ++dd) {
    for (const Poly& g : monic_polys_of_degree(*f.tw, f.e, dd)) {
      if (f.mod(g).is_zero()) return false;
    }
  }
  return true;
}

/// Number of monic irreducible polynomials of degree s over F_q:
/// (1/s) * sum over h | s of mu(s/h) q^h.
inline u64 count_irreducible(u64 q, int s) {
  require(s >= 1, "degree must be at least 1");
  __int128 acc = 0;
  for (int h : divisors_of(s)) {
    __int128 term = 1;
    for (int i = 0; i < h; ++i) term *= static_cast<__int128>(q);
    acc += term * moebius(s / h);
  }
  check(acc > 0 && acc % s == 0, "Gauss count must be a positive multiple of s");
  acc /= s;
  check(acc <= static_cast<__int128>(UINT64_MAX), "irreducible count overflows");
  return static_cast<u64>(acc);
}

/// The first `count` monic irreducibles of the given degree in canonical order.
inline std::vector<Poly> first_irreducibles(const Tower& t, int e, int deg, u64 count) {
  std::vector<Poly> out;
  for (const Poly& f : monic_polys_of_degree(t, e, deg)) {
    if (is_irreducible(f)) {
      out.push_back(f);
      if (out.size() == count) break;
    }
  }
  return out;
}

/// Searches for pairwise coprime monic polynomials with deg(f_i) = ks[i] - 1.
///
/// Strategy, in order: products of distinct linear factors over disjoint
/// subsets of F_q when sum(ks[i]-1) <= q; distinct monic irreducibles per
/// degree class when the Gauss counts allow it; exhaustive lexicographic
/// backtracking within the node budget. Returns nothing when no system is
/// found within budget.
inline std::optional<std::vector<Poly>> coprime_system(const Tower& t, int e,
                                                       const std::vector<int>& ks,
                                                       u64 budget = 200000) {
  for (int k : ks) require(k >= 1, "each requested degree bound must be >= 1");
  const SmallField& F = t.small_field(e);
  u64 q = F.q;
  size_t m = ks.size();
  u64 total_deg = 0;
  for (int k : ks) total_deg += static_cast<u64>(k - 1);

  std::vector<Element> sorted = F.elems;
  std::sort(sorted.begin(), sorted.end(), elt_less);

  if (total_deg <= q) {
    // disjoint addend sets: f_i = prod (x + a) over its slice of F_q
    std::vector<Poly> out;
    size_t next = 0;
    for (int k : ks) {
      Poly f = Poly::one(t, e);
      for (int j = 0; j < k - 1; ++j) {
        Poly lin{&t, e, {sorted[next++], t.one()}};
        f = f.mul(lin);
      }
      out.push_back(std::move(f));
    }
    return out;
  }

  // one irreducible per slot, distinct within each degree class
  {
    std::map<int, u64> need;
    for (int k : ks)
      if (k >= 2) need[k - 1] += 1;
    bool fits = true;
    for (auto& [deg, cnt] : need)
      if (cnt > count_irreducible(q, deg)) fits = false;
    if (fits) {
      std::map<int, std::vector<Poly>> pool;
      for (auto& [deg, cnt] : need) pool[deg] = first_irreducibles(t, e, deg, cnt);
      std::map<int, size_t> used;
      std::vector<Poly> out;
      for (int k : ks) {
        if (k == 1) {
          out.push_back(Poly::one(t, e));
        } else {
          out.push_back(pool[k - 1][used[k - 1]++]);
        }
      }
      return out;
    }
  }

  // lexicographic backtracking
  std::vector<std::vector<Poly>> cands(m);
  for (size_t i = 0; i < m; ++i)
    cands[i] = (ks[i] == 1) ? std::vector<Poly>{Poly::one(t, e)}
                            : monic_polys_of_degree(t, e, ks[i] - 1);
  std::vector<Poly> chosen;
  u64 nodes = 0;
  bool exhausted_budget = false;
  auto rec = [&](auto&& self, size_t i) -> bool {
    if (i == m) return true;
    for (const Poly& f : cands[i]) {
      if (++nodes > budget) {
        exhausted_budget = true;
        return false;
      }
      bool ok = true;
      for (const Poly& g : chosen) {
        if (!coprime(f, g)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(f);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (rec(rec, 0)) return chosen;
  if (exhausted_budget)
    throw BudgetExceeded("coprime_system: backtracking budget exhausted");
  return std::nullopt;
}

/// Minimal polynomial of a over F_q together with its degree.
inline std::pair<Poly, int> minimal_poly_and_degree(const Tower& t, const Element& a, int e) {
  int deg = t.degree_over(a, e);
  int level = std::lcm(t.degree_abs(a), e);  // degree of F_q(a) over F_p
  const SmallField& F = t.small_field(e);
  int n = level / e;
  check(deg == n, "degree bookkeeping mismatch");

  // coordinates of 1, a, ..., a^deg over F_q inside F_q(a)
  FqMat rows(deg, n);
  Element p = t.one();
  for (int i = 0; i < deg; ++i) {
    auto coords = t.expand(p, e, level);
    for (int j = 0; j < n; ++j) rows.at(i, j) = coords[j];
    p = t.mul(p, a);
  }
  auto top = t.expand(p, e, level);  // a^deg
  // express a^deg in the power basis by reducing against [rows | I]
  FqMat aug(deg, n + deg);
  for (int i = 0; i < deg; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = rows.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto piv2 = fq_rref(aug, F);
  std::vector<std::uint16_t> res(top.begin(), top.end());
  std::vector<std::uint16_t> comb(deg, 0);
  for (size_t tt = 0; tt < piv2.size(); ++tt) {
    if (piv2[tt] >= n) continue;
    std::uint16_t c = res[piv2[tt]];
    if (!c) continue;
    for (int j = piv2[tt]; j < n; ++j)
      res[j] = F.sub(res[j], F.mul(c, aug.at(static_cast<int>(tt), j)));
    for (int j = 0; j < deg; ++j)
      comb[j] = F.add(comb[j], F.mul(c, aug.at(static_cast<int>(tt), n + j)));
  }
  check(fq_row_is_zero(res.data(), n), "minimal polynomial solve failed");

  Poly f{&t, e, {}};
  f.c.assign(deg + 1, t.zero());
  for (int i = 0; i < deg; ++i) f.c[i] = t.neg(F.elems[comb[i]]);
  f.c[deg] = t.one();
  check(elt_is_zero(f.eval(a)), "minimal polynomial must vanish at a");
  return {f, deg};
}

}  // namespace linsets
