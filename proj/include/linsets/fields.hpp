// Exact arithmetic in finite field towers F_p <= F_q <= F_{q^t} <= F_{q^n}.
//
// The whole tower lives inside one concrete top field F_p[x]/(F(x)), where F
// is the lexicographically least monic irreducible of the top degree. Every
// element is a flat coefficient vector over F_p; a subfield of degree m is the
// fixed space of the m-th Frobenius power, so embeddings between levels are
// the identity on representations and commute by construction. Each declared
// level additionally carries the lexicographically least monic irreducible
// defining polynomial over the level below, as serializable tower data.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "linsets/common.hpp"
#include "linsets/fp.hpp"

namespace linsets {

/// Largest supported absolute degree of the top field over F_p.
inline constexpr int kMaxDegree = 24;

/// Default cap on the size of fields that may be enumerated element by element.
inline constexpr u64 kDefaultFieldCap = u64(1) << 20;

/// Size limit for base fields that get full multiplication tables.
inline constexpr u64 kSmallFieldCap = 1024;

/// Element of the top field: coefficients over F_p with respect to the power
/// basis of the residue class of x, zero-padded above the top degree.
struct Element {
  std::array<std::uint16_t, kMaxDegree> c{};
  bool operator==(const Element&) const = default;
};

/// Integer-value order: compare coefficients from the highest power down.
inline bool elt_less(const Element& a, const Element& b) {
  for (int i = kMaxDegree - 1; i >= 0; --i) {
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  }
  return false;
}

inline bool elt_is_zero(const Element& a) {
  for (int i = 0; i < kMaxDegree; ++i)
    if (a.c[i]) return false;
  return true;
}

/// Lookup tables for one base field F_q = F_{p^e}, q small. Elements are
/// indexed by their digits over the power basis of the level generator:
/// index(sum_j c_j * zeta^j) = sum_j c_j * p^j.
struct SmallField {
  int e = 0;
  std::uint32_t q = 0;
  std::vector<Element> elems;
  std::vector<std::uint16_t> add_t, sub_t, mul_t;
  std::vector<std::uint16_t> neg_t, inv_t;

  std::uint16_t add(std::uint16_t a, std::uint16_t b) const { return add_t[size_t(a) * q + b]; }
  std::uint16_t sub(std::uint16_t a, std::uint16_t b) const { return sub_t[size_t(a) * q + b]; }
  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return mul_t[size_t(a) * q + b]; }
  std::uint16_t neg(std::uint16_t a) const { return neg_t[a]; }
  std::uint16_t inv(std::uint16_t a) const {
    require(a != 0, "inverse of zero");
    return inv_t[a];
  }
};

namespace detail {

// Dense F_p matrices as rows of coefficient vectors; only what the tower needs.
using FpRow = std::vector<std::uint32_t>;
using FpMat = std::vector<FpRow>;

inline std::vector<int> fp_rref(FpMat& m, u64 p) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t sel = r;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    u64 inv = fp::inv_mod_p(m[r][c], p);
    for (auto& x : m[r]) x = static_cast<std::uint32_t>(x * inv % p);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      u64 f = m[i][c];
      for (size_t j = 0; j < cols; ++j)
        m[i][j] = static_cast<std::uint32_t>((m[i][j] + (p - f) * m[r][j]) % p);
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r, FpRow(cols, 0));
  return pivots;
}

/// Basis of the kernel of the linear map with the given columns (N x N).
inline FpMat fp_kernel(const FpMat& columns, u64 p) {
  size_t n = columns.size();
  FpMat m(n, FpRow(n, 0));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) m[i][j] = columns[j][i];
  auto pivots = fp_rref(m, p);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  FpMat basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    FpRow v(n, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = static_cast<std::uint32_t>((p - m[r][f] % p) % p);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

class Tower {
 public:
  /// Declared level data: absolute degree plus the defining polynomial over
  /// the level below (monic, low degree first, coefficients in that level).
  struct Level {
    int degree = 0;
    std::vector<Element> defining;
  };

  static Tower build(u64 p, std::vector<int> degrees, u64 field_cap = kDefaultFieldCap,
                     bool override_cap = false) {
    return Tower(p, std::move(degrees), field_cap, override_cap);
  }

  u64 p() const { return p_; }
  int top_degree() const { return N_; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<Level>& levels() const { return levels_; }
  const fp::Poly& modulus() const { return modulus_; }
  u64 field_size() const { return checked_pow(p_, static_cast<unsigned>(N_)); }

  bool same_as(const Tower& o) const { return p_ == o.p_ && degrees_ == o.degrees_; }

  // ---- element construction --------------------------------------------

  Element zero() const { return Element{}; }

  Element one() const {
    Element a{};
    a.c[0] = 1;
    return a;
  }

  Element from_fp(u64 v) const {
    Element a{};
    a.c[0] = static_cast<std::uint16_t>(v % p_);
    return a;
  }

  Element xi() const {
    Element a{};
    if (N_ == 1) return one();  // degenerate prime-field tower
    a.c[1] = 1;
    return a;
  }

  /// Element from base-p digits (used by serialization and display).
  Element from_encoding(u64 v) const {
    Element a{};
    for (int i = 0; i < N_ && v > 0; ++i) {
      a.c[i] = static_cast<std::uint16_t>(v % p_);
      v /= p_;
    }
    require(v == 0, "encoding out of range for this tower");
    return a;
  }

  u64 encode(const Element& a) const {
    u64 v = 0;
    for (int i = N_ - 1; i >= 0; --i) {
      if (v > (UINT64_MAX - a.c[i]) / p_) throw UsageError("element encoding overflows");
      v = v * p_ + a.c[i];
    }
    return v;
  }

  // ---- arithmetic --------------------------------------------------------

  Element add(const Element& a, const Element& b) const {
    Element r{};
    for (int i = 0; i < N_; ++i) {
      std::uint32_t s = std::uint32_t(a.c[i]) + b.c[i];
      r.c[i] = static_cast<std::uint16_t>(s >= p_ ? s - p_ : s);
    }
    return r;
  }

  Element sub(const Element& a, const Element& b) const {
    Element r{};
    for (int i = 0; i < N_; ++i) {
      std::uint32_t s = std::uint32_t(a.c[i]) + static_cast<std::uint32_t>(p_) - b.c[i];
      r.c[i] = static_cast<std::uint16_t>(s >= p_ ? s - p_ : s);
    }
    return r;
  }

  Element neg(const Element& a) const { return sub(zero(), a); }

  Element scalar_mul(u64 s, const Element& a) const {
    s %= p_;
    Element r{};
    for (int i = 0; i < N_; ++i) r.c[i] = static_cast<std::uint16_t>(a.c[i] * s % p_);
    return r;
  }

  Element mul(const Element& a, const Element& b) const {
    std::array<u64, 2 * kMaxDegree> acc{};
    for (int i = 0; i < N_; ++i) {
      if (!a.c[i]) continue;
      u64 ai = a.c[i];
      for (int j = 0; j < N_; ++j) acc[i + j] += ai * b.c[j];
    }
    // fold degrees N..2N-2 through the precomputed reductions of x^{N+i}
    for (int i = 2 * N_ - 2; i >= N_; --i) {
      u64 c = acc[i] % p_;
      if (!c) continue;
      const Element& red = red_[i - N_];
      for (int j = 0; j < N_; ++j) acc[j] += c * red.c[j];
    }
    Element r{};
    for (int j = 0; j < N_; ++j) r.c[j] = static_cast<std::uint16_t>(acc[j] % p_);
    return r;
  }

  Element pow(Element base, u64 e) const {
    Element r = one();
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  /// Inverse by extended Euclid on the defining modulus.
  Element inv(const Element& a) const {
    require(!elt_is_zero(a), "inverse of zero");
    fp::Poly r0 = modulus_, r1 = to_fp_poly(a);
    fp::Poly t0 = {}, t1 = {1};
    while (!r1.empty()) {
      // r0 = q*r1 + r2
      fp::Poly q = fp_quot(r0, r1);
      fp::Poly r2 = fp::sub(r0, fp::mul(q, r1, p_), p_);
      fp::Poly t2 = fp::sub(t0, fp::mul(q, t1, p_), p_);
      r0 = std::move(r1);
      r1 = std::move(r2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    check(fp::deg(r0) == 0, "gcd with irreducible modulus must be constant");
    u64 s = fp::inv_mod_p(r0[0], p_);
    Element out{};
    for (size_t i = 0; i < t0.size(); ++i)
      out.c[i] = static_cast<std::uint16_t>(static_cast<u64>(t0[i]) * s % p_);
    return out;
  }

  Element frob(const Element& a) const {
    Element r{};
    std::array<u64, kMaxDegree> acc{};
    for (int j = 0; j < N_; ++j) {
      if (!a.c[j]) continue;
      u64 aj = a.c[j];
      for (int i = 0; i < N_; ++i) acc[i] += aj * frob_cols_[j].c[i];
    }
    for (int i = 0; i < N_; ++i) r.c[i] = static_cast<std::uint16_t>(acc[i] % p_);
    return r;
  }

  /// a^(p^k)
  Element frob_pow(Element a, int k) const {
    for (int i = 0; i < k; ++i) a = frob(a);
    return a;
  }

  // ---- levels and subfields ----------------------------------------------

  bool in_level(const Element& a, int m) const {
    require(N_ % m == 0, "level degree must divide the top degree");
    return frob_pow(a, m) == a;
  }

  /// Degree of a over F_p: the least divisor u of N with a^{p^u} = a.
  int degree_abs(const Element& a) const {
    for (int u : divisors_of(N_))
      if (frob_pow(a, u) == a) return u;
    throw CheckFailed("element degree not found");
  }

  /// Degree of the minimal polynomial of a over the level of degree e.
  int degree_over(const Element& a, int e) const {
    int da = degree_abs(a);
    return std::lcm(da, e) / e;
  }

  /// Tr_{p^src / p^tgt}(a) = sum of a^(p^{tgt*i}) for i < src/tgt.
  Element trace(const Element& a, int src, int tgt) const {
    require(src % tgt == 0 && N_ % src == 0, "trace needs a divisor chain");
    require(in_level(a, src), "trace argument outside source field");
    Element s = zero(), t = a;
    for (int i = 0; i < src / tgt; ++i) {
      s = add(s, t);
      t = frob_pow(t, tgt);
    }
    check(in_level(s, tgt), "trace landed outside the target field");
    return s;
  }

  /// Identity embedding between levels, with a membership check.
  Element embed(const Element& a, int from, int to) const {
    require(to % from == 0, "embedding needs from | to");
    require(in_level(a, from), "element outside the source level");
    return a;
  }

  /// F_p-basis of the degree-m subfield.
  const std::vector<Element>& subfield_basis(int m) const { return sub_at(m).basis; }

  /// Canonical generator of the degree-m subfield: the least element (in
  /// integer-value order) of degree exactly m over F_p.
  const Element& generator(int m) const { return sub_at(m).gen; }

  /// All elements of the degree-m subfield (enumerable levels only).
  std::vector<Element> level_elements(int m) const {
    u64 size = checked_pow(p_, static_cast<unsigned>(m));
    if (size > field_cap_ && !override_cap_)
      throw CapExceeded("field of size " + std::to_string(size) + " exceeds the enumeration cap");
    const auto& basis = sub_at(m).basis;
    std::vector<Element> out;
    out.reserve(size);
    std::vector<u64> digit(basis.size(), 0);
    Element cur = zero();
    out.push_back(cur);
    for (u64 v = 1; v < size; ++v) {
      // odometer over the basis digits with incremental updates
      size_t i = 0;
      while (true) {
        digit[i]++;
        cur = add(cur, basis[i]);
        if (digit[i] < p_) break;
        digit[i] = 0;  // basis[i] added p times wrapped to zero contribution
        ++i;
      }
      out.push_back(cur);
    }
    return out;
  }

  bool has_small_field(int e) const { return small_.count(e) > 0; }

  const SmallField& small_field(int e) const {
    auto it = small_.find(e);
    require(it != small_.end(),
            "no tabled base field of degree " + std::to_string(e) +
                " in this tower (declare the level and keep its size <= " +
                std::to_string(kSmallFieldCap) + ")");
    return it->second;
  }

  // ---- coordinates over intermediate fields -------------------------------

  /// Coordinates of a (in the level of degree m) over the base level of
  /// degree e, with respect to the basis 1, zeta_m, ..., zeta_m^{m/e - 1}.
  /// Returns m/e digit indices into small_field(e).
  std::vector<std::uint16_t> expand(const Element& a, int e, int m) const {
    const auto& sol = solver_at(e, m);
    int groups = m / e;
    std::vector<std::uint16_t> out(groups, 0);
    std::vector<u64> coords(m, 0);
    for (int r = 0; r < m; ++r) {
      u64 s = 0;
      for (int j = 0; j < N_; ++j) s += static_cast<u64>(sol.rows[r][j]) * a.c[j];
      coords[r] = s % p_;
    }
    // consistency rows vanish exactly when a lies in the level
    for (const auto& row : sol.checks) {
      u64 s = 0;
      for (int j = 0; j < N_; ++j) s += static_cast<u64>(row[j]) * a.c[j];
      require(s % p_ == 0, "expand: element outside the requested level");
    }
    for (int i = 0; i < groups; ++i) {
      u64 idx = 0;
      for (int j = e - 1; j >= 0; --j) idx = idx * p_ + coords[size_t(i) * e + j];
      out[i] = static_cast<std::uint16_t>(idx);
    }
    return out;
  }

  /// Inverse of expand: fold base-field digit indices back into an element.
  Element fold(const std::uint16_t* coords, int e, int m) const {
    const SmallField& F = small_field(e);
    int groups = m / e;
    const auto& pows = sub_at(m).gen_pows;
    Element s = zero();
    for (int i = 0; i < groups; ++i) {
      if (!coords[i]) continue;
      s = add(s, mul(F.elems[coords[i]], pows[i]));
    }
    return s;
  }

  Element gen_pow(int m, int i) const {
    const auto& pows = sub_at(m).gen_pows;
    if (i < static_cast<int>(pows.size())) return pows[i];
    return pow(generator(m), static_cast<u64>(i));
  }

 private:
  struct Sub {
    int m = 0;
    std::vector<Element> basis;
    Element gen;
    std::vector<Element> gen_pows;  // gen^0 .. gen^{m-1} (plus gen^m for companions)
  };

  struct Solver {
    detail::FpMat rows;    // m x N: flat coordinates -> level coordinates
    detail::FpMat checks;  // rows that must annihilate level members
  };

  u64 p_;
  std::vector<int> degrees_;
  int N_;
  u64 field_cap_;
  bool override_cap_;
  fp::Poly modulus_;
  std::vector<Element> red_;        // x^{N+i} mod F for i in [0, N-2]
  std::vector<Element> frob_cols_;  // flat coords of (x^j)^p
  std::map<int, Sub> subs_;
  std::map<std::pair<int, int>, Solver> solvers_;
  std::map<int, SmallField> small_;
  std::vector<Level> levels_;

  const Sub& sub_at(int m) const {
    auto it = subs_.find(m);
    require(it != subs_.end(), "degree " + std::to_string(m) + " is not a divisor level");
    return it->second;
  }

  const Solver& solver_at(int e, int m) const {
    auto it = solvers_.find({e, m});
    require(it != solvers_.end(), "no coordinate solver for this level pair");
    return it->second;
  }

  fp::Poly to_fp_poly(const Element& a) const {
    fp::Poly f(a.c.begin(), a.c.begin() + N_);
    fp::trim(f);
    return f;
  }

  fp::Poly fp_quot(const fp::Poly& a, const fp::Poly& b) const {
    fp::Poly rem = a, q;
    u64 li = fp::inv_mod_p(b.back(), p_);
    while (fp::deg(rem) >= fp::deg(b)) {
      size_t shift = rem.size() - b.size();
      u64 c = static_cast<u64>(rem.back()) * li % p_;
      if (q.size() < shift + 1) q.resize(shift + 1, 0);
      q[shift] = static_cast<std::uint32_t>(c);
      for (size_t i = 0; i < b.size(); ++i) {
        u64 x = rem[shift + i];
        rem[shift + i] = static_cast<std::uint32_t>((x + (p_ - c * b[i] % p_)) % p_);
      }
      fp::trim(rem);
    }
    return q;
  }

  Tower(u64 p, std::vector<int> degrees, u64 field_cap, bool override_cap)
      : p_(p), degrees_(std::move(degrees)), field_cap_(field_cap), override_cap_(override_cap) {
    require(is_prime(p_), "p must be prime");
    require(!degrees_.empty(), "at least one level required");
    for (size_t i = 0; i < degrees_.size(); ++i) {
      require(degrees_[i] >= 1, "degrees must be positive");
      if (i > 0)
        require(degrees_[i] > degrees_[i - 1] && degrees_[i] % degrees_[i - 1] == 0,
                "degrees must form a strictly ascending divisor chain");
    }
    N_ = degrees_.back();
    require(N_ <= kMaxDegree, "top degree exceeds the supported maximum");
    u64 size = 1;
    for (int i = 0; i < N_; ++i) {
      size *= p_;
      require(override_cap_ || size <= field_cap_, "top field exceeds the enumeration cap");
    }

    modulus_ = fp::least_irreducible(p_, N_);
    build_reductions();
    build_frobenius();
    build_subfields();
    build_solvers();
    build_small_fields();
    build_levels();
  }

  void build_reductions() {
    // red_[i] = x^{N+i} mod F, computed by shifting and reducing
    red_.clear();
    if (N_ == 1) return;
    Element cur{};  // x^N mod F = -(a_0 + a_1 x + ...)
    for (int i = 0; i < N_; ++i)
      cur.c[i] = static_cast<std::uint16_t>((p_ - modulus_[i] % p_) % p_);
    red_.push_back(cur);
    for (int i = 1; i <= N_ - 2; ++i) {
      Element nxt{};
      std::uint16_t top = cur.c[N_ - 1];
      for (int j = N_ - 1; j >= 1; --j) nxt.c[j] = cur.c[j - 1];
      nxt.c[0] = 0;
      if (top) {
        for (int j = 0; j < N_; ++j)
          nxt.c[j] = static_cast<std::uint16_t>((nxt.c[j] + u64(top) * red_[0].c[j]) % p_);
      }
      red_.push_back(nxt);
      cur = nxt;
    }
  }

  void build_frobenius() {
    Element xp = pow(xi(), p_);
    frob_cols_.resize(N_);
    Element cur = one();
    for (int j = 0; j < N_; ++j) {
      frob_cols_[j] = cur;  // (x^j)^p = (x^p)^j
      cur = mul(cur, xp);
    }
  }

  void build_subfields() {
    for (int m : divisors_of(N_)) {
      Sub s;
      s.m = m;
      if (m == N_) {
        for (int j = 0; j < N_; ++j) {
          Element b{};
          b.c[j] = 1;
          s.basis.push_back(b);
        }
        s.gen = xi();
      } else {
        // fixed space of Frobenius^m
        Element y = frob_pow(xi(), m);
        detail::FpMat cols(N_, detail::FpRow(N_, 0));
        Element yj = one();
        for (int j = 0; j < N_; ++j) {
          for (int i = 0; i < N_; ++i)
            cols[j][i] = static_cast<std::uint32_t>((yj.c[i] + (i == j ? p_ - 1 : 0)) % p_);
          yj = mul(yj, y);
        }
        auto ker = detail::fp_kernel(cols, p_);
        check(static_cast<int>(ker.size()) == m, "subfield dimension mismatch");
        for (const auto& v : ker) {
          Element b{};
          for (int i = 0; i < N_; ++i) b.c[i] = static_cast<std::uint16_t>(v[i]);
          s.basis.push_back(b);
        }
        // least element of degree exactly m
        bool found = false;
        Element best{};
        // enumerate the p^m members (proper divisor, so at most sqrt of cap)
        std::vector<u64> digit(s.basis.size(), 0);
        Element cur = zero();
        u64 count = checked_pow(p_, static_cast<unsigned>(m));
        for (u64 v = 1; v < count; ++v) {
          size_t i = 0;
          while (true) {
            digit[i]++;
            cur = add(cur, s.basis[i]);
            if (digit[i] < p_) break;
            digit[i] = 0;
            ++i;
          }
          if (degree_abs(cur) == m && (!found || elt_less(cur, best))) {
            best = cur;
            found = true;
          }
        }
        check(found || m == 1, "no generator found for subfield");
        s.gen = (m == 1) ? one() : best;
      }
      s.gen_pows.resize(m + 1);
      Element g = one();
      for (int i = 0; i <= m; ++i) {
        s.gen_pows[i] = g;
        g = mul(g, s.gen);
      }
      subs_[m] = std::move(s);
    }
  }

  void build_solvers() {
    for (int m : divisors_of(N_)) {
      for (int e : divisors_of(m)) {
        // columns flat(zeta_e^j * zeta_m^i), grouped as i*e + j
        const auto& pe = subs_[e].gen_pows;
        const auto& pm = subs_[m].gen_pows;
        int colc = m;
        detail::FpMat aug(N_, detail::FpRow(colc + N_, 0));
        for (int i = 0; i < m / e; ++i) {
          for (int j = 0; j < e; ++j) {
            Element v = mul(pe[j], pm[i]);
            for (int r = 0; r < N_; ++r) aug[r][size_t(i) * e + j] = v.c[r];
          }
        }
        for (int r = 0; r < N_; ++r) aug[r][colc + r] = 1;
        auto pivots = detail::fp_rref(aug, p_);
        Solver sol;
        sol.rows.assign(colc, detail::FpRow(N_, 0));
        for (size_t r = 0; r < pivots.size(); ++r) {
          if (pivots[r] < colc) {
            for (int j = 0; j < N_; ++j) sol.rows[pivots[r]][j] = aug[r][colc + j];
          } else {
            detail::FpRow chk(N_);
            for (int j = 0; j < N_; ++j) chk[j] = aug[r][colc + j];
            sol.checks.push_back(std::move(chk));
          }
        }
        solvers_[{e, m}] = std::move(sol);
      }
    }
  }

  void build_small_fields() {
    for (int e : degrees_) {
      u64 q = checked_pow(p_, static_cast<unsigned>(e));
      if (q > kSmallFieldCap) continue;
      SmallField F;
      F.e = e;
      F.q = static_cast<std::uint32_t>(q);
      F.elems.resize(q);
      const auto& pows = subs_[e].gen_pows;
      for (u64 idx = 0; idx < q; ++idx) {
        Element a = zero();
        u64 t = idx;
        for (int j = 0; j < e; ++j) {
          a = add(a, scalar_mul(t % p_, pows[j]));
          t /= p_;
        }
        F.elems[idx] = a;
      }
      auto index_of = [&](const Element& a) -> std::uint16_t {
        auto digits = expand(a, e, e);
        return digits[0];
      };
      F.add_t.resize(q * q);
      F.sub_t.resize(q * q);
      F.mul_t.resize(q * q);
      F.neg_t.resize(q);
      F.inv_t.resize(q);
      for (u64 i = 0; i < q; ++i) {
        F.neg_t[i] = index_of(neg(F.elems[i]));
        if (i) F.inv_t[i] = index_of(inv(F.elems[i]));
        for (u64 j = 0; j < q; ++j) {
          F.add_t[i * q + j] = index_of(add(F.elems[i], F.elems[j]));
          F.sub_t[i * q + j] = index_of(sub(F.elems[i], F.elems[j]));
          F.mul_t[i * q + j] = index_of(mul(F.elems[i], F.elems[j]));
        }
      }
      small_[e] = std::move(F);
    }
  }

  // ---- defining polynomials over the level below ---------------------------

  using EPoly = std::vector<Element>;  // low degree first, trimmed

  static int epoly_deg(const EPoly& f) {
    int d = static_cast<int>(f.size()) - 1;
    while (d >= 0 && elt_is_zero(f[d])) --d;
    return d;
  }

  EPoly epoly_mod(EPoly a, const EPoly& f) const {
    int df = epoly_deg(f);
    Element li = inv(f[df]);
    int da = epoly_deg(a);
    while (da >= df) {
      Element c = mul(a[da], li);
      int shift = da - df;
      for (int i = 0; i <= df; ++i) a[shift + i] = sub(a[shift + i], mul(c, f[i]));
      da = epoly_deg(a);
    }
    a.resize(std::max(da + 1, 0));
    return a;
  }

  bool epoly_is_irreducible_over(const EPoly& f, int e) const {
    // trial division by every monic polynomial of degree 1..deg/2 with
    // coefficients in the level of degree e
    int m = epoly_deg(f);
    if (m <= 1) return m == 1;
    std::vector<Element> elems = level_elements(e);
    std::sort(elems.begin(), elems.end(), elt_less);
    u64 q = elems.size();
    for (int d = 1; 2 * d <= m; ++d) {
      u64 total = checked_pow(q, static_cast<unsigned>(d));
      for (u64 v = 0; v < total; ++v) {
        EPoly g(d + 1, zero());
        u64 t = v;
        for (int i = 0; i < d; ++i) {
          g[i] = elems[t % q];
          t /= q;
        }
        g[d] = one();
        if (epoly_deg(epoly_mod(f, g)) < 0) return false;
      }
    }
    return true;
  }

  void build_levels() {
    levels_.clear();
    int below = 1;
    for (int deg_abs_lvl : degrees_) {
      int r = deg_abs_lvl / below;
      Level L;
      L.degree = deg_abs_lvl;
      std::vector<Element> elems = level_elements(below);
      std::sort(elems.begin(), elems.end(), elt_less);
      u64 q = elems.size();
      u64 total = checked_pow(q, static_cast<unsigned>(r));
      bool found = false;
      for (u64 v = 0; v < total && !found; ++v) {
        EPoly f(r + 1, zero());
        u64 t = v;
        for (int i = 0; i < r; ++i) {
          f[i] = elems[t % q];
          t /= q;
        }
        f[r] = one();
        if (epoly_is_irreducible_over(f, below)) {
          L.defining = std::move(f);
          found = true;
        }
      }
      check(found, "no defining polynomial found (impossible for valid input)");
      levels_.push_back(std::move(L));
      below = deg_abs_lvl;
    }
  }
};

/// Ambient description of one linear-set problem: PG(d, q^n) with q = p^e and
/// the working field being the tower level of absolute degree m = e*n.
struct Context {
  const Tower* tw = nullptr;
  int e = 0;  // absolute degree of the base field (q = p^e)
  int m = 0;  // absolute degree of the working field (q^n = p^m)
  int d = 0;  // projective dimension of the ambient space

  int n() const { return m / e; }
  u64 q() const { return checked_pow(tw->p(), static_cast<unsigned>(e)); }
  u64 qn() const { return checked_pow(tw->p(), static_cast<unsigned>(m)); }
  int cols() const { return (d + 1) * n(); }

  bool operator==(const Context& o) const {
    return tw == o.tw && e == o.e && m == o.m && d == o.d;
  }

  void validate() const {
    require(tw != nullptr && d >= 0 && e >= 1 && m >= 1, "malformed context");
    require(m % e == 0 && tw->top_degree() % m == 0, "context degrees must chain");
  }
};

/// A convenience: the canonical tower for q = p^e and extension degree n,
/// declaring exactly the levels the computation touches.
inline Tower tower_for(u64 q, const std::vector<int>& rel_degrees, u64 cap = kDefaultFieldCap,
                       bool override_cap = false) {
  u64 p;
  unsigned e;
  prime_power_decompose(q, p, e);
  std::vector<int> degs;
  if (e > 1) degs.push_back(static_cast<int>(e));
  else degs.push_back(1);
  for (int r : rel_degrees) {
    int d = static_cast<int>(e) * r;
    if (d != degs.back()) {
      require(d > degs.back() && d % degs.back() == 0, "relative degrees must chain");
      degs.push_back(d);
    }
  }
  return Tower::build(p, degs, cap, override_cap);
}

}  // namespace linsets
