// Dense univariate polynomials over the prime field F_p.
//
// This is the arithmetic bedrock under the tower machinery: it knows nothing
// about extension fields, only coefficient vectors mod p (low degree first,
// no trailing zeros, empty vector = zero polynomial).
#pragma once

#include <cstdint>
#include <vector>

#include "linsets/common.hpp"

namespace linsets::fp {

using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }  // -1 for zero

inline Poly add(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    u64 s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = static_cast<std::uint32_t>(s % p);
  }
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, u64 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    u64 x = (i < a.size() ? a[i] : 0);
    u64 y = (i < b.size() ? b[i] : 0);
    r[i] = static_cast<std::uint32_t>((x + p - y) % p);
  }
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<u64>(a[i]) * b[j] % p;
  Poly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint32_t>(acc[i] % p);
  trim(r);
  return r;
}

inline u64 inv_mod_p(u64 a, u64 p) {
  // extended Euclid on integers
  i64 t = 0, nt = 1, r = static_cast<i64>(p), nr = static_cast<i64>(a % p);
  while (nr != 0) {
    i64 q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw UsageError("not invertible mod p");
  return static_cast<u64>((t % static_cast<i64>(p) + static_cast<i64>(p)) % static_cast<i64>(p));
}

/// Remainder of a modulo f (f nonzero).
inline Poly mod(Poly a, const Poly& f, u64 p) {
  require(!f.empty(), "division by zero polynomial");
  u64 lead_inv = inv_mod_p(f.back(), p);
  while (deg(a) >= deg(f)) {
    u64 c = static_cast<u64>(a.back()) * lead_inv % p;
    size_t shift = a.size() - f.size();
    for (size_t i = 0; i < f.size(); ++i) {
      u64 x = a[shift + i];
      a[shift + i] = static_cast<std::uint32_t>((x + p - c * f[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly gcd(Poly a, Poly b, u64 p) {
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    u64 li = inv_mod_p(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(static_cast<u64>(c) * li % p);
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, u64 p) {
  return mod(mul(a, b, p), f, p);
}

inline Poly powmod(Poly base, u64 e, const Poly& f, u64 p) {
  Poly r = {1};
  base = mod(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

/// True iff monic f of degree m >= 1 is irreducible over F_p.
/// A reducible polynomial of degree m has an irreducible factor of degree
/// <= m/2, which shows up as a nontrivial gcd with x^{p^d} - x.
inline bool is_irreducible(const Poly& f, u64 p) {
  int m = deg(f);
  if (m < 1) return false;
  if (m == 1) return true;
  Poly t = {0, 1};  // x
  for (int d = 1; 2 * d <= m; ++d) {
    t = powmod(std::move(t), p, f, p);     // x^{p^d} mod f
    Poly g = gcd(sub(t, Poly{0, 1}, p), f, p);
    if (deg(g) > 0) return false;
  }
  return true;
}

/// The lexicographically least monic irreducible polynomial of degree m,
/// ordering candidates x^m + c_{m-1} x^{m-1} + ... + c_0 by the integer
/// value sum c_i p^i of their coefficient tail.
inline Poly least_irreducible(u64 p, int m) {
  require(m >= 1, "degree must be positive");
  u64 tail_count = checked_pow(p, static_cast<unsigned>(m));
  for (u64 v = 0; v < tail_count; ++v) {
    Poly f(m + 1, 0);
    u64 t = v;
    for (int i = 0; i < m; ++i) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[m] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw CheckFailed("no irreducible polynomial found (impossible for valid input)");
}

}  // namespace linsets::fp
