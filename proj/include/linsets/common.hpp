// Shared error types and exact integer helpers used across the library.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace linsets {

inline constexpr const char* kVersion = "linsets 0.1.0";

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Bad input or violated precondition (maps to CLI exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bounded search ran out of budget without a conclusive answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity, prediction, or theorem-level assertion failed.
/// This always indicates either a library bug or a genuine counterexample,
/// and is never swallowed (maps to CLI exit code 1).
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check(bool ok, const std::string& what) {
  if (!ok) throw CheckFailed(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

/// b^e with overflow detection.
inline u64 checked_pow(u64 b, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > UINT64_MAX / b) throw UsageError("integer overflow in power");
    r *= b;
  }
  return r;
}

/// 1 + q + ... + q^{k-1} = (q^k - 1)/(q - 1); the number of points of PG(k-1, q).
inline u64 geom_sum(u64 q, unsigned k) {
  u64 r = 0;
  for (unsigned i = 0; i < k; ++i) {
    u64 t = checked_pow(q, i);
    if (r > UINT64_MAX - t) throw UsageError("integer overflow in geometric sum");
    r += t;
  }
  return r;
}

/// floor(log_q(x)) for x >= 1, q >= 2.
inline unsigned ilog(u64 q, u64 x) {
  require(q >= 2 && x >= 1, "ilog needs q >= 2 and x >= 1");
  unsigned e = 0;
  while (x >= q) {
    x /= q;
    ++e;
  }
  return e;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Writes n = p^e with p prime, or fails.
inline void prime_power_decompose(u64 n, u64& p, unsigned& e) {
  require(n >= 2, "not a prime power");
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      e = 0;
      while (n > 1) {
        require(n % d == 0, "not a prime power");
        n /= d;
        ++e;
      }
      return;
    }
  }
  p = n;  // n itself is prime
  e = 1;
}

inline std::vector<int> divisors_of(int n) {
  std::vector<int> lo, hi;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      lo.push_back(d);
      if (d != n / d) hi.push_back(n / d);
    }
  }
  for (auto it = hi.rbegin(); it != hi.rend(); ++it) lo.push_back(*it);
  return lo;
}

/// Moebius function on small arguments.
inline int moebius(int n) {
  int mu = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace linsets
