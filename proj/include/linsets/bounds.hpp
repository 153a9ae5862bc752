// Lower-bound certificates and minimum-size classification: the subspace
// bound with the I_Omega term, the prime-degree tight bound, rank from size,
// minimum-weight spanning, and the hyperplane-from-flag recipe.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linsets/common.hpp"
#include "linsets/linset.hpp"
#include "linsets/projgeo.hpp"

namespace linsets {

enum class BoundKind { Thm14, Thm16, CorWeight1 };

struct BoundCertificate {
  BoundKind kind = BoundKind::Thm14;
  u64 q = 0;
  int n = 0, d = 0, k = 0, r = 0;
  std::optional<ProjSubspace> omega;
  u64 i_omega = 0;
  u64 bound = 0;
  u64 size = 0;
  u64 slack = 0;
  bool equality = false;
};

/// Floor division that is correct for negative numerators.
inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// sum_{i=1}^{r} q^{k-i}
inline u64 power_sum(u64 q, int k, int r) {
  u64 s = 0;
  for (int i = 1; i <= r; ++i) s += checked_pow(q, static_cast<unsigned>(k - i));
  return s;
}

/// Certificate for the bound |L_U| >= q^{k-1} + ... + q^{k-r} + I_Omega,
/// valid when L_U meets Omega (an (r-1)-space, r < k) in a canonical
/// subgeometry. A violated bound fails hard.
inline BoundCertificate verify_thm14(const FqSubspace& U, const ProjSubspace& omega,
                                     u64 cap = kDefaultFieldCap) {
  const Context& ctx = U.ctx;
  int r = omega.dim_vec();
  int k = U.rank();
  require(r < k, "hypothesis failure: need dim Omega + 1 < rank");
  require(is_canonical_subgeometry(U, omega, cap),
          "hypothesis failure: L_U does not meet Omega in a canonical subgeometry");
  BoundCertificate cert;
  cert.kind = r == 1 ? BoundKind::CorWeight1 : BoundKind::Thm14;
  cert.q = ctx.q();
  cert.n = ctx.n();
  cert.d = ctx.d;
  cert.k = k;
  cert.r = r;
  cert.omega = omega;
  cert.i_omega = count_I_Omega(U, omega, cap);
  cert.bound = power_sum(cert.q, k, r) + cert.i_omega;
  cert.size = enumerate_points(U, cap).size();
  check(cert.size >= cert.bound, "bound violated: |L_U| < q^{k-1}+...+q^{k-r}+I_Omega");
  cert.slack = cert.size - cert.bound;
  cert.equality = cert.slack == 0;
  return cert;
}

/// Searches for an (r-1)-space meeting L_U in a canonical subgeometry, among
/// spans of r-subsets of weight-1 points, in canonical point order.
/// Returns the first hit; nullopt when the full search space was exhausted.
inline std::optional<ProjSubspace> find_canonical_subspace(const FqSubspace& U, int r,
                                                           const LinearSetReport& rep,
                                                           u64 budget = 200000,
                                                           u64 cap = kDefaultFieldCap) {
  require(r >= 1, "need r >= 1");
  std::vector<const ProjPoint*> w1;
  for (size_t i = 0; i < rep.points.size(); ++i)
    if (rep.weights[i] == 1) w1.push_back(&rep.points[i]);
  size_t nw = w1.size();
  if (nw < static_cast<size_t>(r)) return std::nullopt;
  std::vector<size_t> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  u64 tried = 0;
  while (true) {
    if (++tried > budget) throw BudgetExceeded("canonical-subspace search budget exhausted");
    std::vector<std::vector<Element>> vecs;
    for (int i = 0; i < r; ++i) vecs.push_back(w1[idx[i]]->v);
    ProjSubspace W = proj_span(U.ctx, std::move(vecs));
    if (W.dim_vec() == r && is_canonical_subgeometry(U, W, cap)) return W;
    // next r-subset in lexicographic order
    int i = r - 1;
    while (i >= 0 && idx[i] == nw - static_cast<size_t>(r) + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return std::nullopt;
}

/// The prime-degree bound: for n prime with n <= q and L_U spanning,
/// r = d - floor((k - (d+2))/(n-1)) and
/// |L_U| >= q^{k-1} + ... + q^{k-r} + (q^{n(d-r+1)} - 1)/(q^n - 1).
///
/// The gate follows the n <= q reading; pass override_gate to skip the
/// comparison with q entirely (n must still be prime).
inline BoundCertificate verify_thm16(const FqSubspace& U, bool override_gate = false,
                                     u64 cap = kDefaultFieldCap, u64 budget = 200000) {
  const Context& ctx = U.ctx;
  u64 q = ctx.q();
  int n = ctx.n();
  int d = ctx.d;
  int k = U.rank();
  require(is_prime(static_cast<u64>(n)), "gate failure: n must be prime");
  if (!override_gate)
    require(static_cast<u64>(n) <= q, "gate failure: need n <= q (pass the override to skip)");
  require(spans_whole_space(U), "hypothesis failure: L_U must span PG(d, q^n)");

  int r = d - static_cast<int>(floor_div(k - (d + 2), n - 1));
  BoundCertificate cert;
  cert.kind = BoundKind::Thm16;
  cert.q = q;
  cert.n = n;
  cert.d = d;
  cert.k = k;
  cert.r = r;
  u64 tail = (d - r + 1) >= 0
                 ? (checked_pow(q, static_cast<unsigned>(n * (d - r + 1))) - 1) /
                       (checked_pow(q, static_cast<unsigned>(n)) - 1)
                 : 0;
  cert.bound = power_sum(q, k, std::min(r, k)) + tail;
  cert.i_omega = tail;

  LinearSetReport rep = report(U, cap);
  cert.size = rep.size;

  if (r >= 1 && r <= d) {
    auto omega = find_canonical_subspace(U, r, rep, budget, cap);
    check(omega.has_value(),
          "no (r-1)-space meets L_U canonically: contradicts the prime-degree theorem");
    cert.omega = *omega;
  } else if (r == d + 1) {
    // k = d+1: the spanning linear set itself must be a canonical subgeometry
    check(rep.spectrum == std::vector<int>{1}, "rank d+1 spanning set must have all weights 1");
  }
  check(cert.size >= cert.bound, "prime-degree bound violated");
  cert.slack = cert.size - cert.bound;
  cert.equality = cert.slack == 0;
  return cert;
}

enum class SearchStatus { Found, NotFound, Exhausted };

struct MinSizeClass {
  int k = 0, d = 0;
  u64 size = 0;
  u64 d_minimum_value = 0;
  bool d_minimum = false;
  bool proper_d_minimum = false;
  // index r-1 holds the result for (r, d)-minimum, r = 1..d
  std::vector<SearchStatus> r_status;
  std::vector<std::optional<ProjSubspace>> r_witness;

  bool r_minimum(int r) const {
    return r >= 1 && r <= static_cast<int>(r_status.size()) &&
           r_status[r - 1] == SearchStatus::Found;
  }
};

/// Classifies L_U: d-minimum size (exact value match), and for each r the
/// existence of a canonical (r-1)-space achieving equality in the subspace
/// bound with size not exceeding the d-minimum value.
inline MinSizeClass classify_minimum(const FqSubspace& U, u64 cap = kDefaultFieldCap,
                                     u64 budget = 200000) {
  const Context& ctx = U.ctx;
  u64 q = ctx.q();
  int d = ctx.d;
  int k = U.rank();
  require(k > d, "classification needs rank above the ambient dimension");
  MinSizeClass cls;
  cls.k = k;
  cls.d = d;
  cls.d_minimum_value = power_sum(q, k, d) + 1;
  LinearSetReport rep = report(U, cap);
  cls.size = rep.size;
  cls.d_minimum = (cls.size == cls.d_minimum_value);
  cls.r_status.assign(d, SearchStatus::NotFound);
  cls.r_witness.assign(d, std::nullopt);
  if (cls.size > cls.d_minimum_value) return cls;  // cannot be (r, d)-minimum for any r

  std::vector<const ProjPoint*> w1;
  for (size_t i = 0; i < rep.points.size(); ++i)
    if (rep.weights[i] == 1) w1.push_back(&rep.points[i]);

  for (int r = 1; r <= d && r < k; ++r) {
    u64 head = power_sum(q, k, r);
    if (cls.size < head + 1) continue;  // equality would need I_Omega < 1
    u64 target_i = cls.size - head;
    size_t nw = w1.size();
    if (nw < static_cast<size_t>(r)) continue;
    std::vector<size_t> idx(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) idx[i] = i;
    u64 tried = 0;
    bool exhausted_all = true;
    while (true) {
      if (++tried > budget) {
        cls.r_status[r - 1] = SearchStatus::Exhausted;
        exhausted_all = false;
        break;
      }
      std::vector<std::vector<Element>> vecs;
      for (int i = 0; i < r; ++i) vecs.push_back(w1[idx[i]]->v);
      ProjSubspace W = proj_span(U.ctx, std::move(vecs));
      if (W.dim_vec() == r && is_canonical_subgeometry(U, W, cap) &&
          count_I_Omega(U, W, cap) == target_i) {
        cls.r_status[r - 1] = SearchStatus::Found;
        cls.r_witness[r - 1] = std::move(W);
        break;
      }
      int i = r - 1;
      while (i >= 0 && idx[i] == nw - static_cast<size_t>(r) + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    (void)exhausted_all;
  }
  cls.proper_d_minimum = cls.r_minimum(d);
  return cls;
}

/// Rank from size and minimum point weight: k = floor(log_q |L_U|) + m,
/// verified against the window q^{k-m} + 1 <= |L_U| <= (q^k - 1)/(q^m - 1).
inline int rank_from_size(u64 size, int m, u64 q) {
  require(size >= 2, "rank from size needs at least two points");
  require(m >= 1 && q >= 2, "bad parameters");
  int k = static_cast<int>(ilog(q, size)) + m;
  u64 lower = checked_pow(q, static_cast<unsigned>(k - m)) + 1;
  // upper bound compared exactly: size * (q^m - 1) <= q^k - 1
  u64 qm = checked_pow(q, static_cast<unsigned>(m));
  u64 qk = checked_pow(q, static_cast<unsigned>(k));
  bool in_window = size >= lower && size <= (qk - 1) / (qm - 1) && size * (qm - 1) <= qk - 1;
  require(in_window, "size is outside every consistency window");
  return k;
}

/// Points of minimum weight span the same space as L_U (a theorem when L_U
/// spans). Fails hard if violated.
inline bool min_weight_span_check(const FqSubspace& U, u64 cap = kDefaultFieldCap) {
  require(spans_whole_space(U), "check applies to spanning linear sets");
  LinearSetReport rep = report(U, cap);
  int m = rep.spectrum.front();
  std::vector<std::vector<Element>> min_pts;
  for (size_t i = 0; i < rep.points.size(); ++i)
    if (rep.weights[i] == m) min_pts.push_back(rep.points[i].v);
  ProjSubspace span = proj_span(U.ctx, std::move(min_pts));
  check(span.dim_vec() == U.ctx.d + 1, "minimum-weight points fail to span: theorem violated");
  return true;
}

/// Realizes the hyperplane guaranteed by the flag theorem: given an r-space
/// Omega of weight k' with rank(U) = k' + d - r, and a canonical (r-1)-space
/// Omega' inside it, projects from Omega', completes the image of Omega by
/// weight-1 points to a spanning set, and lifts their span.
inline ProjSubspace hyperplane_from_flag(const FqSubspace& U, const ProjSubspace& omega,
                                         const ProjSubspace& omega_prime,
                                         u64 cap = kDefaultFieldCap) {
  const Context& ctx = U.ctx;
  int r = omega.dim_proj();
  int d = ctx.d;
  require(r >= 0 && r < d, "need 0 <= r < d (the r = d case is degenerate)");
  require(omega_prime.dim_vec() == r, "Omega' must be a hyperplane of Omega");
  for (const auto& row : omega_prime.rows)
    require(omega.contains(row), "Omega' must lie inside Omega");
  int kprime = weight(U, omega);
  require(r < kprime, "need r < weight(Omega)");
  require(U.rank() == kprime + d - r, "rank must equal weight(Omega) + d - r");
  require(spans_whole_space(U), "L_U must span the space");
  if (r >= 1)
    require(is_canonical_subgeometry(U, omega_prime, cap),
            "Omega' must meet L_U in a canonical subgeometry");

  QuotientMap qm = make_quotient(omega_prime);
  FqSubspace img = project(U, omega_prime);

  // P_0 = Omega / Omega'
  std::vector<std::vector<Element>> omega_img;
  for (const auto& row : omega.rows) {
    auto v = qm.apply(row);
    bool zero = true;
    for (const auto& x : v)
      if (!elt_is_zero(x)) zero = false;
    if (!zero) omega_img.push_back(std::move(v));
  }
  ProjSubspace p0 = proj_span(qm.quotient_ctx, std::move(omega_img));
  check(p0.dim_vec() == 1, "Omega must project to a single point");

  // complete P_0 by weight-1 points of the projection to a spanning set
  std::vector<std::vector<Element>> span_rows = p0.rows;
  std::vector<std::vector<Element>> chosen;
  for (const ProjPoint& P : enumerate_points(img, cap)) {
    if (static_cast<int>(span_rows.size() + 0) == qm.quotient_ctx.d + 1) break;
    std::vector<std::vector<Element>> trial = span_rows;
    trial.push_back(P.v);
    ProjSubspace sp = proj_span(qm.quotient_ctx, trial);
    if (sp.dim_vec() == static_cast<int>(span_rows.size()) + 1) {
      check(weight(img, P.v) == 1,
            "spanning completion found a point of weight > 1: contradicts the flag theorem");
      span_rows.push_back(P.v);
      chosen.push_back(P.v);
    }
  }
  check(static_cast<int>(span_rows.size()) == qm.quotient_ctx.d + 1,
        "could not complete the projection to a spanning set");

  // lift <P_1, ..., P_{d-r}> together with Omega'
  std::vector<std::vector<Element>> hyp_rows = omega_prime.rows;
  for (const auto& v : chosen) hyp_rows.push_back(qm.lift(v));
  ProjSubspace pi = proj_span(ctx, std::move(hyp_rows));
  check(pi.dim_vec() == d, "lifted subspace is not a hyperplane");
  check(is_canonical_subgeometry(U, pi, cap),
        "lifted hyperplane does not meet L_U canonically: contradicts the flag theorem");
  return pi;
}

}  // namespace linsets
