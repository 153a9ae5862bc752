#include <catch2/catch_amalgamated.hpp>

#include "linsets/constructions.hpp"
#include "linsets/oracle.hpp"

using namespace linsets;

TEST_CASE("power-span products are d-minimum with the predicted spectrum") {
  // rank 4, size 9 on PG(1, 16)
  {
    Tower t = Tower::build(2, {1, 4});
    JVParams p = make_jv_params(t, 1, 4, 4, {2, 2});
    auto [U, pred] = jv_build(p);
    REQUIRE(U.rank() == 4);
    REQUIRE(*pred.size == 9);
    expect_pass(check_construction(U, pred));
  }
  // rank 5, size 17 on PG(1, 32), N = (12, 4, 1)
  {
    Tower t = Tower::build(2, {1, 5});
    JVParams p = make_jv_params(t, 1, 5, 5, {3, 2});
    auto [U, pred] = jv_build(p);
    REQUIRE(*pred.size == 17);
    REQUIRE(pred.N_at.at(2) == 4);  // q^{k_0-k_1+1} (q^m - 1)/(q - 1), m = 1
    REQUIRE(pred.N_at.at(3) == 1);
    LinearSetReport rep = report(U);
    REQUIRE(rep.N[1] == 12);
    REQUIRE(rep.N[2] == 4);
    REQUIRE(rep.N[3] == 1);
    REQUIRE(rep.spectrum == std::vector<int>{1, 2, 3});
    expect_pass(check_construction(U, pred));
  }
  // rank 6, size 3^5 + 3^4 + 1 = 325 on PG(2, 3^5)
  {
    Tower t = Tower::build(3, {1, 5});
    JVParams p = make_jv_params(t, 1, 5, 5, {2, 2, 2});
    auto [U, pred] = jv_build(p);
    REQUIRE(*pred.size == 325);
    expect_pass(check_construction(U, pred));
  }
}

TEST_CASE("power-span parameter validation") {
  Tower t = Tower::build(2, {1, 4});
  REQUIRE_THROWS_AS(make_jv_params(t, 1, 4, 4, {4, 2}), UsageError);  // k_0 + k_1 > t + 1
  REQUIRE_THROWS_AS(make_jv_params(t, 1, 4, 4, {2, 3}), UsageError);  // not descending
  REQUIRE_THROWS_AS(make_jv_params(t, 1, 4, 1, {1, 1}), UsageError);  // t must exceed 1
}

TEST_CASE("coordinate-polynomial weights") {
  Tower t = Tower::build(2, {1, 5});
  JVParams p = make_jv_params(t, 1, 5, 5, {3, 2});
  auto [U, pred] = jv_build(p);

  Poly one = Poly::one(t, 1);
  Poly zero = Poly::zero(t, 1);
  Poly x = Poly::x(t, 1);
  REQUIRE(jv_point_weight(p, {one, zero}) == 3);  // E_0 has weight k_0
  REQUIRE(jv_point_weight(p, {x, one}) == 2);     // min(3-1, 2-0)
  REQUIRE(jv_point_weight(p, {one, one}) == 2);   // all degrees 0: min k_i
  REQUIRE_THROWS_AS(jv_point_weight(p, {x, x}), UsageError);  // gcd = x

  // exhaustive agreement with the solved weight on gcd-one tuples
  Tower t3 = Tower::build(2, {1, 3});
  JVParams p3 = make_jv_params(t3, 1, 3, 3, {2, 1});
  auto [U3, pred3] = jv_build(p3);
  for (u64 a = 0; a < 8; ++a) {
    for (u64 b = 0; b < 8; ++b) {
      if (a == 0 && b == 0) continue;
      Poly f0{&t3, 1, {}}, f1{&t3, 1, {}};
      for (int i = 0; i < 3; ++i) {
        if ((a >> i) & 1) {
          f0.c.resize(i + 1, t3.zero());
          f0.c[i] = t3.one();
        }
        if ((b >> i) & 1) {
          f1.c.resize(i + 1, t3.zero());
          f1.c[i] = t3.one();
        }
      }
      bool gcd_one;
      if (f0.is_zero() || f1.is_zero()) {
        const Poly& nz = f0.is_zero() ? f1 : f0;
        gcd_one = nz.degree() == Degree::of(0);
      } else {
        gcd_one = coprime(f0, f1);
      }
      if (!gcd_one) continue;
      // the formula is asserted exactly where the paper states it: gcd one,
      // all degrees below t, and a positive minimum
      int w = jv_point_weight(p3, {f0, f1});
      std::vector<Element> pt = jv_point(p3, {f0, f1});
      if (w >= 1) REQUIRE(weight(U3, pt) == w);
    }
  }
}

TEST_CASE("proper hyperplanes from pairwise coprime polynomials") {
  // JV_{3,5}(lambda, 5; 2,2,2) with g = (x, x+1, x+2)
  {
    Tower t = Tower::build(3, {1, 5});
    JVParams p = make_jv_params(t, 1, 5, 5, {2, 2, 2});
    auto [U, pred] = jv_build(p);
    std::vector<Poly> gs = {Poly::parse(t, 1, "0,1"), Poly::parse(t, 1, "1,1"),
                            Poly::parse(t, 1, "2,1")};
    HyperplaneSection hs = jv_proper_hyperplane(p, U, gs);
    REQUIRE(hs.section_points == 4);  // (3^2 - 1)/(3 - 1)
    REQUIRE(hs.all_weight_one);
    REQUIRE(hs.spans);
  }
  // d = 1: the hyperplane is a single point of weight 1
  {
    Tower t = Tower::build(2, {1, 5});
    JVParams p = make_jv_params(t, 1, 5, 5, {3, 2});
    auto [U, pred] = jv_build(p);
    std::vector<Poly> gs = {Poly::parse(t, 1, "1,1,1"), Poly::parse(t, 1, "0,1")};
    HyperplaneSection hs = jv_proper_hyperplane(p, U, gs);
    REQUIRE(hs.section_points == 1);  // (q^d - 1)/(q - 1) with d = 1
    REQUIRE(hs.all_weight_one);
  }
  // degenerate unit polynomial for k_i = 1
  {
    Tower t = Tower::build(2, {1, 5});
    JVParams p = make_jv_params(t, 1, 5, 5, {2, 2, 1});
    auto [U, pred] = jv_build(p);
    std::vector<Poly> gs = {Poly::parse(t, 1, "0,1"), Poly::parse(t, 1, "1,1"),
                            Poly::one(t, 1)};
    HyperplaneSection hs = jv_proper_hyperplane(p, U, gs);
    REQUIRE(hs.section_points == 3);  // (q^d - 1)/(q - 1) with d = 2
    REQUIRE(hs.all_weight_one);
    REQUIRE(hs.spans);
  }
}

TEST_CASE("shifted lift: the 33-point instance with all four formulas") {
  Tower t = Tower::build(2, {1, 3, 6});
  JVParams base = make_jv_params(t, 1, 3, 3, {2, 1});
  auto [Uprime, base_pred] = jv_build(base);
  LinearSetReport base_rep = report(Uprime);
  REQUIRE(base_rep.size == 5);
  REQUIRE(weight(Uprime, unit_vec(Uprime.ctx, 0)) == 2);

  CasertaParams cp;
  cp.tw = &t;
  cp.e = 1;
  cp.t_abs = 3;
  cp.m = 6;
  cp.Z = make_z(t, 3, 6, 1);
  cp.Uprime = Uprime;
  // a weight-1 point of L_{U'} away from E_0 witnesses (1,1)-minimum size
  ProjSubspace omega = proj_point(Uprime.ctx, {t.one(), t.one()});
  REQUIRE(weight(Uprime, omega) == 1);
  auto [U, pred] = caserta_build(cp, omega);
  REQUIRE(pred.rank == 6);
  REQUIRE(*pred.size == 33);
  REQUIRE(*pred.w_e0 == 5);
  REQUIRE((*pred.N)[1] == 32);
  REQUIRE((*pred.N)[5] == 1);
  expect_pass(check_construction(U, pred));
  // identity check: 32*1 + 1*31 = 63 = 2^6 - 1
  LinearSetReport rep = report(U);
  REQUIRE(rep.N[1] * 1 + rep.N[5] * 31 == 63);
  // lifted spectrum: w'(E_0) = k_0, so (1, ..., k_1, rt + w'(E_0)) = (1, 5)
  REQUIRE(rep.spectrum == std::vector<int>{1, 5});
}

TEST_CASE("shifted lift of the degenerate single-point base") {
  Tower t = Tower::build(2, {1, 3, 6});
  Context pctx{&t, 1, 3, 1};
  FqSubspace Uprime = span_fq(pctx, {{t.one(), t.zero()}});
  CasertaParams cp;
  cp.tw = &t;
  cp.e = 1;
  cp.t_abs = 3;
  cp.m = 6;
  cp.Z = make_z(t, 3, 6, 1);
  cp.Uprime = Uprime;
  auto [U, pred] = caserta_build(cp);
  REQUIRE(pred.rank == 4);
  REQUIRE(*pred.size == 1);  // L_U = {E_0}
  REQUIRE(*pred.w_e0 == 4);  // rt + 1
  expect_pass(check_construction(U, pred));
}

TEST_CASE("shifted lift refuses Z containing 1") {
  Tower t = Tower::build(2, {1, 3, 6});
  JVParams base = make_jv_params(t, 1, 3, 3, {2, 1});
  auto [Uprime, base_pred] = jv_build(base);
  CasertaParams cp;
  cp.tw = &t;
  cp.e = 1;
  cp.t_abs = 3;
  cp.m = 6;
  cp.Z = span_mod(t, 3, 6, {t.one()});  // contains 1
  cp.Uprime = Uprime;
  REQUIRE_THROWS_AS(caserta_build(cp), UsageError);
}

TEST_CASE("lifted spectrum when E_0 has small weight in the base") {
  // swap coordinates of the base so that w'(E_0) = k_1 < k_0
  Tower t = Tower::build(2, {1, 3, 6});
  JVParams base = make_jv_params(t, 1, 3, 3, {2, 1});
  auto [Uprime, base_pred] = jv_build(base);
  std::vector<std::vector<Element>> swap = {{t.zero(), t.one()}, {t.one(), t.zero()}};
  FqSubspace swapped = apply_gl(Uprime, swap);
  REQUIRE(weight(swapped, unit_vec(swapped.ctx, 0)) == 1);

  CasertaParams cp;
  cp.tw = &t;
  cp.e = 1;
  cp.t_abs = 3;
  cp.m = 6;
  cp.Z = make_z(t, 3, 6, 1);
  cp.Uprime = swapped;
  auto [U, pred] = caserta_build(cp);
  expect_pass(check_construction(U, pred));
  LinearSetReport rep = report(U);
  // w'(E_0) = 1 < k_0 = 2 and k_1 < k_0: spectrum (1, ..., k_1, k_0, rt + w')
  REQUIRE(rep.spectrum == std::vector<int>{1, 2, 4});
}

TEST_CASE("weight-distribution transfer matches a wider power span when k_i = k_0") {
  // C_{2,2,3}(Z, U') with U' = JV_{2,3}(mu,3;2,1) has the same distribution
  // as JV_{2,6}(lambda,6;5,1)
  Tower t = Tower::build(2, {1, 3, 6});
  JVParams base = make_jv_params(t, 1, 3, 3, {2, 1});
  auto [Uprime, bp] = jv_build(base);
  CasertaParams cp;
  cp.tw = &t;
  cp.e = 1;
  cp.t_abs = 3;
  cp.m = 6;
  cp.Z = make_z(t, 3, 6, 1);
  cp.Uprime = Uprime;
  auto [U, pred] = caserta_build(cp);
  LinearSetReport lifted = report(U);

  JVParams wide = make_jv_params(t, 1, 6, 6, {5, 1});
  auto [W, wpred] = jv_build(wide);
  expect_pass(check_construction(W, wpred));
  REQUIRE(report(W).N == lifted.N);
}

TEST_CASE("no power span matches the lift when k_i < k_0 - 1") {
  // C_{2,2,4}(Z, swap_1(JV_{2,4}(mu,4;3,1))) on PG(1, 2^8): w'(E_0) = 1 < k_0 - 1
  Tower t = Tower::build(2, {1, 4, 8});
  JVParams base = make_jv_params(t, 1, 4, 4, {3, 1});
  auto [Uprime, bp] = jv_build(base);
  std::vector<std::vector<Element>> swap = {{t.zero(), t.one()}, {t.one(), t.zero()}};
  FqSubspace swapped = apply_gl(Uprime, swap);
  CasertaParams cp;
  cp.tw = &t;
  cp.e = 1;
  cp.t_abs = 4;
  cp.m = 8;
  cp.Z = make_z(t, 4, 8, 1);
  cp.Uprime = swapped;
  auto [U, pred] = caserta_build(cp);
  expect_pass(check_construction(U, pred));
  LinearSetReport lifted = report(U);
  REQUIRE(lifted.rank == 8);

  // exhaustive search over admissible power-span parameter vectors on the line
  for (int kk0 = 4; kk0 <= 7; ++kk0) {
    int kk1 = 8 - kk0;
    if (kk1 < 1 || kk1 > kk0) continue;
    int tmin = kk0 + kk1 - 1;  // need k_0 + k_1 <= t + 1 with t | 8, t > 1
    for (int tt : {2, 4, 8}) {
      if (tt < tmin || tt < 2) continue;
      JVParams p = make_jv_params(t, 1, 8, tt, {kk0, kk1});
      auto [W, wp] = jv_build(p);
      REQUIRE(report(W).N != lifted.N);
    }
  }
}

TEST_CASE("prime-degree tight family") {
  {
    Tower t = Tower::build(3, {1, 2});
    auto [U, pred] = prime_build(t, 1, 2, 1, 1, 2);
    REQUIRE(pred.rank == 3);
    REQUIRE(*pred.size == 10);
    expect_pass(check_construction(U, pred));
  }
  {
    Tower t = Tower::build(2, {1, 2});
    auto [U, pred] = prime_build(t, 1, 2, 1, 1, 2);
    REQUIRE(pred.rank == 3);
    REQUIRE(*pred.size == 5);
    expect_pass(check_construction(U, pred));
  }
  // r = 0 edge: the whole line
  {
    Tower t = Tower::build(2, {1, 2});
    auto [U, pred] = prime_build(t, 1, 2, 1, 0, 4);
    REQUIRE(*pred.size == 5);
    expect_pass(check_construction(U, pred));
  }
  // dimension window enforced
  {
    Tower t = Tower::build(2, {1, 2});
    REQUIRE_THROWS_AS(prime_build(t, 1, 2, 1, 1, 1), UsageError);
    REQUIRE_THROWS_AS(prime_build(t, 1, 2, 1, 1, 3), UsageError);
  }
}

TEST_CASE("mixed-field product: the 21-point plane instance") {
  Tower t = Tower::build(2, {1, 2, 4});
  Context c1{&t, 2, 4, 0};
  FqSubspace U1 = span_fq(c1, {{t.one()}});  // F_4-line of F_16
  Context c2{&t, 1, 2, 1};
  FqSubspace U2 =
      span_fq(c2, {{t.one(), t.zero()}, {t.generator(2), t.zero()}, {t.zero(), t.one()}});
  // witness hyperplane of PG(1, 4): a weight-1 point of L_{U_2}
  ProjSubspace w2 = proj_point(c2, {t.one(), t.one()});
  auto [U, pred] = product_build(U1, U2, w2);
  REQUIRE(pred.rank == 5);
  REQUIRE(*pred.size == 21);
  REQUIRE((*pred.N)[1] == 16);
  REQUIRE((*pred.N)[2] == 5);
  REQUIRE(*pred.d_minimum == false);
  expect_pass(check_construction(U, pred));
  // identity: 16*1 + 5*3 = 31 = 2^5 - 1
  LinearSetReport rep = report(U);
  REQUIRE(rep.N[1] + 3 * rep.N[2] == 31);
}

TEST_CASE("mixed-field product with a single-point second factor") {
  Tower t = Tower::build(2, {1, 2, 4});
  Context c1{&t, 2, 4, 0};
  FqSubspace U1 = span_fq(c1, {{t.one()}});
  Context c2{&t, 1, 2, 0};
  FqSubspace U2 = span_fq(c2, {{t.one()}});
  auto [U, pred] = product_build(U1, U2);
  REQUIRE(*pred.size == 1 + 4);  // |L_{U_1}| + q^{k_1 t}
  expect_pass(check_construction(U, pred));
}

TEST_CASE("mixed-field product: the 41-point PG(2, 2^9) instance") {
  Tower t = Tower::build(2, {1, 3, 9});
  Context c1{&t, 3, 9, 0};
  FqSubspace U1 = span_fq(c1, {{t.one()}});  // F_8-line of F_512
  JVParams p2 = make_jv_params(t, 1, 3, 3, {2, 1});
  auto [U2, pred2] = jv_build(p2);
  auto [U, pred] = product_build(U1, U2);
  REQUIRE(pred.rank == 6);
  REQUIRE(*pred.size == 32 + 8 + 1);
  expect_pass(check_construction(U, pred));

  // the line X_0 = 0 meets L_U in exactly 5 points
  Context ctx = U.ctx;
  ProjSubspace line = proj_span(ctx, {{t.zero(), t.one(), t.zero()},
                                      {t.zero(), t.zero(), t.one()}});
  FqSubspace section = intersect(U, line);
  REQUIRE(report(section).size == 5);
}

TEST_CASE("projective maps preserve rank and weight distribution") {
  Tower t = Tower::build(2, {1, 5});
  JVParams p = make_jv_params(t, 1, 5, 5, {3, 2});
  auto [U, pred] = jv_build(p);
  // identity
  std::vector<std::vector<Element>> id = {{t.one(), t.zero()}, {t.zero(), t.one()}};
  REQUIRE(apply_gl(U, id) == U);
  // coordinate swap
  std::vector<std::vector<Element>> sw = {{t.zero(), t.one()}, {t.one(), t.zero()}};
  FqSubspace V = apply_gl(U, sw);
  REQUIRE(report(V).N == report(U).N);
  // singular matrices are rejected
  std::vector<std::vector<Element>> sing = {{t.one(), t.one()}, {t.one(), t.one()}};
  REQUIRE_THROWS_AS(apply_gl(U, sing), UsageError);
}

TEST_CASE("the shear example moves the weight of E_0 to 1") {
  Tower t = Tower::build(2, {1, 6});
  JVParams p = make_jv_params(t, 1, 6, 6, {2, 2, 2});
  auto [U, pred] = jv_build(p);
  REQUIRE(weight(U, unit_vec(U.ctx, 0)) == 2);
  // (x, y, z) -> (x, y - lambda x, z)
  std::vector<std::vector<Element>> shear = {
      {t.one(), t.zero(), t.zero()},
      {t.neg(p.lambda), t.one(), t.zero()},
      {t.zero(), t.zero(), t.one()}};
  FqSubspace V = apply_gl(U, shear);
  REQUIRE(weight(V, unit_vec(V.ctx, 0)) == 1);
  REQUIRE(report(V).N == report(U).N);
}
