#include <catch2/catch_amalgamated.hpp>

#include "linsets/polynomials.hpp"

using namespace linsets;

TEST_CASE("monic gcd examples over F_2") {
  Tower t = Tower::build(2, {1, 2});
  Poly x = Poly::x(t, 1);
  Poly x2x = Poly::parse(t, 1, "0,1,1");      // x^2 + x
  Poly cubic = Poly::parse(t, 1, "1,1,0,1");  // x^3 + x + 1
  Poly quad = Poly::parse(t, 1, "1,1,1");     // x^2 + x + 1
  REQUIRE(gcd_monic(x2x, x) == x);
  REQUIRE(gcd_monic(cubic, Poly::one(t, 1)) == Poly::one(t, 1));
  REQUIRE(gcd_monic(cubic, quad) == Poly::one(t, 1));
  REQUIRE_THROWS_AS(gcd_monic(Poly::zero(t, 1), Poly::zero(t, 1)), UsageError);
  // gcd(a f, g) = gcd(f, g) for a unit a
  Tower t5 = Tower::build(5, {1});
  Poly f5 = Poly::parse(t5, 1, "1,2,1");
  Poly g5 = Poly::parse(t5, 1, "1,1");
  Poly f5_scaled = f5;
  for (auto& c : f5_scaled.c) c = t5.scalar_mul(3, c);
  REQUIRE(gcd_monic(f5, g5) == gcd_monic(f5_scaled, g5));
}

TEST_CASE("degree convention keeps deg(fg) = deg f + deg g") {
  Tower t = Tower::build(2, {1, 2});
  Poly z = Poly::zero(t, 1);
  Poly f = Poly::parse(t, 1, "1,1,0,1");
  REQUIRE(z.degree() == Degree::neg_inf());
  REQUIRE(f.mul(z).degree() == f.degree() + z.degree());
  REQUIRE(z.mul(z).degree() == z.degree() + z.degree());
  Poly g = Poly::parse(t, 1, "1,1");
  REQUIRE(f.mul(g).degree() == Degree::of(4));
  REQUIRE(f.mul(g).degree() == f.degree() + g.degree());
}

TEST_CASE("irreducible counts match Gauss's formula and brute force") {
  REQUIRE(count_irreducible(2, 2) == 1);
  REQUIRE(count_irreducible(2, 3) == 2);
  for (u64 q : {2, 3, 5, 7, 9}) REQUIRE(count_irreducible(q, 1) == q);

  // exhaustive cross-check for q^s <= 2^12
  for (auto [q, degs] : std::vector<std::pair<u64, std::vector<int>>>{
           {2, {1}}, {3, {1}}, {4, {2}}, {5, {1}}}) {
    Tower t = Tower::build(q == 4 ? 2 : q, degs);
    int e = degs[0];
    for (int s = 1; s <= 4; ++s) {
      if (checked_pow(q, s) > 4096) continue;
      u64 brute = 0;
      for (const Poly& f : monic_polys_of_degree(t, e, s))
        if (is_irreducible(f)) ++brute;
      REQUIRE(brute == count_irreducible(q, s));
    }
  }
}

TEST_CASE("irreducible count bounds") {
  for (u64 q : {2, 3, 4, 5}) {
    for (int s = 2; s <= 6; ++s) {
      u64 cnt = count_irreducible(q, s);
      u64 qs = checked_pow(q, s);
      REQUIRE(cnt * s <= qs - q);
      // count >= (q^s - 2 q^{s/2}) / s, exactly: (q^s - count*s)^2 <= 4 q^s
      REQUIRE(qs >= cnt * s);
      u64 gap = qs - cnt * s;
      REQUIRE(static_cast<__int128>(gap) * gap <= static_cast<__int128>(4) * qs);
    }
  }
}

TEST_CASE("the two cubic irreducibles over F_2") {
  Tower t = Tower::build(2, {1});
  std::vector<Poly> irr = first_irreducibles(t, 1, 3, 10);
  REQUIRE(irr.size() == 2);
  REQUIRE(irr[0] == Poly::parse(t, 1, "1,1,0,1"));  // x^3 + x + 1
  REQUIRE(irr[1] == Poly::parse(t, 1, "1,0,1,1"));  // x^3 + x^2 + 1
}

TEST_CASE("coprime systems") {
  Tower t3 = Tower::build(3, {1});
  auto sys = coprime_system(t3, 1, {2, 2, 2});
  REQUIRE(sys.has_value());
  REQUIRE((*sys)[0] == Poly::parse(t3, 1, "0,1"));  // x
  REQUIRE((*sys)[1] == Poly::parse(t3, 1, "1,1"));  // x + 1
  REQUIRE((*sys)[2] == Poly::parse(t3, 1, "2,1"));  // x + 2

  Tower t2 = Tower::build(2, {1});
  auto units = coprime_system(t2, 1, {1, 1, 1});
  REQUIRE(units.has_value());
  for (const Poly& f : *units) REQUIRE(f == Poly::one(t2, 1));

  auto quads = coprime_system(t2, 1, {3, 3});
  REQUIRE(quads.has_value());
  REQUIRE((*quads)[0].degree_int() == 2);
  REQUIRE((*quads)[1].degree_int() == 2);
  REQUIRE(coprime((*quads)[0], (*quads)[1]));

  // three pairwise-coprime monic linears over F_2 cannot exist
  auto fail = coprime_system(t2, 1, {2, 2, 2});
  REQUIRE(!fail.has_value());
}

TEST_CASE("coprime system outputs always pass gcd and degree checks") {
  Tower t = Tower::build(2, {1});
  for (auto ks : std::vector<std::vector<int>>{{2, 2}, {3, 2, 1}, {4, 3}, {3, 3, 2}}) {
    auto sys = coprime_system(t, 1, ks);
    REQUIRE(sys.has_value());
    for (size_t i = 0; i < sys->size(); ++i) {
      if (ks[i] == 1) REQUIRE((*sys)[i].degree() == Degree::of(0));
      else REQUIRE((*sys)[i].degree_int() == ks[i] - 1);
      for (size_t j = i + 1; j < sys->size(); ++j) REQUIRE(coprime((*sys)[i], (*sys)[j]));
    }
  }
}

TEST_CASE("minimal polynomials and degrees") {
  Tower t = Tower::build(2, {1, 2});
  auto [f1, d1] = minimal_poly_and_degree(t, t.one(), 1);
  REQUIRE(d1 == 1);
  REQUIRE(f1 == Poly::parse(t, 1, "1,1"));  // x + 1
  auto [f2, d2] = minimal_poly_and_degree(t, t.xi(), 1);
  REQUIRE(d2 == 2);
  REQUIRE(f2 == Poly::parse(t, 1, "1,1,1"));  // x^2 + x + 1

  Tower t8 = Tower::build(2, {1, 3, 6});
  auto [f3, d3] = minimal_poly_and_degree(t8, t8.xi(), 3);
  REQUIRE(d3 == 2);  // the top generator has degree 2 over F_8
  REQUIRE(!t8.in_level(t8.xi(), 3));
  REQUIRE(t8.in_level(t8.xi(), 6));
  REQUIRE(elt_is_zero(f3.eval(t8.xi())));
}

TEST_CASE("polynomial text format round trip") {
  Tower t = Tower::build(2, {1, 2});
  Poly f = Poly::parse(t, 1, "1,1,0,1");
  REQUIRE(f.text() == "1,1,0,1");
  REQUIRE(Poly::parse(t, 1, f.text()) == f);
  Poly g = Poly::parse(t, 2, "3,1");  // base-4 coefficients use digit indices
  REQUIRE(g.text() == "3,1");
  REQUIRE(g.degree_int() == 1);
}

TEST_CASE("evaluation and derivative") {
  Tower t = Tower::build(3, {1, 2});
  Poly f = Poly::parse(t, 1, "1,0,1");  // x^2 + 1
  Element a = t.xi();
  REQUIRE(f.eval(a) == t.add(t.mul(a, a), t.one()));
  REQUIRE(f.derivative() == Poly::parse(t, 1, "0,2"));  // 2x
}
