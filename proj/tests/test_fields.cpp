#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "linsets/fields.hpp"

using namespace linsets;

TEST_CASE("F_4 tower uses the unique irreducible quadratic") {
  Tower t = Tower::build(2, {1, 2});
  REQUIRE(t.modulus() == fp::Poly{1, 1, 1});  // x^2 + x + 1
  REQUIRE(t.levels().size() == 2);
  // level 0 over F_2 is defined by x, level 1 by x^2 + x + 1
  REQUIRE(t.levels()[0].defining.size() == 2);
  REQUIRE(t.encode(t.levels()[0].defining[0]) == 0);
  REQUIRE(t.levels()[1].defining.size() == 3);
  REQUIRE(t.encode(t.levels()[1].defining[0]) == 1);
  REQUIRE(t.encode(t.levels()[1].defining[1]) == 1);
}

TEST_CASE("tower F_2 < F_8 < F_64: subfield counts and embeddings") {
  Tower t = Tower::build(2, {1, 3, 6});
  // exhaustive subfield test: a -> a^{p^m} == a accepts exactly p^m elements
  for (int m : {1, 2, 3, 6}) {
    u64 count = 0;
    for (u64 v = 0; v < 64; ++v)
      if (t.in_level(t.from_encoding(v), m)) ++count;
    REQUIRE(count == checked_pow(2, m));
  }
  // embeddings are the identity on representations, hence commute
  for (u64 v = 0; v < 64; ++v) {
    Element a = t.from_encoding(v);
    if (!t.in_level(a, 1)) continue;
    Element via = t.embed(t.embed(a, 1, 3), 3, 6);
    Element direct = t.embed(a, 1, 6);
    REQUIRE(via == direct);
  }
  // defining polynomial of F_8 over F_2 is x^3 + x + 1
  REQUIRE(t.levels()[1].defining.size() == 4);
  REQUIRE(t.encode(t.levels()[1].defining[0]) == 1);
  REQUIRE(t.encode(t.levels()[1].defining[1]) == 1);
  REQUIRE(t.encode(t.levels()[1].defining[2]) == 0);
  // defining polynomial of F_64 over F_8 is an irreducible quadratic: no root
  const auto& f = t.levels()[2].defining;
  REQUIRE(f.size() == 3);
  for (const Element& a : t.level_elements(3)) {
    Element val = t.add(t.add(t.mul(a, t.mul(a, f[2])), t.mul(a, f[1])), f[0]);
    REQUIRE(!elt_is_zero(val));
  }
}

TEST_CASE("F_9 tower: all nine elements satisfy a^9 = a") {
  Tower t = Tower::build(3, {1, 2});
  u64 fixed = 0;
  for (u64 v = 0; v < 9; ++v)
    if (t.in_level(t.from_encoding(v), 2)) ++fixed;
  REQUIRE(fixed == 9);
  u64 base = 0;
  for (u64 v = 0; v < 9; ++v)
    if (t.in_level(t.from_encoding(v), 1)) ++base;
  REQUIRE(base == 3);
}

TEST_CASE("field axioms, exhaustive at small sizes") {
  for (auto [p, degs] : std::vector<std::pair<u64, std::vector<int>>>{
           {2, {1, 4}}, {3, {1, 2}}, {5, {1, 2}}}) {
    Tower t = Tower::build(p, degs);
    u64 size = t.field_size();
    std::vector<Element> all;
    for (u64 v = 0; v < size; ++v) all.push_back(t.from_encoding(v));
    for (const Element& a : all) {
      if (!elt_is_zero(a)) REQUIRE(t.mul(a, t.inv(a)) == t.one());
      for (const Element& b : all) {
        REQUIRE(t.mul(a, b) == t.mul(b, a));
        for (const Element& c : all) {
          REQUIRE(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
          REQUIRE(t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("field axioms on random samples in a larger tower") {
  Tower t = Tower::build(2, {1, 4, 8});
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    Element a = t.from_encoding(rng() % 256);
    Element b = t.from_encoding(rng() % 256);
    Element c = t.from_encoding(rng() % 256);
    REQUIRE(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
    REQUIRE(t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c)));
    if (!elt_is_zero(a)) REQUIRE(t.mul(a, t.inv(a)) == t.one());
  }
}

TEST_CASE("trace examples in F_4 / F_2") {
  Tower t = Tower::build(2, {1, 2});
  Element omega = t.xi();  // root of x^2+x+1
  REQUIRE(t.trace(t.zero(), 2, 1) == t.zero());
  REQUIRE(t.trace(omega, 2, 1) == t.one());   // omega + omega^2 = 1
  REQUIRE(t.trace(t.one(), 2, 1) == t.zero());  // 1 + 1 = 0
}

TEST_CASE("trace is F_q-linear, surjective, and transitive") {
  Tower t = Tower::build(2, {1, 2, 6});
  // surjective onto F_2: some element has trace 1
  bool hit = false;
  for (u64 v = 0; v < 64 && !hit; ++v)
    hit = t.trace(t.from_encoding(v), 6, 1) == t.one();
  REQUIRE(hit);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Element a = t.from_encoding(rng() % 64);
    Element b = t.from_encoding(rng() % 64);
    REQUIRE(t.trace(t.add(a, b), 6, 1) == t.add(t.trace(a, 6, 1), t.trace(b, 6, 1)));
    // Tr_{q^n/q} = Tr_{q^t/q} o Tr_{q^n/q^t}
    REQUIRE(t.trace(a, 6, 1) == t.trace(t.trace(a, 6, 2), 2, 1));
    REQUIRE(t.in_level(t.trace(a, 6, 2), 2));
  }
}

TEST_CASE("degrees and generators of subfield levels") {
  Tower t = Tower::build(2, {1, 2, 4});
  REQUIRE(t.degree_abs(t.one()) == 1);
  REQUIRE(t.degree_abs(t.xi()) == 4);
  Element g2 = t.generator(2);
  REQUIRE(t.degree_abs(g2) == 2);
  REQUIRE(t.in_level(g2, 2));
  // degree over F_4 of the top generator is 2
  REQUIRE(t.degree_over(t.xi(), 2) == 2);
  REQUIRE(t.degree_over(g2, 2) == 1);
}

TEST_CASE("expand and fold are mutually inverse") {
  Tower t = Tower::build(3, {1, 2, 4});
  for (auto [e, m] : std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {2, 4}}) {
    for (const Element& a : t.level_elements(m)) {
      auto coords = t.expand(a, e, m);
      REQUIRE(static_cast<int>(coords.size()) == m / e);
      REQUIRE(t.fold(coords.data(), e, m) == a);
    }
  }
  // expanding an element outside the level is rejected
  REQUIRE_THROWS_AS(t.expand(t.xi(), 1, 2), UsageError);
}

TEST_CASE("small-field tables agree with tower arithmetic") {
  Tower t = Tower::build(2, {2, 4});
  const SmallField& F = t.small_field(2);
  REQUIRE(F.q == 4);
  for (u64 i = 0; i < 4; ++i) {
    for (u64 j = 0; j < 4; ++j) {
      REQUIRE(t.mul(F.elems[i], F.elems[j]) == F.elems[F.mul(i, j)]);
      REQUIRE(t.add(F.elems[i], F.elems[j]) == F.elems[F.add(i, j)]);
    }
    if (i) REQUIRE(F.mul(i, F.inv(i)) == 1);
  }
}

TEST_CASE("inversion via extended Euclid and exponentiation") {
  Tower t = Tower::build(5, {1, 2});
  for (u64 v = 1; v < 25; ++v) {
    Element a = t.from_encoding(v);
    REQUIRE(t.mul(a, t.inv(a)) == t.one());
    REQUIRE(t.pow(a, 24) == t.one());  // multiplicative group order
  }
}

TEST_CASE("tower construction guards") {
  REQUIRE_THROWS_AS(Tower::build(4, {1, 2}), UsageError);   // p not prime
  REQUIRE_THROWS_AS(Tower::build(2, {2, 3}), UsageError);   // not a divisor chain
  REQUIRE_THROWS_AS(Tower::build(2, {1, 21}), UsageError);  // above the default cap
  REQUIRE_NOTHROW(Tower::build(2, {1, 21}, kDefaultFieldCap, true));
}
