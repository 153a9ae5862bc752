#include <catch2/catch_amalgamated.hpp>

#include "linsets/constructions.hpp"
#include "linsets/oracle.hpp"
#include "linsets/serialize.hpp"

using namespace linsets;
using nlohmann::json;

TEST_CASE("tower serialization round trip") {
  Tower t = Tower::build(2, {1, 3, 6});
  json j = io::tower_to_json(t);
  REQUIRE(j.at("p") == 2);
  REQUIRE(j.at("degrees") == std::vector<int>{1, 3, 6});
  // x^3 + x + 1 over F_2 at the middle level
  REQUIRE(j.at("defining_polynomials")[1] == std::vector<u64>{1, 1, 0, 1});
  auto back = io::tower_from_json(j);
  REQUIRE(back->same_as(t));
  REQUIRE(back->modulus() == t.modulus());
}

TEST_CASE("tampered defining polynomials are rejected") {
  Tower t = Tower::build(2, {1, 2});
  json j = io::tower_to_json(t);
  j["defining_polynomials"][1][0] = 0;  // x^2 + x instead of x^2 + x + 1
  REQUIRE_THROWS_AS(io::tower_from_json(j), UsageError);
}

TEST_CASE("subspace serialization round trip preserves the canonical form") {
  Tower t = Tower::build(2, {1, 5});
  JVParams p = make_jv_params(t, 1, 5, 5, {3, 2});
  auto [U, pred] = jv_build(p);
  json j = io::subspace_to_json(U);
  io::LoadedSubspace back = io::subspace_from_json(j);
  REQUIRE(back.U.mat == U.mat);
  REQUIRE(back.U.ctx.e == U.ctx.e);
  REQUIRE(back.U.ctx.m == U.ctx.m);
  REQUIRE(back.U.ctx.d == U.ctx.d);
  REQUIRE(oracle::same_report(report(back.U), report(U)));
}

TEST_CASE("subspaces over an intermediate level round trip via ext_degree") {
  Tower t = Tower::build(2, {1, 3, 9});
  Context c{&t, 1, 3, 1};
  FqSubspace U = span_fq(c, {{t.one(), t.zero()}, {t.zero(), t.one()}});
  json j = io::subspace_to_json(U);
  REQUIRE(j.at("ext_degree") == 3);
  io::LoadedSubspace back = io::subspace_from_json(j);
  REQUIRE(back.U.mat == U.mat);
}

TEST_CASE("report serialization carries the documented fields") {
  Tower t = Tower::build(2, {1, 2});
  Context ctx{&t, 1, 2, 1};
  FqSubspace U =
      span_fq(ctx, {{t.one(), t.zero()}, {t.xi(), t.zero()}, {t.zero(), t.one()}});
  json j = io::report_to_json(report(U));
  REQUIRE(j.at("size") == 5);
  REQUIRE(j.at("rank") == 3);
  REQUIRE(j.at("N") == std::vector<u64>{4, 1});
  REQUIRE(j.at("spectrum") == std::vector<int>{1, 2});
  REQUIRE(j.at("identities").at("vector_count") == true);
}
