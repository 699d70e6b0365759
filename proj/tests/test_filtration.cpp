#include "doctest.h"

#include <map>

#include "approxlab/filtration.hpp"
#include "approxlab/zoo.hpp"
#include "oracles.hpp"

using namespace approxlab;
using namespace testlab;

namespace {

std::map<std::string, std::optional<bool>> verdicts(const FiltrationReport& rep) {
  std::map<std::string, std::optional<bool>> m;
  for (const auto& p : rep.properties) m[p.property] = p.passed;
  return m;
}

// Order-16 product of two order-4 cyclic groups; index(a, b) = a + 4b.
GroupPtr z4xz4() {
  return make_group(GroupSpec::product({GroupSpec::cyclic_lee(4), GroupSpec::cyclic_lee(4)}));
}

}  // namespace

TEST_SUITE("filtration") {

TEST_CASE("type-level validation") {
  GroupPtr g = z4xz4();
  ElementSet S(g, std::vector<int>{0, 10});  // {(0,0), (2,2)}, a subgroup
  ElementSet T(g, std::vector<int>{0, 2, 8, 10});  // the 2-torsion subgroup

  CHECK_NOTHROW(Filtration::make({T, S, S}, T, Rat(0), 2));
  // Nesting violation: S does not contain T.
  CHECK_THROWS_AS(Filtration::make({S, T}, S, Rat(0), 1), std::invalid_argument);
  // Asymmetric chain set.
  ElementSet bad(g, std::vector<int>{0, 1});
  CHECK_THROWS_AS(Filtration::make({bad}, bad, Rat(0), 1), std::invalid_argument);
  // Missing identity.
  ElementSet no_id(g, std::vector<int>{2, 10});
  CHECK_THROWS_AS(Filtration::make({no_id}, no_id, Rat(0), 1), std::invalid_argument);
  // Empty chain, negative radius, c < 1.
  CHECK_THROWS_AS(Filtration::make({}, S, Rat(0), 1), std::invalid_argument);
  CHECK_THROWS_AS(Filtration::make({S}, S, Rat(-1), 1), std::invalid_argument);
  CHECK_THROWS_AS(Filtration::make({S}, S, Rat(0), 0), std::invalid_argument);
}

TEST_CASE("all-equal normal subgroup chain passes every property") {
  GroupPtr g = z4xz4();
  ElementSet S(g, std::vector<int>{0, 10});
  Filtration f = Filtration::make({S, S, S}, S, Rat(0), 1);
  auto rep = filtration_check(f);
  REQUIRE(rep.properties.size() == 8);  // 1_statement, 1_proof, 2..7
  for (const auto& p : rep.properties) {
    CAPTURE(p.property);
    REQUIRE(p.passed.has_value());
    CHECK(*p.passed);
  }
  CHECK(rep.chain_in_eighth_power);
  REQUIRE(rep.all_passed().has_value());
  CHECK(*rep.all_passed());
}

TEST_CASE("one element added to the top set fails exactly the expected properties") {
  GroupPtr g = z4xz4();
  ElementSet S(g, std::vector<int>{0, 10});
  ElementSet X0(g, std::vector<int>{0, 2, 10});  // S plus the involution (2,0)
  Filtration f = Filtration::make({X0, S, S}, S, Rat(0), 1);
  auto rep = filtration_check(f);
  auto v = verdicts(rep);
  // Derivation (c = 1, r_s = 0): the statement form of (1) compares the
  // base's square with X_1 and never sees the corruption; the proof form
  // must cover the enlarged X_0 by one translate of the 2-element base
  // square and fails.  (2) only enlarges right-hand sides.  (3) fails at
  // n = 0 (three elements, two per translate).  (4), (5) are trivial in an
  // abelian group.  Every element is 2-torsion, so seventeenth powers are
  // the identity map and (6) fails at n = 0; squares collapse and (7) needs
  // the new element inside the bottom set, which fails.
  CHECK(*v.at("1_statement"));
  CHECK_FALSE(*v.at("1_proof"));
  CHECK(*v.at("2"));
  CHECK_FALSE(*v.at("3"));
  CHECK(*v.at("4"));
  CHECK(*v.at("5"));
  CHECK_FALSE(*v.at("6"));
  CHECK_FALSE(*v.at("7"));
  REQUIRE(rep.all_passed().has_value());
  CHECK_FALSE(*rep.all_passed());

  // Cross-check the failing inclusions definitionally.
  // (6): x^17 = x on 2-torsion, so the n = 0 instance asks X_0 ⊆ X_1.
  bool incl = true;
  for (int x : X0.indices()) {
    int p = 0;  // x^17 by 17 multiplications
    for (int i = 0; i < 17; ++i) p = g->mul(p, x);
    if (S.contains(p) && !S.contains(x)) incl = false;
  }
  CHECK_FALSE(incl);
  // (7): pick x = (2,0), y = identity; both square to the identity.
  CHECK(g->mul(2, 2) == 0);
  CHECK_FALSE(S.contains(g->mul(g->inverse(0), 2)));
}

TEST_CASE("planted proper chain: exact per-property pattern") {
  // Product of four order-2 groups and an order-8 group; index(a0..a3, b) =
  // a0 + 2a1 + 4a2 + 8a3 + 16b.
  GroupPtr g = make_group(GroupSpec::product(
      {GroupSpec::cyclic_lee(2), GroupSpec::cyclic_lee(2), GroupSpec::cyclic_lee(2),
       GroupSpec::cyclic_lee(2), GroupSpec::cyclic_lee(8)}));
  REQUIRE(g->order() == 128);
  // X_0 = everything over b in {0, 4}; X_1 = first three coordinates; X_2 = first.
  ElementSet X0(g), X1(g), X2(g);
  for (int m = 0; m < 16; ++m) {
    X0.add(m);
    X0.add(m + 16 * 4);
  }
  for (int m = 0; m < 8; ++m) X1.add(m);
  X2.add(0);
  X2.add(1);
  Filtration f = Filtration::make({X0, X1, X2}, X0, Rat(0), 4);
  auto rep = filtration_check(f);
  auto v = verdicts(rep);
  // All sets are subgroups of a 2-torsion-times-{0,4} group: products,
  // conjugates and commutators behave; coset counts are exactly 4.  But
  // x^17 = x for every element, so the seventeenth-power filtration
  // property demands X_n ⊆ X_{n+1}, false on a proper descent; and squares
  // collapse to the identity, so the square-injectivity property demands
  // X_0's differences inside X_2, also false.
  CHECK(*v.at("1_statement"));
  CHECK(*v.at("1_proof"));
  CHECK(*v.at("2"));
  CHECK(*v.at("3"));
  CHECK(*v.at("4"));
  CHECK(*v.at("5"));
  CHECK_FALSE(*v.at("6"));
  CHECK_FALSE(*v.at("7"));
  CHECK(rep.chain_in_eighth_power);
}

TEST_CASE("depth-zero chains make quantified properties vacuous") {
  GroupPtr g = z4xz4();
  ElementSet S(g, std::vector<int>{0, 10});
  Filtration f = Filtration::make({S}, S, Rat(0), 1);
  auto rep = filtration_check(f);
  auto v = verdicts(rep);
  // (2), (3), (4), (6) quantify over n with n+1 <= N = 0: vacuously true.
  CHECK(*v.at("2"));
  CHECK(*v.at("3"));
  CHECK(*v.at("4"));
  CHECK(*v.at("6"));
  // (1) and (7) still carry content on a depth-0 chain.
  CHECK(*v.at("1_statement"));
  CHECK(*v.at("7"));
  REQUIRE(rep.all_passed().has_value());
  CHECK(*rep.all_passed());
}

TEST_CASE("positive thickening radius loosens inclusions") {
  GroupPtr g = z4xz4();
  ElementSet S(g, std::vector<int>{0, 10});
  ElementSet X0(g, std::vector<int>{0, 2, 10});
  // At r_s = 1 the thickened targets absorb the corruption: (2) stays fine
  // and the seventeenth-power property still fails (it has no thickening),
  // while (7) passes because D_1(X_2) reaches the new element.
  Filtration f = Filtration::make({X0, S, S}, S, Rat(1), 2);
  auto rep = filtration_check(f);
  auto v = verdicts(rep);
  CHECK_FALSE(*v.at("6"));
  // (7) with thickening: distance from (2,0) to S is min over s of d((2,0), s).
  // d((2,0),(0,0)) has max-coordinate 2 > 1, d((2,0),(2,2)) = 2 > 1... so it
  // still fails at radius 1; check agreement with the direct computation.
  bool seven_direct = true;
  for (int x : X0.indices())
    for (int y : X0.indices()) {
      if (g->mul(x, x) != g->mul(y, y)) continue;
      const int d = g->mul(g->inverse(y), x);
      bool close = false;
      for (int s : S.indices())
        if (g->dist(d, s) <= Rat(1)) close = true;
      if (!close) seven_direct = false;
    }
  CHECK(*v.at("7") == seven_direct);
  CHECK_FALSE(seven_direct);
}

TEST_CASE("report serialization shape") {
  GroupPtr g = z4xz4();
  ElementSet S(g, std::vector<int>{0, 10});
  Filtration f = Filtration::make({S, S}, S, Rat(0), 1);
  json j = filtration_check(f).to_json();
  REQUIRE(j.contains("properties"));
  REQUIRE(j.at("properties").is_array());
  CHECK(j.at("properties").size() == 8);
  for (const auto& p : j.at("properties")) {
    CHECK(p.contains("property"));
    CHECK(p.contains("passed"));
    CHECK(p.contains("details"));
  }
  CHECK(j.at("context").contains("chain_in_eighth_power"));
  CHECK(j.at("all_passed") == true);
}

}  // TEST_SUITE
