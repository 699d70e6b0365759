#include "doctest.h"

#include <algorithm>

#include "approxlab/certificates.hpp"
#include "approxlab/subgroup_search.hpp"
#include "approxlab/zoo.hpp"
#include "oracles.hpp"

using namespace approxlab;
using namespace testlab;

namespace {

bool is_subgroup(const ElementSet& s) {
  const auto& g = s.group();
  if (!s.contains(g->identity())) return false;
  for (int a : s.indices())
    for (int b : s.indices())
      if (!s.contains(g->mul(a, b))) return false;
  return true;
}

}  // namespace

TEST_SUITE("subgroup_search") {

TEST_CASE("a subgroup finds itself with c = 1") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(12));
  ElementSet X(g, std::vector<int>{0, 4, 8});
  auto res = find_commensurable_subgroup(X, 4, Rat(0));
  REQUIRE(res.found());
  CHECK(res.c == 1);
  CHECK(res.subgroup->bits() == X.bits());
  CHECK(res.x_by_s.exact());
  CHECK(res.s_by_x.exact());
  CHECK(res.x_by_s.value == 1);
  CHECK(res.s_by_x.value == 1);
  CHECK(res.subgroups_tested >= 1);
  CHECK_FALSE(res.truncated);
}

TEST_CASE("union of three cosets recovers the subgroup") {
  // Order-24 product; index(a, b) = a + 3b.  S = {(0,0), (0,4)}; X is the
  // union of S, (1,2)·S and its inverse coset (2,6)·S.
  GroupPtr g = make_group(GroupSpec::product({GroupSpec::cyclic_lee(3), GroupSpec::cyclic_lee(8)}));
  ElementSet S(g, std::vector<int>{0, 12});
  REQUIRE(is_subgroup(S));
  ElementSet X = S.set_union(S.left_translate(7)).set_union(S.left_translate(20));
  REQUIRE(X.is_symmetric());
  REQUIRE(X.contains(g->identity()));
  REQUIRE(X.count() == 6);

  auto res = find_commensurable_subgroup(X, 3, Rat(0));
  REQUIRE(res.found());
  CHECK(is_subgroup(*res.subgroup));
  CHECK(res.c <= 3);
  CHECK(res.c == std::max(res.x_by_s.value, res.s_by_x.value));
  // Certify the winner independently: both directions at radius 0.
  CHECK(commensurable(X, *res.subgroup, res.c, Rat(0)).passed);
}

TEST_CASE("thickened subgroup at positive radius") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(16));
  ElementSet S(g, std::vector<int>{0, 8});
  ElementSet X = S.thicken(Rat(2));
  REQUIRE(X.count() == 10);
  auto res = find_commensurable_subgroup(X, 1, Rat(2));
  REQUIRE(res.found());
  CHECK(res.c == 1);
  CHECK(is_subgroup(*res.subgroup));
  // One translate of D_2(S') covers X and vice versa.
  CHECK(res.x_by_s.value == 1);
  CHECK(res.s_by_x.value == 1);
}

TEST_CASE("no commensurable subgroup within budget is reported honestly") {
  // A 3-arc in a prime-order group: the only subgroups are trivial and the
  // whole group, and neither is commensurable at c_max = 2, r = 0.
  GroupPtr g = make_group(GroupSpec::cyclic_lee(19));
  ElementSet X(g, std::vector<int>{18, 0, 1});
  auto res = find_commensurable_subgroup(X, 2, Rat(0));
  CHECK_FALSE(res.found());
  CHECK(res.c == -1);
  CHECK(res.subgroups_tested >= 1);
  CHECK_FALSE(res.truncated);
}

TEST_CASE("candidate subgroups stay inside the fourth power") {
  GroupPtr g = make_group(GroupSpec::dihedral(6));
  ElementSet X(g, std::vector<int>{0, 1, 11});  // identity plus rotation pair
  auto res = find_commensurable_subgroup(X, 6, Rat(0));
  if (res.found()) {
    ElementSet x4 = X.power(4);
    CHECK(res.subgroup->subset_of(x4));
    CHECK(is_subgroup(*res.subgroup));
    CHECK(commensurable(X, *res.subgroup, res.c, Rat(0)).passed);
  }
  CHECK(res.candidates_examined > 0);
}

TEST_CASE("input validation") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(12));
  ElementSet asym(g, std::vector<int>{0, 1});
  CHECK_THROWS_AS(find_commensurable_subgroup(asym, 2, Rat(0)), std::invalid_argument);
  ElementSet no_id(g, std::vector<int>{1, 11});
  CHECK_THROWS_AS(find_commensurable_subgroup(no_id, 2, Rat(0)), std::invalid_argument);
  ElementSet ok(g, std::vector<int>{0});
  CHECK_THROWS_AS(find_commensurable_subgroup(ok, 0, Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(find_commensurable_subgroup(ok, 2, Rat(-1)), std::invalid_argument);
}

TEST_CASE("serialization shape") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(12));
  ElementSet X(g, std::vector<int>{0, 6});
  json j = find_commensurable_subgroup(X, 2, Rat(0)).to_json();
  CHECK(j.contains("found"));
  CHECK(j.contains("c"));
  CHECK(j.contains("subgroup"));
  CHECK(j.contains("candidates_examined"));
  CHECK(j.contains("subgroups_tested"));
  CHECK(j.contains("truncated"));
}

}  // TEST_SUITE
