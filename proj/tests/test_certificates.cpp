#include "doctest.h"

#include <bit>
#include <cstdint>

#include "approxlab/certificates.hpp"
#include "approxlab/zoo.hpp"
#include "oracles.hpp"

using namespace approxlab;
using namespace testlab;

TEST_SUITE("certificates") {

TEST_CASE("rough cover of a squared arc, frozen counts") {
  // Ball of radius 2 in the order-16 cyclic Lee group: {14,15,0,1,2}.
  GroupPtr g = make_group(GroupSpec::cyclic_lee(16));
  ElementSet X(g, std::vector<int>{14, 15, 0, 1, 2});
  ElementSet sq = X.product(X);
  CHECK(sq.count() == 9);  // {12..4}, an arc of 9

  auto res = rough_cover(sq, X, Rat(0));
  REQUIRE(res.cover.exact());
  CHECK(res.cover.value == 2);  // two arcs of 5 cover an arc of 9
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->verify());
  CHECK(res.certificate->translates.count() == 2);

  // Same phenomenon on the order-8 group with X = {7,0,1}.
  GroupPtr g8 = make_group(GroupSpec::cyclic_lee(8));
  ElementSet X8(g8, std::vector<int>{7, 0, 1});
  auto res8 = rough_cover(X8.product(X8), X8, Rat(0));
  REQUIRE(res8.cover.exact());
  CHECK(res8.cover.value == 2);
}

TEST_CASE("rough cover against the set-cover oracle with thickening") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(16));
  ElementSet X(g, std::vector<int>{15, 0, 1});
  ElementSet target = X.power(2);
  const Rat r(1);
  auto res = rough_cover(target, X, r);
  REQUIRE(res.cover.exact());
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->verify());
  // Independent minimality check: a translate by a covers exactly the set
  // a·D_r(X), so count the fewest translates by exhaustive search over all
  // center subsets drawn from the useful pool (small here).
  ElementSet body = X.thicken(r);
  ElementSet pool = useful_translate_pool(target, X, r);
  REQUIRE(pool.count() <= 20);
  std::vector<int> cands = pool.indices();
  int best = static_cast<int>(cands.size()) + 1;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << cands.size()); ++mask) {
    ElementSet covered(g);
    for (std::uint32_t rest = mask; rest; rest &= rest - 1)
      covered = covered.set_union(body.left_translate(cands[std::countr_zero(rest)]));
    if (target.subset_of(covered))
      best = std::min(best, std::popcount(mask));
  }
  CHECK(res.cover.value == best);
}

TEST_CASE("certificate construction rejects non-covers") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(8));
  ElementSet X(g, std::vector<int>{7, 0, 1});
  ElementSet sq = X.product(X);
  ElementSet translates(g, std::vector<int>{0});  // X alone cannot cover X^2
  CHECK_THROWS_AS(CoverCertificate::make(nullptr, sq, translates, nullptr, X, Rat(0)),
                  std::logic_error);
}

TEST_CASE("useful translate pool suffices") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(16));
  ElementSet X(g, std::vector<int>{14, 15, 0, 1, 2});
  ElementSet sq = X.product(X);
  ElementSet pool = useful_translate_pool(sq, X, Rat(0));
  auto restricted = rough_cover(sq, X, Rat(0), pool);
  auto full = rough_cover(sq, X, Rat(0));
  REQUIRE(restricted.cover.exact());
  REQUIRE(full.cover.exact());
  CHECK(restricted.cover.value == full.cover.value);
}

TEST_CASE("approximate-subgroup detection on genuine subgroups") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(12));
  ElementSet H(g, std::vector<int>{0, 4, 8});  // subgroup of order 3
  auto res = is_metric_approx_subgroup(H, 1, Rat(0));
  CHECK(res.passed);
  CHECK(res.determined);
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->verify());

  // Monotone in k and r.
  CHECK(is_metric_approx_subgroup(H, 3, Rat(0)).passed);
  CHECK(is_metric_approx_subgroup(H, 1, Rat(1)).passed);
}

TEST_CASE("detection rejects structurally bad sets with reasons") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(12));
  ElementSet no_id(g, std::vector<int>{1, 11});
  auto r1 = is_metric_approx_subgroup(no_id, 2, Rat(0));
  CHECK_FALSE(r1.passed);
  CHECK(r1.determined);
  CHECK_FALSE(r1.reason.empty());

  ElementSet asym(g, std::vector<int>{0, 1});
  auto r2 = is_metric_approx_subgroup(asym, 2, Rat(0));
  CHECK_FALSE(r2.passed);
  CHECK_FALSE(r2.reason.empty());

  // Symmetric with identity but genuinely spread: k = 1 at r = 0 fails
  // because X^2 strictly contains any single translate of X.
  ElementSet arc(g, std::vector<int>{11, 0, 1});
  auto r3 = is_metric_approx_subgroup(arc, 1, Rat(0));
  CHECK(r3.determined);
  CHECK_FALSE(r3.passed);
}

TEST_CASE("planted progression instance certifies at k = 4") {
  InstanceSpec spec;
  // Factor 0 is the least significant digit: index(a, b) = a + 3b on the
  // product of the order-3 and order-16 cyclic groups.  H is the order-3
  // component (generator index 1), shifted by g = (0, 1) (index 3).
  spec.group = GroupSpec::product({GroupSpec::cyclic_lee(3), GroupSpec::cyclic_lee(16)});
  spec.set_kind = "planted_progression";
  spec.params = json{{"generators", json::array({1})}, {"g", 3}, {"radius", 0}};
  spec.seed = 5;
  auto [g, X] = make_instance(spec);
  CHECK(X.is_symmetric());
  CHECK(X.contains_identity());
  auto res = is_metric_approx_subgroup(X, 4, Rat(0));
  CHECK(res.determined);
  CHECK(res.passed);
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->verify());
}

TEST_CASE("commensurability is symmetric and monotone") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(16));
  ElementSet A(g, std::vector<int>{15, 0, 1});
  ElementSet B(g, std::vector<int>{14, 15, 0, 1, 2});
  auto ab = commensurable(A, B, 2, Rat(1));
  auto ba = commensurable(B, A, 2, Rat(1));
  CHECK(ab.determined);
  CHECK(ba.determined);
  CHECK(ab.passed == ba.passed);
  if (ab.passed) {
    REQUIRE(ab.cert_x_by_y.has_value());
    CHECK(ab.cert_x_by_y->verify());
    REQUIRE(ab.cert_y_by_x.has_value());
    CHECK(ab.cert_y_by_x->verify());
  }
  // Monotonicity: anything passing at (k, r) passes at (k+1, r) and (k, r+1).
  if (ab.passed) {
    CHECK(commensurable(A, B, 3, Rat(1)).passed);
    CHECK(commensurable(A, B, 2, Rat(2)).passed);
  }
  // A set and itself are (1, 0)-commensurable.
  auto self = commensurable(A, A, 1, Rat(0));
  CHECK(self.passed);
}

TEST_CASE("disjoint translate family: invariants and the growth gate") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(32));
  ElementSet X(g, std::vector<int>{30, 31, 0, 1, 2});
  const Rat r(1);

  // Gate constant from the exact growth ratio.
  auto n5 = packing_number(X.power(5), r);
  auto n1 = packing_number(X, r);
  REQUIRE(n5.exact());
  REQUIRE(n1.exact());
  const Rat k = Rat(n5.value) / Rat(n1.value);

  auto fam = disjoint_translate_family(X, r, k);
  CHECK(fam.gate_checked);
  CHECK(fam.gate_passed);
  CHECK(fam.size_within_k);
  CHECK(Rat(static_cast<long>(fam.delta.count())) <= k);

  // Family members are pairwise disjoint translates of D_r(X).
  ElementSet body = X.thicken(r);
  std::vector<int> ds = fam.delta.indices();
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      CHECK_FALSE(body.left_translate(ds[i]).intersects(body.left_translate(ds[j])));

  // Delta lives in X^4 and the certificate covers X^4.
  CHECK(fam.delta.subset_of(X.power(4)));
  CHECK(fam.certificate.verify());
  CHECK(fam.certificate.base_set == X.power(4));

  // The certificate's thickening radius is 2·l·r with the Lipschitz constant
  // measured on the double ball.
  CHECK(fam.lipschitz.l == lipschitz_constant(X, 2 * r).l);
  CHECK(fam.certificate.radius == 2 * fam.lipschitz.l * r);

  // Asymmetric input is rejected.
  ElementSet bad(g, std::vector<int>{0, 1});
  CHECK_THROWS(disjoint_translate_family(bad, r, std::nullopt));
}

TEST_CASE("certificate JSON carries the claim and verification flag") {
  GroupPtr g = make_group(GroupSpec::cyclic_lee(16));
  ElementSet X(g, std::vector<int>{14, 15, 0, 1, 2});
  auto res = rough_cover(X.product(X), X, Rat(0));
  REQUIRE(res.certificate.has_value());
  json j = res.certificate->to_json();
  CHECK(j.at("claim") == "cover");
  CHECK(j.at("verified") == true);
  CHECK(j.at("count") == 2);
  CHECK(j.at("base_size") == 9);
  CHECK(j.at("radius").at("num") == 0);
}

}  // TEST_SUITE
