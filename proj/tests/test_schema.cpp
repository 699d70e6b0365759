#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "approxlab/certificates.hpp"
#include "approxlab/filtration.hpp"
#include "approxlab/lemma_checks.hpp"
#include "approxlab/lie.hpp"
#include "approxlab/profile.hpp"
#include "approxlab/scales.hpp"
#include "approxlab/schema.hpp"
#include "approxlab/solver.hpp"
#include "approxlab/suites.hpp"
#include "approxlab/zoo.hpp"

using namespace approxlab;

namespace {

json load_schema(const std::string& name) {
  std::ifstream in(std::string(APPROXLAB_SCHEMA_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing schema file " << name);
  return json::parse(in);
}

std::string issues_to_string(const std::vector<SchemaIssue>& issues) {
  std::ostringstream os;
  for (const auto& i : issues) os << i.path << ": " << i.message << "; ";
  return os.str();
}

void expect_valid(const json& value, const json& schema) {
  auto issues = schema_validate(value, schema);
  CHECK_MESSAGE(issues.empty(), issues_to_string(issues));
}

void expect_invalid(const json& value, const json& schema) {
  CHECK_FALSE(schema_ok(value, schema));
}

}  // namespace

TEST_SUITE("schema") {

TEST_CASE("validator keywords") {
  SUBCASE("type") {
    CHECK(schema_ok(json(3), json{{"type", "integer"}}));
    CHECK_FALSE(schema_ok(json(3.5), json{{"type", "integer"}}));
    CHECK(schema_ok(json(3.5), json{{"type", "number"}}));
    CHECK(schema_ok(json(3), json{{"type", "number"}}));
    CHECK_FALSE(schema_ok(json("x"), json{{"type", "integer"}}));
    CHECK(schema_ok(json("x"), json{{"type", json::array({"integer", "string"})}}));
    CHECK_FALSE(schema_ok(json(true), json{{"type", json::array({"integer", "string"})}}));
    CHECK(schema_ok(json(nullptr), json{{"type", "null"}}));
    CHECK(schema_ok(json::array(), json{{"type", "array"}}));
    CHECK(schema_ok(json::object(), json{{"type", "object"}}));
    CHECK(schema_ok(json(false), json{{"type", "boolean"}}));
  }
  SUBCASE("enum") {
    json s{{"enum", json::array({"a", "b", 3})}};
    CHECK(schema_ok(json("a"), s));
    CHECK(schema_ok(json(3), s));
    CHECK_FALSE(schema_ok(json("c"), s));
  }
  SUBCASE("required and properties report paths") {
    json s{{"type", "object"},
           {"required", json::array({"a", "b"})},
           {"properties", {{"a", {{"type", "integer"}}}, {"b", {{"type", "string"}}}}}};
    CHECK(schema_ok(json{{"a", 1}, {"b", "x"}}, s));
    auto missing = schema_validate(json{{"a", 1}}, s);
    REQUIRE(missing.size() == 1);
    CHECK(missing[0].message.find("b") != std::string::npos);
    auto wrong = schema_validate(json{{"a", 1}, {"b", 2}}, s);
    REQUIRE(wrong.size() == 1);
    CHECK(wrong[0].path == "/b");
  }
  SUBCASE("additionalProperties") {
    json s{{"type", "object"},
           {"properties", {{"a", {{"type", "integer"}}}}},
           {"additionalProperties", false}};
    CHECK(schema_ok(json{{"a", 1}}, s));
    auto extra = schema_validate(json{{"a", 1}, {"z", 2}}, s);
    REQUIRE(extra.size() == 1);
    CHECK(extra[0].path == "/z");
  }
  SUBCASE("items with bounds") {
    json s{{"type", "array"},
           {"items", {{"type", "integer"}, {"minimum", 0}, {"maximum", 5}}},
           {"minItems", 1},
           {"maxItems", 3}};
    CHECK(schema_ok(json::array({1, 2}), s));
    CHECK_FALSE(schema_ok(json::array(), s));
    CHECK_FALSE(schema_ok(json::array({1, 2, 3, 4}), s));
    CHECK_FALSE(schema_ok(json::array({1, 9}), s));
    auto neg = schema_validate(json::array({1, -1}), s);
    REQUIRE(neg.size() == 1);
    CHECK(neg[0].path == "/1");
  }
  SUBCASE("anyOf") {
    json s{{"anyOf", json::array({json{{"type", "integer"}}, json{{"type", "string"}}})}};
    CHECK(schema_ok(json(2), s));
    CHECK(schema_ok(json("x"), s));
    CHECK_FALSE(schema_ok(json(2.5), s));
  }
  SUBCASE("local ref") {
    json s{{"type", "object"},
           {"properties", {{"r", {{"$ref", "#/$defs/rat"}}}}},
           {"$defs", {{"rat", {{"type", "object"}, {"required", json::array({"num"})}}}}}};
    CHECK(schema_ok(json{{"r", {{"num", 1}}}}, s));
    CHECK_FALSE(schema_ok(json{{"r", {{"den", 1}}}}, s));
    json dangling{{"$ref", "#/$defs/missing"}};
    CHECK_FALSE(schema_ok(json(1), dangling));
  }
}

TEST_CASE("group artifacts validate in both formats") {
  json schema = load_schema("group.json");
  GroupPtr g = make_group(GroupSpec::dihedral(6));
  expect_valid(group_to_json(*g, GroupFileFormat::Full), schema);
  expect_valid(group_to_json(*g, GroupFileFormat::Phi), schema);
  // Scaled metric exercises non-trivial rationals.
  expect_valid(group_to_json(*make_group(GroupSpec::cyclic_lee(24, Rat(8)))), schema);

  json broken = group_to_json(*g);
  broken.erase("meta");
  expect_invalid(broken, schema);
  broken = group_to_json(*g);
  broken["extra"] = 1;
  expect_invalid(broken, schema);
  broken = group_to_json(*g);
  broken["mult"] = "nope";
  expect_invalid(broken, schema);
}

TEST_CASE("validation reports validate") {
  json schema = load_schema("validation.json");
  GroupPtr g = make_group(GroupSpec::cyclic_lee(9));
  json jg = group_to_json(*g);
  expect_valid(validate_group(group_data_from_json(jg)).to_json(), schema);
  // A broken table produces issue rows that still fit the schema.
  jg["mult"][1 * 9 + 2] = 1;
  ValidationReport rep = validate_group(group_data_from_json(jg));
  REQUIRE_FALSE(rep.ok);
  REQUIRE_FALSE(rep.issues.empty());
  expect_valid(rep.to_json(), schema);
}

TEST_CASE("instance files validate") {
  json schema = load_schema("instance.json");
  InstanceSpec spec;
  spec.group = GroupSpec::cyclic_lee(16);
  spec.set_kind = "coset_union";
  spec.params = json{{"generators", json::array({8})}, {"g", 3}};
  const std::string path = "/tmp/approxlab_test_schema_instance.json";
  save_instance(path, spec);
  std::ifstream in(path);
  REQUIRE(in.good());
  json artifact = json::parse(in);
  expect_valid(artifact, schema);
  artifact.erase("set");
  expect_invalid(artifact, schema);
  std::remove(path.c_str());
}

TEST_CASE("lemma reports validate for all four checkers") {
  json schema = load_schema("lemma_report.json");
  GroupPtr g24 = make_group(GroupSpec::cyclic_lee(24));
  ElementSet arc(g24, std::vector<int>{22, 23, 0, 1, 2});

  // Gate-passing and vacuous variants of the local packing check.
  expect_valid(local_packing_check(arc, Rat(1), 2, Rat(100)).to_json(), schema);
  expect_valid(local_packing_check(arc, Rat(1), 2, Rat(0)).to_json(), schema);

  GroupPtr g16 = make_group(GroupSpec::cyclic_lee(16));
  ElementSet ball4(g16, std::vector<int>{12, 13, 14, 15, 0, 1, 2, 3, 4});
  ElementSet ball2(g16, std::vector<int>{14, 15, 0, 1, 2});
  expect_valid(discretisation_counting_check(ball4, ball2, Rat(1), Rat(100)).to_json(), schema);

  GroupPtr g64 = make_group(GroupSpec::cyclic_lee(64, Rat(64)));
  ElementSet arc9(g64, std::vector<int>{60, 61, 62, 63, 0, 1, 2, 3, 4});
  expect_valid(product_thickening_chain(arc9, 64, make_rat(1, 64), 4).to_json(), schema);
  expect_valid(
      infinitesimal_chain_check(ScaleLadder::halving(make_rat(1, 4), 4), arc9, Rat(2)).to_json(),
      schema);

  json broken = local_packing_check(arc, Rat(1), 2, Rat(100)).to_json();
  broken.erase("numbers");
  expect_invalid(broken, schema);
}

TEST_CASE("detect results validate") {
  json schema = load_schema("detect.json");
  GroupPtr g = make_group(GroupSpec::cyclic_lee(12));
  ElementSet sub(g, std::vector<int>{0, 4, 8});
  expect_valid(is_metric_approx_subgroup(sub, 1, Rat(0)).to_json(), schema);
  // Failing case keeps the same shape with a reason and a null certificate.
  ElementSet arc(g, std::vector<int>{11, 0, 1});
  json fail = is_metric_approx_subgroup(arc, 1, Rat(0)).to_json();
  CHECK(fail.at("passed") == false);
  expect_valid(fail, schema);
}

TEST_CASE("scale selection results validate") {
  json schema = load_schema("scales.json");
  // Gate-passing end-to-end instance on the 32-element normalized circle.
  GroupPtr g = make_group(GroupSpec::cyclic_lee(32, Rat(32)));
  ElementSet X(g);
  for (int i = 0; i <= 8; ++i) {
    X.add(i);
    X.add((32 - i) % 32);
  }
  SelectScalesResult res = select_scales(X, 32, 2, 2, Rat(17));
  CHECK(res.report.verified());
  expect_valid(res.to_json(), schema);
  // Vacuous result (gate fails at a hopeless m).
  SelectScalesResult vac = select_scales(X, 1, 2, 2, Rat(17));
  CHECK(vac.report.vacuous());
  expect_valid(vac.to_json(), schema);
}

TEST_CASE("suite results validate") {
  json schema = load_schema("suite.json");
  expect_valid(run_suite("1.3", 11, 2).to_json(), schema);
  expect_valid(run_suite("1.5", 11, 2).to_json(), schema);
  json broken = run_suite("1.3", 11, 1).to_json();
  broken["rows"] = 3;
  expect_invalid(broken, schema);
}

TEST_CASE("aggregated lemmas output validates") {
  // Mirror of the command-line wrapper shape.
  json schema = load_schema("lemmas_cli.json");
  json out;
  out["seed"] = 11;
  out["count"] = 2;
  json suites = json::array();
  int violations = 0, undetermined = 0;
  bool all_ok = true;
  for (const std::string id : {"1.1", "1.5"}) {
    SuiteResult res = run_suite(id, 11, 2);
    violations += res.violations;
    undetermined += res.undetermined;
    all_ok = all_ok && res.ok();
    suites.push_back(res.to_json());
  }
  out["suites"] = suites;
  out["violations"] = violations;
  out["undetermined"] = undetermined;
  out["ok"] = all_ok;
  expect_valid(out, schema);
}

TEST_CASE("filtration reports validate") {
  json schema = load_schema("filtration.json");
  GroupPtr g = make_group(GroupSpec::cyclic_lee(8));
  ElementSet S(g, std::vector<int>{0, 4});
  expect_valid(filtration_check(Filtration::make({S, S, S}, S, Rat(0), 1)).to_json(), schema);
  expect_valid(filtration_check(Filtration::make({S}, S, Rat(0), 1)).to_json(), schema);
}

TEST_CASE("chain input format validates") {
  json schema = load_schema("chain.json");
  GroupPtr g = make_group(GroupSpec::cyclic_lee(8));
  json chain{{"group", group_to_json(*g)},
             {"base", json::array({0, 4})},
             {"chain", json::array({json::array({0, 4}), json::array({0, 4})})},
             {"r_s", 0},
             {"c", 1}};
  expect_valid(chain, schema);
  chain["group"] = "some_group_file.json";
  chain["r_s"] = json{{"num", 1}, {"den", 2}};
  expect_valid(chain, schema);
  chain["c"] = 0;
  expect_invalid(chain, schema);
}

TEST_CASE("chart specs and ladder verification validate") {
  json chart_schema = load_schema("chart.json");
  LieChart chart = LieChart::so3();
  expect_valid(chart.to_json(), chart_schema);
  json spec{{"name", "abelian2"},
            {"matrix_dim", 2},
            {"basis", json::array({json::array({1.0, 0.0, 0.0, 0.0}),
                                   json::array({0.0, 0.0, 0.0, 1.0})})}};
  expect_valid(spec, chart_schema);
  CHECK_NOTHROW(LieChart::from_spec(spec));
  expect_invalid(json{{"name", "nobasis"}}, chart_schema);

  json lie_schema = load_schema("lie.json");
  EstimateOptions fast;
  fast.grid_points = 256;
  fast.random_pairs = 2000;
  estimate_constants(chart, fast);
  expect_valid(verify_chart(chart, 2, 40, 5), lie_schema);
}

TEST_CASE("profile rows validate") {
  json schema = load_schema("profile.json");
  GroupPtr g = make_group(GroupSpec::cyclic_lee(12));
  ElementSet X = ElementSet::whole_group(g);
  auto rows = scale_profile(X, X, ScaleLadder::make({Rat(4), Rat(2), Rat(1)}));
  expect_valid(profile_json(rows), schema);
}

TEST_CASE("generation summaries validate") {
  json schema = load_schema("gen.json");
  expect_valid(json{{"written", "x.json"}, {"group_hash", "0123456789abcdef"}, {"set_size", 5}},
               schema);
  expect_invalid(json{{"written", "x.json"}}, schema);
}

}  // TEST_SUITE
