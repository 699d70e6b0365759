#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "approxlab/lie.hpp"

using namespace approxlab;

namespace {

EstimateOptions fast_opts() {
  EstimateOptions o;
  o.grid_points = 256;
  o.random_pairs = 2000;
  return o;
}

Eigen::MatrixXd so3_element(double cx, double cy, double cz) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(2, 1) = cx;
  m(1, 2) = -cx;
  m(0, 2) = cy;
  m(2, 0) = -cy;
  m(1, 0) = cz;
  m(0, 1) = -cz;
  return m;
}

struct Quat {
  double w, x, y, z;
  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z, w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x, w * o.z + x * o.y - y * o.x + z * o.w};
  }
};

}  // namespace

TEST_SUITE("lie") {

TEST_CASE("exponential and logarithm") {
  Eigen::MatrixXd x = so3_element(0.2, -0.1, 0.3);
  Eigen::MatrixXd g = lie_exp(x);
  // Orthogonal with determinant one.
  CHECK((g * g.transpose() - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK(g.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(principal_domain_ok(g));
  CHECK((lie_log(g) - x).norm() < 1e-10);

  // exp(0) = I and log(I) = 0.
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  CHECK((lie_exp(zero) - Eigen::MatrixXd::Identity(3, 3)).norm() == 0.0);
  CHECK(lie_log(Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-14);

  // A half-turn sits on the closed negative real axis.
  Eigen::MatrixXd half_turn = lie_exp(so3_element(0.0, 0.0, M_PI));
  CHECK_FALSE(principal_domain_ok(half_turn));
  CHECK_THROWS_AS(lie_log(half_turn), std::domain_error);
}

TEST_CASE("group law in coordinates") {
  LieChart chart = LieChart::so3();
  Eigen::MatrixXd x = so3_element(0.05, 0.1, -0.07);
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  // Identity on either side.
  CHECK((bch(chart, x, zero) - x).norm() < 1e-12);
  CHECK((bch(chart, zero, x) - x).norm() < 1e-12);
  // Parallel arguments commute: z = x + y exactly.
  CHECK((bch(chart, x, 2 * x) - 3 * x).norm() < 1e-10);
  // Inverse: z = 0.
  CHECK(bch(chart, x, -x).norm() < 1e-12);

  // Independent-axis composition against the quaternion product.
  const double theta = 0.1, phi = 0.1;
  Eigen::MatrixXd zrot = so3_element(0.0, 0.0, theta);
  Eigen::MatrixXd xrot = so3_element(phi, 0.0, 0.0);
  Eigen::MatrixXd z = bch(chart, zrot, xrot);
  Quat qz{std::cos(theta / 2), 0.0, 0.0, std::sin(theta / 2)};
  Quat qx{std::cos(phi / 2), std::sin(phi / 2), 0.0, 0.0};
  Quat q = qz * qx;
  const double vnorm = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  const double angle = 2.0 * std::atan2(vnorm, q.w);
  Eigen::MatrixXd expected =
      so3_element(angle * q.x / vnorm, angle * q.y / vnorm, angle * q.z / vnorm);
  CHECK((z - expected).norm() < 1e-9);
}

TEST_CASE("chart specs") {
  // Dependent basis is rejected.
  json dep{{"name", "dep"},
           {"matrix_dim", 2},
           {"basis", {{1.0, 0.0, 0.0, 1.0}, {2.0, 0.0, 0.0, 2.0}}}};
  CHECK_THROWS_AS(LieChart::from_spec(dep), std::invalid_argument);
  // Non-square rows are rejected.
  json shape{{"name", "bad"}, {"matrix_dim", 2}, {"basis", {{1.0, 0.0, 0.0}}}};
  CHECK_THROWS_AS(LieChart::from_spec(shape), std::invalid_argument);
  CHECK_THROWS_AS(LieChart::from_spec(json{{"basis", json::array()}}), std::invalid_argument);
  json unsafe{{"name", "u"}, {"matrix_dim", 2}, {"basis", {{1.0, 0.0, 0.0, -1.0}}}, {"safety", 0.5}};
  CHECK_THROWS_AS(LieChart::from_spec(unsafe), std::invalid_argument);

  LieChart sl = LieChart::sl2();
  CHECK(sl.dim == 3);
  CHECK(sl.matrix_dim == 2);
  CHECK_FALSE(sl.constants_ready);
  // The orthonormalized basis is Frobenius-orthonormal.
  for (int i = 0; i < sl.dim; ++i)
    for (int j = 0; j < sl.dim; ++j) {
      const double ip = (sl.onb[i].transpose() * sl.onb[j]).trace();
      CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("abelian chart has no product defect") {
  json spec{{"name", "diag2"},
            {"matrix_dim", 2},
            {"basis", {{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}}}};
  LieChart chart = LieChart::from_spec(spec);
  estimate_constants(chart, fast_opts());
  CHECK(chart.constants_ready);
  // Commuting generators: defects are numerically zero, floored at 1e-9.
  CHECK(chart.sampled_c0 < 1e-8);
  CHECK(chart.eps == doctest::Approx(chart.eps1).epsilon(1e-12));
  // BCH is exactly addition for diagonal matrices.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2), b = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 0.3;
  b(1, 1) = -0.2;
  CHECK((bch(chart, a, b) - (a + b)).norm() < 1e-12);
}

TEST_CASE("estimated constants scale with the safety factor") {
  LieChart tight = LieChart::so3(1.25, 7);
  LieChart loose = LieChart::so3(1.5, 7);
  estimate_constants(tight, fast_opts());
  estimate_constants(loose, fast_opts());
  // Same seed and sampling plan: raw samples agree, factors differ.
  CHECK(tight.sampled_c0 == doctest::Approx(loose.sampled_c0).epsilon(1e-12));
  CHECK(loose.C0 == doctest::Approx(tight.C0 * 1.5 / 1.25).epsilon(1e-12));
  CHECK(loose.eps <= tight.eps);
  CHECK(tight.eps > 0.0);
  CHECK(tight.eps <= 1.0 / (17.0 * tight.C0) + 1e-15);
  // Reported, not asserted: the raw product defect lands in a plausible band.
  WARN_MESSAGE(tight.sampled_c0 >= 0.1 && tight.sampled_c0 <= 0.9,
               "so3 sampled product defect outside the usual band: " << tight.sampled_c0);
}

TEST_CASE("ladder radii follow the quarter-power law") {
  LieChart chart = LieChart::so3();
  CHECK_THROWS_AS(build_ladder(chart, 4), std::logic_error);
  estimate_constants(chart, fast_opts());
  BallLadder ladder = build_ladder(chart, 4);
  REQUIRE(ladder.radii.size() == 5);
  CHECK(ladder.eps == doctest::Approx(chart.eps).epsilon(1e-15));
  const double root = std::pow(17.0, -0.25);
  CHECK(ladder.radii[0] == doctest::Approx(root * chart.eps).epsilon(1e-12));
  for (int n = 0; n + 1 < 5; ++n)
    CHECK(ladder.radii[n + 1] / ladder.radii[n] == doctest::Approx(root).epsilon(1e-12));
  CHECK(ladder.radii[4] / ladder.radii[0] == doctest::Approx(1.0 / 17.0).epsilon(1e-12));
  CHECK_THROWS_AS(build_ladder(chart, -1), std::invalid_argument);
}

TEST_CASE("sampled ladder properties hold on so3") {
  LieChart chart = LieChart::so3();
  estimate_constants(chart, fast_opts());
  BallLadder ladder = build_ladder(chart, 3);
  for (int prop = 1; prop <= 6; ++prop) {
    CAPTURE(prop);
    LiePropertyReport rep = verify_property(chart, ladder, prop, 60, 11);
    CHECK(rep.passed);
    CHECK(rep.property == prop);
    CHECK(rep.checks > 0);
    if (prop != 1) CHECK(rep.max_margin <= 0.0);
    CHECK(rep.counterexamples.empty());
    if (prop == 1) {
      REQUIRE_FALSE(rep.cover_counts.empty());
      for (const auto& row : rep.cover_counts) {
        CHECK(row.at("bound").get<long long>() == 17LL * 17 * 17);
        CHECK(row.at("net_size").get<long long>() <= 17LL * 17 * 17);
      }
    }
  }
  CHECK_THROWS_AS(verify_property(chart, ladder, 0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_property(chart, ladder, 7, 10, 1), std::invalid_argument);
}

TEST_CASE("property runs are deterministic") {
  LieChart chart = LieChart::sl2();
  estimate_constants(chart, fast_opts());
  BallLadder ladder = build_ladder(chart, 2);
  std::string a = verify_property(chart, ladder, 2, 40, 3).to_json().dump();
  std::string b = verify_property(chart, ladder, 2, 40, 3).to_json().dump();
  CHECK(a == b);
}

TEST_CASE("whole-chart verification bundles everything") {
  LieChart chart = LieChart::so3();
  estimate_constants(chart, fast_opts());
  json j = verify_chart(chart, 2, 40, 17);
  REQUIRE(j.contains("chart"));
  REQUIRE(j.contains("ladder"));
  REQUIRE(j.contains("properties"));
  REQUIRE(j.at("properties").size() == 6);
  CHECK(j.at("all_passed") == true);
  CHECK(j.at("ladder").at("radii").size() == 3);
}

}  // TEST_SUITE
