// Neighbourhood-ladder construction and verification for matrix Lie groups.
//
// A chart fixes a matrix Lie algebra by a basis, estimates the local
// group-law constants C0 (product defect) and C1 (conjugation/commutator
// defect) by sampling, sets eps = min{eps1, 1/(2*C1), 1/(17*C0)}, and builds
// the ladder of algebra balls B_n of radius 17^{-(n+1)/4} * eps whose
// exponentials U_n = exp(B_n) satisfy six structural properties:
//   (1) U_n is covered by 17^dim translates of U_{n+1},
//   (2) U_{n+1}^2 is contained in U_n,
//   (3) x^-1 U_{n+1} x is contained in U_n for x in U_0,
//   (4) [U_{n1}, U_{n2}] is contained in U_n whenever n <= n1 + n2,
//   (5) squaring is injective on U_0,
//   (6) U_{n+4} = {x in U_0 : x^17 in U_n}.
// Verification is numeric and sampled: every membership test uses the norm of
// the principal matrix logarithm with tolerance 1e-9 and records its margin.
// Property (1) is a cover-count bound with sampled membership, not a proof of
// coverage.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "approxlab/rational.hpp"

namespace approxlab {

inline constexpr double kLieMembershipTol = 1e-9;

struct LieChart {
  std::string name;
  int dim = 0;         // algebra dimension
  int matrix_dim = 0;  // ambient square-matrix size
  std::vector<Eigen::MatrixXd> basis;  // as given in the spec
  std::vector<Eigen::MatrixXd> onb;    // Frobenius-orthonormalized basis
  double safety = 1.25;
  std::uint64_t seed = 0;

  // Estimated local constants (estimate_constants fills these).
  double sampled_c0 = 0.0;  // max product defect before the safety factor
  double sampled_c1 = 0.0;  // max conjugation/commutator defect before safety
  double C0 = 0.0;
  double C1 = 0.0;
  double eps0 = 0.0;
  double eps1 = 0.0;
  double eps = 0.0;  // min{eps1, 1/(2*C1), 1/(17*C0)}
  bool constants_ready = false;

  // Parses {"name", "matrix_dim", "basis" (row-major), "inner_product"
  // ("frobenius"), "safety", "seed"}.  Throws std::invalid_argument on a
  // dependent basis or malformed spec.
  static LieChart from_spec(const json& spec);
  static LieChart so3(double safety = 1.25, std::uint64_t seed = 1);
  static LieChart sl2(double safety = 1.25, std::uint64_t seed = 2);

  json to_json() const;  // spec fields plus estimated constants
};

struct BallLadder {
  double eps = 0.0;
  std::vector<double> radii;  // radii[n] = 17^{-(n+1)/4} * eps, n = 0..n_max
  json to_json() const;
};

// Matrix exponential (scaling-and-squaring with Pade approximation).
Eigen::MatrixXd lie_exp(const Eigen::MatrixXd& x);

// True when no eigenvalue lies on the closed negative real axis, i.e. the
// principal logarithm is defined.
bool principal_domain_ok(const Eigen::MatrixXd& g);

// Principal matrix logarithm; throws std::domain_error outside the principal
// domain or when the exp/log roundtrip residual exceeds 1e-10.
Eigen::MatrixXd lie_log(const Eigen::MatrixXd& g);

// z = log(exp(x) exp(y)); throws std::domain_error when exp(x)exp(y) leaves
// the principal-log domain.  Postcondition (checked): the operator-norm
// residual of exp(z) - exp(x)exp(y) is at most 1e-10.
Eigen::MatrixXd bch(const LieChart& chart, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

struct EstimateOptions {
  int grid_points = 4096;     // low-discrepancy pair grid
  int random_pairs = 100000;  // additional seeded random pairs
  double start_radius = 0.5;  // shrink-and-retry start for eps1
  int max_shrink = 40;
};

// Samples the product/conjugation/commutator defect ratios on the ball of the
// largest radius where the group law stays in the principal-log domain, then
// fixes C0, C1 (times chart.safety, floored at 1e-9), eps0, eps1 and eps.
// Throws std::runtime_error when no radius works within max_shrink halvings.
void estimate_constants(LieChart& chart, const EstimateOptions& opts = {});

// radii[n] = 17^{-(n+1)/4} * eps for n = 0..n_max.  Requires estimated
// constants.
BallLadder build_ladder(const LieChart& chart, int n_max);

struct LiePropertyReport {
  int property = 0;  // 1..6
  int samples = 0;   // requested sample budget
  int checks = 0;    // membership tests actually performed
  int skipped = 0;   // hypothesis within the 1e-9 dead band, not counted
  double max_margin = 0.0;  // max over checks of (measured - allowed); <= 0 passes
  json counterexamples = json::array();  // capped detail on failures
  json cover_counts = json::array();     // property 1: per-rung |Z| vs 17^dim
  bool passed = false;
  json to_json() const;
};

// Verifies one of the six ladder properties with `samples` seeded samples.
// Deterministic in (chart, ladder, property_id, samples, seed).
LiePropertyReport verify_property(const LieChart& chart, const BallLadder& ladder,
                                  int property_id, int samples, std::uint64_t seed);

// Runs all six properties and bundles chart, ladder and reports.
json verify_chart(const LieChart& chart, int n_max, int samples, std::uint64_t seed);

}  // namespace approxlab
