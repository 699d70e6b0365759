#pragma once

#include <optional>
#include <vector>

#include "approxlab/element_set.hpp"
#include "approxlab/profile.hpp"
#include "approxlab/report.hpp"
#include "approxlab/solver.hpp"

namespace approxlab {

// One growth-ratio measurement: the test is
//   N_radius(X^9)^power <= bound * N_{9*radius}(X)^power.
// growth_condition uses power = 1 with bound = k_i; scale selection uses
// power = n with bound = k^{8n} * C so that the irrational target k^8 * C^{1/n}
// is compared exactly.
struct GrowthRow {
  Rat radius;
  SolveResult packing_fine;    // N_radius(X^9)
  SolveResult packing_coarse;  // N_{9*radius}(X)
  int power = 1;
  Rat bound = 0;
  std::optional<Rat> ratio;    // fine/coarse when both sides are exact
  std::optional<bool> passed;  // nullopt when the solver budget ran out
  json to_json() const;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  // false if any row failed; nullopt if none failed but some were cut short.
  std::optional<bool> all_passed() const;
  json to_json() const;
};

// Exact per-scale evaluation of the growth condition
//   N_{r_i}(X^9) <= k_i * N_{9 r_i}(X).
// k_seq must have one entry per ladder radius, or a single entry applied to
// every radius.
GrowthReport growth_condition(const ElementSet& X, const ScaleLadder& ladder,
                              const std::vector<Rat>& k_seq, const SolveOptions& opts = {});

struct SelectScalesResult {
  LemmaReport report;
  std::vector<Rat> scales;  // r_1 > ... > r_n; empty when a gate failed
  GrowthReport growth;
  json to_json() const;
};

// Scale selection. Gates (all evaluated exactly and reported):
//   (a) 2^m >= (18 * (1 + l^[7]))^{2n} with l the Lipschitz constant of X on
//       the unit ball, where l^[j] is the geometric sum 1 + l + ... + l^{j-1};
//   (b) X is a (k, 2^-m)-metric approximate subgroup;
//   (c) N_{2^-m}(X) <= C * N_1(X).
// When the gates pass, the packing profile is sampled on the geometric ladder
// alpha^-i for i = 1..2n with alpha = 2^{m/2n}; non-dyadic rungs are replaced
// by their closest dyadic lower approximants (denominator 2^40), used
// consistently on both sides of every comparison.  The index set
// I = {i : ratio_i^n <= C} must have at least n members (pigeonhole over the
// telescoping product; a shortfall is reported as a violated conclusion).
// The n largest radii indexed by I become r'_1 > ... > r'_n and the returned
// scales are r_i = 2 * (l^[7] * 2^-m + r'_i).  The conclusion verifies, per
// scale, N_{r_i}(X^9)^n <= k^{8n} * C * N_{9 r_i}(X)^n together with
// r_1 <= 1 and 2 r_{i+1} <= r_i.
// Throws std::invalid_argument for m < 1, m > 40 (dyadic grid), n < 1, k < 0,
// C <= 0, or empty X.
SelectScalesResult select_scales(const ElementSet& X, int m, int n, int k, const Rat& C,
                                 const SolveOptions& opts = {});

}  // namespace approxlab
