// Seeded verification suites over a generated corpus of groups and subsets.
//
// Suite ids (stable public identifiers, also used by the command line):
//   1.1 subadditivity and monotonicity of packing/covering numbers
//   1.2 scale continuity (value constant up to the next realized distance)
//   1.3 packing/covering sandwich  N_2r(X) <= Ncov_r(X/Y) <= N_r(X)
//   1.4 infinitesimal ball chain (products and conjugation along a ladder)
//   1.5 local packing bound (gated)
//   1.6 discretisation counting sandwich (gated)
//   1.7 product thickening chain (gated)
//   1.8 approximate-subgroup construction via disjoint translate families
//   1.9 scale selection pipeline (gated)
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "approxlab/rational.hpp"
#include "approxlab/solver.hpp"

namespace approxlab {

struct SuiteResult {
  std::string suite;
  std::string name;
  bool gated = false;
  int instances = 0;
  int gate_passing = 0;    // == instances for ungated suites
  int min_gate_passing = 0;
  int violations = 0;
  int undetermined = 0;    // solver budget prevented a verdict
  json rows = json::array();

  // Zero violations and (for gated suites) enough non-vacuous instances.
  bool ok() const { return violations == 0 && gate_passing >= min_gate_passing; }
  json to_json() const;
};

const std::vector<std::pair<std::string, std::string>>& suite_catalog();

// Runs `count` seeded instances of one suite.  Deterministic in (suite, seed,
// count): same inputs give byte-identical to_json() output.
SuiteResult run_suite(const std::string& suite, std::uint64_t seed, int count,
                      const SolveOptions& opts = {});

}  // namespace approxlab
