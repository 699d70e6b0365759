#pragma once

#include <optional>
#include <string>
#include <vector>

#include "approxlab/element_set.hpp"
#include "approxlab/rational.hpp"
#include "approxlab/solver.hpp"

namespace approxlab {

// A descending chain X_N ⊆ … ⊆ X_0 of symmetric identity-containing sets,
// together with the base set X whose eighth power is expected to contain X_0,
// a thickening radius r_s, and a covering constant c.
struct Filtration {
  std::vector<ElementSet> chain;  // chain[n] = X_n, decreasing in n
  ElementSet base;                // the set X the chain was built from
  Rat r_s;
  int c = 1;

  int depth() const { return static_cast<int>(chain.size()) - 1; }  // N

  // Validates: nonempty chain, all sets on the same group as base, nesting
  // chain[n+1] ⊆ chain[n], every X_n symmetric and containing the identity,
  // r_s >= 0, c >= 1.  Throws std::invalid_argument on violation.
  static Filtration make(std::vector<ElementSet> chain, ElementSet base, Rat r_s, int c);
};

struct FiltrationProperty {
  std::string property;        // "1_statement", "1_proof", "2".."7"
  std::optional<bool> passed;  // nullopt when the solver budget ran out
  json details;                // per-n rows and witnesses
  json to_json() const;
};

struct FiltrationReport {
  std::vector<FiltrationProperty> properties;
  bool chain_in_eighth_power = false;  // context: X_0 ⊆ base^8
  std::optional<bool> all_passed() const;
  json to_json() const;
};

// Exact evaluation of the seven chain properties:
//   (1) base^2 and X_1 are (c, r_s)-commensurable; the variant naming X_0 is
//       checked separately (both appear in equivalent phrasings of the claim).
//   (2) X_{n+1}·X_{n+1} ⊆ D_{r_s}(X_n)
//   (3) X_n covered by ≤ c translates of D_{r_s}(X_{n+1})
//   (4) x^{-1}·X_{n+1}·x ⊆ D_{r_s}(X_n) for every x ∈ X_1
//   (5) [X_{n1}, X_{n2}] ⊆ D_{r_s}(X_n) whenever n < n1 + n2
//   (6) {x ∈ X_0 : x^17 ∈ X_n} ⊆ X_{n+1}
//   (7) x, y ∈ X_0 with x^2 = y^2 implies y^{-1}·x ∈ D_{r_s}(X_N)
// Properties quantified over n with n+1 ≤ N are vacuously true on a depth-0
// chain.  Only (1) and (3) involve set-cover search and can hit the budget.
FiltrationReport filtration_check(const Filtration& f, const SolveOptions& opts = {});

}  // namespace approxlab
