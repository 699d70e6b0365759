#pragma once

#include <optional>

#include "approxlab/element_set.hpp"
#include "approxlab/solver.hpp"

namespace approxlab {

struct SubgroupSearchResult {
  std::optional<ElementSet> subgroup;  // S ⊆ X^4, best candidate found
  int c = -1;                          // certified constant max(cover counts); -1 when none
  SolveResult x_by_s, s_by_x;          // minimal one-directional cover counts for the winner
  long candidates_examined = 0;
  long subgroups_tested = 0;
  bool truncated = false;              // enumeration hit its internal cap
  bool found() const { return subgroup.has_value(); }
  json to_json() const;
};

// Best-effort search for a subgroup S ⊆ X^4 commensurable with X: enumerates
// subgroups generated by ≤ 3 elements of X^4 (ascending index order, generator
// pool capped at the first 128 elements, 50000 subsets examined at most),
// discards closures escaping X^4, dedupes identical subgroups, and certifies
// each survivor with exact minimal cover counts in both directions at radius
// r.  Returns the candidate minimizing c = max(|Δ_{X/S}|, |Δ_{S/X}|) among
// those with c ≤ c_max; ties go to the first one enumerated.  The
// commensurability certification is exact; the search is NOT exhaustive, so
// an empty result does not prove absence.
// Requires X symmetric and containing the identity.
SubgroupSearchResult find_commensurable_subgroup(const ElementSet& X, int c_max, const Rat& r,
                                                 const SolveOptions& opts = {});

}  // namespace approxlab
