// Exact packing and covering numbers.
//
// Packing is a maximum independent set on the conflict graph {d <= r} (solved
// as a maximum clique on its complement with greedy-coloring bounds); covering
// is an exact minimum set cover with a greedy upper bound and a dual-packing
// (antichain) lower bound.  Both honor a node budget and return certified
// intervals instead of guessing when it runs out.
#pragma once

#include <cstdint>
#include <vector>

#include "approxlab/element_set.hpp"
#include "approxlab/rational.hpp"

namespace approxlab {

// Default node budget: APPROXLAB_NODE_BUDGET env var, else 10^7.
std::uint64_t default_node_budget();

struct SolveOptions {
  std::uint64_t node_budget = default_node_budget();
};

enum class SolveStatus { Exact, Budget, NoCover };

struct SolveResult {
  SolveStatus status = SolveStatus::Exact;
  int value = 0;              // meaningful when status == Exact
  int lower = 0, upper = 0;   // certified bounds (lower == upper == value when exact)
  std::vector<int> witness;   // separated points / chosen centers
  std::uint64_t nodes = 0;

  bool exact() const { return status == SolveStatus::Exact; }
  json to_json() const;
};

// Maximum size of an r-separated (pairwise d > r) subset of X, with witness.
SolveResult packing_number(const ElementSet& X, const Rat& r, const SolveOptions& opts = {});

// Minimum number of closed r-balls with centers in Y needed to cover X, with
// the chosen centers as witness.  Status NoCover when X is not within D_r(Y).
SolveResult covering_number(const ElementSet& X, const ElementSet& Y, const Rat& r,
                            const SolveOptions& opts = {});

// Inclusion-maximal r-separated subset, scanning X in `order` (all of X's
// indices, ascending by default) and keeping points > r from everything kept.
ElementSet greedy_separated(const ElementSet& X, const Rat& r,
                            const std::vector<int>* order = nullptr);

// Generic exact minimum set cover over bit masks; used by covering_number and
// by the translate-cover searches.  witness holds candidate indices.
struct CoverInstance {
  Bitset universe;                // bits that must be covered
  std::vector<Bitset> candidates; // same width as universe
};
SolveResult exact_set_cover(const CoverInstance& inst, const SolveOptions& opts = {});

}  // namespace approxlab
