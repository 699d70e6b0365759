#include "approxlab/subgroup_search.hpp"

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "approxlab/bitset.hpp"
#include "approxlab/certificates.hpp"

namespace approxlab {

json SubgroupSearchResult::to_json() const {
  json j;
  j["found"] = found();
  j["subgroup"] = subgroup ? json(subgroup->indices()) : json(nullptr);
  j["c"] = c;
  j["x_covered_by_s"] = x_by_s.to_json();
  j["s_covered_by_x"] = s_by_x.to_json();
  j["candidates_examined"] = candidates_examined;
  j["subgroups_tested"] = subgroups_tested;
  j["truncated"] = truncated;
  return j;
}

namespace {

constexpr std::size_t kGeneratorPoolCap = 128;
constexpr long kSubsetCap = 50000;

// Closure of {1} ∪ gens under multiplication by gens and their inverses,
// aborting as soon as it escapes `within`.  Returns true on containment.
bool closure_within(const FiniteMetricGroup& g, const std::vector<int>& gens,
                    const Bitset& within, Bitset& out) {
  out = Bitset(static_cast<std::size_t>(g.order()));
  std::vector<int> steps;
  for (int gen : gens) {
    steps.push_back(gen);
    steps.push_back(g.inverse(gen));
  }
  std::vector<int> frontier{g.identity()};
  out.set(static_cast<std::size_t>(g.identity()));
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int s : frontier) {
      for (int step : steps) {
        const int t = g.mul(s, step);
        if (out.test(static_cast<std::size_t>(t))) continue;
        if (!within.test(static_cast<std::size_t>(t))) return false;
        out.set(static_cast<std::size_t>(t));
        next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return true;
}

}  // namespace

SubgroupSearchResult find_commensurable_subgroup(const ElementSet& X, int c_max, const Rat& r,
                                                 const SolveOptions& opts) {
  if (c_max < 1) throw std::invalid_argument("c_max must be at least 1");
  if (r < 0) throw std::invalid_argument("radius must be nonnegative");
  if (!X.contains_identity())
    throw std::invalid_argument("subgroup search needs the identity in X");
  if (!X.is_symmetric()) throw std::invalid_argument("subgroup search needs X symmetric");

  SubgroupSearchResult result;
  const GroupPtr gp = X.group();
  const ElementSet x4 = X.power(4);
  std::vector<int> pool = x4.indices();
  if (pool.size() > kGeneratorPoolCap) {
    pool.resize(kGeneratorPoolCap);
    result.truncated = true;
  }

  // Deduped closures, in enumeration order.
  std::vector<Bitset> subgroups;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash;
  auto record = [&](const Bitset& closure) {
    const std::size_t h = closure.hash();
    for (std::size_t idx : by_hash[h])
      if (subgroups[idx] == closure) return;
    by_hash[h].push_back(subgroups.size());
    subgroups.push_back(closure);
  };

  Bitset closure;
  auto try_gens = [&](const std::vector<int>& gens) -> bool {
    if (result.candidates_examined >= kSubsetCap) {
      result.truncated = true;
      return false;
    }
    ++result.candidates_examined;
    if (closure_within(*gp, gens, x4.bits(), closure)) record(closure);
    return true;
  };

  try_gens({});  // the trivial subgroup
  for (std::size_t a = 0; a < pool.size(); ++a) {
    if (!try_gens({pool[a]})) break;
  }
  for (std::size_t a = 0; a < pool.size() && !result.truncated; ++a)
    for (std::size_t b = a + 1; b < pool.size(); ++b)
      if (!try_gens({pool[a], pool[b]})) goto enumerate_done;
  for (std::size_t a = 0; a < pool.size() && !result.truncated; ++a)
    for (std::size_t b = a + 1; b < pool.size(); ++b)
      for (std::size_t c = b + 1; c < pool.size(); ++c)
        if (!try_gens({pool[a], pool[b], pool[c]})) goto enumerate_done;
enumerate_done:

  for (const Bitset& bits : subgroups) {
    ++result.subgroups_tested;
    const ElementSet S(gp, bits);
    RoughCoverResult xs = rough_cover(X, S, r, std::nullopt, opts);
    if (xs.cover.status != SolveStatus::Exact || xs.cover.value > c_max) continue;
    RoughCoverResult sx = rough_cover(S, X, r, std::nullopt, opts);
    if (sx.cover.status != SolveStatus::Exact || sx.cover.value > c_max) continue;
    const int c = std::max(xs.cover.value, sx.cover.value);
    if (!result.found() || c < result.c) {
      result.subgroup = S;
      result.c = c;
      result.x_by_s = xs.cover;
      result.s_by_x = sx.cover;
    }
  }
  return result;
}

}  // namespace approxlab
