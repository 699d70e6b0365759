#include "approxlab/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <unordered_map>

namespace approxlab {

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("APPROXLAB_NODE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ULL;
}

json SolveResult::to_json() const {
  json j;
  switch (status) {
    case SolveStatus::Exact:
      j["status"] = "exact";
      j["value"] = value;
      break;
    case SolveStatus::Budget:
      j["status"] = "budget_exceeded";
      j["value"] = nullptr;
      break;
    case SolveStatus::NoCover:
      j["status"] = "no_cover";
      j["value"] = nullptr;
      break;
  }
  j["lower"] = lower;
  j["upper"] = upper;
  j["witness"] = witness;
  j["nodes"] = nodes;
  return j;
}

namespace {

// Branch-and-bound maximum clique on the separation graph (edges d > r),
// which is exactly a maximum r-separated subset.  Classic scheme: expand the
// candidate set in greedy-coloring order, pruning when |R| + color bound
// cannot beat the incumbent.
class PackingSolver {
 public:
  PackingSolver(std::vector<Bitset> adj, std::uint64_t budget)
      : adj_(std::move(adj)), m_(adj_.size()), budget_(budget) {}

  // Initial incumbent from the ascending greedy scan.
  void seed(const std::vector<int>& greedy_compact) {
    best_ = greedy_compact;
  }

  void run() {
    Bitset all(m_);
    for (std::size_t i = 0; i < m_; ++i) all.set(i);
    root_ub_ = color_count(all);
    if (best_.size() == m_ || static_cast<int>(best_.size()) == root_ub_) return;
    cur_.clear();
    expand(all);
  }

  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  int root_upper() const { return root_ub_; }
  const std::vector<int>& best() const { return best_; }

 private:
  int color_count(const Bitset& p) const {
    int colors = 0;
    Bitset uncolored = p;
    while (uncolored.any()) {
      ++colors;
      Bitset cand = uncolored;
      while (cand.any()) {
        std::size_t v = cand.first();
        uncolored.reset(v);
        cand.reset(v);
        cand -= adj_[v];
      }
    }
    return colors;
  }

  void expand(const Bitset& p) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (p.none()) {
      if (cur_.size() > best_.size()) best_ = cur_;
      return;
    }
    // Greedy coloring of p; vertices recorded in coloring order.
    std::vector<std::size_t> order;
    std::vector<int> color;
    order.reserve(p.count());
    color.reserve(p.count());
    {
      int c = 0;
      Bitset uncolored = p;
      while (uncolored.any()) {
        ++c;
        Bitset cand = uncolored;
        while (cand.any()) {
          std::size_t v = cand.first();
          order.push_back(v);
          color.push_back(c);
          uncolored.reset(v);
          cand.reset(v);
          cand -= adj_[v];
        }
      }
    }
    Bitset rest = p;
    for (std::size_t i = order.size(); i-- > 0;) {
      if (cur_.size() + static_cast<std::size_t>(color[i]) <= best_.size()) return;
      std::size_t v = order[i];
      cur_.push_back(static_cast<int>(v));
      expand(rest & adj_[v]);
      cur_.pop_back();
      if (aborted_) return;
      rest.reset(v);
    }
  }

  std::vector<Bitset> adj_;
  std::size_t m_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  int root_ub_ = 0;
  std::vector<int> cur_, best_;
};

// Branch-and-bound minimum set cover.  Branches on the uncovered element with
// the fewest candidates; lower bound is a greedy antichain of elements with
// pairwise disjoint candidate lists (each needs its own set).
class SetCoverSolver {
 public:
  SetCoverSolver(const Bitset& universe, const std::vector<Bitset>& cands,
                 std::uint64_t budget)
      : universe_(universe), cands_(cands), budget_(budget) {
    const std::size_t u = universe_.size();
    elem_cands_.assign(u, Bitset(cands_.size()));
    for (std::size_t c = 0; c < cands_.size(); ++c)
      cands_[c].for_each([&](std::size_t e) { elem_cands_[e].set(c); });
  }

  bool coverable() const {
    Bitset uni(universe_.size());
    for (const auto& c : cands_) uni |= c;
    return universe_.subset_of(uni);
  }

  std::vector<int> greedy() const {
    std::vector<int> chosen;
    Bitset uncovered = universe_;
    while (uncovered.any()) {
      std::size_t best_c = 0, best_gain = 0;
      for (std::size_t c = 0; c < cands_.size(); ++c) {
        std::size_t gain = (cands_[c] & uncovered).count();
        if (gain > best_gain) {
          best_gain = gain;
          best_c = c;
        }
      }
      chosen.push_back(static_cast<int>(best_c));
      uncovered -= cands_[best_c];
    }
    return chosen;
  }

  int lower_bound(const Bitset& uncovered) const {
    int lb = 0;
    Bitset used(cands_.size());
    bool any = false;
    uncovered.for_each([&](std::size_t e) {
      if (!any || !elem_cands_[e].intersects(used)) {
        ++lb;
        used |= elem_cands_[e];
        any = true;
      }
    });
    return lb;
  }

  void run() {
    best_ = greedy();
    root_lb_ = lower_bound(universe_);
    if (static_cast<int>(best_.size()) == root_lb_) return;
    cur_.clear();
    Bitset covered(universe_.size());
    search(covered);
  }

  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  int root_lower() const { return root_lb_; }
  const std::vector<int>& best() const { return best_; }

 private:
  void search(const Bitset& covered) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    Bitset uncovered = universe_ - covered;
    if (uncovered.none()) {
      if (cur_.size() < best_.size()) best_ = cur_;
      return;
    }
    if (static_cast<int>(cur_.size()) + lower_bound(uncovered) >=
        static_cast<int>(best_.size()))
      return;
    // Branch on the uncovered element with the fewest candidates.
    std::size_t pick = universe_.size();
    std::size_t fewest = cands_.size() + 1;
    uncovered.for_each([&](std::size_t e) {
      std::size_t k = elem_cands_[e].count();
      if (k < fewest) {
        fewest = k;
        pick = e;
      }
    });
    elem_cands_[pick].for_each([&](std::size_t c) {
      if (aborted_) return;
      cur_.push_back(static_cast<int>(c));
      search(covered | cands_[c]);
      cur_.pop_back();
    });
  }

  Bitset universe_;
  const std::vector<Bitset>& cands_;
  std::uint64_t budget_;
  std::vector<Bitset> elem_cands_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  int root_lb_ = 0;
  std::vector<int> cur_, best_;
};

}  // namespace

ElementSet greedy_separated(const ElementSet& X, const Rat& r, const std::vector<int>* order) {
  const auto& g = *X.group();
  RadiusProbe probe(g, r);
  std::vector<int> scan;
  if (order) {
    scan = *order;
  } else {
    scan = X.indices();
  }
  std::vector<int> kept;
  for (int x : scan) {
    if (!X.contains(x)) continue;
    bool ok = true;
    for (int z : kept) {
      if (probe.leq(g.dist_num(x, z))) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(x);
  }
  return ElementSet(X.group(), Bitset::from_indices(static_cast<std::size_t>(g.order()), kept));
}

SolveResult packing_number(const ElementSet& X, const Rat& r, const SolveOptions& opts) {
  const auto& g = *X.group();
  SolveResult res;
  const std::vector<int> verts = X.indices();
  const int m = static_cast<int>(verts.size());
  if (m == 0) {
    res.witness.clear();
    return res;  // N_r(empty) = 0
  }
  RadiusProbe probe(g, r);
  // Fast paths that agree with the search's deterministic witnesses.
  if (r < g.min_positive() || g.order() == 1) {
    res.value = res.lower = res.upper = m;
    res.witness = verts;
    return res;
  }
  if (r >= g.diameter()) {
    res.value = res.lower = res.upper = 1;
    res.witness = {verts[0]};
    return res;
  }

  std::vector<Bitset> sep(m, Bitset(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (probe.gt(g.dist_num(verts[i], verts[j]))) {
        sep[i].set(static_cast<std::size_t>(j));
        sep[j].set(static_cast<std::size_t>(i));
      }

  // Greedy seed in compact coordinates (same scan as greedy_separated).
  std::vector<int> seed;
  {
    Bitset allowed(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) allowed.set(static_cast<std::size_t>(i));
    for (int i = 0; i < m; ++i) {
      if (!allowed.test(static_cast<std::size_t>(i))) continue;
      seed.push_back(i);
      allowed &= sep[i];
    }
  }

  PackingSolver solver(std::move(sep), opts.node_budget);
  solver.seed(seed);
  solver.run();
  res.nodes = solver.nodes();
  std::vector<int> win;
  win.reserve(solver.best().size());
  for (int i : solver.best()) win.push_back(verts[i]);
  std::sort(win.begin(), win.end());
  if (solver.aborted()) {
    res.status = SolveStatus::Budget;
    res.lower = static_cast<int>(win.size());
    res.upper = solver.root_upper();
    res.witness = std::move(win);
    return res;
  }
  res.value = res.lower = res.upper = static_cast<int>(win.size());
  res.witness = std::move(win);
  return res;
}

SolveResult exact_set_cover(const CoverInstance& inst, const SolveOptions& opts) {
  SolveResult res;
  if (inst.universe.none()) return res;  // empty cover suffices
  SetCoverSolver solver(inst.universe, inst.candidates, opts.node_budget);
  if (!solver.coverable()) {
    res.status = SolveStatus::NoCover;
    return res;
  }
  solver.run();
  res.nodes = solver.nodes();
  res.witness = solver.best();
  std::sort(res.witness.begin(), res.witness.end());
  if (solver.aborted()) {
    res.status = SolveStatus::Budget;
    res.lower = solver.root_lower();
    res.upper = static_cast<int>(res.witness.size());
    if (res.lower > res.upper) res.lower = res.upper;
    return res;
  }
  res.value = res.lower = res.upper = static_cast<int>(res.witness.size());
  return res;
}

SolveResult covering_number(const ElementSet& X, const ElementSet& Y, const Rat& r,
                            const SolveOptions& opts) {
  if (X.group().get() != Y.group().get())
    throw std::invalid_argument("covering_number mixes sets from different groups");
  const auto& g = *X.group();
  SolveResult res;
  const std::vector<int> xs = X.indices();
  if (xs.empty()) return res;  // N^cov of the empty set is 0
  const std::vector<int> ys = Y.indices();
  RadiusProbe probe(g, r);

  // Candidate masks over the compacted universe, deduplicated (keeping the
  // smallest center) so the brancher never revisits an identical ball.
  std::vector<Bitset> masks;
  std::vector<int> owner;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  for (int y : ys) {
    Bitset mask(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (probe.leq(g.dist_num(xs[i], y))) mask.set(i);
    if (mask.none()) continue;
    auto& bucket = seen[mask.hash()];
    bool dup = false;
    for (std::size_t idx : bucket)
      if (masks[idx] == mask) {
        dup = true;
        break;
      }
    if (dup) continue;
    bucket.push_back(masks.size());
    masks.push_back(std::move(mask));
    owner.push_back(y);
  }

  CoverInstance inst;
  inst.universe = Bitset(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) inst.universe.set(i);
  inst.candidates = std::move(masks);
  SolveResult cover = exact_set_cover(inst, opts);

  res.status = cover.status;
  res.nodes = cover.nodes;
  res.value = cover.value;
  res.lower = cover.lower;
  res.upper = cover.upper;
  res.witness.reserve(cover.witness.size());
  for (int c : cover.witness) res.witness.push_back(owner[static_cast<std::size_t>(c)]);
  std::sort(res.witness.begin(), res.witness.end());
  return res;
}

}  // namespace approxlab
