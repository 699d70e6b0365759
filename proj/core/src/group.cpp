#include "approxlab/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace approxlab {

namespace {

constexpr long long kMaxMagnitude = 1LL << 60;  // keeps sums/cross products in range
constexpr int kSoftOrderLimit = 4096;

struct Checker {
  const GroupData& d;
  const ValidateOptions& opts;
  ValidationReport& rep;
  int n;

  int mul(int a, int b) const { return d.mult[static_cast<std::size_t>(a) * n + b]; }
  long long phi_at(int z) const {
    return d.phi_form ? d.dist[z] : d.dist[static_cast<std::size_t>(d.identity) * n + z];
  }
  long long dist_at(int a, int b) const {
    return d.dist[static_cast<std::size_t>(a) * n + b];
  }

  void issue(std::string axiom, std::string detail, std::vector<int> witness) {
    rep.issues.push_back({std::move(axiom), std::move(detail), std::move(witness)});
  }
  bool has_issue(const std::string& axiom) const {
    for (const auto& is : rep.issues)
      if (is.axiom == axiom) return true;
    return false;
  }
};

bool check_structure(Checker& c) {
  const GroupData& d = c.d;
  const int n = c.n;
  auto structural = [&](const std::string& detail) {
    c.rep.structural_error = true;
    c.rep.issues.clear();
    c.rep.issues.push_back({"structure", detail, {}});
    return false;
  };
  if (n < 1) return structural("order must be positive");
  if (n > kSoftOrderLimit && !c.opts.allow_large)
    return structural("order exceeds the supported soft limit of 4096 elements");
  if (d.identity < 0 || d.identity >= n) return structural("identity index out of range");
  if (d.mult.size() != static_cast<std::size_t>(n) * n)
    return structural("mult table has wrong dimensions");
  const std::size_t want = d.phi_form ? static_cast<std::size_t>(n)
                                      : static_cast<std::size_t>(n) * n;
  if (d.dist.size() != want) return structural("dist data has wrong dimensions");
  if (d.den < 1 || d.den > kMaxMagnitude)
    return structural("distance denominator out of supported range");
  for (int v : d.mult)
    if (v < 0 || v >= n) return structural("mult entry out of range");
  for (long long v : d.dist)
    if (v < -kMaxMagnitude || v > kMaxMagnitude)
      return structural("distance numerator exceeds supported magnitude");
  return true;
}

void check_identity(Checker& c) {
  for (int x = 0; x < c.n; ++x) {
    if (c.mul(c.d.identity, x) != x || c.mul(x, c.d.identity) != x) {
      c.issue("identity", "identity element is not a two-sided unit", {x});
      return;
    }
  }
}

void check_cancellation(Checker& c) {
  std::vector<int> seen(c.n);
  for (int a = 0; a < c.n; ++a) {  // rows
    std::fill(seen.begin(), seen.end(), -1);
    for (int b = 0; b < c.n; ++b) {
      int v = c.mul(a, b);
      if (seen[v] >= 0) {
        c.issue("cancellation", "left translation by an element is not injective",
                {a, seen[v], b});
        return;
      }
      seen[v] = b;
    }
  }
  for (int b = 0; b < c.n; ++b) {  // columns
    std::fill(seen.begin(), seen.end(), -1);
    for (int a = 0; a < c.n; ++a) {
      int v = c.mul(a, b);
      if (seen[v] >= 0) {
        c.issue("cancellation", "right translation by an element is not injective",
                {seen[v], a, b});
        return;
      }
      seen[v] = a;
    }
  }
}

// Associativity via Light's test: pick a generating set S greedily (BFS
// closure under right multiplication), then check (x·s)·y == x·(s·y) for all
// s in S.  Sufficient because every element is reachable as e·s1·s2·...·sk.
void check_associativity(Checker& c) {
  const int n = c.n;
  if (c.has_issue("identity")) {
    if (n <= c.opts.full_scan_limit) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            if (c.mul(c.mul(x, y), z) != c.mul(x, c.mul(y, z))) {
              c.issue("associativity", "(x·y)·z != x·(y·z)", {x, y, z});
              return;
            }
    } else {
      c.issue("associativity", "not checked: identity axiom failed on a large table", {});
    }
    return;
  }
  std::vector<bool> reach(n, false);
  reach[c.d.identity] = true;
  int reached = 1;
  std::vector<int> gens;
  while (reached < n) {
    int g = 0;
    while (reach[g]) ++g;
    gens.push_back(g);
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < n; ++x) {
        if (!reach[x]) continue;
        for (int s : gens) {
          int y = c.mul(x, s);
          if (!reach[y]) {
            reach[y] = true;
            ++reached;
            grew = true;
          }
        }
      }
    }
  }
  for (int s : gens)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (c.mul(c.mul(x, s), y) != c.mul(x, c.mul(s, y))) {
          c.issue("associativity", "(x·s)·y != x·(s·y) for generator s", {x, s, y});
          return;
        }
}

// Returns the inverse table, or an empty vector if some element lacks a
// two-sided inverse (an issue is reported in that case).
std::vector<int> check_inverses(Checker& c) {
  const int n = c.n;
  if (c.has_issue("identity")) return {};
  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (c.mul(x, y) == c.d.identity) {
        inv[x] = y;
        break;
      }
    }
    if (inv[x] < 0) {
      c.issue("inverse", "element has no right inverse", {x});
      return {};
    }
    if (c.mul(inv[x], x) != c.d.identity) {
      c.issue("inverse", "right inverse is not a left inverse", {x, inv[x]});
      return {};
    }
  }
  return inv;
}

void check_metric(Checker& c, const std::vector<int>& inv) {
  const int n = c.n;
  const int id = c.d.identity;

  bool invariant = true;
  if (!c.d.phi_form) {
    // Direct matrix axioms first (they do not need the group structure).
    for (int a = 0; a < n && !c.has_issue("zero_distance"); ++a)
      if (c.dist_at(a, a) != 0)
        c.issue("zero_distance", "dist(a,a) != 0", {a});
    for (int a = 0; a < n && !c.has_issue("nonnegative") && !c.has_issue("positivity"); ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        long long v = c.dist_at(a, b);
        if (v < 0) {
          c.issue("nonnegative", "dist(a,b) is negative", {a, b});
          break;
        }
        if (v == 0) {
          c.issue("positivity", "dist(a,b) = 0 for distinct a, b", {a, b});
          break;
        }
      }
    for (int a = 0; a < n && !c.has_issue("symmetry"); ++a)
      for (int b = a + 1; b < n; ++b)
        if (c.dist_at(a, b) != c.dist_at(b, a)) {
          c.issue("symmetry", "dist(a,b) != dist(b,a)", {a, b});
          break;
        }
    // Left invariance reduces to dist(a,b) == phi(a^-1·b).
    if (!inv.empty() && !c.has_issue("associativity")) {
      for (int a = 0; a < n && invariant; ++a)
        for (int b = 0; b < n; ++b)
          if (c.dist_at(a, b) != c.phi_at(c.mul(inv[a], b))) {
            c.issue("left_invariance", "dist(z·x, z·y) != dist(x, y)", {inv[a], a, b});
            invariant = false;
            break;
          }
    } else {
      invariant = false;  // cannot certify without group structure
    }
  } else {
    // phi form: left invariance holds by construction; check the profile.
    if (c.phi_at(id) != 0)
      c.issue("zero_distance", "dist at the identity is nonzero", {id});
    for (int z = 0; z < n; ++z) {
      if (z == id) continue;
      long long v = c.phi_at(z);
      if (v < 0) {
        c.issue("nonnegative", "distance profile has a negative entry", {id, z});
        break;
      }
      if (v == 0) {
        c.issue("positivity", "dist(identity,z) = 0 for z != identity", {id, z});
        break;
      }
    }
    if (!inv.empty()) {
      for (int z = 0; z < n; ++z)
        if (c.phi_at(z) != c.phi_at(inv[z])) {
          c.issue("symmetry", "dist(1,z) != dist(1,z^-1)", {z, inv[z]});
          break;
        }
    }
    invariant = !inv.empty() && !c.has_issue("associativity");
  }

  // Triangle inequality, via the profile when left invariance is available.
  if (invariant && !c.has_issue("nonnegative")) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (c.phi_at(c.mul(a, b)) > c.phi_at(a) + c.phi_at(b)) {
          c.issue("triangle", "dist(1,a·b) > dist(1,a) + dist(a,a·b)", {a, b, c.mul(a, b)});
          return;
        }
  } else if (!c.d.phi_form && n <= c.opts.full_scan_limit && !c.has_issue("nonnegative")) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int m = 0; m < n; ++m)
          if (c.dist_at(a, b) > c.dist_at(a, m) + c.dist_at(m, b)) {
            c.issue("triangle", "dist(a,b) > dist(a,m) + dist(m,b)", {a, m, b});
            return;
          }
  }
}

// Exhaustive conjugation-invariance scan; valid only on an already-clean group.
bool compute_bi_invariant(Checker& c, const std::vector<int>& inv, std::vector<int>* witness) {
  for (int g = 0; g < c.n; ++g)
    for (int x = 0; x < c.n; ++x) {
      int conj = c.mul(c.mul(inv[g], x), g);
      if (c.phi_at(conj) != c.phi_at(x)) {
        if (witness) *witness = {g, x, conj};
        return false;
      }
    }
  return true;
}

}  // namespace

ValidationReport validate_group(const GroupData& data, const ValidateOptions& opts) {
  ValidationReport rep;
  Checker c{data, opts, rep, data.order};
  if (!check_structure(c)) return rep;
  check_identity(c);
  check_cancellation(c);
  check_associativity(c);
  std::vector<int> inv = check_inverses(c);
  check_metric(c, inv);
  if (rep.issues.empty()) {
    std::vector<int> witness;
    rep.bi_invariant = compute_bi_invariant(c, inv, &witness);
    if (data.claimed_bi_invariant && *data.claimed_bi_invariant != rep.bi_invariant) {
      c.issue("bi_invariant",
              rep.bi_invariant
                  ? "metadata claims a non-bi-invariant metric, but conjugations are isometries"
                  : "metadata claims bi-invariance, but a conjugation changes a distance",
              witness);
    }
  }
  rep.ok = rep.issues.empty();
  return rep;
}

json ValidationReport::to_json() const {
  json j;
  j["ok"] = ok;
  j["structural_error"] = structural_error;
  j["bi_invariant"] = bi_invariant;
  json arr = json::array();
  for (const auto& is : issues) {
    json item;
    item["axiom"] = is.axiom;
    item["detail"] = is.detail;
    item["witness"] = is.witness;
    arr.push_back(item);
  }
  j["issues"] = arr;
  return j;
}

BuildResult FiniteMetricGroup::build(const GroupData& data, const ValidateOptions& opts) {
  BuildResult out;
  out.report = validate_group(data, opts);
  if (!out.report.ok) return out;

  const int n = data.order;
  // Renormalize so the identity sits at index 0 (swap labels 0 <-> identity).
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  if (data.identity != 0) {
    perm[data.identity] = 0;
    perm[0] = data.identity;
  }

  auto g = std::shared_ptr<FiniteMetricGroup>(new FiniteMetricGroup());
  g->n_ = n;
  g->den_ = data.den;
  g->mult_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g->mult_[static_cast<std::size_t>(perm[a]) * n + perm[b]] =
          perm[data.mult[static_cast<std::size_t>(a) * n + b]];

  g->phi_.assign(n, 0);
  for (int z = 0; z < n; ++z) {
    long long v = data.phi_form ? data.dist[z]
                                : data.dist[static_cast<std::size_t>(data.identity) * n + z];
    g->phi_[perm[z]] = v;
  }
  // Canonical representation: reduce den and profile by their common factor,
  // so equal metrics hash equally no matter how the input was scaled.
  long long common = g->den_;
  for (long long v : g->phi_) {
    common = std::gcd(common, v);
    if (common == 1) break;
  }
  if (common > 1) {
    g->den_ /= common;
    for (long long& v : g->phi_) v /= common;
  }

  g->inv_.assign(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g->mult_[static_cast<std::size_t>(x) * n + y] == 0) {
        g->inv_[x] = y;
        break;
      }

  std::vector<Rat> vals;
  vals.reserve(n);
  for (int z = 0; z < n; ++z) vals.push_back(make_rat(g->phi_[z], g->den_));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  g->realized_ = std::move(vals);

  g->bi_invariant_ = out.report.bi_invariant;
  g->meta_ = data.meta;

  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(n));
  mix(static_cast<std::uint64_t>(g->den_));
  for (int v : g->mult_) mix(static_cast<std::uint64_t>(v));
  for (long long v : g->phi_) mix(static_cast<std::uint64_t>(v));
  mix(g->bi_invariant_ ? 1 : 0);
  g->hash_ = h;

  out.group = std::move(g);
  return out;
}

Bitset FiniteMetricGroup::identity_ball(const Rat& r) const {
  {
    std::lock_guard<std::mutex> lock(ball_mutex_);
    auto it = ball_cache_.find(r);
    if (it != ball_cache_.end()) return it->second;
  }
  RadiusProbe probe(*this, r);
  Bitset b(n_);
  for (int z = 0; z < n_; ++z)
    if (probe.leq(phi_[z])) b.set(z);
  std::lock_guard<std::mutex> lock(ball_mutex_);
  auto [it, inserted] = ball_cache_.emplace(r, std::move(b));
  return it->second;
}

RadiusProbe::RadiusProbe(const FiniteMetricGroup& g, const Rat& r)
    : g_den_(g.den()), r_(r) {
  if (r.get_num().fits_slong_p() && r.get_den().fits_slong_p()) {
    r_num_ = r.get_num().get_si();
    r_den_ = r.get_den().get_si();
    fits_ = true;
  }
}

bool RadiusProbe::slow_leq(long long dist_num) const {
  return make_rat(dist_num, g_den_) <= r_;
}

}  // namespace approxlab
