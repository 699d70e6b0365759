#include "approxlab/filtration.hpp"

#include <map>
#include <stdexcept>

#include "approxlab/certificates.hpp"

namespace approxlab {

Filtration Filtration::make(std::vector<ElementSet> chain, ElementSet base, Rat r_s, int c) {
  if (chain.empty()) throw std::invalid_argument("filtration chain must be nonempty");
  if (r_s < 0) throw std::invalid_argument("thickening radius must be nonnegative");
  if (c < 1) throw std::invalid_argument("covering constant must be at least 1");
  for (std::size_t n = 0; n < chain.size(); ++n) {
    if (chain[n].group() != base.group())
      throw std::invalid_argument("filtration sets must live on one group");
    if (!chain[n].contains_identity())
      throw std::invalid_argument("filtration set " + std::to_string(n) +
                                  " does not contain the identity");
    if (!chain[n].is_symmetric())
      throw std::invalid_argument("filtration set " + std::to_string(n) + " is not symmetric");
    if (n + 1 < chain.size() && !chain[n + 1].subset_of(chain[n]))
      throw std::invalid_argument("filtration chain is not nested at index " +
                                  std::to_string(n + 1));
  }
  Filtration f{std::move(chain), std::move(base), std::move(r_s), c};
  return f;
}

json FiltrationProperty::to_json() const {
  return json{{"property", property},
              {"passed", passed ? json(*passed) : json(nullptr)},
              {"details", details}};
}

std::optional<bool> FiltrationReport::all_passed() const {
  bool undetermined = false;
  for (const FiltrationProperty& p : properties) {
    if (!p.passed) {
      undetermined = true;
      continue;
    }
    if (!*p.passed) return false;
  }
  if (undetermined) return std::nullopt;
  return true;
}

json FiltrationReport::to_json() const {
  json props = json::array();
  for (const FiltrationProperty& p : properties) props.push_back(p.to_json());
  auto verdict = all_passed();
  return json{{"properties", props},
              {"context", {{"chain_in_eighth_power", chain_in_eighth_power}}},
              {"all_passed", verdict ? json(*verdict) : json(nullptr)}};
}

namespace {

// x^17 by binary exponentiation on group indices.
int pow17(const FiniteMetricGroup& g, int x) {
  int sq = g.mul(x, x);        // x^2
  sq = g.mul(sq, sq);          // x^4
  sq = g.mul(sq, sq);          // x^8
  sq = g.mul(sq, sq);          // x^16
  return g.mul(sq, x);
}

FiltrationProperty commensurability_property(const std::string& name, const ElementSet& x2,
                                             const ElementSet& xn, int c, const Rat& r_s,
                                             const SolveOptions& opts) {
  FiltrationProperty p;
  p.property = name;
  CommensurabilityResult res = commensurable(x2, xn, c, r_s, opts);
  p.details = res.to_json();
  if (res.determined)
    p.passed = res.passed;
  else
    p.passed = std::nullopt;
  return p;
}

}  // namespace

FiltrationReport filtration_check(const Filtration& f, const SolveOptions& opts) {
  FiltrationReport report;
  const int N = f.depth();
  const GroupPtr gp = f.base.group();
  const ElementSet x2 = f.base.power(2);
  report.chain_in_eighth_power = f.chain.front().subset_of(f.base.power(8));

  std::vector<ElementSet> thick;  // D_{r_s}(X_n)
  thick.reserve(f.chain.size());
  for (const ElementSet& xn : f.chain) thick.push_back(xn.thicken(f.r_s));

  // (1) commensurability of X^2 with X_1 (statement form) and X_0 (proof form).
  const ElementSet& x1 = f.chain[static_cast<std::size_t>(std::min(1, N))];
  report.properties.push_back(
      commensurability_property("1_statement", x2, x1, f.c, f.r_s, opts));
  report.properties.push_back(
      commensurability_property("1_proof", x2, f.chain.front(), f.c, f.r_s, opts));

  // (2) X_{n+1}·X_{n+1} ⊆ D_{r_s}(X_n).
  {
    FiltrationProperty p;
    p.property = "2";
    bool ok = true;
    json rows = json::array();
    for (int n = 0; n < N; ++n) {
      const ElementSet& next = f.chain[static_cast<std::size_t>(n) + 1];
      const bool incl = next.product(next).subset_of(thick[static_cast<std::size_t>(n)]);
      rows.push_back({{"n", n}, {"included", incl}});
      ok = ok && incl;
    }
    p.details["rows"] = rows;
    p.passed = ok;
    report.properties.push_back(std::move(p));
  }

  // (3) X_n covered by ≤ c translates of D_{r_s}(X_{n+1}).
  {
    FiltrationProperty p;
    p.property = "3";
    bool ok = true;
    bool undetermined = false;
    json rows = json::array();
    for (int n = 0; n < N; ++n) {
      RoughCoverResult cover = rough_cover(f.chain[static_cast<std::size_t>(n)],
                                           f.chain[static_cast<std::size_t>(n) + 1], f.r_s,
                                           std::nullopt, opts);
      json row{{"n", n}, {"cover", cover.cover.to_json()}};
      if (cover.cover.status == SolveStatus::Exact) {
        row["passed"] = cover.cover.value <= f.c;
        ok = ok && cover.cover.value <= f.c;
      } else if (cover.cover.status == SolveStatus::Budget) {
        if (cover.cover.upper <= f.c) {
          row["passed"] = true;
        } else if (cover.cover.lower > f.c) {
          row["passed"] = false;
          ok = false;
        } else {
          row["passed"] = nullptr;
          undetermined = true;
        }
      } else {
        row["passed"] = false;  // no cover exists at all
        ok = false;
      }
      rows.push_back(row);
    }
    p.details["rows"] = rows;
    if (!ok)
      p.passed = false;
    else if (undetermined)
      p.passed = std::nullopt;
    else
      p.passed = true;
    report.properties.push_back(std::move(p));
  }

  // (4) x^{-1}·X_{n+1}·x ⊆ D_{r_s}(X_n) for every x ∈ X_1.
  {
    FiltrationProperty p;
    p.property = "4";
    bool ok = true;
    json rows = json::array();
    for (int n = 0; n < N; ++n) {
      const ElementSet& next = f.chain[static_cast<std::size_t>(n) + 1];
      const bool incl = next.conjugation_set(x1).subset_of(thick[static_cast<std::size_t>(n)]);
      json row{{"n", n}, {"included", incl}};
      if (!incl) {
        ok = false;
        int bad = -1;
        x1.bits().for_each([&](std::size_t x) {
          if (bad >= 0) return;
          ElementSet one(gp, std::vector<int>{static_cast<int>(x)});
          if (!next.conjugation_set(one).subset_of(thick[static_cast<std::size_t>(n)]))
            bad = static_cast<int>(x);
        });
        row["witness_x"] = bad;
      }
      rows.push_back(row);
    }
    p.details["rows"] = rows;
    p.passed = ok;
    report.properties.push_back(std::move(p));
  }

  // (5) [X_{n1}, X_{n2}] ⊆ D_{r_s}(X_n) whenever n < n1 + n2.
  {
    FiltrationProperty p;
    p.property = "5";
    bool ok = true;
    json rows = json::array();
    for (int n1 = 0; n1 <= N; ++n1) {
      for (int n2 = 0; n2 <= N; ++n2) {
        const int top = std::min(N, n1 + n2 - 1);
        if (top < 0) continue;
        const ElementSet comm = f.chain[static_cast<std::size_t>(n1)].commutator_set(
            f.chain[static_cast<std::size_t>(n2)]);
        // Nesting means n = top is the strict requirement: thickened X_n only
        // grows as n decreases, so a pass at top settles every smaller n.
        const bool incl = comm.subset_of(thick[static_cast<std::size_t>(top)]);
        json row{{"n1", n1}, {"n2", n2}, {"n_max", top}, {"included", incl}};
        if (!incl) {
          ok = false;
          int largest_passing = -1;
          for (int n = top - 1; n >= 0; --n) {
            if (comm.subset_of(thick[static_cast<std::size_t>(n)])) {
              largest_passing = n;
              break;
            }
          }
          row["largest_passing_n"] = largest_passing;
        }
        rows.push_back(row);
      }
    }
    p.details["rows"] = rows;
    p.passed = ok;
    report.properties.push_back(std::move(p));
  }

  // (6) {x ∈ X_0 : x^17 ∈ X_n} ⊆ X_{n+1}.
  {
    FiltrationProperty p;
    p.property = "6";
    bool ok = true;
    json rows = json::array();
    std::vector<int> x0 = f.chain.front().indices();
    std::vector<int> x17(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) x17[i] = pow17(*gp, x0[i]);
    for (int n = 0; n < N; ++n) {
      const ElementSet& xn = f.chain[static_cast<std::size_t>(n)];
      const ElementSet& next = f.chain[static_cast<std::size_t>(n) + 1];
      json row{{"n", n}};
      bool incl = true;
      for (std::size_t i = 0; i < x0.size(); ++i) {
        if (xn.contains(x17[i]) && !next.contains(x0[i])) {
          incl = false;
          row["witness_x"] = x0[i];
          break;
        }
      }
      row["included"] = incl;
      ok = ok && incl;
      rows.push_back(row);
    }
    p.details["rows"] = rows;
    p.passed = ok;
    report.properties.push_back(std::move(p));
  }

  // (7) x, y ∈ X_0 with x^2 = y^2 implies y^{-1}·x ∈ D_{r_s}(X_N).
  {
    FiltrationProperty p;
    p.property = "7";
    bool ok = true;
    json witnesses = json::array();
    std::map<int, std::vector<int>> by_square;
    f.chain.front().bits().for_each([&](std::size_t x) {
      const int xi = static_cast<int>(x);
      by_square[gp->mul(xi, xi)].push_back(xi);
    });
    const ElementSet& tail = thick.back();
    for (const auto& [sq, elems] : by_square) {
      for (int x : elems) {
        for (int y : elems) {
          if (!tail.contains(gp->mul(gp->inverse(y), x))) {
            ok = false;
            if (witnesses.size() < 8) witnesses.push_back({{"x", x}, {"y", y}});
          }
        }
      }
    }
    p.details["witnesses"] = witnesses;
    p.passed = ok;
    report.properties.push_back(std::move(p));
  }

  return report;
}

}  // namespace approxlab
