#include "approxlab/scales.hpp"

#include <stdexcept>

#include "approxlab/certificates.hpp"

namespace approxlab {

json GrowthRow::to_json() const {
  json j;
  j["radius"] = rat_to_json(radius);
  j["packing_fine"] = packing_fine.to_json();
  j["packing_coarse"] = packing_coarse.to_json();
  j["power"] = power;
  j["bound"] = rat_to_json(bound);
  j["ratio"] = ratio ? rat_to_json(*ratio) : json(nullptr);
  j["passed"] = passed ? json(*passed) : json(nullptr);
  return j;
}

std::optional<bool> GrowthReport::all_passed() const {
  bool undetermined = false;
  for (const GrowthRow& row : rows) {
    if (!row.passed) {
      undetermined = true;
      continue;
    }
    if (!*row.passed) return false;
  }
  if (undetermined) return std::nullopt;
  return true;
}

json GrowthReport::to_json() const {
  json rows_json = json::array();
  for (const GrowthRow& row : rows) rows_json.push_back(row.to_json());
  auto verdict = all_passed();
  return json{{"rows", rows_json}, {"all_passed", verdict ? json(*verdict) : json(nullptr)}};
}

namespace {

GrowthRow measure_growth(const ElementSet& x9, const ElementSet& X, const Rat& radius, int power,
                         const Rat& bound, const SolveOptions& opts) {
  GrowthRow row;
  row.radius = radius;
  row.power = power;
  row.bound = bound;
  row.packing_fine = packing_number(x9, radius, opts);
  row.packing_coarse = packing_number(X, Rat(9) * radius, opts);
  if (row.packing_fine.exact() && row.packing_coarse.exact()) {
    if (row.packing_coarse.value > 0)
      row.ratio = Rat(row.packing_fine.value) / Rat(row.packing_coarse.value);
    const Rat lhs = rat_pow(Rat(row.packing_fine.value), static_cast<unsigned long>(power));
    const Rat rhs =
        bound * rat_pow(Rat(row.packing_coarse.value), static_cast<unsigned long>(power));
    row.passed = lhs <= rhs;
  }
  return row;
}

}  // namespace

GrowthReport growth_condition(const ElementSet& X, const ScaleLadder& ladder,
                              const std::vector<Rat>& k_seq, const SolveOptions& opts) {
  if (k_seq.empty()) throw std::invalid_argument("growth condition needs at least one bound");
  if (k_seq.size() != 1 && k_seq.size() != ladder.radii.size())
    throw std::invalid_argument("bound list must match the ladder length (or be a single value)");
  GrowthReport report;
  const ElementSet x9 = X.power(9);
  for (std::size_t i = 0; i < ladder.radii.size(); ++i) {
    const Rat& k = k_seq.size() == 1 ? k_seq.front() : k_seq[i];
    report.rows.push_back(measure_growth(x9, X, ladder.radii[i], 1, k, opts));
  }
  return report;
}

json SelectScalesResult::to_json() const {
  json scales_json = json::array();
  for (const Rat& s : scales) scales_json.push_back(rat_to_json(s));
  return json{{"report", report.to_json()}, {"scales", scales_json}, {"growth", growth.to_json()}};
}

SelectScalesResult select_scales(const ElementSet& X, int m, int n, int k, const Rat& C,
                                 const SolveOptions& opts) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (m > 40) throw std::invalid_argument("m exceeds the dyadic radius grid (max 40)");
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (C <= 0) throw std::invalid_argument("C must be positive");
  if (X.empty()) throw std::invalid_argument("scale selection needs a nonempty set");

  SelectScalesResult result;
  LemmaReport& rep = result.report;
  rep.claim = "scale_selection";

  const Rat delta = rat_pow(Rat(1, 2), static_cast<unsigned long>(m));
  const Rat l = lipschitz_constant(X, Rat(1)).l;
  const Rat l7 = geom_sum(l, 7);
  rep.gate_values["m"] = m;
  rep.gate_values["n"] = n;
  rep.gate_values["k"] = k;
  rep.gate_values["C"] = rat_to_json(C);
  rep.gate_values["delta"] = rat_to_json(delta);
  rep.gate_values["l"] = rat_to_json(l);

  // Gate (a): 2^m >= (18 (1 + l^[7]))^{2n}.
  const Rat depth_needed = rat_pow(Rat(18) * (1 + l7), static_cast<unsigned long>(2 * n));
  const bool gate_depth = rat_pow(Rat(2), static_cast<unsigned long>(m)) >= depth_needed;
  rep.gate_values["depth_bound"] = rat_to_json(depth_needed);
  rep.gate_values["depth_ok"] = gate_depth;

  // Gate (b): (k, delta)-metric approximate subgroup.
  DetectResult detect = is_metric_approx_subgroup(X, k, delta, std::nullopt, opts);
  rep.gate_values["approximate_subgroup"] = detect.to_json();

  // Gate (c): N_delta(X) <= C * N_1(X).
  const SolveResult n_delta = packing_number(X, delta, opts);
  const SolveResult n_one = packing_number(X, Rat(1), opts);
  rep.gate_values["packing_delta"] = n_delta.to_json();
  rep.gate_values["packing_one"] = n_one.to_json();
  bool gate_total = false;
  if (n_delta.exact() && n_one.exact())
    gate_total = Rat(n_delta.value) <= C * Rat(n_one.value);
  rep.gate_values["total_growth_ok"] = gate_total;

  rep.gate_checked = detect.determined && n_delta.exact() && n_one.exact();
  rep.gate_passed = gate_depth && detect.passed && gate_total;
  if (!rep.gate_passed) return result;

  // Ladder alpha^-i, i = 0..2n, alpha = 2^{m/2n}; dyadic lower approximants.
  std::vector<Rat> rho(static_cast<std::size_t>(2 * n) + 1);
  rho[0] = 1;
  for (int i = 1; i <= 2 * n; ++i)
    rho[static_cast<std::size_t>(i)] =
        dyadic_floor_pow2(static_cast<unsigned long>(m) * static_cast<unsigned long>(i),
                          static_cast<unsigned long>(2 * n), 40);

  std::vector<SolveResult> counts(rho.size());
  bool exact = true;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    counts[i] = packing_number(X, rho[i], opts);
    exact = exact && counts[i].exact();
  }
  json ladder_json = json::array();
  for (std::size_t i = 0; i < rho.size(); ++i)
    ladder_json.push_back({{"i", i}, {"radius", rat_to_json(rho[i])}, {"packing", counts[i].to_json()}});
  rep.numbers["ladder"] = ladder_json;
  if (!exact) {
    rep.numbers["budget_exceeded"] = true;
    return result;  // gate passed, conclusion undetermined
  }

  // I = {i : ratio_i^n <= C}; |I| >= n by pigeonhole over the telescoped product.
  std::vector<int> index_set;
  json ratios_json = json::array();
  for (int i = 1; i <= 2 * n; ++i) {
    const Rat ratio = Rat(counts[static_cast<std::size_t>(i)].value) /
                      Rat(counts[static_cast<std::size_t>(i - 1)].value);
    const bool small = rat_pow(ratio, static_cast<unsigned long>(n)) <= C;
    if (small) index_set.push_back(i);
    ratios_json.push_back({{"i", i}, {"ratio", rat_to_json(ratio)}, {"in_index_set", small}});
  }
  rep.numbers["ratios"] = ratios_json;
  rep.numbers["index_set"] = index_set;
  if (static_cast<int>(index_set.size()) < n) {
    rep.conclusion_passed = false;
    rep.witnesses.push_back({{"property", "pigeonhole"},
                             {"index_set_size", index_set.size()},
                             {"needed", n}});
    return result;
  }

  // The n smallest admissible indices give the n largest radii, in decreasing order.
  const ElementSet x9 = X.power(9);
  const Rat bound = rat_pow(Rat(k), static_cast<unsigned long>(8 * n)) * C;
  for (int j = 0; j < n; ++j) {
    const Rat r_prime = rho[static_cast<std::size_t>(index_set[static_cast<std::size_t>(j)])];
    const Rat r = 2 * (l7 * delta + r_prime);
    result.scales.push_back(r);
    result.growth.rows.push_back(measure_growth(x9, X, r, n, bound, opts));
  }

  bool ok = true;
  bool undetermined = false;
  if (result.scales.front() > 1) {
    ok = false;
    rep.witnesses.push_back({{"property", "r1_at_most_one"},
                             {"r1", rat_to_json(result.scales.front())}});
  }
  for (int j = 0; j + 1 < n; ++j) {
    if (2 * result.scales[static_cast<std::size_t>(j) + 1] > result.scales[static_cast<std::size_t>(j)]) {
      ok = false;
      rep.witnesses.push_back({{"property", "doubling"}, {"j", j}});
    }
  }
  for (std::size_t j = 0; j < result.growth.rows.size(); ++j) {
    const GrowthRow& row = result.growth.rows[j];
    if (!row.passed) {
      undetermined = true;
      continue;
    }
    if (!*row.passed) {
      ok = false;
      rep.witnesses.push_back({{"property", "growth"},
                               {"scale", rat_to_json(row.radius)},
                               {"fine", row.packing_fine.value},
                               {"coarse", row.packing_coarse.value}});
    }
  }
  rep.numbers["growth"] = result.growth.to_json();
  rep.numbers["budget_exceeded"] = undetermined;
  if (!ok)
    rep.conclusion_passed = false;
  else if (undetermined)
    rep.conclusion_passed = std::nullopt;
  else
    rep.conclusion_passed = true;
  return result;
}

}  // namespace approxlab
