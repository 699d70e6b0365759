// Uniform report shape for hypothesis-gated checks:
//   {claim, hypothesis_gate: {checked, passed, values},
//    conclusion: {passed, witnesses}, numbers: {...}}
// A failed gate makes the conclusion vacuous (passed = null), which is
// deliberately distinct from a violated conclusion.
#pragma once

#include <optional>
#include <string>

#include "approxlab/rational.hpp"

namespace approxlab {

struct LemmaReport {
  std::string claim;
  bool gate_checked = true;
  bool gate_passed = false;
  json gate_values = json::object();
  std::optional<bool> conclusion_passed;  // nullopt = vacuous (gate failed) or undetermined
  json witnesses = json::array();
  json numbers = json::object();

  bool vacuous() const { return !gate_passed; }
  bool violated() const { return gate_passed && conclusion_passed && !*conclusion_passed; }
  bool verified() const { return gate_passed && conclusion_passed && *conclusion_passed; }

  json to_json() const {
    json j;
    j["claim"] = claim;
    j["hypothesis_gate"] = {{"checked", gate_checked}, {"passed", gate_passed}, {"values", gate_values}};
    j["conclusion"] = {{"passed", conclusion_passed ? json(*conclusion_passed) : json(nullptr)},
                       {"witnesses", witnesses}};
    j["numbers"] = numbers;
    return j;
  }
};

}  // namespace approxlab
