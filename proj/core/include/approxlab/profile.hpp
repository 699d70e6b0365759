// Multi-scale packing/covering profiles and the box-dimension style readout.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "approxlab/solver.hpp"

namespace approxlab {

// Strictly positive radii with the doubling condition 2*r_i <= r_{i-1}.
struct ScaleLadder {
  std::vector<Rat> radii;
  // Throws std::invalid_argument when the doubling condition or positivity fails.
  static ScaleLadder make(std::vector<Rat> radii);
  // Geometric ladder r0, r0/2, ..., r0/2^(steps-1).
  static ScaleLadder halving(const Rat& r0, int steps);
};

struct ProfileRow {
  Rat radius;
  SolveResult packing;
  SolveResult covering;
  std::optional<double> mb_approx;  // ln N_r / ln(1/r); empty when undefined
};

// One row per ladder radius; covering centers range over Y.
std::vector<ProfileRow> scale_profile(const ElementSet& X, const ElementSet& Y,
                                      const ScaleLadder& ladder,
                                      const SolveOptions& opts = {});

// CSV with header radius_num,radius_den,packing,covering,mb_approx.
// Interval results render as "lo..hi", an uncoverable row as "inf",
// undefined mb_approx as an empty field.
std::string profile_csv(const std::vector<ProfileRow>& rows);

json profile_json(const std::vector<ProfileRow>& rows);

}  // namespace approxlab
