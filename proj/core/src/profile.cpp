#include "approxlab/profile.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace approxlab {

ScaleLadder ScaleLadder::make(std::vector<Rat> radii) {
  if (radii.empty()) throw std::invalid_argument("scale ladder must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] <= 0) throw std::invalid_argument("scale ladder radii must be positive");
    if (i > 0 && 2 * radii[i] > radii[i - 1])
      throw std::invalid_argument("scale ladder violates the doubling condition 2*r_i <= r_{i-1}");
  }
  return ScaleLadder{std::move(radii)};
}

ScaleLadder ScaleLadder::halving(const Rat& r0, int steps) {
  if (steps < 1) throw std::invalid_argument("ladder needs at least one radius");
  std::vector<Rat> radii;
  Rat r = r0;
  for (int i = 0; i < steps; ++i) {
    radii.push_back(r);
    r /= 2;
  }
  return make(std::move(radii));
}

std::vector<ProfileRow> scale_profile(const ElementSet& X, const ElementSet& Y,
                                      const ScaleLadder& ladder, const SolveOptions& opts) {
  std::vector<ProfileRow> rows;
  rows.reserve(ladder.radii.size());
  for (const Rat& r : ladder.radii) {
    ProfileRow row;
    row.radius = r;
    row.packing = packing_number(X, r, opts);
    row.covering = covering_number(X, Y, r, opts);
    if (row.packing.exact() && row.packing.value >= 1 && r < 1) {
      row.mb_approx = std::log(static_cast<double>(row.packing.value)) /
                      std::log(1.0 / to_double(r));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string count_cell(const SolveResult& res) {
  switch (res.status) {
    case SolveStatus::Exact:
      return std::to_string(res.value);
    case SolveStatus::Budget:
      return std::to_string(res.lower) + ".." + std::to_string(res.upper);
    case SolveStatus::NoCover:
      return "inf";
  }
  return "";
}

std::string mb_cell(const std::optional<double>& mb) {
  if (!mb) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", *mb);
  return buf;
}

}  // namespace

std::string profile_csv(const std::vector<ProfileRow>& rows) {
  std::ostringstream out;
  out << "radius_num,radius_den,packing,covering,mb_approx\n";
  for (const auto& row : rows) {
    out << row.radius.get_num().get_str() << ',' << row.radius.get_den().get_str() << ','
        << count_cell(row.packing) << ',' << count_cell(row.covering) << ','
        << mb_cell(row.mb_approx) << '\n';
  }
  return out.str();
}

json profile_json(const std::vector<ProfileRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j;
    j["radius"] = rat_to_json(row.radius);
    j["packing"] = row.packing.to_json();
    j["covering"] = row.covering.to_json();
    j["mb_approx"] = row.mb_approx ? json(*row.mb_approx) : json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace approxlab
