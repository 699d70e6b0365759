// Finite groups carrying exact left-invariant metrics.
//
// A validated group stores its metric as the identity profile
// phi(z) = dist(identity, z) over a common denominator, so that
// dist(a, b) = phi(a^-1 b).  All distance comparisons against rational radii
// are exact (128-bit cross multiplication, GMP fallback for oversized radii).
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "approxlab/bitset.hpp"
#include "approxlab/rational.hpp"

namespace approxlab {

// Raw, unvalidated table data as read from a file or built by a constructor.
// The metric is either the full n*n matrix (`full` form) or just the identity
// row (`phi` form, which encodes a left-invariant metric by construction).
struct GroupData {
  int order = 0;
  int identity = 0;
  std::vector<int> mult;           // row-major, size order*order
  long long den = 1;               // common denominator of all distances
  std::vector<long long> dist;     // size order*order (full) or order (phi)
  bool phi_form = false;
  std::optional<bool> claimed_bi_invariant;  // from file metadata, if present
  json meta;                       // construction recipe etc., carried through
};

struct ValidationIssue {
  std::string axiom;          // short id, e.g. "associativity", "triangle"
  std::string detail;         // human-readable explanation
  std::vector<int> witness;   // element indices exhibiting the violation
};

struct ValidationReport {
  bool ok = false;
  bool structural_error = false;  // dimensions/bounds broken; no partial report
  std::vector<ValidationIssue> issues;
  bool bi_invariant = false;  // computed flag (meaningful only when ok)
  json to_json() const;
};

struct ValidateOptions {
  bool allow_large = false;   // lift the 4096-element soft limit
  int full_scan_limit = 256;  // max order for O(n^3) fallback witness scans
};

ValidationReport validate_group(const GroupData& data, const ValidateOptions& opts = {});

class FiniteMetricGroup;
using GroupPtr = std::shared_ptr<const FiniteMetricGroup>;

struct BuildResult {
  GroupPtr group;  // null when validation failed
  ValidationReport report;
};

class FiniteMetricGroup {
 public:
  // Validates and, on success, renormalizes the identity to index 0.
  static BuildResult build(const GroupData& data, const ValidateOptions& opts = {});

  int order() const { return n_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return mult_[static_cast<std::size_t>(a) * n_ + b]; }
  int inverse(int a) const { return inv_[a]; }

  long long den() const { return den_; }
  long long phi_num(int z) const { return phi_[z]; }
  // Raw row/profile access for inner loops.
  const int* mult_row(int a) const { return mult_.data() + static_cast<std::size_t>(a) * n_; }
  const long long* phi_data() const { return phi_.data(); }
  long long dist_num(int a, int b) const { return phi_[mul(inv_[a], b)]; }
  Rat phi(int z) const { return make_rat(phi_[z], den_); }
  Rat dist(int a, int b) const { return make_rat(dist_num(a, b), den_); }

  bool bi_invariant() const { return bi_invariant_; }

  // All values phi takes, sorted ascending and deduplicated; starts with 0.
  const std::vector<Rat>& realized_phi() const { return realized_; }
  Rat diameter() const { return realized_.back(); }
  // Smallest positive realized distance; 0 for the trivial group.
  Rat min_positive() const { return realized_.size() > 1 ? realized_[1] : Rat(0); }

  // Closed ball {z : phi(z) <= r} around the identity (cached).
  Bitset identity_ball(const Rat& r) const;

  std::uint64_t content_hash() const { return hash_; }
  const json& meta() const { return meta_; }

 private:
  FiniteMetricGroup() = default;

  int n_ = 0;
  std::vector<int> mult_;
  std::vector<int> inv_;
  std::vector<long long> phi_;
  long long den_ = 1;
  bool bi_invariant_ = false;
  std::vector<Rat> realized_;
  json meta_;
  std::uint64_t hash_ = 0;

  mutable std::mutex ball_mutex_;
  mutable std::map<Rat, Bitset> ball_cache_;
};

// Exact comparison of group distances (numerators over g.den()) against a
// fixed rational radius.  Hot path: one 128-bit cross multiplication.
class RadiusProbe {
 public:
  RadiusProbe(const FiniteMetricGroup& g, const Rat& r);
  bool leq(long long dist_num) const {  // dist <= r
    if (fits_) {
      return static_cast<__int128>(dist_num) * r_den_ <=
             static_cast<__int128>(r_num_) * g_den_;
    }
    return slow_leq(dist_num);
  }
  bool gt(long long dist_num) const { return !leq(dist_num); }

 private:
  bool slow_leq(long long dist_num) const;
  long long g_den_;
  long long r_num_ = 0, r_den_ = 1;
  bool fits_ = false;
  Rat r_;
};

}  // namespace approxlab
