// Rough covers, approximate-subgroup detection, commensurability, and the
// disjoint-translate-family construction.
#pragma once

#include <optional>
#include <string>

#include "approxlab/element_set.hpp"
#include "approxlab/rational.hpp"
#include "approxlab/set_term.hpp"
#include "approxlab/solver.hpp"

namespace approxlab {

// A verified inclusion base ⊆ translates · core · D_radius(1).
struct CoverCertificate {
  TermPtr base_term;
  ElementSet base_set;
  ElementSet translates;
  TermPtr core_term;
  ElementSet core_set;
  Rat radius;

  // Verifies the inclusion exhaustively; throws std::logic_error on failure.
  static CoverCertificate make(TermPtr base_term, ElementSet base_set, ElementSet translates,
                               TermPtr core_term, ElementSet core_set, Rat radius);
  bool verify() const;
  json to_json() const;
};

struct RoughCoverResult {
  SolveResult cover;  // minimal translate count / certified interval / no_cover
  std::optional<CoverCertificate> certificate;  // present whenever some cover was found
};

// Minimal set of translates Δ (drawn from `centers`, default all of G) with
// target ⊆ Δ · body · D_radius(1).  The terms are used for certificate
// labeling only; target/body are the evaluated sets.
RoughCoverResult rough_cover(const ElementSet& target, const ElementSet& body, const Rat& radius,
                             const std::optional<ElementSet>& centers = std::nullopt,
                             const SolveOptions& opts = {}, TermPtr target_term = nullptr,
                             TermPtr body_term = nullptr);

// The translate pool that provably suffices when the default whole-group pool
// is too slow: target · (body · D_radius(1))^-1.
ElementSet useful_translate_pool(const ElementSet& target, const ElementSet& body, const Rat& radius);

struct DetectResult {
  bool passed = false;
  bool determined = true;       // false only when the budget interval straddles k
  std::string reason;           // set when !passed (or !determined)
  std::optional<SolveResult> cover;  // minimal-count evidence when covers were solved
  std::optional<CoverCertificate> certificate;
  json to_json() const;
};

// X is a (k, r)-metric approximate subgroup: symmetric, contains 1, and X^2 is
// covered by at most k translates of X·D_r(1).
DetectResult is_metric_approx_subgroup(const ElementSet& X, int k, const Rat& r,
                                       const std::optional<ElementSet>& centers = std::nullopt,
                                       const SolveOptions& opts = {});

struct CommensurabilityResult {
  bool passed = false;
  bool determined = true;
  SolveResult x_by_y;  // cover X with translates of Y·D_r(1)
  SolveResult y_by_x;  // cover Y with translates of X·D_r(1)
  std::optional<CoverCertificate> cert_x_by_y, cert_y_by_x;
  json to_json() const;
};

// Symmetric predicate: each set covered by at most k translates of the other's
// r-thickening.
CommensurabilityResult commensurable(const ElementSet& X, const ElementSet& Y, int k,
                                     const Rat& r, const SolveOptions& opts = {});

struct DisjointFamilyResult {
  ElementSet delta;            // greedy maximal Δ ⊆ X^4, pairwise disjoint a·D_r(X)
  LipschitzResult lipschitz;   // l over D_2r(1)
  CoverCertificate certificate;  // X^4 ⊆ Δ·X^2·D_{2lr}(1)
  // Growth gate N_r(X^5) ≤ k·N_r(X), evaluated when k is supplied.
  std::optional<Rat> k;
  SolveResult n5, n1;
  bool gate_checked = false;
  bool gate_passed = false;
  bool size_within_k = false;  // |Δ| ≤ k (meaningful when the gate passed)
  json to_json() const;
};

// Requires X symmetric (the certificate's derivation uses X = X^-1).
DisjointFamilyResult disjoint_translate_family(const ElementSet& X, const Rat& r,
                                               const std::optional<Rat>& k = std::nullopt,
                                               const SolveOptions& opts = {});

}  // namespace approxlab
