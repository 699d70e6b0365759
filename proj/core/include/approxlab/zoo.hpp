// Construction of the group corpus (cyclic Lee metrics, products, dihedral
// and symmetric groups, word metrics) and JSON persistence for groups and
// instances.
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "approxlab/element_set.hpp"
#include "approxlab/group.hpp"
#include "approxlab/rational.hpp"

namespace approxlab {

// Recipe for a finite metric group.  All metrics are divided by `scale`
// (a normalization so that diameters can be placed near 1).
struct GroupSpec {
  std::string kind;  // cyclic_lee | product | dihedral | symmetric_hamming | word_metric
  long n = 0;        // cyclic order / dihedral rotation order / symmetric degree
  Rat scale = 1;
  std::vector<GroupSpec> factors;               // product: the component specs
  std::shared_ptr<const GroupSpec> base;        // word_metric: underlying group
  std::vector<int> generators;                  // word_metric: element indices in base

  json to_json() const;
  static GroupSpec from_json(const json& j);

  static GroupSpec cyclic_lee(long n, Rat scale = 1);
  static GroupSpec product(std::vector<GroupSpec> factors);
  static GroupSpec dihedral(long n, Rat scale = 1);
  static GroupSpec symmetric_hamming(int m, Rat scale = 1);
  static GroupSpec word_metric(GroupSpec base, std::vector<int> generators, Rat scale = 1);
};

// Builds and validates the group described by the spec.
//   cyclic_lee       Z_n with d(a,b) = min(|a-b|, n-|a-b|) / scale.
//   product          direct product, metric = max of the component metrics.
//   dihedral         order-2n dihedral group, word metric over
//                    {rotation, rotation^-1, reflection} / scale; element
//                    (rot i, flip f) gets index i + n*f.
//   symmetric_hamming  S_m (m <= 6), permutations in lexicographic order,
//                    d(sigma, tau) = |{i : sigma(i) != tau(i)}| / m / scale.
//   word_metric      base group relabeled by BFS from the identity over the
//                    generators (ascending index order); distance = word
//                    length / scale.  Generators must be symmetric and
//                    generating.
// Throws std::invalid_argument on bad parameters; std::logic_error if the
// constructed table unexpectedly fails validation.
GroupPtr make_group(const GroupSpec& spec);

// Recipe for a test instance: a group plus a subset of it.
//   ball                params {"radius": rat, ["center": int]}; the closed
//                       ball around center (default identity).
//   subgroup            params {"generators": [int...]}; the generated subgroup.
//   coset_union         params {"generators": [int...], "g": int};
//                       H ∪ gH ∪ g^-1 H, symmetrized.
//   planted_progression params as coset_union plus {"radius": rat}; the
//                       coset union thickened by radius.
//   random_symmetric    params {"target_size": int}; random inverse-closed
//                       set containing the identity, grown pairwise until
//                       the target size is reached (deterministic in seed).
struct InstanceSpec {
  GroupSpec group;
  std::string set_kind;  // ball | subgroup | coset_union | planted_progression | random_symmetric
  json params;
  std::uint64_t seed = 0;

  json to_json() const;
  static InstanceSpec from_json(const json& j);
};

std::pair<GroupPtr, ElementSet> make_instance(const InstanceSpec& spec);
// As above but reusing an already-built group for the spec.
ElementSet make_instance_set(const InstanceSpec& spec, const GroupPtr& group);

enum class GroupFileFormat {
  Auto,  // full matrix up to order 512, profile beyond
  Full,  // row-major distance matrix, entries {"num","den"}
  Phi,   // common denominator + identity-row numerators (left-invariant only)
};

// Group files carry {"order", "identity", "mult", "dist", "meta"}; "dist" is
// either the full row-major rational matrix or {"den", "phi"}.  Loading
// re-validates; a failed validation throws std::runtime_error naming the
// broken axiom and witness.
void save_group(const std::string& path, const FiniteMetricGroup& g,
                GroupFileFormat format = GroupFileFormat::Auto);
json group_to_json(const FiniteMetricGroup& g, GroupFileFormat format = GroupFileFormat::Auto);
GroupPtr load_group(const std::string& path);
GroupPtr group_from_json(const json& j);
// Structural parse only (no axiom validation); throws on malformed JSON.
GroupData group_data_from_json(const json& j);

// Instance files embed the spec and the resolved set, pinned to the group by
// content hash; loading rebuilds the group from the spec (or reads the
// referenced group file) and verifies the hash and the set.
void save_instance(const std::string& path, const InstanceSpec& spec,
                   const std::string& group_file = "");
std::pair<GroupPtr, ElementSet> load_instance(const std::string& path);

std::string content_hash_hex(const FiniteMetricGroup& g);

}  // namespace approxlab
