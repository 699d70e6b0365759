// Hypothesis-gated checkers for the local-packing, discretisation-counting,
// product-thickening and infinitesimal-chain statements.
#pragma once

#include <optional>
#include <vector>

#include "approxlab/certificates.hpp"
#include "approxlab/profile.hpp"
#include "approxlab/report.hpp"

namespace approxlab {

// Gate: N_r(X·X^-1·X) <= k·N_{(2m+1)r}(X).  Conclusions: (1) for every b in X,
// N_r(X ∩ D_{mr}(b)) <= k; (2) N^cov_r(Y/X) <= k·N^cov_{mr}(Y/X) for each Y in
// `subsets` (default: 32 deterministically seeded random subsets of X).
LemmaReport local_packing_check(const ElementSet& X, const Rat& r, int m, const Rat& k,
                                const std::vector<ElementSet>* subsets = nullptr,
                                const SolveOptions& opts = {});

// Gate: N_r(X·X^-1·X) <= k·N_{9r}(X).  With Z an exact maximum 2r-separated
// subset of X, verifies N^cov_2r(Y/X) <= |Z ∩ D_2r(Y)| <= k·N^cov_2r(Y/X).
LemmaReport discretisation_counting_check(const ElementSet& X, const ElementSet& Y, const Rat& r,
                                          const Rat& k, const SolveOptions& opts = {});

// Gate: X is a (k,delta)-metric approximate subgroup (with minimal translate
// family Delta) and a chart radius exists for the Lipschitz range condition.
// Conclusion: X^n ⊆ Delta^{n-1}·D_{s_n}(X) for n = 2..m, with s_2 = delta and
// s_{n+1} = delta + l·s_n.
LemmaReport product_thickening_chain(const ElementSet& X, int k, const Rat& delta, int m,
                                     const SolveOptions& opts = {});

// Gate: lipschitz_constant(X, r_0) <= l.  Conclusions, with jump
// j = min{t >= 0 : 2^t >= l}: (a) D_{r_i}(1)·D_{r_i}(1)^-1 ⊆ D_{r_{i-1}}(1);
// (b) x^-1·D_{r_{i+j}}(1)·x ⊆ D_{r_i}(1) for every x in X.
LemmaReport infinitesimal_chain_check(const ScaleLadder& ladder, const ElementSet& X,
                                      const Rat& l);

}  // namespace approxlab
