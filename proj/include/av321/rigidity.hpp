#pragma once

#include <optional>
#include <vector>

#include "av321/perm.hpp"

namespace av321 {

/// The greedy layering of a member of I_k into k increasing classes
/// C_1 .. C_k. A point has rank t when it tops a decreasing subsequence of
/// length t but none of length t+1.
struct RankDecomposition {
  int k = 0;                 // max_decreasing_length of the permutation
  std::vector<int> rank_of;  // rank per position, 1-based values
};

/// Right-to-left greedy: each element joins the first class whose current
/// minimum exceeds it. Works for any permutation.
RankDecomposition rank_decomposition(const Permutation& p);

/// True when every point lies in some decreasing subsequence of length k.
/// Requires p in I_k.
bool is_k_rigid(const Permutation& p, int k);

/// Drops every singleton run from the plus decomposition, leaving the direct
/// sum of the plus-indecomposable components. Requires p in I_2; the result
/// is 2-rigid or empty.
Permutation rigid_reduction(const Permutation& p);

/// Positions with no larger element before them and no smaller element after.
std::vector<int> articulation_points(const Permutation& p);

/// Pointwise infimum / supremum of two embeddings of rho in pi. Requires the
/// two images of every pattern point to coincide or form a 12; throws
/// otherwise. Always valid when rho is k-rigid and pi lies in I_k.
Embedding embedding_inf(const Embedding& f, const Embedding& g,
                        const Permutation& rho, const Permutation& pi);
Embedding embedding_sup(const Embedding& f, const Embedding& g,
                        const Permutation& rho, const Permutation& pi);

/// The infimum of all embeddings of rho in pi, which simultaneously minimizes
/// the position and value of every image point. Requires rho k-rigid and
/// pi in I_k for k = max_decreasing_length(rho). Empty when rho does not
/// embed at all.
std::optional<Embedding> leftmost_bottommost(const Permutation& rho, const Permutation& pi);

}  // namespace av321
