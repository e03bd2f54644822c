#pragma once

#include <optional>
#include <string>
#include <vector>

#include "av321/perm.hpp"

namespace av321 {

/// An ordered partition of a permutation's positions into increasing blocks
/// arranged alternately rightward and upward: even-indexed blocks lie right
/// of their predecessor, odd-indexed ones above, and blocks two or more
/// apart are separated in both coordinates.
struct StaircaseDecomposition {
  std::vector<std::vector<int>> blocks;  // positions, each sorted ascending
};

/// Greedy construction: odd blocks take the longest increasing initial
/// segment by position of what remains, even blocks the longest by value.
/// Requires p in I_2.
StaircaseDecomposition staircase_decomposition(const Permutation& p);

/// Validates the four staircase axioms for a block list over p. With
/// `transposed` the roles of position and value are exchanged (the staircase
/// climbs up first, as the second staircase of an intertwined pair does).
/// Blocks may be empty; empty blocks satisfy every axiom vacuously.
bool check_staircase_axioms(const Permutation& p,
                            const std::vector<std::vector<int>>& blocks,
                            bool transposed, std::string* why = nullptr);

/// True when `blocks` additionally partitions all of p.
bool is_staircase_decomposition_of(const Permutation& p,
                                   const std::vector<std::vector<int>>& blocks,
                                   std::string* why = nullptr);

/// The maximally interleaved staircase with k increasing blocks of size b:
/// the t-th element of an even block sits in value between the (t-1)-st and
/// t-th elements of the previous block, and the t-th element of an odd block
/// sits in position between the (t-1)-st and t-th elements of the previous
/// block.
Permutation generic_staircase(int k, int b);

struct GenericStaircase {
  Permutation perm;
  std::vector<std::vector<int>> blocks;  // positions per block, sorted
};
GenericStaircase generic_staircase_with_blocks(int k, int b);

/// A verified embedding of the (k,b)-generic staircase into some permutation.
struct StaircaseWitness {
  int k = 0;
  int b = 0;
  Embedding embedding;
};

/// Embeds p into a generic staircase whose block count equals the block
/// count of p's greedy staircase decomposition, with the smallest block size
/// the slot constraints allow (never more than |p|). Requires p in I_2.
StaircaseWitness embed_in_generic(const Permutation& p);

/// A 2-coloring of a permutation's points with its type-change counts: the
/// number of adjacent position pairs with differing colors, and likewise for
/// adjacent values.
struct MergeWitness {
  std::string coloring;  // one of 'L','B' per position
  int changes_by_position = 0;
  int changes_by_value = 0;
  int total() const { return changes_by_position + changes_by_value; }
};

MergeWitness count_type_changes(const Permutation& p, const std::string& coloring);

std::string merge_witness_to_text(const Permutation& p, const MergeWitness& w);

/// Brute-force search over all 2-colorings for one whose L-part avoids every
/// pattern in basis_a, whose B-part avoids every pattern in basis_b, and
/// whose total change count is at most `bound`. Returns a witness of minimum
/// total (ties broken by least coloring string), or nothing. Desk scale:
/// |p| <= 20.
std::optional<MergeWitness> min_type_change_merge(const Permutation& p,
                                                  const std::vector<Permutation>& basis_a,
                                                  const std::vector<Permutation>& basis_b,
                                                  int bound);

/// A pair of staircases jointly partitioning a member of I_2. The lambda
/// staircase starts with everything left of the minimum and climbs
/// right-then-up; the mu staircase starts with everything below the first
/// element and climbs up-then-right (transposed axioms).
struct IntertwinedDecomposition {
  std::vector<std::vector<int>> lambda_blocks;
  std::vector<std::vector<int>> mu_blocks;
};

IntertwinedDecomposition intertwined_decomposition(const Permutation& p);

/// The postcondition contract: disjoint blocks partitioning p, pinned first
/// blocks, standard axioms for lambda, transposed axioms for mu, and the
/// alternation of the two staircases (each later block clears the previous
/// block of the other staircase rightward or upward).
bool check_intertwined(const Permutation& p, const IntertwinedDecomposition& d,
                       std::string* why = nullptr);

/// Result of the staircase-or-merge dichotomy: exactly one member is set.
struct DichotomyResult {
  std::optional<StaircaseWitness> staircase;
  std::optional<MergeWitness> merge;
};

/// ceil((k+2)(b+1)/2), the change bound promised by the merge branch.
int dichotomy_bound(int k, int b);

/// Either a verified embedding of the (k,b)-generic staircase into p, or a
/// merge witness with at most dichotomy_bound(k, b) total type changes whose
/// L-part contains every element preceding the minimum of p and whose B-part
/// contains every element below the first element of p. Follows the label
/// propagation along the lambda staircase of the intertwined decomposition;
/// labels are seeds from the first block, even blocks inherit the largest
/// label of a lower element, odd blocks the largest label of an earlier one.
/// Requires p in I_2.
DichotomyResult staircase_or_merge(const Permutation& p, int k, int b);

}  // namespace av321
