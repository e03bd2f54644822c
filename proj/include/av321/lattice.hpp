#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "av321/perm.hpp"

namespace av321 {

/// A meet/join-closed subset of a product of two or three chains whose
/// coordinate projections are all surjective. Elements are 1-based tuples,
/// kept sorted for deterministic identity.
struct SubdirectProduct {
  std::vector<int> dims;
  std::vector<std::vector<int>> elements;

  bool operator==(const SubdirectProduct& o) const {
    return dims == o.dims && elements == o.elements;
  }
  bool operator<(const SubdirectProduct& o) const {
    if (dims != o.dims) return dims < o.dims;
    return elements < o.elements;
  }
};

bool is_subdirect(const SubdirectProduct& k);

/// The lattice of 21-copies in a 2-rigid member of I_2: with rank-2 points
/// indexed 1..m and rank-1 points 1..n by increasing value, (i,j) is present
/// exactly when the i-th rank-2 point precedes and exceeds the j-th rank-1
/// point. Requires a 2-rigid member of I_2.
SubdirectProduct lattice_of_21(const Permutation& p);

/// Every subdirect product of the given chains, deduplicated, in a fixed
/// deterministic order. Product size is capped at 16 cells.
std::vector<SubdirectProduct> enumerate_subdirect(const std::vector<int>& dims);
std::uint64_t count_subdirect(const std::vector<int>& dims);

/// The inverse construction: start from an increasing sequence of length n
/// and, for a = 1..m, insert a new point just left of min D(a), just above
/// max D(a) and above all previously inserted points. Two chains only;
/// requires is_subdirect.
Permutation pi_of(const SubdirectProduct& k);

/// Per row a, the interval D(a) = {p : (a,p) in K} of a two-chain product.
struct IntervalMap {
  std::vector<std::pair<int, int>> intervals;  // [min, max] per a = 1..m
};

IntervalMap interval_map(const SubdirectProduct& k);

/// Non-empty intervals with weakly increasing endpoints.
bool interval_map_valid(const SubdirectProduct& k, std::string* why = nullptr);

/// Every point lies in a copy of an increasing k-run placed entirely above
/// and left of another increasing k-run. 1-good coincides with 2-rigid.
bool is_k_good(const Permutation& p, int k);

/// Number of k-good permutations of length 2k + ell, by exhaustive filter
/// over Av(321).
std::uint64_t enumerate_k_good(int k, int ell, int threads = 1);

/// The rank-indexed incidence structure of descending triples in a 3-rigid
/// member of I_3 with points of each rank indexed by increasing value.
/// The analogue of lattice_of_21 one level up; unlike it, not injective.
SubdirectProduct triple_incidence(const Permutation& p);

/// Text grid with rows = rank-2 index (top row = m), columns = rank-1 index.
std::string render_grid(const SubdirectProduct& k);

}  // namespace av321
