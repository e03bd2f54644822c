#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace av321 {

/// A permutation of {1..n} in one-line notation. Values are immutable after
/// construction; the empty permutation (n = 0) is allowed and acts as the
/// identity for direct sums.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);    // 1 2 ... n
  static Permutation decreasing(int n);  // n ... 2 1

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }

  /// One-based access: value at a position, position of a value.
  int value_at(int pos) const { return values_[pos - 1]; }
  int position_of(int value) const { return inverse_[value - 1]; }

  const std::vector<int>& values() const { return values_; }

  bool operator==(const Permutation& o) const { return values_ == o.values_; }
  bool operator!=(const Permutation& o) const { return values_ != o.values_; }
  /// Orders by length, then lexicographically. Gives every container a
  /// deterministic iteration order.
  bool operator<(const Permutation& o) const;

 private:
  std::vector<int> values_;
  std::vector<int> inverse_;
};

/// Accepts a compact digit string ("2413", only for n <= 9) or
/// whitespace-separated integers ("10 1 2 3 4 5 6 7 8 9").
/// Rejects non-bijective input, naming the duplicated or missing value.
Permutation parse_permutation(const std::string& text);

/// Compact form for n <= 9, whitespace-separated otherwise. The empty
/// permutation formats as "" and parses back from it.
std::string format_permutation(const Permutation& p);

/// The permutation order-isomorphic to an arbitrary sequence of distinct
/// integers (its pattern).
Permutation pattern_of(const std::vector<int>& values);

/// An embedding of a pattern in a host, recorded as the strictly increasing
/// sequence of host positions taken by the pattern's points.
struct Embedding {
  int pattern_length = 0;
  std::vector<int> image;

  bool operator==(const Embedding& o) const {
    return pattern_length == o.pattern_length && image == o.image;
  }
};

/// Checks that `image` realizes `pattern` inside `host`: positions strictly
/// increase and host values are order-isomorphic to the pattern.
bool is_embedding(const Permutation& pattern, const Permutation& host,
                  const std::vector<int>& image);

/// All embeddings of `pattern` in `host`, in lexicographic order of image.
/// The empty pattern yields exactly one empty embedding.
std::vector<Embedding> embeddings(const Permutation& pattern, const Permutation& host);

/// The lexicographically least embedding, if any. Short-circuits.
std::optional<Embedding> find_embedding(const Permutation& pattern, const Permutation& host);

bool contains(const Permutation& pattern, const Permutation& host);
bool avoids(const Permutation& pattern, const Permutation& host);

/// Length of the longest strictly decreasing subsequence; 0 for the empty
/// permutation. A permutation lies in I_k exactly when this is <= k.
int max_decreasing_length(const Permutation& p);
int max_increasing_length(const Permutation& p);

bool in_class_i(const Permutation& p, int k);  // p in I_k

Permutation direct_sum(const Permutation& a, const Permutation& b);
Permutation skew_sum(const Permutation& a, const Permutation& b);

/// Reverse-complement, i.e. a 180-degree rotation of the plot. An involution.
Permutation rotate180(const Permutation& p);

/// The canonical decomposition  1^{m0} + r1 + 1^{m1} + ... + rc + 1^{mc}
/// into plus-indecomposable components of length >= 2 separated by runs of
/// singletons. Defined for every permutation.
struct PlusDecomposition {
  std::vector<int> prefix_runs;          // m_0 .. m_c
  std::vector<Permutation> components;   // r_1 .. r_c, each plus indecomposable
};

PlusDecomposition plus_decompose(const Permutation& p);
Permutation reassemble(const PlusDecomposition& d);

/// Visits every permutation of S_n in lexicographic order.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn);

}  // namespace av321
