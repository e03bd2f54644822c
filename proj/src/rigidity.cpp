#include "av321/rigidity.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace av321 {

RankDecomposition rank_decomposition(const Permutation& p) {
  const int n = p.size();
  RankDecomposition d;
  d.rank_of.assign(n, 0);
  std::vector<int> class_min;  // current minimum per class
  for (int pos = n; pos >= 1; --pos) {
    const int v = p.value_at(pos);
    std::size_t j = 0;
    while (j < class_min.size() && class_min[j] < v) ++j;
    if (j == class_min.size()) class_min.push_back(v);
    class_min[j] = v;
    d.rank_of[pos - 1] = static_cast<int>(j) + 1;
  }
  d.k = static_cast<int>(class_min.size());
  return d;
}

namespace {

// Longest decreasing subsequence starting at each position (downward-right)
// and ending at each position (downward from the left).
void decreasing_spans(const Permutation& p, std::vector<int>& starting,
                      std::vector<int>& ending) {
  const int n = p.size();
  starting.assign(n, 1);
  ending.assign(n, 1);
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) {
      if (p.values()[j] < p.values()[i]) {
        starting[i] = std::max(starting[i], starting[j] + 1);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (p.values()[j] > p.values()[i]) {
        ending[i] = std::max(ending[i], ending[j] + 1);
      }
    }
  }
}

}  // namespace

bool is_k_rigid(const Permutation& p, int k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  if (!in_class_i(p, k)) {
    throw std::invalid_argument("permutation is not in I_" + std::to_string(k));
  }
  if (p.empty()) return true;
  std::vector<int> starting, ending;
  decreasing_spans(p, starting, ending);
  for (int i = 0; i < p.size(); ++i) {
    if (starting[i] + ending[i] - 1 < k) return false;
  }
  return true;
}

Permutation rigid_reduction(const Permutation& p) {
  if (!in_class_i(p, 2)) {
    throw std::invalid_argument("rigid reduction is defined only inside I_2");
  }
  PlusDecomposition d = plus_decompose(p);
  Permutation out;
  for (const Permutation& c : d.components) out = direct_sum(out, c);
  return out;
}

std::vector<int> articulation_points(const Permutation& p) {
  const int n = p.size();
  std::vector<int> out;
  int prefix_max = 0;
  std::vector<int> suffix_min(n + 2, n + 1);
  for (int i = n; i >= 1; --i) {
    suffix_min[i] = std::min(suffix_min[i + 1], p.value_at(i));
  }
  for (int i = 1; i <= n; ++i) {
    const int v = p.value_at(i);
    if (prefix_max < v && suffix_min[i + 1] > v) out.push_back(i);
    prefix_max = std::max(prefix_max, v);
  }
  return out;
}

namespace {

Embedding embedding_bound(const Embedding& f, const Embedding& g,
                          const Permutation& rho, const Permutation& pi, bool take_inf) {
  if (!is_embedding(rho, pi, f.image) || !is_embedding(rho, pi, g.image)) {
    throw std::invalid_argument("arguments are not embeddings of rho in pi");
  }
  const int m = rho.size();
  Embedding out{m, std::vector<int>(m)};
  for (int i = 0; i < m; ++i) {
    const int a = f.image[i];
    const int b = g.image[i];
    if (a != b) {
      const bool up = pi.value_at(a) < pi.value_at(b);
      if ((a < b) != up) {
        throw std::invalid_argument("images of pattern point " + std::to_string(i + 1) +
                                    " form a 21: infimum/supremum undefined");
      }
    }
    out.image[i] = take_inf ? std::min(a, b) : std::max(a, b);
  }
  if (!is_embedding(rho, pi, out.image)) {
    throw std::logic_error("pointwise bound of embeddings failed to embed");
  }
  return out;
}

}  // namespace

Embedding embedding_inf(const Embedding& f, const Embedding& g,
                        const Permutation& rho, const Permutation& pi) {
  return embedding_bound(f, g, rho, pi, /*take_inf=*/true);
}

Embedding embedding_sup(const Embedding& f, const Embedding& g,
                        const Permutation& rho, const Permutation& pi) {
  return embedding_bound(f, g, rho, pi, /*take_inf=*/false);
}

std::optional<Embedding> leftmost_bottommost(const Permutation& rho, const Permutation& pi) {
  if (rho.empty()) return Embedding{0, {}};
  const int k = max_decreasing_length(rho);
  if (!is_k_rigid(rho, k)) {
    throw std::invalid_argument("pattern is not k-rigid for k = " + std::to_string(k));
  }
  if (!in_class_i(pi, k)) {
    throw std::invalid_argument("host is not in I_" + std::to_string(k));
  }
  std::vector<Embedding> all = embeddings(rho, pi);
  if (all.empty()) return std::nullopt;
  Embedding acc = all.front();
  for (std::size_t i = 1; i < all.size(); ++i) {
    acc = embedding_inf(acc, all[i], rho, pi);
  }
  return acc;
}

}  // namespace av321
