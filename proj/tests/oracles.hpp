// Independent reference implementations used only by the test suites. These
// stay deliberately naive (subset enumeration, literal definitions) so they
// cannot share a bug with the library code they check.
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "av321/perm.hpp"

namespace oracle {

using av321::Permutation;

// All embeddings by brute force over position subsets.
inline std::vector<std::vector<int>> naive_embeddings(const Permutation& pattern,
                                                      const Permutation& host) {
  const int m = pattern.size();
  const int n = host.size();
  std::vector<std::vector<int>> out;
  std::vector<int> idx(m);
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth == m) {
      std::vector<int> vals;
      for (int i : idx) vals.push_back(host.value_at(i));
      if (av321::pattern_of(vals) == pattern) out.push_back(idx);
      return;
    }
    for (int pos = start; pos <= n; ++pos) {
      idx[depth] = pos;
      rec(depth + 1, pos + 1);
    }
  };
  rec(0, 1);
  return out;
}

inline bool naive_contains(const Permutation& pattern, const Permutation& host) {
  return !naive_embeddings(pattern, host).empty() || pattern.empty();
}

// Longest decreasing subsequence by full dynamic programming.
inline int naive_max_decreasing(const Permutation& p) {
  const int n = p.size();
  std::vector<int> dp(n, 1);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (p.values()[j] > p.values()[i]) dp[i] = std::max(dp[i], dp[j] + 1);
    }
    best = std::max(best, dp[i]);
  }
  return best;
}

// The defining rank: the largest t such that the point tops a decreasing
// subsequence of length t, found by explicit chain extension.
inline int rank_by_definition(const Permutation& p, int pos) {
  const int n = p.size();
  std::function<int(int)> longest_from = [&](int at) {
    int best = 1;
    for (int next = at + 1; next <= n; ++next) {
      if (p.value_at(next) < p.value_at(at)) best = std::max(best, 1 + longest_from(next));
    }
    return best;
  };
  return longest_from(pos);
}

// Coordinate rotation: map every point (i, v) to (n+1-i, n+1-v).
inline Permutation rotate_by_points(const Permutation& p) {
  const int n = p.size();
  std::vector<std::pair<int, int>> pts;
  for (int i = 1; i <= n; ++i) pts.push_back({n + 1 - i, n + 1 - p.value_at(i)});
  std::sort(pts.begin(), pts.end());
  std::vector<int> vals;
  for (auto& [pos, val] : pts) vals.push_back(val);
  return Permutation(vals);
}

// Every subset of the product grid, filtered by the definition.
inline std::vector<std::set<std::vector<int>>> naive_subdirect(const std::vector<int>& dims) {
  std::vector<std::vector<int>> cells;
  std::vector<int> t(dims.size(), 1);
  for (;;) {
    cells.push_back(t);
    std::size_t i = 0;
    while (i < dims.size() && ++t[i] > dims[i]) t[i++] = 1;
    if (i == dims.size()) break;
  }
  std::vector<std::set<std::vector<int>>> out;
  for (std::size_t mask = 1; mask < (std::size_t(1) << cells.size()); ++mask) {
    std::set<std::vector<int>> sub;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (mask & (std::size_t(1) << c)) sub.insert(cells[c]);
    }
    bool ok = true;
    for (const auto& a : sub) {
      for (const auto& b : sub) {
        std::vector<int> meet(dims.size()), join(dims.size());
        for (std::size_t i = 0; i < dims.size(); ++i) {
          meet[i] = std::min(a[i], b[i]);
          join[i] = std::max(a[i], b[i]);
        }
        if (!sub.count(meet) || !sub.count(join)) ok = false;
      }
    }
    for (std::size_t i = 0; i < dims.size() && ok; ++i) {
      std::set<int> seen;
      for (const auto& e : sub) seen.insert(e[i]);
      if (static_cast<int>(seen.size()) != dims[i]) ok = false;
    }
    if (ok) out.push_back(std::move(sub));
  }
  return out;
}

// Members of Av(basis) of length n by filtering all of S_n.
inline std::vector<Permutation> filter_class(const std::vector<Permutation>& basis, int n) {
  std::vector<Permutation> out;
  av321::for_each_permutation(n, [&](const Permutation& p) {
    for (const Permutation& q : basis) {
      if (naive_contains(q, p)) return;
    }
    out.push_back(p);
  });
  return out;
}

}  // namespace oracle
