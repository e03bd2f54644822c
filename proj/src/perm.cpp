#include "av321/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace av321 {

namespace {

std::vector<int> validate_and_invert(const std::vector<int>& values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> inverse(n, 0);
  for (int i = 0; i < n; ++i) {
    const int v = values[i];
    if (v < 1 || v > n) {
      throw std::invalid_argument("permutation value " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(n));
    }
    if (inverse[v - 1] != 0) {
      throw std::invalid_argument("value " + std::to_string(v) + " repeated");
    }
    inverse[v - 1] = i + 1;
  }
  for (int v = 1; v <= n; ++v) {
    if (inverse[v - 1] == 0) {
      throw std::invalid_argument("value " + std::to_string(v) + " missing");
    }
  }
  return inverse;
}

}  // namespace

Permutation::Permutation(std::vector<int> values)
    : values_(std::move(values)), inverse_(validate_and_invert(values_)) {}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::decreasing(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

bool Permutation::operator<(const Permutation& o) const {
  if (values_.size() != o.values_.size()) return values_.size() < o.values_.size();
  return values_ < o.values_;
}

Permutation parse_permutation(const std::string& text) {
  const bool has_space = std::any_of(text.begin(), text.end(),
                                     [](unsigned char c) { return std::isspace(c); });
  std::vector<int> values;
  if (has_space) {
    std::istringstream in(text);
    int v;
    while (in >> v) values.push_back(v);
    if (!in.eof()) throw std::invalid_argument("malformed permutation text: " + text);
  } else {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw std::invalid_argument("malformed permutation text: " + text);
      }
      values.push_back(c - '0');
    }
  }
  return Permutation(std::move(values));
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  if (p.size() <= 9) {
    for (int v : p.values()) out += static_cast<char>('0' + v);
  } else {
    for (int i = 0; i < p.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(p.values()[i]);
    }
  }
  return out;
}

Permutation pattern_of(const std::vector<int>& values) {
  const int n = static_cast<int>(values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return values[a] < values[b]; });
  std::vector<int> out(n);
  for (int rank = 0; rank < n; ++rank) out[order[rank]] = rank + 1;
  return Permutation(std::move(out));
}

bool is_embedding(const Permutation& pattern, const Permutation& host,
                  const std::vector<int>& image) {
  const int m = pattern.size();
  if (static_cast<int>(image.size()) != m) return false;
  for (int i = 0; i < m; ++i) {
    if (image[i] < 1 || image[i] > host.size()) return false;
    if (i > 0 && image[i] <= image[i - 1]) return false;
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const bool pat_up = pattern.value_at(i + 1) < pattern.value_at(j + 1);
      const bool host_up = host.value_at(image[i]) < host.value_at(image[j]);
      if (pat_up != host_up) return false;
    }
  }
  return true;
}

namespace {

// Backtracking over host positions in increasing order; emits images in
// lexicographic order. The visitor returns false to stop the search.
bool search_embeddings(const Permutation& pattern, const Permutation& host,
                       std::vector<int>& image,
                       const std::function<bool(const std::vector<int>&)>& visit) {
  const int m = pattern.size();
  const int n = host.size();
  const int i = static_cast<int>(image.size());
  if (i == m) return visit(image);
  const int start = image.empty() ? 1 : image.back() + 1;
  for (int pos = start; pos <= n - (m - i) + 1; ++pos) {
    bool ok = true;
    for (int j = 0; j < i && ok; ++j) {
      const bool pat_up = pattern.value_at(j + 1) < pattern.value_at(i + 1);
      const bool host_up = host.value_at(image[j]) < host.value_at(pos);
      ok = (pat_up == host_up);
    }
    if (!ok) continue;
    image.push_back(pos);
    if (!search_embeddings(pattern, host, image, visit)) {
      image.pop_back();
      return false;
    }
    image.pop_back();
  }
  return true;
}

}  // namespace

std::vector<Embedding> embeddings(const Permutation& pattern, const Permutation& host) {
  std::vector<Embedding> out;
  std::vector<int> image;
  search_embeddings(pattern, host, image, [&](const std::vector<int>& img) {
    out.push_back(Embedding{pattern.size(), img});
    return true;
  });
  return out;
}

std::optional<Embedding> find_embedding(const Permutation& pattern, const Permutation& host) {
  std::optional<Embedding> out;
  std::vector<int> image;
  search_embeddings(pattern, host, image, [&](const std::vector<int>& img) {
    out = Embedding{pattern.size(), img};
    return false;
  });
  return out;
}

bool contains(const Permutation& pattern, const Permutation& host) {
  if (pattern.empty()) return true;
  if (pattern.size() > host.size()) return false;
  // Monotone patterns admit a direct check.
  if (pattern == Permutation::decreasing(pattern.size())) {
    return max_decreasing_length(host) >= pattern.size();
  }
  if (pattern == Permutation::identity(pattern.size())) {
    return max_increasing_length(host) >= pattern.size();
  }
  return find_embedding(pattern, host).has_value();
}

bool avoids(const Permutation& pattern, const Permutation& host) {
  return !contains(pattern, host);
}

namespace {

int longest_monotone(const std::vector<int>& seq, bool decreasing) {
  // Patience: strictly increasing subsequence of the (possibly negated) values.
  std::vector<int> tails;
  for (int v : seq) {
    const int x = decreasing ? -v : v;
    auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end()) {
      tails.push_back(x);
    } else {
      *it = x;
    }
  }
  return static_cast<int>(tails.size());
}

}  // namespace

int max_decreasing_length(const Permutation& p) {
  return longest_monotone(p.values(), /*decreasing=*/true);
}

int max_increasing_length(const Permutation& p) {
  return longest_monotone(p.values(), /*decreasing=*/false);
}

bool in_class_i(const Permutation& p, int k) { return max_decreasing_length(p) <= k; }

Permutation direct_sum(const Permutation& a, const Permutation& b) {
  std::vector<int> v = a.values();
  v.reserve(a.size() + b.size());
  for (int x : b.values()) v.push_back(x + a.size());
  return Permutation(std::move(v));
}

Permutation skew_sum(const Permutation& a, const Permutation& b) {
  std::vector<int> v;
  v.reserve(a.size() + b.size());
  for (int x : a.values()) v.push_back(x + b.size());
  for (int x : b.values()) v.push_back(x);
  return Permutation(std::move(v));
}

Permutation rotate180(const Permutation& p) {
  const int n = p.size();
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = n + 1 - p.values()[n - 1 - i];
  return Permutation(std::move(v));
}

PlusDecomposition plus_decompose(const Permutation& p) {
  PlusDecomposition d;
  d.prefix_runs.push_back(0);
  const int n = p.size();
  int prefix_max = 0;
  int chunk_start = 1;
  for (int i = 1; i <= n; ++i) {
    prefix_max = std::max(prefix_max, p.value_at(i));
    if (prefix_max != i) continue;
    const int len = i - chunk_start + 1;
    if (len == 1) {
      d.prefix_runs.back() += 1;
    } else {
      std::vector<int> vals;
      vals.reserve(len);
      for (int j = chunk_start; j <= i; ++j) vals.push_back(p.value_at(j) - chunk_start + 1);
      d.components.emplace_back(std::move(vals));
      d.prefix_runs.push_back(0);
    }
    chunk_start = i + 1;
  }
  return d;
}

Permutation reassemble(const PlusDecomposition& d) {
  Permutation out;
  for (std::size_t i = 0; i < d.prefix_runs.size(); ++i) {
    out = direct_sum(out, Permutation::identity(d.prefix_runs[i]));
    if (i < d.components.size()) out = direct_sum(out, d.components[i]);
  }
  return out;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& fn) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  do {
    fn(Permutation(v));
  } while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace av321
