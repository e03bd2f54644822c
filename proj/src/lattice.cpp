#include "av321/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

#include "av321/classes.hpp"
#include "av321/rigidity.hpp"

namespace av321 {

namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.size() != 2 && dims.size() != 3) {
    throw std::invalid_argument("only products of 2 or 3 chains are supported");
  }
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("chain lengths must be positive");
  }
}

std::vector<int> points_of_rank(const Permutation& p, const std::vector<int>& rank_of,
                                int rank) {
  std::vector<int> positions;
  for (int pos = 1; pos <= p.size(); ++pos) {
    if (rank_of[pos - 1] == rank) positions.push_back(pos);
  }
  // Each rank class is increasing, so value order equals position order.
  std::sort(positions.begin(), positions.end(),
            [&](int a, int b) { return p.value_at(a) < p.value_at(b); });
  return positions;
}

}  // namespace

bool is_subdirect(const SubdirectProduct& k) {
  const std::size_t d = k.dims.size();
  if (d != 2 && d != 3) return false;
  if (k.elements.empty()) return false;
  std::set<std::vector<int>> cells(k.elements.begin(), k.elements.end());
  for (const auto& e : k.elements) {
    if (e.size() != d) return false;
    for (std::size_t i = 0; i < d; ++i) {
      if (e[i] < 1 || e[i] > k.dims[i]) return false;
    }
  }
  for (const auto& a : k.elements) {
    for (const auto& b : k.elements) {
      std::vector<int> meet(d), join(d);
      for (std::size_t i = 0; i < d; ++i) {
        meet[i] = std::min(a[i], b[i]);
        join[i] = std::max(a[i], b[i]);
      }
      if (!cells.count(meet) || !cells.count(join)) return false;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::set<int> seen;
    for (const auto& e : k.elements) seen.insert(e[i]);
    if (static_cast<int>(seen.size()) != k.dims[i]) return false;
  }
  return true;
}

SubdirectProduct lattice_of_21(const Permutation& p) {
  if (!in_class_i(p, 2)) throw std::invalid_argument("not a member of I_2");
  if (!is_k_rigid(p, 2)) throw std::invalid_argument("not 2-rigid");
  const RankDecomposition d = rank_decomposition(p);
  const std::vector<int> rank2 = points_of_rank(p, d.rank_of, 2);
  const std::vector<int> rank1 = points_of_rank(p, d.rank_of, 1);

  SubdirectProduct k;
  k.dims = {static_cast<int>(rank2.size()), static_cast<int>(rank1.size())};
  for (std::size_t i = 0; i < rank2.size(); ++i) {
    for (std::size_t j = 0; j < rank1.size(); ++j) {
      if (rank2[i] < rank1[j] && p.value_at(rank2[i]) > p.value_at(rank1[j])) {
        k.elements.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1});
      }
    }
  }
  std::sort(k.elements.begin(), k.elements.end());
  return k;
}

std::vector<SubdirectProduct> enumerate_subdirect(const std::vector<int>& dims) {
  check_dims(dims);
  int cells = 1;
  for (int d : dims) cells *= d;
  if (cells > 16) throw std::invalid_argument("product size capped at 16 cells");

  std::vector<std::vector<int>> cell_tuples;
  std::vector<int> tuple(dims.size(), 1);
  for (;;) {
    cell_tuples.push_back(tuple);
    std::size_t i = 0;
    while (i < dims.size() && ++tuple[i] > dims[i]) tuple[i++] = 1;
    if (i == dims.size()) break;
  }

  // Pairwise meet/join cell indices and per-coordinate masks make the subset
  // filter cheap.
  std::vector<std::vector<int>> meet_idx(cells, std::vector<int>(cells));
  std::vector<std::vector<int>> join_idx(cells, std::vector<int>(cells));
  auto index_of = [&](const std::vector<int>& t) {
    int idx = 0, stride = 1;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      idx += (t[i] - 1) * stride;
      stride *= dims[i];
    }
    return idx;
  };
  for (int a = 0; a < cells; ++a) {
    for (int b = 0; b < cells; ++b) {
      std::vector<int> meet(dims.size()), join(dims.size());
      for (std::size_t i = 0; i < dims.size(); ++i) {
        meet[i] = std::min(cell_tuples[a][i], cell_tuples[b][i]);
        join[i] = std::max(cell_tuples[a][i], cell_tuples[b][i]);
      }
      meet_idx[a][b] = index_of(meet);
      join_idx[a][b] = index_of(join);
    }
  }
  std::vector<std::vector<std::uint32_t>> coord_mask(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    coord_mask[i].assign(dims[i], 0);
    for (int c = 0; c < cells; ++c) coord_mask[i][cell_tuples[c][i] - 1] |= 1u << c;
  }

  std::vector<SubdirectProduct> out;
  for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < dims.size() && ok; ++i) {
      for (int v = 0; v < dims[i] && ok; ++v) {
        if (!(mask & coord_mask[i][v])) ok = false;
      }
    }
    for (int a = 0; a < cells && ok; ++a) {
      if (!(mask & (1u << a))) continue;
      for (int b = a + 1; b < cells && ok; ++b) {
        if (!(mask & (1u << b))) continue;
        if (!(mask & (1u << meet_idx[a][b])) || !(mask & (1u << join_idx[a][b]))) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    SubdirectProduct k;
    k.dims = dims;
    for (int c = 0; c < cells; ++c) {
      if (mask & (1u << c)) k.elements.push_back(cell_tuples[c]);
    }
    std::sort(k.elements.begin(), k.elements.end());
    out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_subdirect(const std::vector<int>& dims) {
  return enumerate_subdirect(dims).size();
}

IntervalMap interval_map(const SubdirectProduct& k) {
  if (k.dims.size() != 2) throw std::invalid_argument("interval map needs two chains");
  IntervalMap m;
  m.intervals.assign(k.dims[0], {0, 0});
  for (const auto& e : k.elements) {
    auto& [lo, hi] = m.intervals[e[0] - 1];
    if (lo == 0) {
      lo = hi = e[1];
    } else {
      lo = std::min(lo, e[1]);
      hi = std::max(hi, e[1]);
    }
  }
  return m;
}

bool interval_map_valid(const SubdirectProduct& k, std::string* why) {
  if (k.dims.size() != 2) return false;
  std::vector<std::set<int>> rows(k.dims[0]);
  for (const auto& e : k.elements) rows[e[0] - 1].insert(e[1]);
  int prev_min = 0, prev_max = 0;
  for (int a = 0; a < k.dims[0]; ++a) {
    if (rows[a].empty()) {
      if (why) *why = "row " + std::to_string(a + 1) + " is empty";
      return false;
    }
    const int lo = *rows[a].begin();
    const int hi = *rows[a].rbegin();
    if (static_cast<int>(rows[a].size()) != hi - lo + 1) {
      if (why) *why = "row " + std::to_string(a + 1) + " is not an interval";
      return false;
    }
    if (lo < prev_min || hi < prev_max) {
      if (why) *why = "interval endpoints decrease at row " + std::to_string(a + 1);
      return false;
    }
    prev_min = lo;
    prev_max = hi;
  }
  return true;
}

Permutation pi_of(const SubdirectProduct& k) {
  if (k.dims.size() != 2) throw std::invalid_argument("pi_of needs two chains");
  if (!is_subdirect(k)) throw std::invalid_argument("not a subdirect product");
  const int m = k.dims[0];
  const int n = k.dims[1];
  const IntervalMap dmap = interval_map(k);

  // Position keys: base point j sits at (j, 0); the new point a goes just
  // left of base min D(a), after earlier new points aimed at the same base.
  // Value keys: base value v is (v, 0); the new point a goes just above base
  // max D(a) and above every earlier new point.
  struct Key {
    int major, minor;
  };
  std::vector<std::pair<Key, int>> by_pos, by_val;  // key -> point id (>0 new, <0 base)
  for (int j = 1; j <= n; ++j) by_pos.push_back({{j, m + 1}, -j});
  for (int a = 1; a <= m; ++a) by_pos.push_back({{dmap.intervals[a - 1].first, a}, a});
  for (int v = 1; v <= n; ++v) by_val.push_back({{v, 0}, -v});
  for (int a = 1; a <= m; ++a) by_val.push_back({{dmap.intervals[a - 1].second, a}, a});

  auto cmp = [](const std::pair<Key, int>& x, const std::pair<Key, int>& y) {
    if (x.first.major != y.first.major) return x.first.major < y.first.major;
    return x.first.minor < y.first.minor;
  };
  std::sort(by_pos.begin(), by_pos.end(), cmp);
  std::sort(by_val.begin(), by_val.end(), cmp);

  std::vector<int> value_rank(m + n + 1);
  std::vector<int> one_line;
  auto point_index = [m](int id) { return id < 0 ? m - id : id; };  // bases after news
  for (std::size_t r = 0; r < by_val.size(); ++r) {
    value_rank[point_index(by_val[r].second) - 1] = static_cast<int>(r) + 1;
  }
  for (const auto& [key, id] : by_pos) {
    one_line.push_back(value_rank[point_index(id) - 1]);
  }
  return Permutation(std::move(one_line));
}

bool is_k_good(const Permutation& p, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (p.empty()) return true;
  if (p.size() < 2 * k) return false;
  const Permutation block_pair = skew_sum(Permutation::identity(k), Permutation::identity(k));
  std::vector<bool> covered(p.size(), false);
  int remaining = p.size();
  for (const Embedding& e : embeddings(block_pair, p)) {
    for (int pos : e.image) {
      if (!covered[pos - 1]) {
        covered[pos - 1] = true;
        --remaining;
      }
    }
    if (remaining == 0) return true;
  }
  return remaining == 0;
}

std::uint64_t enumerate_k_good(int k, int ell, int threads) {
  if (k < 1 || ell < 0) throw std::invalid_argument("need k >= 1 and ell >= 0");
  const int n = 2 * k + ell;
  const ClassSpec av321({Permutation::decreasing(3)});
  if (threads <= 1) {
    std::uint64_t count = 0;
    visit_class_members(av321, n, [&](const Permutation& p) {
      if (p.size() == n && is_k_good(p, k)) ++count;
    });
    return count;
  }
  const int frontier_depth = std::min(n, 7);
  std::vector<Permutation> frontier;
  std::uint64_t count = 0;
  visit_class_members(av321, frontier_depth, [&](const Permutation& p) {
    if (p.size() == frontier_depth) frontier.push_back(p);
    if (p.size() == n && is_k_good(p, k)) ++count;  // only when n <= depth
  });
  if (frontier_depth >= n) return count;

  std::atomic<std::size_t> next{0};
  std::vector<std::uint64_t> partial(threads, 0);
  auto worker = [&](int tid) {
    const ClassSpec spec({Permutation::decreasing(3)});
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= frontier.size()) break;
      // Re-run the insertion tree from this frontier member.
      std::function<void(const Permutation&)> dfs = [&](const Permutation& cur) {
        if (cur.size() == n) {
          if (is_k_good(cur, k)) ++partial[tid];
          return;
        }
        for (int gap = 0; gap <= cur.size(); ++gap) {
          std::vector<int> child(cur.values());
          child.insert(child.begin() + gap, cur.size() + 1);
          Permutation q{child};
          if (spec.member(q)) dfs(q);
        }
      };
      dfs(frontier[i]);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (auto& t : pool) t.join();
  for (std::uint64_t c : partial) count += c;
  return count;
}

SubdirectProduct triple_incidence(const Permutation& p) {
  if (!in_class_i(p, 3)) throw std::invalid_argument("not a member of I_3");
  if (!is_k_rigid(p, 3)) throw std::invalid_argument("not 3-rigid");
  const RankDecomposition d = rank_decomposition(p);
  const std::vector<int> r3 = points_of_rank(p, d.rank_of, 3);
  const std::vector<int> r2 = points_of_rank(p, d.rank_of, 2);
  const std::vector<int> r1 = points_of_rank(p, d.rank_of, 1);

  SubdirectProduct k;
  k.dims = {static_cast<int>(r3.size()), static_cast<int>(r2.size()),
            static_cast<int>(r1.size())};
  for (std::size_t i = 0; i < r3.size(); ++i) {
    for (std::size_t j = 0; j < r2.size(); ++j) {
      for (std::size_t l = 0; l < r1.size(); ++l) {
        const int a = r3[i], b = r2[j], c = r1[l];
        if (a < b && b < c && p.value_at(a) > p.value_at(b) &&
            p.value_at(b) > p.value_at(c)) {
          k.elements.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1,
                                static_cast<int>(l) + 1});
        }
      }
    }
  }
  std::sort(k.elements.begin(), k.elements.end());
  return k;
}

std::string render_grid(const SubdirectProduct& k) {
  if (k.dims.size() != 2) throw std::invalid_argument("grid rendering needs two chains");
  std::set<std::pair<int, int>> cells;
  for (const auto& e : k.elements) cells.insert({e[0], e[1]});
  std::string out;
  for (int i = k.dims[0]; i >= 1; --i) {
    for (int j = 1; j <= k.dims[1]; ++j) {
      out += cells.count({i, j}) ? '#' : '.';
    }
    out += '\n';
  }
  return out;
}

}  // namespace av321
