#include "av321/staircase.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace av321 {

namespace {

std::string block_to_string(const std::vector<int>& block) {
  std::string s = "{";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(block[i]);
  }
  return s + "}";
}

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

struct Box {
  int min_pos = 0, max_pos = 0, min_val = 0, max_val = 0;
  bool empty = true;
};

Box box_of(const Permutation& p, const std::vector<int>& block) {
  Box b;
  for (int pos : block) {
    const int v = p.value_at(pos);
    if (b.empty) {
      b = Box{pos, pos, v, v, false};
    } else {
      b.min_pos = std::min(b.min_pos, pos);
      b.max_pos = std::max(b.max_pos, pos);
      b.min_val = std::min(b.min_val, v);
      b.max_val = std::max(b.max_val, v);
    }
  }
  return b;
}

bool block_increasing(const Permutation& p, const std::vector<int>& block) {
  for (std::size_t i = 0; i + 1 < block.size(); ++i) {
    if (block[i] >= block[i + 1]) return false;
    if (p.value_at(block[i]) >= p.value_at(block[i + 1])) return false;
  }
  return true;
}

bool entirely_right(const Box& a, const Box& b) {  // a right of b
  return a.empty || b.empty || a.min_pos > b.max_pos;
}
bool entirely_above(const Box& a, const Box& b) {  // a above b
  return a.empty || b.empty || a.min_val > b.max_val;
}

}  // namespace

StaircaseDecomposition staircase_decomposition(const Permutation& p) {
  if (!in_class_i(p, 2)) {
    throw std::invalid_argument("staircase decomposition requires a member of I_2");
  }
  StaircaseDecomposition d;
  std::vector<int> remaining(p.size());
  std::iota(remaining.begin(), remaining.end(), 1);
  bool by_position = true;
  while (!remaining.empty()) {
    std::vector<int> order = remaining;
    if (!by_position) {
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return p.value_at(a) < p.value_at(b); });
    }
    std::vector<int> block;
    for (int pos : order) {
      if (!block.empty()) {
        const bool ok = by_position ? p.value_at(pos) > p.value_at(block.back())
                                    : pos > block.back();
        if (!ok) break;
      }
      block.push_back(pos);
    }
    std::sort(block.begin(), block.end());
    for (int pos : block) {
      remaining.erase(std::find(remaining.begin(), remaining.end(), pos));
    }
    d.blocks.push_back(std::move(block));
    by_position = !by_position;
  }
  return d;
}

bool check_staircase_axioms(const Permutation& p,
                            const std::vector<std::vector<int>>& blocks,
                            bool transposed, std::string* why) {
  std::vector<Box> boxes;
  boxes.reserve(blocks.size());
  for (const auto& b : blocks) {
    if (!block_increasing(p, b)) {
      return fail(why, "block " + block_to_string(b) + " is not increasing");
    }
    boxes.push_back(box_of(p, b));
  }
  for (std::size_t i = 1; i < boxes.size(); ++i) {
    const bool even_index = (i + 1) % 2 == 0;
    const bool want_right = transposed ? !even_index : even_index;
    const bool ok = want_right ? entirely_right(boxes[i], boxes[i - 1])
                               : entirely_above(boxes[i], boxes[i - 1]);
    if (!ok) {
      return fail(why, "block " + std::to_string(i + 1) + " is not " +
                           (want_right ? "right of" : "above") + " block " +
                           std::to_string(i));
    }
    for (std::size_t j = 0; j + 2 <= i; ++j) {
      if (!entirely_right(boxes[i], boxes[j]) || !entirely_above(boxes[i], boxes[j])) {
        return fail(why, "block " + std::to_string(i + 1) +
                             " is not above and right of block " + std::to_string(j + 1));
      }
    }
  }
  return true;
}

bool is_staircase_decomposition_of(const Permutation& p,
                                   const std::vector<std::vector<int>>& blocks,
                                   std::string* why) {
  std::vector<bool> seen(p.size() + 1, false);
  int count = 0;
  for (const auto& b : blocks) {
    for (int pos : b) {
      if (pos < 1 || pos > p.size() || seen[pos]) {
        return fail(why, "blocks do not partition the permutation");
      }
      seen[pos] = true;
      ++count;
    }
  }
  if (count != p.size()) return fail(why, "blocks do not cover the permutation");
  return check_staircase_axioms(p, blocks, /*transposed=*/false, why);
}

GenericStaircase generic_staircase_with_blocks(int k, int b) {
  if (k < 1 || b < 1) throw std::invalid_argument("generic staircase needs k, b >= 1");
  const int n = k * b;
  auto id = [b](int block, int t) { return (block - 1) * b + (t - 1); };

  std::vector<int> pos_order, val_order;
  pos_order.reserve(n);
  val_order.reserve(n);
  for (int t = 1; t <= b; ++t) pos_order.push_back(id(1, t));
  for (int i = 2; i <= k; i += 2) {
    if (i + 1 <= k) {
      for (int t = 1; t <= b; ++t) {
        pos_order.push_back(id(i + 1, t));
        pos_order.push_back(id(i, t));
      }
    } else {
      for (int t = 1; t <= b; ++t) pos_order.push_back(id(i, t));
    }
  }
  for (int i = 1; i <= k; i += 2) {
    if (i + 1 <= k) {
      for (int t = 1; t <= b; ++t) {
        val_order.push_back(id(i + 1, t));
        val_order.push_back(id(i, t));
      }
    } else {
      for (int t = 1; t <= b; ++t) val_order.push_back(id(i, t));
    }
  }

  std::vector<int> val_of(n), pos_of(n);
  for (int r = 0; r < n; ++r) val_of[val_order[r]] = r + 1;
  for (int r = 0; r < n; ++r) pos_of[pos_order[r]] = r + 1;

  std::vector<int> one_line(n);
  for (int e = 0; e < n; ++e) one_line[pos_of[e] - 1] = val_of[e];

  GenericStaircase g;
  g.perm = Permutation(std::move(one_line));
  g.blocks.assign(k, {});
  for (int i = 1; i <= k; ++i) {
    for (int t = 1; t <= b; ++t) g.blocks[i - 1].push_back(pos_of[id(i, t)]);
    std::sort(g.blocks[i - 1].begin(), g.blocks[i - 1].end());
  }
  return g;
}

Permutation generic_staircase(int k, int b) {
  return generic_staircase_with_blocks(k, b).perm;
}

StaircaseWitness embed_in_generic(const Permutation& p) {
  if (p.empty()) return StaircaseWitness{0, 0, Embedding{0, {}}};
  StaircaseDecomposition d = staircase_decomposition(p);
  const int k = static_cast<int>(d.blocks.size());
  const int n = p.size();

  // block index (0-based) and element index within block, per position
  std::vector<int> block_of(n + 1), elem_of(n + 1);
  for (int i = 0; i < k; ++i) {
    for (std::size_t t = 0; t < d.blocks[i].size(); ++t) {
      block_of[d.blocks[i][t]] = i;
      elem_of[d.blocks[i][t]] = static_cast<int>(t);
    }
  }

  // Difference constraints slot[v] >= slot[u] + w between the points of
  // interleaving block pairs; the minimal fixpoint gives the smallest block
  // size of a generic staircase hosting p.
  struct EdgeT {
    int u, v, w;
  };
  std::vector<EdgeT> edges;
  for (int i = 0; i < k; ++i) {
    for (std::size_t t = 0; t + 1 < d.blocks[i].size(); ++t) {
      edges.push_back({d.blocks[i][t], d.blocks[i][t + 1], 1});
    }
  }
  for (int i = 0; i + 1 < k; ++i) {
    const bool value_pair = (i % 2 == 0);  // blocks (2j-1, 2j) interleave by value
    for (int x : d.blocks[i]) {
      for (int y : d.blocks[i + 1]) {
        const bool y_after = value_pair ? p.value_at(y) > p.value_at(x) : y > x;
        if (y_after) {
          edges.push_back({x, y, 1});
        } else {
          edges.push_back({y, x, 0});
        }
      }
    }
  }

  std::vector<int> slot(n + 1, 1);
  bool changed = true;
  int rounds = 0;
  while (changed) {
    if (++rounds > n + 2) throw std::logic_error("slot constraints failed to converge");
    changed = false;
    for (const auto& e : edges) {
      if (slot[e.v] < slot[e.u] + e.w) {
        slot[e.v] = slot[e.u] + e.w;
        changed = true;
      }
    }
  }

  int b = 1;
  for (int pos = 1; pos <= n; ++pos) b = std::max(b, slot[pos]);

  GenericStaircase g = generic_staircase_with_blocks(k, b);
  std::vector<int> image(n);
  for (int pos = 1; pos <= n; ++pos) {
    image[pos - 1] = g.blocks[block_of[pos]][slot[pos] - 1];
  }
  if (!is_embedding(p, g.perm, image)) {
    throw std::logic_error("constructed generic staircase embedding is invalid");
  }
  return StaircaseWitness{k, b, Embedding{n, std::move(image)}};
}

MergeWitness count_type_changes(const Permutation& p, const std::string& coloring) {
  const int n = p.size();
  if (static_cast<int>(coloring.size()) != n) {
    throw std::invalid_argument("coloring length differs from permutation length");
  }
  for (char c : coloring) {
    if (c != 'L' && c != 'B') throw std::invalid_argument("coloring must be over {L,B}");
  }
  MergeWitness w;
  w.coloring = coloring;
  for (int i = 0; i + 1 < n; ++i) {
    if (coloring[i] != coloring[i + 1]) ++w.changes_by_position;
  }
  for (int r = 1; r < n; ++r) {
    if (coloring[p.position_of(r) - 1] != coloring[p.position_of(r + 1) - 1]) {
      ++w.changes_by_value;
    }
  }
  return w;
}

std::string merge_witness_to_text(const Permutation& p, const MergeWitness& w) {
  std::string out = format_permutation(p);
  out += "\n";
  out += w.coloring;
  out += "\nposition=" + std::to_string(w.changes_by_position) +
         " value=" + std::to_string(w.changes_by_value) +
         " total=" + std::to_string(w.total()) + "\n";
  return out;
}

namespace {

bool part_avoids(const Permutation& p, std::uint32_t mask,
                 const std::vector<Permutation>& basis) {
  std::vector<int> vals;
  for (int i = 0; i < p.size(); ++i) {
    if (mask & (1u << i)) vals.push_back(p.values()[i]);
  }
  const Permutation sub = pattern_of(vals);
  for (const Permutation& q : basis) {
    if (contains(q, sub)) return false;
  }
  return true;
}

}  // namespace

std::optional<MergeWitness> min_type_change_merge(const Permutation& p,
                                                  const std::vector<Permutation>& basis_a,
                                                  const std::vector<Permutation>& basis_b,
                                                  int bound) {
  const int n = p.size();
  if (n > 18) throw std::invalid_argument("min_type_change_merge is a desk-scale search (n <= 18)");
  // memo: 0 unknown, 1 avoids, 2 contains
  std::vector<std::uint8_t> memo_a(std::size_t(1) << n, 0), memo_b(std::size_t(1) << n, 0);
  auto avoids_part = [&](std::vector<std::uint8_t>& memo, const std::vector<Permutation>& basis,
                         std::uint32_t mask) {
    if (!memo[mask]) memo[mask] = part_avoids(p, mask, basis) ? 1 : 2;
    return memo[mask] == 1;
  };

  std::optional<MergeWitness> best;
  const std::uint32_t full = n == 0 ? 0u : ((1u << n) - 1u);
  for (std::uint32_t mask = 0;; ++mask) {  // bit set => 'B'
    std::string coloring(n, 'L');
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) coloring[i] = 'B';
    }
    MergeWitness w = count_type_changes(p, coloring);
    if (w.total() <= bound) {
      const std::uint32_t a_mask = full & ~mask;
      if (avoids_part(memo_a, basis_a, a_mask) && avoids_part(memo_b, basis_b, mask)) {
        if (!best || w.total() < best->total() ||
            (w.total() == best->total() && w.coloring < best->coloring)) {
          best = w;
        }
      }
    }
    if (mask == full) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Intertwined staircases
// ---------------------------------------------------------------------------

namespace {

struct Point {
  int pos;
  int val;
};

struct BuildState {
  const Permutation* p = nullptr;
  std::vector<std::vector<int>> lambda, mu;
  std::vector<Box> lambda_boxes, mu_boxes;
  long nodes = 0;
};

// Axiom and alternation checks for appending `block` as the next block of one
// staircase, given the other staircase's previous block.
bool can_append(const Permutation& p, const std::vector<Box>& own, bool transposed,
                const Box& other_prev, const std::vector<int>& block) {
  if (block.empty()) return true;
  const Box nb = box_of(p, block);
  const std::size_t i = own.size();  // 0-based index the block will take
  if (i >= 1) {
    const bool even_index = (i + 1) % 2 == 0;
    const bool want_right = transposed ? !even_index : even_index;
    const bool ok = want_right ? entirely_right(nb, own[i - 1])
                               : entirely_above(nb, own[i - 1]);
    if (!ok) return false;
  }
  for (std::size_t j = 0; j + 2 <= i; ++j) {
    if (!entirely_right(nb, own[j]) || !entirely_above(nb, own[j])) return false;
  }
  // Alternation against the other staircase's previous block.
  if (!entirely_right(nb, other_prev) && !entirely_above(nb, other_prev)) return false;
  return true;
}

std::vector<Point> before_min(const std::vector<Point>& r) {
  int min_pos = 0, min_val = 0;
  for (const Point& q : r) {
    if (min_val == 0 || q.val < min_val) {
      min_val = q.val;
      min_pos = q.pos;
    }
  }
  std::vector<Point> out;
  for (const Point& q : r) {
    if (q.pos < min_pos) out.push_back(q);
  }
  return out;
}

std::vector<Point> below_first(const std::vector<Point>& r) {
  std::vector<Point> out;
  if (r.empty()) return out;
  const int first_val = r.front().val;  // r kept sorted by position
  for (const Point& q : r) {
    if (q.val < first_val) out.push_back(q);
  }
  return out;
}

std::vector<Point> position_run(const std::vector<Point>& r) {
  std::vector<Point> out;
  for (const Point& q : r) {
    if (!out.empty() && q.val < out.back().val) break;
    out.push_back(q);
  }
  return out;
}

std::vector<Point> value_run(const std::vector<Point>& r) {
  std::vector<Point> sorted = r;
  std::sort(sorted.begin(), sorted.end(),
            [](const Point& a, const Point& b) { return a.val < b.val; });
  std::vector<Point> out;
  for (const Point& q : sorted) {
    if (!out.empty() && q.pos < out.back().pos) break;
    out.push_back(q);
  }
  std::sort(out.begin(), out.end(),
            [](const Point& a, const Point& b) { return a.pos < b.pos; });
  return out;
}

std::vector<int> positions_of(const std::vector<Point>& pts) {
  std::vector<int> out;
  out.reserve(pts.size());
  for (const Point& q : pts) out.push_back(q.pos);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> remove_points(const std::vector<Point>& r, const std::vector<Point>& a,
                                 const std::vector<Point>& b) {
  std::set<int> gone;
  for (const Point& q : a) gone.insert(q.pos);
  for (const Point& q : b) gone.insert(q.pos);
  std::vector<Point> out;
  for (const Point& q : r) {
    if (!gone.count(q.pos)) out.push_back(q);
  }
  return out;
}

constexpr long kMaxNodes = 200000;

bool build_rounds(BuildState& st, std::vector<Point> r, int round) {
  if (++st.nodes > kMaxNodes) return false;
  if (r.empty()) return true;

  const Box lam_prev = st.lambda_boxes.empty() ? Box{} : st.lambda_boxes.back();
  const Box mu_prev = st.mu_boxes.empty() ? Box{} : st.mu_boxes.back();

  auto try_choice = [&](const std::vector<Point>& to_lambda,
                        const std::vector<Point>& to_mu) {
    const std::vector<int> lb = positions_of(to_lambda);
    const std::vector<int> mb = positions_of(to_mu);
    if (!can_append(*st.p, st.lambda_boxes, false, mu_prev, lb)) return false;
    if (!can_append(*st.p, st.mu_boxes, true, lam_prev, mb)) return false;
    st.lambda.push_back(lb);
    st.lambda_boxes.push_back(box_of(*st.p, lb));
    st.mu.push_back(mb);
    st.mu_boxes.push_back(box_of(*st.p, mb));
    if (build_rounds(st, remove_points(r, to_lambda, to_mu), round + 1)) return true;
    st.lambda.pop_back();
    st.lambda_boxes.pop_back();
    st.mu.pop_back();
    st.mu_boxes.pop_back();
    return false;
  };

  const std::vector<Point> a = before_min(r);
  const std::vector<Point> b = below_first(r);
  if (!a.empty() || !b.empty()) {
    const bool odd_round = (round % 2 == 1);
    if (odd_round) {
      return try_choice(a, b) || try_choice(b, a);
    }
    return try_choice(b, a) || try_choice(a, b);
  }

  // Corner: the remainder begins with its minimum. Peel an increasing run
  // (by position or by value) or the single corner point, to either side.
  const std::vector<Point> prun = position_run(r);
  const std::vector<Point> vrun = value_run(r);
  const std::vector<Point> single = {r.front()};
  const std::vector<Point> none;
  if (try_choice(prun, none) || try_choice(none, prun)) return true;
  if (vrun.size() != prun.size()) {
    if (try_choice(vrun, none) || try_choice(none, vrun)) return true;
  }
  if (prun.size() > 1) {
    if (try_choice(single, none) || try_choice(none, single)) return true;
  }
  return false;
}

}  // namespace

IntertwinedDecomposition intertwined_decomposition(const Permutation& p) {
  if (!in_class_i(p, 2)) {
    throw std::invalid_argument("intertwined decomposition requires a member of I_2");
  }
  IntertwinedDecomposition d;
  std::vector<Point> pts;
  pts.reserve(p.size());
  for (int pos = 1; pos <= p.size(); ++pos) pts.push_back(Point{pos, p.value_at(pos)});

  BuildState st;
  st.p = &p;
  const std::vector<Point> lam1 = before_min(pts);
  const std::vector<Point> mu1 = below_first(pts);
  st.lambda.push_back(positions_of(lam1));
  st.lambda_boxes.push_back(box_of(p, st.lambda.back()));
  st.mu.push_back(positions_of(mu1));
  st.mu_boxes.push_back(box_of(p, st.mu.back()));

  if (!build_rounds(st, remove_points(pts, lam1, mu1), 2)) {
    throw std::logic_error("no intertwined staircase realization found for " +
                           format_permutation(p));
  }
  while (st.lambda.size() > 1 && st.lambda.back().empty()) st.lambda.pop_back();
  while (st.mu.size() > 1 && st.mu.back().empty()) st.mu.pop_back();
  d.lambda_blocks = std::move(st.lambda);
  d.mu_blocks = std::move(st.mu);

  std::string why;
  if (!check_intertwined(p, d, &why)) {
    throw std::logic_error("intertwined decomposition postcondition failed: " + why);
  }
  return d;
}

bool check_intertwined(const Permutation& p, const IntertwinedDecomposition& d,
                       std::string* why) {
  if (d.lambda_blocks.empty() || d.mu_blocks.empty()) {
    return fail(why, "both staircases need at least their first block");
  }
  std::vector<bool> seen(p.size() + 1, false);
  int count = 0;
  for (const auto* list : {&d.lambda_blocks, &d.mu_blocks}) {
    for (const auto& b : *list) {
      for (int pos : b) {
        if (pos < 1 || pos > p.size() || seen[pos]) {
          return fail(why, "blocks are not disjoint over the permutation");
        }
        seen[pos] = true;
        ++count;
      }
    }
  }
  if (count != p.size()) return fail(why, "blocks do not cover the permutation");

  // Pinned first blocks.
  std::vector<int> expected_lambda, expected_mu;
  if (!p.empty()) {
    const int min_pos = p.position_of(1);
    for (int pos = 1; pos < min_pos; ++pos) expected_lambda.push_back(pos);
    const int first_val = p.value_at(1);
    for (int pos = 2; pos <= p.size(); ++pos) {
      if (p.value_at(pos) < first_val) expected_mu.push_back(pos);
    }
  }
  if (d.lambda_blocks.front() != expected_lambda) {
    return fail(why, "lambda_1 must be exactly the points preceding the minimum");
  }
  if (d.mu_blocks.front() != expected_mu) {
    return fail(why, "mu_1 must be exactly the points below the first element");
  }

  if (!check_staircase_axioms(p, d.lambda_blocks, /*transposed=*/false, why)) return false;
  if (!check_staircase_axioms(p, d.mu_blocks, /*transposed=*/true, why)) return false;

  // Alternation: each block clears the other staircase's previous block.
  auto alternation_ok = [&](const std::vector<std::vector<int>>& later,
                            const std::vector<std::vector<int>>& earlier) {
    for (std::size_t i = 1; i < later.size(); ++i) {
      if (i - 1 >= earlier.size()) break;
      const Box nb = box_of(p, later[i]);
      const Box ob = box_of(p, earlier[i - 1]);
      if (!entirely_right(nb, ob) && !entirely_above(nb, ob)) return false;
    }
    return true;
  };
  if (!alternation_ok(d.lambda_blocks, d.mu_blocks)) {
    return fail(why, "a lambda block fails to clear the previous mu block");
  }
  if (!alternation_ok(d.mu_blocks, d.lambda_blocks)) {
    return fail(why, "a mu block fails to clear the previous lambda block");
  }
  return true;
}

// ---------------------------------------------------------------------------
// Staircase-or-merge dichotomy
// ---------------------------------------------------------------------------

int dichotomy_bound(int k, int b) { return ((k + 2) * (b + 1) + 1) / 2; }

DichotomyResult staircase_or_merge(const Permutation& p, int k, int b) {
  if (k < 1 || b < 1) throw std::invalid_argument("dichotomy needs k, b >= 1");
  if (!in_class_i(p, 2)) {
    throw std::invalid_argument("staircase_or_merge requires a member of I_2");
  }
  const int bound = dichotomy_bound(k, b);
  const IntertwinedDecomposition d = intertwined_decomposition(p);
  const auto& blocks = d.lambda_blocks;

  // Label propagation along the lambda staircase. Label 0 means unlabeled.
  std::vector<std::map<int, int>> label;  // per block: position -> label
  label.resize(blocks.size());
  if (!blocks.empty()) {
    for (int pos : blocks[0]) label[0][pos] = p.value_at(pos);
  }
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const bool even_index = (i + 1) % 2 == 0;
    for (int pos : blocks[i]) {
      int best = 0;
      for (const auto& [prev_pos, prev_label] : label[i - 1]) {
        if (prev_label == 0) continue;
        const bool qualifies = even_index ? p.value_at(prev_pos) < p.value_at(pos)
                                          : prev_pos < pos;
        if (qualifies) best = std::max(best, prev_label);
      }
      if (best > 0) label[i][pos] = best;
    }
  }

  // Extraction: b labels surviving to the k-th block pick out a staircase.
  if (static_cast<int>(blocks.size()) >= k) {
    std::set<int> surviving;
    for (const auto& [pos, lab] : label[k - 1]) surviving.insert(lab);
    if (static_cast<int>(surviving.size()) >= b) {
      std::vector<int> chosen(surviving.begin(), surviving.end());
      chosen.resize(b);
      std::vector<int> image;
      for (int i = 0; i < k; ++i) {
        for (int lab : chosen) {
          for (int pos : blocks[i]) {  // blocks sorted: first carrier wins
            auto it = label[i].find(pos);
            if (it != label[i].end() && it->second == lab) {
              image.push_back(pos);
              break;
            }
          }
        }
      }
      std::sort(image.begin(), image.end());
      const Permutation g = generic_staircase(k, b);
      if (static_cast<int>(image.size()) == k * b && is_embedding(g, p, image)) {
        return DichotomyResult{StaircaseWitness{k, b, Embedding{k * b, image}}, {}};
      }
    }
  }

  // The labeling can miss an embedded staircase; a direct search keeps the
  // dichotomy complete.
  const Permutation g = generic_staircase(k, b);
  if (auto e = find_embedding(g, p)) {
    return DichotomyResult{StaircaseWitness{k, b, *e}, {}};
  }

  // Merge branch: the first block plus everything labeled by the complement
  // of the surviving label set goes to the L side.
  std::set<int> surviving;
  if (static_cast<int>(blocks.size()) >= k) {
    for (const auto& [pos, lab] : label[k - 1]) surviving.insert(lab);
  }
  std::string coloring(p.size(), 'B');
  if (!blocks.empty()) {
    for (int pos : blocks[0]) coloring[pos - 1] = 'L';
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (const auto& [pos, lab] : label[i]) {
        if (lab > 0 && !surviving.count(lab)) coloring[pos - 1] = 'L';
      }
    }
  }
  MergeWitness w = count_type_changes(p, coloring);
  if (w.total() <= bound) return DichotomyResult{{}, w};

  // Safety net: search for any bounded coloring with the pinned sides.
  if (p.size() <= 18) {
    const int n = p.size();
    std::vector<int> free_positions;
    std::string base(n, '?');
    for (int pos : d.lambda_blocks.front()) base[pos - 1] = 'L';
    for (int pos : d.mu_blocks.front()) base[pos - 1] = 'B';
    for (int i = 0; i < n; ++i) {
      if (base[i] == '?') free_positions.push_back(i);
    }
    std::optional<MergeWitness> best;
    for (std::uint32_t mask = 0; mask < (1u << free_positions.size()); ++mask) {
      std::string coloring2 = base;
      for (std::size_t j = 0; j < free_positions.size(); ++j) {
        coloring2[free_positions[j]] = (mask & (1u << j)) ? 'B' : 'L';
      }
      MergeWitness cand = count_type_changes(p, coloring2);
      if (cand.total() > bound) continue;
      if (!best || cand.total() < best->total() ||
          (cand.total() == best->total() && cand.coloring < best->coloring)) {
        best = cand;
      }
    }
    if (best) return DichotomyResult{{}, *best};
  }
  throw std::logic_error("no witness within the dichotomy bound for " +
                         format_permutation(p));
}

}  // namespace av321
