#include "av321/classes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "av321/rigidity.hpp"
#include "json.hpp"

namespace av321 {

namespace {

std::vector<Permutation> antichain_minimize(std::vector<Permutation> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Permutation> kept;
  for (const Permutation& p : xs) {  // sorted by length: minimal elements first
    bool dominated = false;
    for (const Permutation& q : kept) {
      if (contains(q, p)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(p);
  }
  return kept;
}

}  // namespace

ClassSpec::ClassSpec(std::vector<Permutation> basis)
    : basis_(antichain_minimize(std::move(basis))) {}

bool ClassSpec::empty_class() const {
  return basis_.size() == 1 && basis_.front().empty();
}

bool ClassSpec::member(const Permutation& p) const {
  for (const Permutation& q : basis_) {
    if (contains(q, p)) return false;
  }
  return true;
}

void CountProfile::recompute_derived() {
  roots.assign(counts.size(), 0.0);
  ratios.assign(counts.empty() ? 0 : counts.size() - 1, 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    roots[i] = std::pow(static_cast<double>(counts[i]), 1.0 / static_cast<double>(i + 1));
  }
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
    ratios[i] = counts[i] == 0 ? 0.0
                               : static_cast<double>(counts[i + 1]) /
                                     static_cast<double>(counts[i]);
  }
}

namespace {

// Children of a member arise by inserting the new maximum n+1 into each gap.
void dfs_members(const ClassSpec& spec, std::vector<int>& current, int N,
                 const std::function<void(const std::vector<int>&)>& visit) {
  const int n = static_cast<int>(current.size());
  if (n > 0) visit(current);
  if (n == N) return;
  for (int gap = 0; gap <= n; ++gap) {
    std::vector<int> child;
    child.reserve(n + 1);
    child.insert(child.end(), current.begin(), current.begin() + gap);
    child.push_back(n + 1);
    child.insert(child.end(), current.begin() + gap, current.end());
    if (spec.member(Permutation(child))) {
      dfs_members(spec, child, N, visit);
    }
  }
}

}  // namespace

void visit_class_members(const ClassSpec& spec, int N,
                         const std::function<void(const Permutation&)>& visit) {
  if (N < 1 || spec.empty_class()) return;
  std::vector<int> root;
  dfs_members(spec, root, N,
              [&](const std::vector<int>& vals) { visit(Permutation(vals)); });
}

CountProfile enumerate_class(const ClassSpec& spec, int N, int threads) {
  CountProfile profile;
  profile.counts.assign(std::max(N, 0), 0);
  if (N < 1 || spec.empty_class()) {
    profile.recompute_derived();
    return profile;
  }
  threads = std::max(1, threads);

  // Single-threaded pass down to a shallow frontier, then one task per
  // frontier member. Counting is order independent, so the result does not
  // depend on the thread count.
  const int frontier_depth = threads == 1 ? N : std::min(N, 7);
  std::vector<std::vector<int>> frontier;
  std::vector<int> root;
  dfs_members(spec, root, frontier_depth, [&](const std::vector<int>& vals) {
    profile.counts[vals.size() - 1] += 1;
    if (static_cast<int>(vals.size()) == frontier_depth && frontier_depth < N) {
      frontier.push_back(vals);
    }
  });

  if (frontier_depth < N && !frontier.empty()) {
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<std::uint64_t>> partial(
        threads, std::vector<std::uint64_t>(N, 0));
    auto worker = [&](int tid) {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= frontier.size()) break;
        std::vector<int> start = frontier[i];
        dfs_members(spec, start, N, [&](const std::vector<int>& vals) {
          if (static_cast<int>(vals.size()) > frontier_depth) {
            partial[tid][vals.size() - 1] += 1;
          }
        });
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
    for (const auto& part : partial) {
      for (int n = 0; n < N; ++n) profile.counts[n] += part[n];
    }
  }
  profile.recompute_derived();
  return profile;
}

std::vector<Permutation> class_members(const ClassSpec& spec, int n) {
  std::vector<Permutation> out;
  visit_class_members(spec, n, [&](const Permutation& p) {
    if (p.size() == n) out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Permutation> reduce_basis(const std::vector<Permutation>& x) {
  std::vector<Permutation> reduced;
  reduced.reserve(x.size());
  for (const Permutation& p : x) {
    reduced.push_back(rigid_reduction(p));  // rejects anything outside I_2
  }
  return antichain_minimize(std::move(reduced));
}

MainTheoremReport main_theorem_report(const std::vector<Permutation>& x, int N,
                                      int bound_ceiling, int threads) {
  MainTheoremReport r;
  r.bound_ceiling = bound_ceiling;
  const Permutation p321 = Permutation::decreasing(3);

  std::vector<Permutation> full_x = x;
  full_x.push_back(p321);
  r.basis_x = antichain_minimize(full_x);

  std::vector<Permutation> red = reduce_basis(x);
  red.push_back(p321);
  r.basis_red = antichain_minimize(red);

  r.reduction_fixed_point = (r.basis_x == r.basis_red);

  const ClassSpec spec_x(r.basis_x);
  const ClassSpec spec_red(r.basis_red);
  r.profile_x = enumerate_class(spec_x, N, threads);
  r.profile_red = enumerate_class(spec_red, N, threads);

  const int check_ceiling = std::min(N, r.difference_ceiling);
  for (int n = 1; n <= check_ceiling; ++n) {
    LengthCheck check;
    check.n = n;
    const std::vector<Permutation> members_x = class_members(spec_x, n);
    for (const Permutation& m : members_x) {
      if (spec_red.member(m)) continue;  // inclusion side handled by counts
      check.difference_members += 1;
      auto witness = min_type_change_merge(m, r.basis_red, r.basis_red, bound_ceiling);
      if (!witness) {
        check.all_decomposed = false;
        r.all_difference_decomposed = false;
      } else {
        check.max_min_changes = std::max(check.max_min_changes, witness->total());
        r.smallest_sufficient_bound =
            std::max(r.smallest_sufficient_bound, witness->total());
      }
    }
    // Membership containment of the smaller class in the larger one.
    for (const Permutation& m : class_members(spec_red, n)) {
      if (!spec_x.member(m)) r.inclusion_ok = false;
    }
    r.checks.push_back(check);
  }
  for (int n = check_ceiling + 1; n <= N; ++n) {
    if (r.profile_red.counts[n - 1] > r.profile_x.counts[n - 1]) r.inclusion_ok = false;
  }
  return r;
}

std::vector<int> pivot_chain(const Permutation& p, const Permutation& alpha,
                             const Permutation& beta) {
  std::vector<int> out;
  const int n = p.size();
  for (int i = 1; i <= n; ++i) {
    const int v = p.value_at(i);
    std::vector<int> below, above;
    for (int j = 1; j < i; ++j) {
      if (p.value_at(j) < v) below.push_back(p.value_at(j));
    }
    for (int j = i + 1; j <= n; ++j) {
      if (p.value_at(j) > v) above.push_back(p.value_at(j));
    }
    if (contains(alpha, pattern_of(below)) && contains(beta, pattern_of(above))) {
      out.push_back(i);
    }
  }
  return out;
}

PartialReductionReport verify_partial_reduction(int k, const Permutation& alpha,
                                                const Permutation& beta,
                                                const std::vector<Permutation>& x, int N,
                                                int threads) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  PartialReductionReport r;
  r.k = k;
  r.alpha = alpha;
  r.beta = beta;

  const Permutation one = Permutation::identity(1);
  const Permutation small_pattern = direct_sum(direct_sum(alpha, one), beta);
  const Permutation big_pattern = direct_sum(direct_sum(alpha, direct_sum(one, one)), beta);
  const Permutation delta = Permutation::decreasing(k + 1);

  std::vector<Permutation> basis_small = x;
  basis_small.push_back(delta);
  basis_small.push_back(small_pattern);
  std::vector<Permutation> basis_big = x;
  basis_big.push_back(delta);
  basis_big.push_back(big_pattern);

  const ClassSpec spec_small{basis_small}, spec_big{basis_big};
  r.profile_small = enumerate_class(spec_small, N, threads);
  r.profile_big = enumerate_class(spec_big, N, threads);

  visit_class_members(spec_big, N, [&](const Permutation& m) {
    if (!contains(small_pattern, m)) return;
    r.checked += 1;
    const std::vector<int> chain = pivot_chain(m, alpha, beta);
    r.max_chain = std::max(r.max_chain, static_cast<int>(chain.size()));
    if (static_cast<int>(chain.size()) > k) r.all_chains_bounded = false;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      for (std::size_t j = i + 1; j < chain.size(); ++j) {
        if (m.value_at(chain[i]) < m.value_at(chain[j])) r.all_chains_decreasing = false;
      }
    }
  });
  return r;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

std::string fixed6(double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << v;
  return out.str();
}

nlohmann::json profile_json(const CountProfile& p) {
  nlohmann::json j;
  j["counts"] = p.counts;
  j["roots"] = nlohmann::json::array();
  j["ratios"] = nlohmann::json::array();
  for (double r : p.roots) j["roots"].push_back(fixed6(r));
  for (double r : p.ratios) j["ratios"].push_back(fixed6(r));
  return j;
}

nlohmann::json basis_json(const std::vector<Permutation>& basis) {
  nlohmann::json j = nlohmann::json::array();
  for (const Permutation& p : basis) j.push_back(format_permutation(p));
  return j;
}

}  // namespace

std::string profile_to_text(const CountProfile& profile) {
  std::ostringstream out;
  out << "  n  count            root      ratio\n";
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    out << "  " << (i + 1) << "  " << profile.counts[i] << "  " << fixed6(profile.roots[i]);
    if (i + 1 < profile.counts.size()) out << "  " << fixed6(profile.ratios[i]);
    out << "\n";
  }
  return out.str();
}

std::string main_theorem_report_to_text(const MainTheoremReport& r) {
  std::ostringstream out;
  out << "class I_2 ∩ Av(X), basis:";
  for (const auto& p : r.basis_x) out << " " << format_permutation(p);
  out << "\n" << profile_to_text(r.profile_x);
  out << "class I_2 ∩ Av(red X), basis:";
  for (const auto& p : r.basis_red) out << " " << format_permutation(p);
  out << "\n" << profile_to_text(r.profile_red);
  if (r.reduction_fixed_point) out << "reduction is a fixed point; classes coincide\n";
  out << "inclusion (reduced class inside original): " << (r.inclusion_ok ? "ok" : "FAILED")
      << "\n";
  for (const auto& c : r.checks) {
    out << "n=" << c.n << ": difference members " << c.difference_members
        << ", decomposed " << (c.all_decomposed ? "all" : "NOT ALL")
        << ", max changes " << c.max_min_changes << "\n";
  }
  out << "every difference member decomposes: "
      << (r.all_difference_decomposed ? "yes" : "NO") << "\n";
  out << "smallest sufficient bound observed: " << r.smallest_sufficient_bound << " (ceiling "
      << r.bound_ceiling << ")\n";
  return out.str();
}

std::string main_theorem_report_to_json(const MainTheoremReport& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "main_theorem_report";
  j["basis_x"] = basis_json(r.basis_x);
  j["basis_red"] = basis_json(r.basis_red);
  j["profile_x"] = profile_json(r.profile_x);
  j["profile_red"] = profile_json(r.profile_red);
  j["reduction_fixed_point"] = r.reduction_fixed_point;
  j["inclusion_ok"] = r.inclusion_ok;
  j["all_difference_decomposed"] = r.all_difference_decomposed;
  j["smallest_sufficient_bound"] = r.smallest_sufficient_bound;
  j["bound_ceiling"] = r.bound_ceiling;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"n", c.n},
                           {"difference_members", c.difference_members},
                           {"all_decomposed", c.all_decomposed},
                           {"max_min_changes", c.max_min_changes}});
  }
  return j.dump(2);
}

std::string partial_reduction_report_to_text(const PartialReductionReport& r) {
  std::ostringstream out;
  out << "k=" << r.k << " alpha=" << format_permutation(r.alpha)
      << " beta=" << format_permutation(r.beta) << "\n";
  out << "class avoiding alpha+1+beta:\n" << profile_to_text(r.profile_small);
  out << "class avoiding alpha+1+1+beta:\n" << profile_to_text(r.profile_big);
  out << "members checked: " << r.checked << "\n";
  out << "pivot chains decreasing: " << (r.all_chains_decreasing ? "yes" : "NO")
      << ", bounded by k: " << (r.all_chains_bounded ? "yes" : "NO")
      << ", max size " << r.max_chain << "\n";
  return out.str();
}

std::string partial_reduction_report_to_json(const PartialReductionReport& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "partial_reduction_report";
  j["k"] = r.k;
  j["alpha"] = format_permutation(r.alpha);
  j["beta"] = format_permutation(r.beta);
  j["profile_small"] = profile_json(r.profile_small);
  j["profile_big"] = profile_json(r.profile_big);
  j["checked"] = r.checked;
  j["all_chains_decreasing"] = r.all_chains_decreasing;
  j["all_chains_bounded"] = r.all_chains_bounded;
  j["max_chain"] = r.max_chain;
  return j.dump(2);
}

}  // namespace av321
