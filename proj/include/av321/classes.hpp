#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "av321/perm.hpp"
#include "av321/staircase.hpp"

namespace av321 {

/// A finitely based pattern class Av(basis). The basis is deduplicated and
/// antichain-reduced on construction: only containment-minimal elements are
/// kept.
class ClassSpec {
 public:
  ClassSpec() = default;
  explicit ClassSpec(std::vector<Permutation> basis);

  const std::vector<Permutation>& basis() const { return basis_; }

  /// Av(basis) is empty at every length when the basis holds the empty
  /// permutation. Flagged, not an error.
  bool empty_class() const;

  bool member(const Permutation& p) const;  // p avoids every basis element

 private:
  std::vector<Permutation> basis_;
};

/// Exact class sizes by length with n-th roots and successive ratios.
struct CountProfile {
  std::vector<std::uint64_t> counts;  // c_1..c_N
  std::vector<double> roots;          // c_n^(1/n)
  std::vector<double> ratios;         // c_{n+1}/c_n (0 when undefined)

  void recompute_derived();
};

/// Length-incremental enumeration: members of length n+1 arise by inserting
/// a new maximum into each gap of each length-n member. Runs depth first, so
/// memory stays proportional to N. Deterministic for any thread count.
CountProfile enumerate_class(const ClassSpec& spec, int N, int threads = 1);

/// All members of exactly length n, sorted. Desk scale.
std::vector<Permutation> class_members(const ClassSpec& spec, int n);

/// Visits every member of length 1..N in depth-first insertion order.
void visit_class_members(const ClassSpec& spec, int N,
                         const std::function<void(const Permutation&)>& visit);

/// Elementwise rigid reduction followed by antichain minimization.
/// Every element must lie in I_2.
std::vector<Permutation> reduce_basis(const std::vector<Permutation>& x);

struct LengthCheck {
  int n = 0;
  std::uint64_t difference_members = 0;
  bool all_decomposed = true;
  int max_min_changes = 0;  // largest minimum change count over the difference
};

/// Empirical comparison of I_2 ∩ Av(X) with I_2 ∩ Av(red(X)): both profiles,
/// the inclusion of the reduced class in the original, and a bounded-merge
/// decomposition of every difference member into two members of the smaller
/// class.
struct MainTheoremReport {
  std::vector<Permutation> basis_x;    // antichain of {321} ∪ X
  std::vector<Permutation> basis_red;  // antichain of {321} ∪ red(X)
  CountProfile profile_x, profile_red;
  bool reduction_fixed_point = false;
  bool inclusion_ok = true;
  std::vector<LengthCheck> checks;  // lengths up to min(N, difference ceiling)
  int difference_ceiling = 10;
  int bound_ceiling = 16;
  bool all_difference_decomposed = true;
  int smallest_sufficient_bound = 0;
};

MainTheoremReport main_theorem_report(const std::vector<Permutation>& x, int N,
                                      int bound_ceiling = 16, int threads = 1);

/// Positions of p that have a copy of alpha entirely below and to the left
/// and a copy of beta entirely above and to the right.
std::vector<int> pivot_chain(const Permutation& p, const Permutation& alpha,
                             const Permutation& beta);

struct PartialReductionReport {
  int k = 0;
  Permutation alpha, beta;
  CountProfile profile_small;  // I_k ∩ Av(X, alpha + 1 + beta)
  CountProfile profile_big;    // I_k ∩ Av(X, alpha + 1 + 1 + beta)
  std::uint64_t checked = 0;   // members of the big class containing alpha + 1 + beta
  bool all_chains_decreasing = true;
  bool all_chains_bounded = true;  // chain size <= k
  int max_chain = 0;
};

/// For every member of I_k ∩ Av(X, alpha+1+1+beta) of length <= N that
/// contains alpha+1+beta, checks that the pivot chain is decreasing with at
/// most k points, and reports count profiles for both classes.
PartialReductionReport verify_partial_reduction(int k, const Permutation& alpha,
                                                const Permutation& beta,
                                                const std::vector<Permutation>& x, int N,
                                                int threads = 1);

std::string profile_to_text(const CountProfile& profile);
std::string main_theorem_report_to_text(const MainTheoremReport& r);
std::string main_theorem_report_to_json(const MainTheoremReport& r);
std::string partial_reduction_report_to_text(const PartialReductionReport& r);
std::string partial_reduction_report_to_json(const PartialReductionReport& r);

}  // namespace av321
