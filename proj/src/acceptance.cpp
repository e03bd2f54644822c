#include "av321/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "av321/classes.hpp"
#include "av321/lattice.hpp"
#include "av321/perm.hpp"
#include "av321/rigidity.hpp"
#include "av321/series.hpp"
#include "av321/staircase.hpp"

namespace av321 {

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&, int)> run;  // detail out, threads in
};

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool brute_2_rigid(const Permutation& p) {
  if (p.empty()) return true;
  return in_class_i(p, 2) && is_k_rigid(p, 2);
}

// -- criterion bodies --------------------------------------------------------

bool catalan_agreement(std::string& detail, int threads) {
  const int N = 12;
  const CountProfile profile = enumerate_class(ClassSpec({Permutation::decreasing(3)}), N, threads);
  const CoefficientSequence cat = catalan_counts(N);
  for (int n = 1; n <= N; ++n) {
    if (mpz_class(profile.counts[n - 1]) != cat.at(n)) {
      detail = "mismatch at n=" + std::to_string(n);
      return false;
    }
  }
  detail = "counts 1.." + std::to_string(N) + " equal Catalan numbers (c_12 = " +
           std::to_string(profile.counts[N - 1]) + ")";
  return true;
}

bool rigid_series_agreement(std::string& detail, int threads) {
  (void)threads;
  const int N = 10;
  const CoefficientSequence r = rigid_counts(N);
  const ClassSpec av321({Permutation::decreasing(3)});
  std::vector<std::uint64_t> brute(N + 1, 0);
  brute[0] = 1;  // the empty permutation is rigid
  visit_class_members(av321, N, [&](const Permutation& p) {
    if (brute_2_rigid(p)) brute[p.size()] += 1;
  });
  for (int n = 0; n <= N; ++n) {
    if (mpz_class(brute[n]) != r.at(n)) {
      detail = "mismatch at n=" + std::to_string(n) + ": brute " + std::to_string(brute[n]) +
               " vs series " + r.at(n).get_str();
      return false;
    }
  }
  detail = "brute-force rigid counts match series through n=10 (1,0,1,2,6,18,57,...)";
  return true;
}

bool ratio_trend(std::string& detail, int threads) {
  (void)threads;
  const auto profile = rigid_ratio_profile(16);
  const double d8 = profile[8].distance_to_4_9;
  const double d16 = profile[16].distance_to_4_9;
  std::ostringstream s;
  s << "|r/c - 4/9| = " << d8 << " at n=8, " << d16 << " at n=16";
  detail = s.str();
  return d16 < d8;
}

bool k_good_lemma(std::string& detail, int threads) {
  for (int k = 1; k <= 4; ++k) {
    const int ell_max = (k <= 3) ? k + 1 : k;
    for (int ell = 0; ell <= ell_max; ++ell) {
      const std::uint64_t got = enumerate_k_good(k, ell, threads);
      const std::uint64_t want = binomial(2 * ell, ell);
      if (got != want) {
        detail = "k=" + std::to_string(k) + " ell=" + std::to_string(ell) + ": got " +
                 std::to_string(got) + " expected " + std::to_string(want);
        return false;
      }
    }
  }
  detail = "counts equal C(2l, l) for all l <= k <= 4 and l = k+1 for k <= 3";
  return true;
}

bool subdirect_bijection(std::string& detail, int threads) {
  (void)threads;
  std::map<std::pair<int, int>, std::uint64_t> rigid_counts_by_shape;
  for (int len = 2; len <= 8; ++len) {
    for (const Permutation& p : class_members(ClassSpec({Permutation::decreasing(3)}), len)) {
      if (!brute_2_rigid(p)) continue;
      const RankDecomposition d = rank_decomposition(p);
      int m = 0, n = 0;
      for (int r : d.rank_of) (r == 2 ? m : n) += 1;
      if (m > 4 || n > 4) continue;
      rigid_counts_by_shape[{m, n}] += 1;
      const SubdirectProduct k = lattice_of_21(p);
      if (pi_of(k) != p) {
        detail = "round trip failed for " + format_permutation(p);
        return false;
      }
    }
  }
  for (int m = 1; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const std::uint64_t lhs = rigid_counts_by_shape[{m, n}];
      const std::uint64_t rhs = count_subdirect({m, n});
      if (lhs != rhs) {
        detail = "shape (" + std::to_string(m) + "," + std::to_string(n) + "): " +
                 std::to_string(lhs) + " rigid permutations vs " + std::to_string(rhs) +
                 " subdirect products";
        return false;
      }
    }
  }
  detail = "counts agree and pi_of inverts lattice_of_21 for all m, n <= 4";
  return true;
}

bool three_chain_counterexample(std::string& detail, int threads) {
  (void)threads;
  const std::uint64_t products = count_subdirect({2, 2, 2});
  std::uint64_t rigid = 0;
  std::set<SubdirectProduct> incidences;
  for_each_permutation(6, [&](const Permutation& p) {
    if (!in_class_i(p, 3) || max_decreasing_length(p) != 3) return;
    if (!is_k_rigid(p, 3)) return;
    const RankDecomposition d = rank_decomposition(p);
    int c1 = 0, c2 = 0, c3 = 0;
    for (int r : d.rank_of) (r == 1 ? c1 : r == 2 ? c2 : c3) += 1;
    if (c1 == 2 && c2 == 2 && c3 == 2) {
      rigid += 1;
      incidences.insert(triple_incidence(p));
    }
  });
  detail = std::to_string(products) + " subdirect products vs " + std::to_string(rigid) +
           " rigid permutations (" + std::to_string(incidences.size()) +
           " distinct incidence structures)";
  return products == 29 && rigid == 25;
}

bool merge_example(std::string& detail, int threads) {
  (void)threads;
  const Permutation p = parse_permutation("123789456");
  const std::vector<Permutation> inc = {Permutation::decreasing(2)};
  const auto with3 = min_type_change_merge(p, inc, inc, 3);
  const auto with2 = min_type_change_merge(p, inc, inc, 2);
  if (!with3 || with3->total() != 3) {
    detail = "expected a witness with total 3";
    return false;
  }
  if (with2) {
    detail = "expected no witness at bound 2";
    return false;
  }
  detail = "witness with total 3 found; bound 2 is infeasible";
  return true;
}

bool dichotomy_soundness(std::string& detail, int threads) {
  (void)threads;
  const std::vector<std::pair<int, int>> params = {{2, 2}, {2, 3}, {3, 2}};
  const ClassSpec av321({Permutation::decreasing(3)});
  std::uint64_t staircases = 0, merges = 0;
  bool ok = true;
  std::string first_failure;
  visit_class_members(av321, 9, [&](const Permutation& p) {
    if (!ok) return;
    for (const auto& [k, b] : params) {
      const DichotomyResult r = staircase_or_merge(p, k, b);
      if (r.staircase) {
        const Permutation g = generic_staircase(k, b);
        if (!is_embedding(g, p, r.staircase->embedding.image)) {
          ok = false;
          first_failure = "invalid staircase witness for " + format_permutation(p);
          return;
        }
        ++staircases;
      } else if (r.merge) {
        const MergeWitness w = count_type_changes(p, r.merge->coloring);
        bool sides_ok = true;
        if (!p.empty()) {
          const int min_pos = p.position_of(1);
          for (int pos = 1; pos < min_pos; ++pos) {
            if (w.coloring[pos - 1] != 'L') sides_ok = false;
          }
          for (int pos = 2; pos <= p.size(); ++pos) {
            if (p.value_at(pos) < p.value_at(1) && w.coloring[pos - 1] != 'B') {
              sides_ok = false;
            }
          }
        }
        if (!sides_ok || w.total() != r.merge->total() ||
            w.total() > dichotomy_bound(k, b)) {
          ok = false;
          first_failure = "invalid merge witness for " + format_permutation(p) + " (k=" +
                          std::to_string(k) + ", b=" + std::to_string(b) + ")";
          return;
        }
        ++merges;
      } else {
        ok = false;
        first_failure = "no witness for " + format_permutation(p);
        return;
      }
    }
  });
  detail = ok ? std::to_string(staircases) + " staircase and " + std::to_string(merges) +
                    " merge witnesses validated over Av(321) up to length 9"
              : first_failure;
  return ok;
}

bool embedding_lattice_laws(std::string& detail, int threads) {
  (void)threads;
  const ClassSpec av321({Permutation::decreasing(3)});
  std::vector<Permutation> rigid_patterns;
  for (int len = 2; len <= 4; ++len) {
    for (const Permutation& rho : class_members(av321, len)) {
      if (brute_2_rigid(rho)) rigid_patterns.push_back(rho);
    }
  }
  std::uint64_t tested = 0;
  bool ok = true;
  std::string first_failure;
  visit_class_members(av321, 7, [&](const Permutation& pi) {
    if (!ok) return;
    for (const Permutation& rho : rigid_patterns) {
      const std::vector<Embedding> es = embeddings(rho, pi);
      if (es.empty()) continue;
      auto leq = [&](const Embedding& a, const Embedding& b) {
        for (int i = 0; i < rho.size(); ++i) {
          if (a.image[i] > b.image[i]) return false;
        }
        return true;
      };
      const auto lb = leftmost_bottommost(rho, pi);
      if (!lb) {
        ok = false;
        first_failure = "leftmost-bottommost missing though embeddings exist";
        return;
      }
      for (const Embedding& e : es) {
        if (!leq(*lb, e)) {
          ok = false;
          first_failure = "leftmost-bottommost not coordinatewise minimal in " +
                          format_permutation(pi);
          return;
        }
      }
      for (const Embedding& f : es) {
        for (const Embedding& g : es) {
          const Embedding i1 = embedding_inf(f, g, rho, pi);
          const Embedding s1 = embedding_sup(f, g, rho, pi);
          if (!is_embedding(rho, pi, i1.image) || !is_embedding(rho, pi, s1.image)) {
            ok = false;
            first_failure = "inf/sup not an embedding in " + format_permutation(pi);
            return;
          }
          if (embedding_inf(g, f, rho, pi) != i1 || embedding_sup(g, f, rho, pi) != s1) {
            ok = false;
            first_failure = "commutativity failed";
            return;
          }
          // absorption
          if (embedding_sup(f, i1, rho, pi) != f || embedding_inf(f, s1, rho, pi) != f) {
            ok = false;
            first_failure = "absorption failed";
            return;
          }
          for (const Embedding& h : es) {
            const Embedding lhs = embedding_inf(f, embedding_sup(g, h, rho, pi), rho, pi);
            const Embedding rhs = embedding_sup(embedding_inf(f, g, rho, pi),
                                                embedding_inf(f, h, rho, pi), rho, pi);
            if (lhs != rhs) {
              ok = false;
              first_failure = "distributivity failed in " + format_permutation(pi);
              return;
            }
            const Embedding a1 = embedding_inf(embedding_inf(f, g, rho, pi), h, rho, pi);
            const Embedding a2 = embedding_inf(f, embedding_inf(g, h, rho, pi), rho, pi);
            if (a1 != a2) {
              ok = false;
              first_failure = "associativity failed";
              return;
            }
            ++tested;
          }
        }
      }
    }
  });
  detail = ok ? "lattice laws verified on " + std::to_string(tested) + " embedding triples"
              : first_failure;
  return ok;
}

bool main_theorem_check(std::string& detail, int threads) {
  const MainTheoremReport r =
      main_theorem_report({parse_permutation("2134657")}, 10, 16, threads);
  if (!r.inclusion_ok) {
    detail = "inclusion of the reduced class failed";
    return false;
  }
  if (!r.all_difference_decomposed) {
    detail = "a difference member failed to decompose within the bound";
    return false;
  }
  std::uint64_t diff = 0;
  for (const auto& c : r.checks) diff += c.difference_members;
  detail = std::to_string(diff) + " difference members decomposed; smallest sufficient bound " +
           std::to_string(r.smallest_sufficient_bound);
  return true;
}

bool partial_reduction_pivots(std::string& detail, int threads) {
  const Permutation one = Permutation::identity(1);
  const Permutation two_one = Permutation::decreasing(2);
  std::uint64_t checked = 0;
  for (int k = 1; k <= 3; ++k) {
    for (const Permutation& alpha : {one, two_one}) {
      for (const Permutation& beta : {one, two_one}) {
        const PartialReductionReport r =
            verify_partial_reduction(k, alpha, beta, {}, 8, threads);
        if (!r.all_chains_decreasing || !r.all_chains_bounded) {
          detail = "pivot chain violation at k=" + std::to_string(k) + " alpha=" +
                   format_permutation(alpha) + " beta=" + format_permutation(beta);
          return false;
        }
        checked += r.checked;
      }
    }
  }
  detail = "pivot chains decreasing and bounded by k on " + std::to_string(checked) +
           " members";
  return true;
}

bool oracle_equivalence(std::string& detail, int threads) {
  const std::vector<std::vector<std::string>> bases = {
      {"321"}, {"21"}, {"321", "2143"}, {"2413"}, {"4321"}, {"321", "2134657"}, {"132", "4321"}};
  const int N = 8;
  for (const auto& basis_text : bases) {
    std::vector<Permutation> basis;
    for (const auto& t : basis_text) basis.push_back(parse_permutation(t));
    const ClassSpec spec(basis);
    const CountProfile inserted = enumerate_class(spec, N, threads);
    for (int n = 1; n <= N; ++n) {
      std::uint64_t filtered = 0;
      for_each_permutation(n, [&](const Permutation& p) {
        if (spec.member(p)) ++filtered;
      });
      if (filtered != inserted.counts[n - 1]) {
        detail = "basis {" + basis_text.front() + ", ...} disagrees at n=" + std::to_string(n);
        return false;
      }
    }
  }
  detail = "insertion enumeration equals whole-S_n filtering for " +
           std::to_string(bases.size()) + " bases up to n=8";
  return true;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int threads) {
  const std::vector<Criterion> criteria = {
      {1, "catalan-agreement", catalan_agreement},
      {2, "rigid-series-agreement", rigid_series_agreement},
      {3, "four-ninths-trend", ratio_trend},
      {4, "k-good-lemma", k_good_lemma},
      {5, "subdirect-bijection", subdirect_bijection},
      {6, "three-chain-counterexample", three_chain_counterexample},
      {7, "merge-example", merge_example},
      {8, "dichotomy-soundness", dichotomy_soundness},
      {9, "embedding-lattice-laws", embedding_lattice_laws},
      {10, "main-theorem-desk-check", main_theorem_check},
      {11, "partial-reduction-pivots", partial_reduction_pivots},
      {12, "oracle-equivalence", oracle_equivalence},
  };
  const std::vector<double> time_limits = {60, 0, 1, 300, 0, 0, 0, 600, 0, 0, 0, 0};

  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult r;
    r.id = criteria[i].id;
    r.name = criteria[i].name;
    const auto start = Clock::now();
    try {
      r.pass = criteria[i].run(r.detail, threads);
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.pass && time_limits[i] > 0 && r.seconds >= time_limits[i]) {
      r.pass = false;
      r.detail += " (exceeded " + std::to_string(static_cast<int>(time_limits[i])) +
                  "s runtime target)";
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_acceptance_line(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass ? "[PASS]" : "[FAIL]") << " " << r.id << ". " << r.name << " (";
  out.setf(std::ios::fixed);
  out.precision(2);
  out << r.seconds << "s): " << r.detail;
  return out.str();
}

}  // namespace av321
