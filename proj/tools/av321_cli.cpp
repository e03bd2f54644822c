// Command-line surface for the av321 library: containment queries, rank and
// rigidity tools, staircase and merge machinery, class enumeration, the
// 21-lattice, exact series, and the acceptance battery.
//
// Exit codes: 0 success / all verifications passed, 1 verification failure,
// 2 usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "av321/acceptance.hpp"
#include "av321/classes.hpp"
#include "av321/lattice.hpp"
#include "av321/perm.hpp"
#include "av321/rigidity.hpp"
#include "av321/series.hpp"
#include "av321/staircase.hpp"
#include "json.hpp"

namespace {

using av321::Permutation;
using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct Options {
  std::string format = "text";
  int threads = 0;
  std::uint64_t seed = 0;  // reserved; every algorithm here is deterministic
};

int effective_threads(const Options& o) {
  if (o.threads > 0) return o.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool json_mode(const Options& o) { return o.format == "json"; }

json wrap(const std::string& command, json payload) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}, {"result", payload}};
}

void emit(const Options& o, const std::string& command, const json& payload,
          const std::string& text) {
  if (json_mode(o)) {
    std::cout << wrap(command, payload).dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::vector<Permutation> parse_basis(const std::string& csv) {
  std::vector<Permutation> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(av321::parse_permutation(item));
  }
  return out;
}

std::vector<int> parse_dims(const std::string& csv) {
  std::vector<int> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

// cells are "i:j" or "i:j:l" pairs separated by commas
std::vector<std::vector<int>> parse_cells(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::vector<int> cell;
    std::istringstream cin(item);
    std::string coord;
    while (std::getline(cin, coord, ':')) cell.push_back(std::stoi(coord));
    out.push_back(cell);
  }
  return out;
}

json embedding_json(const av321::Embedding& e) { return json(e.image); }

json witness_json(const av321::MergeWitness& w) {
  return json{{"coloring", w.coloring},
              {"changes_by_position", w.changes_by_position},
              {"changes_by_value", w.changes_by_value},
              {"total", w.total()}};
}

json profile_json(const av321::CountProfile& p) {
  json j;
  j["counts"] = p.counts;
  j["roots"] = p.roots;
  j["ratios"] = p.ratios;
  return j;
}

json series_json(const av321::CoefficientSequence& s) {
  json arr = json::array();
  for (const auto& c : s.coefficients) {
    if (c.fits_ulong_p()) {
      arr.push_back(static_cast<std::uint64_t>(c.get_ui()));
    } else {
      arr.push_back(c.get_str());
    }
  }
  return arr;
}

std::string series_text(const av321::CoefficientSequence& s) {
  std::string out;
  for (const auto& c : s.coefficients) out += c.get_str() + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"av321: rank decompositions, staircases, bounded merges and exact "
               "enumeration for subclasses of Av(321)"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", opt.threads, "worker threads (0 = machine parallelism)");
  app.add_option("--seed", opt.seed, "reserved; all algorithms are deterministic");

  int exit_code = 0;

  // ---- containment ----------------------------------------------------------
  std::string arg_pattern, arg_host, arg_perm, arg_coloring;
  auto* cmd_contains = app.add_subcommand("contains", "does the host contain the pattern");
  cmd_contains->add_option("pattern", arg_pattern)->required();
  cmd_contains->add_option("host", arg_host)->required();
  cmd_contains->callback([&] {
    const bool got = av321::contains(av321::parse_permutation(arg_pattern),
                                     av321::parse_permutation(arg_host));
    emit(opt, "contains", json(got), got ? "true\n" : "false\n");
  });

  auto* cmd_embeddings = app.add_subcommand("embeddings", "all embeddings of a pattern");
  cmd_embeddings->add_option("pattern", arg_pattern)->required();
  cmd_embeddings->add_option("host", arg_host)->required();
  cmd_embeddings->callback([&] {
    const auto es = av321::embeddings(av321::parse_permutation(arg_pattern),
                                      av321::parse_permutation(arg_host));
    json arr = json::array();
    std::string text;
    for (const auto& e : es) {
      arr.push_back(embedding_json(e));
      for (std::size_t i = 0; i < e.image.size(); ++i) {
        text += (i ? " " : "") + std::to_string(e.image[i]);
      }
      text += "\n";
    }
    emit(opt, "embeddings", arr, text);
  });

  // ---- rank / rigidity ------------------------------------------------------
  auto* cmd_rank = app.add_subcommand("rank", "greedy rank decomposition");
  cmd_rank->add_option("perm", arg_perm)->required();
  cmd_rank->callback([&] {
    const auto d = av321::rank_decomposition(av321::parse_permutation(arg_perm));
    std::string text = "k=" + std::to_string(d.k) + "\n";
    for (std::size_t i = 0; i < d.rank_of.size(); ++i) {
      text += (i ? " " : "") + std::to_string(d.rank_of[i]);
    }
    text += "\n";
    emit(opt, "rank", json{{"k", d.k}, {"rank_of", d.rank_of}}, text);
  });

  int arg_k = 2, arg_b = 2, arg_n = 8, arg_bound = 16, arg_ell = 0;
  auto* cmd_rigid = app.add_subcommand("rigid", "k-rigidity test and rigid reduction");
  cmd_rigid->require_subcommand(1);
  auto* cmd_rigid_test = cmd_rigid->add_subcommand("test", "is every point in a delta_k");
  cmd_rigid_test->add_option("perm", arg_perm)->required();
  cmd_rigid_test->add_option("--k", arg_k)->required();
  cmd_rigid_test->callback([&] {
    const bool got = av321::is_k_rigid(av321::parse_permutation(arg_perm), arg_k);
    emit(opt, "rigid test", json(got), got ? "true\n" : "false\n");
  });
  auto* cmd_rigid_reduce = cmd_rigid->add_subcommand("reduce", "drop all articulation runs");
  cmd_rigid_reduce->add_option("perm", arg_perm)->required();
  cmd_rigid_reduce->callback([&] {
    const auto red = av321::rigid_reduction(av321::parse_permutation(arg_perm));
    emit(opt, "rigid reduce", json(av321::format_permutation(red)),
         av321::format_permutation(red) + "\n");
  });

  auto* cmd_artic = app.add_subcommand("articulations", "articulation point positions");
  cmd_artic->add_option("perm", arg_perm)->required();
  cmd_artic->callback([&] {
    const auto pts = av321::articulation_points(av321::parse_permutation(arg_perm));
    std::string text;
    for (std::size_t i = 0; i < pts.size(); ++i) text += (i ? " " : "") + std::to_string(pts[i]);
    text += "\n";
    emit(opt, "articulations", json(pts), text);
  });

  // ---- staircases -----------------------------------------------------------
  auto* cmd_stair = app.add_subcommand("staircase", "staircase machinery");
  cmd_stair->require_subcommand(1);
  auto* cmd_sd = cmd_stair->add_subcommand("decompose", "greedy staircase decomposition");
  cmd_sd->add_option("perm", arg_perm)->required();
  cmd_sd->callback([&] {
    const auto d = av321::staircase_decomposition(av321::parse_permutation(arg_perm));
    json arr = json::array();
    std::string text;
    for (const auto& block : d.blocks) {
      arr.push_back(block);
      for (std::size_t i = 0; i < block.size(); ++i) {
        text += (i ? " " : "") + std::to_string(block[i]);
      }
      text += "\n";
    }
    emit(opt, "staircase decompose", arr, text);
  });
  auto* cmd_gen = cmd_stair->add_subcommand("generic", "the (k,b)-generic staircase");
  cmd_gen->add_option("--k", arg_k)->required();
  cmd_gen->add_option("--b", arg_b)->required();
  cmd_gen->callback([&] {
    const auto g = av321::generic_staircase(arg_k, arg_b);
    emit(opt, "staircase generic", json(av321::format_permutation(g)),
         av321::format_permutation(g) + "\n");
  });
  auto* cmd_dich = cmd_stair->add_subcommand("dichotomy", "staircase witness or bounded merge");
  cmd_dich->add_option("perm", arg_perm)->required();
  cmd_dich->add_option("--k", arg_k)->required();
  cmd_dich->add_option("--b", arg_b)->required();
  cmd_dich->callback([&] {
    const Permutation p = av321::parse_permutation(arg_perm);
    const auto r = av321::staircase_or_merge(p, arg_k, arg_b);
    if (r.staircase) {
      json j{{"branch", "staircase"},
             {"k", r.staircase->k},
             {"b", r.staircase->b},
             {"image", r.staircase->embedding.image}};
      std::string text = "staircase k=" + std::to_string(r.staircase->k) +
                         " b=" + std::to_string(r.staircase->b) + " image";
      for (int pos : r.staircase->embedding.image) text += " " + std::to_string(pos);
      emit(opt, "staircase dichotomy", j, text + "\n");
    } else {
      json j{{"branch", "merge"}, {"witness", witness_json(*r.merge)}};
      emit(opt, "staircase dichotomy", j, av321::merge_witness_to_text(p, *r.merge));
    }
  });

  // ---- merges ---------------------------------------------------------------
  std::string arg_basis_a = "21", arg_basis_b = "21";
  auto* cmd_merge = app.add_subcommand("merge", "bounded merges of two constrained parts");
  cmd_merge->require_subcommand(1);
  auto* cmd_count = cmd_merge->add_subcommand("count-changes", "type changes of a coloring");
  cmd_count->add_option("perm", arg_perm)->required();
  cmd_count->add_option("coloring", arg_coloring, "string over {L,B}")->required();
  cmd_count->callback([&] {
    const Permutation p = av321::parse_permutation(arg_perm);
    const auto w = av321::count_type_changes(p, arg_coloring);
    emit(opt, "merge count-changes", witness_json(w), av321::merge_witness_to_text(p, w));
  });
  auto* cmd_search = cmd_merge->add_subcommand("search", "minimum type-change merge");
  cmd_search->add_option("perm", arg_perm)->required();
  cmd_search->add_option("--basis-a", arg_basis_a, "patterns the L part must avoid");
  cmd_search->add_option("--basis-b", arg_basis_b, "patterns the B part must avoid");
  cmd_search->add_option("--bound", arg_bound);
  cmd_search->callback([&] {
    const Permutation p = av321::parse_permutation(arg_perm);
    const auto w = av321::min_type_change_merge(p, parse_basis(arg_basis_a),
                                                parse_basis(arg_basis_b), arg_bound);
    if (w) {
      emit(opt, "merge search", witness_json(*w), av321::merge_witness_to_text(p, *w));
    } else {
      emit(opt, "merge search", json(nullptr), "absent\n");
      exit_code = 1;
    }
  });

  // ---- classes --------------------------------------------------------------
  std::string arg_basis = "321", arg_alpha = "1", arg_beta = "1", arg_extra;
  auto* cmd_class = app.add_subcommand("class", "finitely based classes inside I_k");
  cmd_class->require_subcommand(1);
  auto* cmd_enum = cmd_class->add_subcommand("enumerate", "exact counts by length");
  cmd_enum->add_option("--basis", arg_basis)->required();
  cmd_enum->add_option("--n", arg_n)->required();
  cmd_enum->callback([&] {
    const auto profile = av321::enumerate_class(av321::ClassSpec(parse_basis(arg_basis)),
                                                arg_n, effective_threads(opt));
    std::string text;
    for (std::size_t i = 0; i < profile.counts.size(); ++i) {
      text += std::to_string(profile.counts[i]) + "\n";
    }
    emit(opt, "class enumerate", profile_json(profile), text);
  });
  auto* cmd_growth = cmd_class->add_subcommand("growth", "counts with roots and ratios");
  cmd_growth->add_option("--basis", arg_basis)->required();
  cmd_growth->add_option("--n", arg_n)->required();
  cmd_growth->callback([&] {
    const auto profile = av321::enumerate_class(av321::ClassSpec(parse_basis(arg_basis)),
                                                arg_n, effective_threads(opt));
    emit(opt, "class growth", profile_json(profile), av321::profile_to_text(profile));
  });
  auto* cmd_main = cmd_class->add_subcommand("main-theorem", "compare Av(X) with Av(red X)");
  cmd_main->add_option("--basis", arg_basis, "the set X")->required();
  cmd_main->add_option("--n", arg_n);
  cmd_main->add_option("--bound", arg_bound);
  cmd_main->callback([&] {
    const auto r = av321::main_theorem_report(parse_basis(arg_basis), arg_n, arg_bound,
                                              effective_threads(opt));
    if (json_mode(opt)) {
      std::cout << av321::main_theorem_report_to_json(r) << "\n";
    } else {
      std::cout << av321::main_theorem_report_to_text(r);
    }
    if (!r.inclusion_ok || !r.all_difference_decomposed) exit_code = 1;
  });
  auto* cmd_partial = cmd_class->add_subcommand("partial-reduction", "pivot chain verification");
  cmd_partial->add_option("--k", arg_k)->required();
  cmd_partial->add_option("--alpha", arg_alpha);
  cmd_partial->add_option("--beta", arg_beta);
  cmd_partial->add_option("--basis", arg_extra, "extra patterns X (may be empty)");
  cmd_partial->add_option("--n", arg_n);
  cmd_partial->callback([&] {
    const auto r = av321::verify_partial_reduction(
        arg_k, av321::parse_permutation(arg_alpha), av321::parse_permutation(arg_beta),
        arg_extra.empty() ? std::vector<Permutation>{} : parse_basis(arg_extra), arg_n,
        effective_threads(opt));
    if (json_mode(opt)) {
      std::cout << av321::partial_reduction_report_to_json(r) << "\n";
    } else {
      std::cout << av321::partial_reduction_report_to_text(r);
    }
    if (!r.all_chains_decreasing || !r.all_chains_bounded) exit_code = 1;
  });

  // ---- lattice --------------------------------------------------------------
  std::string arg_dims = "2,2", arg_cells;
  bool arg_count_only = false;
  auto* cmd_lat = app.add_subcommand("lattice", "the lattice of 21-copies and subdirect products");
  cmd_lat->require_subcommand(1);
  auto* cmd_ofperm = cmd_lat->add_subcommand("of-perm", "lattice of a 2-rigid permutation");
  cmd_ofperm->add_option("perm", arg_perm)->required();
  cmd_ofperm->callback([&] {
    const auto k = av321::lattice_of_21(av321::parse_permutation(arg_perm));
    json j{{"dims", k.dims}, {"elements", k.elements}};
    emit(opt, "lattice of-perm", j, av321::render_grid(k));
  });
  auto* cmd_sub = cmd_lat->add_subcommand("subdirect", "enumerate subdirect products");
  cmd_sub->add_option("--dims", arg_dims)->required();
  cmd_sub->add_flag("--count", arg_count_only, "print only the count");
  cmd_sub->callback([&] {
    const auto all = av321::enumerate_subdirect(parse_dims(arg_dims));
    if (arg_count_only) {
      emit(opt, "lattice subdirect", json(all.size()), std::to_string(all.size()) + "\n");
      return;
    }
    json arr = json::array();
    std::string text;
    for (const auto& k : all) {
      arr.push_back(k.elements);
      for (std::size_t i = 0; i < k.elements.size(); ++i) {
        if (i) text += " ";
        text += "(";
        for (std::size_t c = 0; c < k.elements[i].size(); ++c) {
          if (c) text += ",";
          text += std::to_string(k.elements[i][c]);
        }
        text += ")";
      }
      text += "\n";
    }
    emit(opt, "lattice subdirect", arr, text);
  });
  auto* cmd_piof = cmd_lat->add_subcommand("pi-of", "permutation of a subdirect product");
  cmd_piof->add_option("--dims", arg_dims)->required();
  cmd_piof->add_option("--cells", arg_cells, "i:j pairs, comma separated")->required();
  cmd_piof->callback([&] {
    av321::SubdirectProduct k;
    k.dims = parse_dims(arg_dims);
    k.elements = parse_cells(arg_cells);
    std::sort(k.elements.begin(), k.elements.end());
    const Permutation p = av321::pi_of(k);
    emit(opt, "lattice pi-of", json(av321::format_permutation(p)),
         av321::format_permutation(p) + "\n");
  });
  auto* cmd_good = cmd_lat->add_subcommand("k-good", "k-good test or census");
  cmd_good->add_option("perm", arg_perm, "permutation to test (omit to count)");
  cmd_good->add_option("--k", arg_k)->required();
  cmd_good->add_option("--l", arg_ell, "census length is 2k + l");
  cmd_good->callback([&] {
    if (!arg_perm.empty()) {
      const bool got = av321::is_k_good(av321::parse_permutation(arg_perm), arg_k);
      emit(opt, "lattice k-good", json(got), got ? "true\n" : "false\n");
    } else {
      const auto count = av321::enumerate_k_good(arg_k, arg_ell, effective_threads(opt));
      emit(opt, "lattice k-good", json(count), std::to_string(count) + "\n");
    }
  });

  // ---- series ---------------------------------------------------------------
  auto* cmd_series = app.add_subcommand("series", "exact coefficient sequences");
  cmd_series->require_subcommand(1);
  auto* cmd_cat = cmd_series->add_subcommand("catalan", "Catalan numbers C_0..C_N");
  cmd_cat->add_option("--n", arg_n)->required();
  cmd_cat->callback([&] {
    const auto s = av321::catalan_counts(arg_n);
    emit(opt, "series catalan", series_json(s), series_text(s));
  });
  auto* cmd_rigidseries = cmd_series->add_subcommand("rigid", "2-rigid counts r_0..r_N");
  cmd_rigidseries->add_option("--n", arg_n)->required();
  cmd_rigidseries->callback([&] {
    const auto s = av321::rigid_counts(arg_n);
    emit(opt, "series rigid", series_json(s), series_text(s));
  });
  auto* cmd_ratio = cmd_series->add_subcommand("ratio", "r_n/c_n with distance to 4/9");
  cmd_ratio->add_option("--n", arg_n)->required();
  cmd_ratio->callback([&] {
    const auto profile = av321::rigid_ratio_profile(arg_n);
    json arr = json::array();
    std::string text;
    char line[160];
    for (const auto& pt : profile) {
      arr.push_back(json{{"n", pt.n},
                         {"numerator", pt.numerator.get_str()},
                         {"denominator", pt.denominator.get_str()},
                         {"ratio", pt.ratio},
                         {"distance_to_4_9", pt.distance_to_4_9}});
      std::snprintf(line, sizeof line, "%3d  %s/%s  %.6f  %.6f\n", pt.n,
                    pt.numerator.get_str().c_str(), pt.denominator.get_str().c_str(),
                    pt.ratio, pt.distance_to_4_9);
      text += line;
    }
    emit(opt, "series ratio", arr, text);
  });

  // ---- acceptance -----------------------------------------------------------
  auto* cmd_verify = app.add_subcommand("verify-all", "run the full acceptance battery");
  cmd_verify->callback([&] {
    const auto results = av321::run_acceptance(effective_threads(opt));
    bool all = true;
    json arr = json::array();
    for (const auto& r : results) {
      all = all && r.pass;
      arr.push_back(json{{"id", r.id},
                         {"name", r.name},
                         {"pass", r.pass},
                         {"seconds", r.seconds},
                         {"detail", r.detail}});
      if (!json_mode(opt)) std::cout << av321::format_acceptance_line(r) << "\n";
    }
    if (json_mode(opt)) {
      std::cout << wrap("verify-all", arr).dump(2) << "\n";
    } else {
      std::cout << (all ? "all criteria passed\n" : "SOME CRITERIA FAILED\n");
    }
    if (!all) exit_code = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
