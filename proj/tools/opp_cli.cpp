// Command-line front end. Exit codes: 0 witness/success, 2 no witness, 1 usage or input error.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "opp/embed.hpp"
#include "opp/experiment.hpp"
#include "opp/gen.hpp"
#include "opp/io.hpp"

using namespace opp;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNone = 2;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void print_warnings(const std::vector<std::string>& ws) {
  for (const auto& w : ws) std::cerr << "warning: " << w << '\n';
}

struct PatternArg {
  std::string name;
  std::string file;
  std::optional<int> k;

  void add(CLI::App* app, const std::string& what) {
    auto* n = app->add_option("--pattern", name, what + " by name (" + [] {
      std::string s;
      for (const auto& p : pattern_names()) s += (s.empty() ? "" : ", ") + p;
      return s;
    }() + ")");
    auto* f = app->add_option("--pattern-file", file, what + " as an OGR file");
    n->excludes(f);
    app->add_option("--k", k, "Size parameter for monotone_path");
  }

  OrderedGraph load() const {
    if (!file.empty()) return read_ogr_file(file);
    if (name.empty()) throw InputError("one of --pattern or --pattern-file is required");
    return pattern(name, k);
  }
};

struct CheckArg {
  std::string mode = "auto";
  std::optional<std::uint64_t> seed;
  std::size_t exact_cap = 14;
  std::size_t trials = 2000;

  void add(CLI::App* app) {
    app->add_option("--check", mode, "Verification mode")->check(CLI::IsMember({"auto", "exact", "sampled"}));
    app->add_option("--seed", seed, "Seed for sampled checks");
    app->add_option("--exact-cap", exact_cap, "Largest block checked exhaustively")->check(CLI::Range(1, 63));
    app->add_option("--trials", trials, "Random sub-pairs per block pair in sampled mode");
  }

  CheckOptions resolve(const Blockade& b) const {
    CheckOptions o = auto_check(b, seed.value_or(0), exact_cap);
    if (mode == "exact") o.mode = CheckMode::exact;
    if (mode == "sampled") o.mode = CheckMode::sampled;
    o.trials = trials;
    if (o.mode == CheckMode::sampled && !seed)
      throw InputError("sampled verification is randomized and needs an explicit --seed");
    return o;
  }
};

Rigor parse_rigor(const std::string& s) { return s == "theoretical" ? Rigor::theoretical : Rigor::practical; }

int print_embedding_or_absent(const std::optional<Embedding>& e, bool valid) {
  if (!e) {
    std::cout << "absent\n";
    return kNone;
  }
  if (!valid) throw AnalysisError("embedding failed re-validation");
  std::cout << "present " << format_embedding(*e) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordered-graph pure pairs, blockades and rainbow embeddings"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::function<int()> action;
  int threads = 1;
  std::string host_path;
  std::string blockade_path;
  auto add_host = [&](CLI::App* s) {
    s->add_option("--host", host_path, "Host graph (OGR v1)")->required()->check(CLI::ExistingFile);
  };
  auto add_blockade = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--blockade", blockade_path, "Blockade (JSON lines)")->check(CLI::ExistingFile);
    if (required) o->required();
  };
  auto add_threads = [&](CLI::App* s) {
    s->add_option("--threads", threads, "Worker threads; output does not depend on it")->check(CLI::Range(1, 256));
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Generate graphs");
  gen->require_subcommand(1);
  int gen_n = 0;
  double gen_p = 0.5;
  int gen_g = 3;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen_random = gen->add_subcommand("random", "G(n,p) with a keyed counter generator");
  gen_random->add_option("--n", gen_n, "Vertices")->required()->check(CLI::Range(0, 1 << 20));
  gen_random->add_option("--p", gen_p, "Edge probability")->required()->check(CLI::Range(0.0, 1.0));
  gen_random->add_option("--seed", gen_seed, "Seed")->required();
  gen_random->add_option("--out", gen_out, "Write here instead of stdout");
  add_threads(gen_random);
  gen_random->callback([&] {
    action = [&] {
      const auto g = random_ordered(gen_n, gen_p, gen_seed, threads);
      if (gen_out.empty())
        std::cout << format_ogr(g);
      else
        write_ogr_file(g, gen_out);
      return kOk;
    };
  });
  auto* gen_girth = gen->add_subcommand("girth", "Random graph with short cycles removed");
  gen_girth->add_option("--n", gen_n, "Vertices sampled")->required()->check(CLI::Range(4, 1 << 20));
  gen_girth->add_option("--g", gen_g, "Remove cycles of length at most g")->check(CLI::Range(3, 64));
  gen_girth->add_option("--seed", gen_seed, "Seed")->required();
  gen_girth->add_option("--out", gen_out, "Write here instead of stdout");
  gen_girth->callback([&] {
    action = [&] {
      const auto r = girth_construction(gen_n, gen_g, gen_seed);
      if (find_short_cycle(r.graph, gen_g)) throw AnalysisError("girth construction left a short cycle");
      std::string text = format_ogr(r.graph);
      const auto& rep = r.report;
      text += "# girth n=" + std::to_string(rep.n) + " g=" + std::to_string(rep.girth) + " p=" + num(rep.p) +
              " sampled_edges=" + std::to_string(rep.sampled_edges) + " deletions=" + std::to_string(rep.deletions) +
              " kept=" + std::to_string(rep.kept) + " half_kept=" + (rep.half_kept ? "yes" : "no") +
              " validated=yes\n";
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_ogr_file(r.graph, gen_out);
        std::cout << text.substr(text.rfind("# girth"));
      }
      return kOk;
    };
  });

  // contains / rainbow
  PatternArg pat;
  bool count = false;
  auto* contains = app.add_subcommand("contains", "Least ordered copy of a pattern");
  add_host(contains);
  pat.add(contains, "Pattern");
  contains->add_flag("--count", count, "Also print the number of copies");
  add_threads(contains);
  contains->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto h = pat.load();
      SearchOptions so;
      so.threads = threads;
      const auto e = contains_ordered(g, h, so);
      const int rc = print_embedding_or_absent(e, e && is_valid_embedding(g, h, *e));
      if (count) std::cout << "count " << count_embeddings(g, h) << '\n';
      return rc;
    };
  });
  auto* rainbow = app.add_subcommand("rainbow", "Least rainbow copy of a pattern in a blockade");
  add_host(rainbow);
  add_blockade(rainbow, true);
  pat.add(rainbow, "Pattern");
  rainbow->add_flag("--count", count, "Also print the number of rainbow copies");
  rainbow->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto b = read_blockade_file(blockade_path, g);
      const auto h = pat.load();
      const auto e = find_rainbow_copy(g, b, h);
      const int rc = print_embedding_or_absent(e, e && is_rainbow_embedding(g, b, h, *e));
      if (count) std::cout << "count " << count_rainbow_copies(g, b, h) << '\n';
      return rc;
    };
  });

  // purepair
  std::string pp_mode = "exact";
  std::string pp_polarity = "anticomplete";
  std::optional<std::size_t> pp_floor;
  PairSearchOptions pp;
  auto* purepair = app.add_subcommand("purepair", "Largest pure pair");
  add_host(purepair);
  purepair->add_option("--mode", pp_mode, "Search mode")->check(CLI::IsMember({"exact", "branch_bound", "greedy"}));
  purepair->add_option("--polarity", pp_polarity, "Which pairs")
      ->check(CLI::IsMember({"anticomplete", "complete", "best"}));
  purepair->add_option("--floor", pp_floor, "Stop once a pair of this size is found");
  purepair->add_option("--exact-cap", pp.exact_cap, "Largest host for exact mode");
  purepair->add_option("--budget", pp.node_budget, "Node budget for branch_bound");
  add_threads(purepair);
  purepair->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      pp.mode = pp_mode == "exact" ? PairMode::exact : pp_mode == "greedy" ? PairMode::greedy : PairMode::branch_bound;
      pp.floor = pp_floor;
      pp.threads = threads;
      PairSearchStats sa, sc;
      std::optional<PurePairWitness> a, c;
      if (pp_polarity != "complete") a = best_anticomplete_pair(g, pp, &sa);
      if (pp_polarity != "anticomplete") c = best_complete_pair(g, pp, &sc);
      const bool take_c = c && (!a || c->size() > a->size());
      const auto& w = take_c ? c : a;
      const auto& st = take_c ? sc : sa;
      if (!w) {
        std::cout << "none\n";
        return kNone;
      }
      if (!verify_pure_pair(g, *w)) throw AnalysisError("pure pair failed re-validation");
      std::cout << "min_size " << w->size() << '\n'
                << "pair " << format_witness(*w) << '\n'
                << "search " << to_string(st.mode_used) << ' ' << (st.complete ? "complete" : "capped") << '\n';
      return kOk;
    };
  });

  // blockade
  auto* blk = app.add_subcommand("blockade", "Blockade measures, shrink-resistance and bands");
  blk->require_subcommand(1);
  double b_phi = 0.5, b_mu = 0.5, b_tau = 0.5;
  std::size_t b_k = 2;
  std::string b_rigor = "practical";
  CheckArg chk;
  auto blk_sub = [&](const std::string& name, const std::string& help) {
    auto* s = blk->add_subcommand(name, help);
    add_host(s);
    add_blockade(s, true);
    return s;
  };
  auto add_phi_mu = [&](CLI::App* s) {
    s->add_option("--phi", b_phi)->check(CLI::PositiveNumber);
    s->add_option("--mu", b_mu)->check(CLI::PositiveNumber);
  };
  auto* b_meas = blk_sub("measures", "Width, shrinkage, linkage and the max-degree table");
  b_meas->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto b = read_blockade_file(blockade_path, g);
      std::cout << to_json(measures(g, b)).dump(2) << '\n';
      return kOk;
    };
  });
  auto* b_shrink = blk_sub("shrink-resist", "Contract until shrink-resistant or anticomplete");
  add_phi_mu(b_shrink);
  chk.add(b_shrink);
  b_shrink->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto b = read_blockade_file(blockade_path, g);
      const auto r = shrink_resist(g, b, b_phi, b_mu, chk.resolve(b));
      if (r.anticomplete && !is_anticomplete(g, r.anticomplete->zh, r.anticomplete->zj))
        throw AnalysisError("anticomplete witness failed re-validation");
      std::cout << to_json(r).dump(2) << '\n';
      return kOk;
    };
  });
  auto* b_resist = blk_sub("check-resistant", "Test shrink-resistance");
  add_phi_mu(b_resist);
  chk.add(b_resist);
  b_resist->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto b = read_blockade_file(blockade_path, g);
      const auto v = is_shrink_resistant(g, b, b_phi, b_mu, chk.resolve(b));
      std::cout << to_json(v).dump(2) << '\n';
      return v.resistant ? kOk : kNone;
    };
  });
  auto* b_band = blk_sub("band", "Select k blocks of one type forming a band");
  add_phi_mu(b_band);
  b_band->add_option("--k", b_k, "Blocks to select")->required();
  b_band->add_option("--rigor", b_rigor)->check(CLI::IsMember({"theoretical", "practical"}));
  chk.add(b_band);
  b_band->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto b = read_blockade_file(blockade_path, g);
      FindBandOptions o;
      o.check = chk.resolve(b);
      o.rigor = parse_rigor(b_rigor);
      try {
        const auto r = find_band(g, b, b_phi, b_mu, b_k, o);
        print_warnings(r.warnings);
        std::cout << to_json(r).dump(2) << '\n';
        return r.certificate.validated ? kOk : kNone;
      } catch (const CapabilityError& e) {
        std::cout << "none " << e.what() << '\n';
        return kNone;
      }
    };
  });
  auto* b_check = blk_sub("check-band", "Test the two band conditions");
  add_phi_mu(b_check);
  b_check->add_option("--tau", b_tau)->required()->check(CLI::PositiveNumber);
  chk.add(b_check);
  b_check->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto b = read_blockade_file(blockade_path, g);
      const auto v = check_band(g, b, b_tau, b_phi, b_mu, chk.resolve(b));
      std::cout << to_json(v).dump(2) << '\n';
      return v.holds ? kOk : kNone;
    };
  });

  // leafcover
  FullLeafCoverParams lc;
  std::string lc_stop = "claim_bound";
  std::vector<int> lc_partition;
  auto* leaf = app.add_subcommand("leafcover", "Homogenise, then cover one partition of the selection");
  add_host(leaf);
  add_blockade(leaf, true);
  leaf->add_option("--k", lc.k, "Blocks to select")->required();
  leaf->add_option("--c", lc.c)->check(CLI::Range(0.0, 1.0));
  leaf->add_option("--sigma", lc.sigma)->check(CLI::Range(0.0, 1.0));
  leaf->add_option("--sigma-prime", lc.sigma_prime)->check(CLI::Range(0.0, 1.0));
  leaf->add_option("--lambda-prime", lc.lambda_prime)->check(CLI::PositiveNumber);
  leaf->add_option("--big-sigma", lc.big_sigma);
  leaf->add_option("--phi", lc.phi);
  leaf->add_option("--mu", lc.mu);
  leaf->add_option("--big-lambda", lc.big_lambda);
  leaf->add_option("--leaf-phi", lc.leaf_phi);
  leaf->add_option("--leaf-mu", lc.leaf_mu);
  leaf->add_option("--leaf-tau", lc.leaf_tau);
  leaf->add_option("--rigor", b_rigor)->check(CLI::IsMember({"theoretical", "practical"}));
  leaf->add_option("--stop", lc_stop)->check(CLI::IsMember({"claim_bound", "half"}));
  leaf->add_option("--partition", lc_partition, "Selection indices forming H; the rest form J")->delimiter(',');
  chk.add(leaf);
  leaf->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto b = read_blockade_file(blockade_path, g);
      lc.leaf.rigor = parse_rigor(b_rigor);
      lc.leaf.stop = lc_stop == "half" ? StopRule::half : StopRule::claim_bound;
      lc.leaf.check = chk.resolve(b);
      const auto r = full_leaf_cover(g, b, lc);
      print_warnings(r.warnings);
      json out{{"tau", r.tau}, {"phi", r.phi}, {"mu", r.mu}, {"big_sigma", r.big_sigma}, {"big_lambda", r.big_lambda}};
      if (r.anticomplete) {
        if (!is_anticomplete(g, r.anticomplete->zh, r.anticomplete->zj))
          throw AnalysisError("anticomplete witness failed re-validation");
        out["anticomplete"] = to_json(*r.anticomplete);
        std::cout << out.dump(2) << '\n';
        return kOk;
      }
      if (!r.selection) {
        out["selection"] = nullptr;
        std::cout << out.dump(2) << '\n';
        return kNone;
      }
      out["selection"] = to_json(*r.selection);
      if (r.homog.band) out["band"] = to_json(*r.homog.band);
      int rc = kOk;
      if (!lc_partition.empty()) {
        const auto pc = cover_partition(g, r, lc, lc_partition);
        print_warnings(pc.cover.warnings);
        json cov{{"moved", pc.cover.moved},
                 {"shrinkage", pc.shrinkage},
                 {"linkage", pc.linkage},
                 {"shrinkage_ok", pc.shrinkage_ok},
                 {"linkage_ok", pc.linkage_ok}};
        if (pc.cover.result) {
          cov["result"] = to_json(*pc.cover.result);
          cov["verdict"] = to_json(verify_leaf_covered(g, *pc.cover.result, chk.resolve(pc.cover.result->blockade)));
        } else {
          cov["failure"] = pc.cover.failure;
          rc = kNone;
        }
        out["cover"] = cov;
      }
      std::cout << out.dump(2) << '\n';
      return rc;
    };
  });

  // embed
  double e_c = 0.5, e_sigma = 0.1;
  std::string e_mode = "practical";
  bool e_no_fallback = false;
  std::optional<int> e_blocks;
  auto* embed = app.add_subcommand("embed", "Rainbow copy of an ordered tree");
  add_host(embed);
  add_blockade(embed, false);
  pat.add(embed, "Tree");
  embed->add_option("--blocks", e_blocks, "Without --blockade: split the host into this many equal blocks");
  embed->add_option("--c", e_c)->check(CLI::Range(0.0, 1.0));
  embed->add_option("--sigma", e_sigma)->check(CLI::Range(0.0, 1.0));
  embed->add_option("--mode", e_mode)->check(CLI::IsMember({"theoretical", "practical", "direct"}));
  embed->add_flag("--no-fallback", e_no_fallback, "Do not fall back to later stages");
  embed->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto t = pat.load();
      const Blockade b = !blockade_path.empty()
                             ? read_blockade_file(blockade_path, g)
                             : equal_blockade(g, e_blocks.value_or(static_cast<int>(std::min<std::size_t>(
                                                     static_cast<std::size_t>(g.n()), rainbow_blocks_needed(t.n())))));
      EmbedOptions o;
      o.mode = e_mode == "theoretical" ? EmbedMode::theoretical
               : e_mode == "direct"    ? EmbedMode::direct
                                       : EmbedMode::practical;
      o.fallback = !e_no_fallback;
      const auto r = embed_rainbow_tree(g, b, t, e_c, e_sigma, o);
      for (const auto& s : r.trace)
        std::cout << "step depth=" << s.depth << " tree=" << s.tree_size << " leaf=" << s.leaf
                  << " neighbour=" << s.neighbour << " blocks=" << s.blocks_available << '/' << s.blocks_needed
                  << ' ' << s.outcome << '\n';
      for (const auto& n : r.notes) std::cout << "note " << n << '\n';
      if (!r.embedding) {
        std::cout << "absent\n";
        return kNone;
      }
      if (!is_rainbow_embedding(g, b, t, *r.embedding)) throw AnalysisError("embedding failed re-validation");
      std::cout << "stage " << to_string(r.stage) << '\n' << "present " << format_embedding(*r.embedding) << '\n';
      return kOk;
    };
  });

  // trichotomy / mainpair
  double t_eps = 0.5, t_c = 0.5;
  TrichotomyOptions tri;
  auto* trich = app.add_subcommand("trichotomy", "High-degree vertex, copy of a forest, or large anticomplete pair");
  add_host(trich);
  pat.add(trich, "Forest");
  trich->add_option("--eps", t_eps)->check(CLI::Range(0.0, 1.0));
  trich->add_option("--c", t_c)->check(CLI::Range(0.0, 1.0));
  trich->add_option("--exact-cap", tri.exact_cap);
  trich->add_option("--budget", tri.node_budget);
  add_threads(trich);
  trich->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto t = pat.load();
      tri.threads = threads;
      const auto o = trichotomy_witness(g, t, t_eps, t_c, tri);
      if (o.kind == TrichotomyOutcome::Kind::copy && !is_valid_embedding(g, t, o.copy))
        throw AnalysisError("copy failed re-validation");
      if (o.kind == TrichotomyOutcome::Kind::pair && !verify_pure_pair(g, *o.pair))
        throw AnalysisError("pair failed re-validation");
      std::cout << format_outcome(o) << '\n';
      return o.kind == TrichotomyOutcome::Kind::exhausted ? kNone : kOk;
    };
  });
  auto* mainpair = app.add_subcommand("mainpair", "Pure pair in a graph via extraction and the sparse trichotomy");
  add_host(mainpair);
  pat.add(mainpair, "Forest");
  mainpair->add_option("--eps", t_eps)->check(CLI::Range(0.0, 1.0));
  mainpair->add_option("--c", t_c)->check(CLI::Range(0.0, 1.0));
  add_threads(mainpair);
  mainpair->callback([&] {
    action = [&] {
      const auto g = read_ogr_file(host_path);
      const auto t = pat.load();
      VerysparseOptions o;
      o.eps = t_eps;
      o.search.threads = threads;
      const auto r = main_pure_pair(g, t, t_c, o);
      std::cout << "route " << r.route << '\n'
                << "extracted " << r.rodl.x.size() << ' ' << to_string(r.rodl.side) << '\n'
                << "target " << r.target << '\n';
      if (r.copy_of_t) std::cout << "copy_of_t " << format_embedding(*r.copy_of_t) << '\n';
      if (r.copy_of_complement) std::cout << "copy_of_complement " << format_embedding(*r.copy_of_complement) << '\n';
      for (const auto& n : r.notes) std::cout << "note " << n << '\n';
      if (!r.pair) {
        std::cout << "none\n";
        return kNone;
      }
      if (!verify_pure_pair(g, *r.pair)) throw AnalysisError("pair failed re-validation");
      std::cout << "min_size " << r.pair->size() << '\n' << "pair " << format_witness(*r.pair) << '\n';
      return kOk;
    };
  });

  // params
  TheoreticalParamsInput tp;
  auto* params = app.add_subcommand("params", "Theoretical constants (base-2 logs)");
  params->add_option("--phi", tp.phi)->check(CLI::PositiveNumber);
  params->add_option("--mu", tp.mu)->check(CLI::PositiveNumber);
  params->add_option("--blocks", tp.blocks, "Blocks of the input blockade");
  params->add_option("--k", tp.k);
  params->add_option("--c", tp.c);
  params->add_option("--sigma", tp.sigma);
  params->add_option("--big-sigma", tp.big_sigma);
  params->add_option("--big-lambda", tp.big_lambda);
  params->add_option("--tree-size", tp.tree_size);
  params->callback([&] {
    action = [&] {
      const auto p = theoretical_params(tp);
      std::cout << "colors " << p.colors << '\n'
                << "log2_ramsey_k " << num(p.log2_ramsey_k) << '\n'
                << "log2_beta_shrink " << num(p.log2_beta_shrink) << '\n'
                << "log2_beta_homog " << num(p.log2_beta_homog) << '\n'
                << "log2_lambda " << num(p.log2_lambda) << '\n'
                << "log2_n " << num(p.log2_n) << '\n'
                << "shrink_iteration_bound " << p.shrink_iteration_bound << '\n'
                << "leaf_phi " << num(p.leaf_phi) << '\n'
                << "leaf_mu " << num(p.leaf_mu) << '\n'
                << "log2_leaf_lambda " << num(p.log2_leaf_lambda) << '\n'
                << "log2_leaf_n " << num(p.log2_leaf_n) << '\n'
                << "log2_rainbow_k " << num(p.log2_rainbow_k) << '\n';
      return kOk;
    };
  });

  // experiment
  ExperimentConfig ex;
  std::string ex_out;
  auto* exper = app.add_subcommand("experiment", "Pure-pair scaling experiment (CSV)");
  exper->add_option("--construction", ex.construction)
      ->check(CLI::IsMember({"empty", "complete", "girth", "random"}));
  exper->add_option("--n", ex.n_list, "Host sizes")->required()->delimiter(',');
  exper->add_option("--seed", ex.seeds, "Seeds, one instance per (n, seed)")->required()->delimiter(',');
  exper->add_option("--c-grid", ex.c_grid, "Exponents for ratio lines")->delimiter(',');
  exper->add_option("--g", ex.girth, "Girth bound for the girth construction")->check(CLI::Range(3, 64));
  exper->add_option("--p", ex.p, "Edge probability for random")->check(CLI::Range(0.0, 1.0));
  exper->add_option("--exact-cap", ex.exact_cap);
  exper->add_option("--budget", ex.node_budget, "Branch-and-bound nodes per polarity");
  exper->add_flag("--timing", ex.timing, "Fill the seconds column (output no longer reproducible)");
  exper->add_option("--out", ex_out, "Write CSV here instead of stdout");
  add_threads(exper);
  exper->callback([&] {
    action = [&] {
      ex.threads = threads;
      const auto res = scaling_experiment(ex);
      const auto csv = experiment_csv(res, ex);
      if (ex_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream f(ex_out);
        if (!f) throw InputError("cannot write '" + ex_out + "'");
        f << csv;
      }
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const CapabilityError& e) {
    std::cerr << "capability: " << e.what() << '\n';
    return kNone;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
