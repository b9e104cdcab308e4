#include "opp/embed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opp {

std::string to_string(EmbedMode m) {
  switch (m) {
    case EmbedMode::theoretical:
      return "theoretical";
    case EmbedMode::practical:
      return "practical";
    case EmbedMode::direct:
      return "direct";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::sparse ? "sparse" : "dense"; }

std::size_t rainbow_blocks_needed(std::size_t tree_size) {
  if (tree_size == 0) return 0;
  if (tree_size >= 63) throw CapabilityError("rainbow_blocks_needed: tree too large");
  return (std::size_t{1} << tree_size) - 1;
}

namespace {

bool is_connected(const OrderedGraph& t) {
  return t.n() >= 1 && t.edge_count() + 1 == static_cast<std::size_t>(t.n()) && is_ordered_forest(t);
}

struct Recursion {
  const OrderedGraph& g;
  double c;
  Rigor rigor;
  const EmbedOptions& options;
  std::vector<EmbedStep>& trace;
  std::vector<std::string>& notes;

  std::optional<Embedding> run(const Blockade& a, const OrderedGraph& t, double sigma, int depth) {
    EmbedStep step;
    step.depth = depth;
    step.tree_size = static_cast<std::size_t>(t.n());
    step.blocks_available = a.length();
    if (t.n() == 0) return Embedding{};
    if (t.n() == 1) {
      step.blocks_needed = 1;
      if (a.empty()) {
        step.outcome = "no blocks";
        trace.push_back(step);
        return std::nullopt;
      }
      step.outcome = "base";
      trace.push_back(step);
      return Embedding{{a.block(0).front()}};
    }

    // Remove a leaf; the smaller tree is embedded in the H-blocks of a covered selection.
    std::vector<int> leaves;
    for (int v = 0; v < t.n(); ++v)
      if (t.degree(v) == 1) leaves.push_back(v);
    const int leaf = options.leaf == LeafPolicy::largest_position ? leaves.back() : leaves.front();
    const int nb = t.row(leaf).first();
    step.leaf = leaf;
    step.neighbour = nb;
    std::vector<int> rest;
    for (int v = 0; v < t.n(); ++v)
      if (v != leaf) rest.push_back(v);
    const OrderedGraph smaller = t.induced(rest);
    const std::size_t k_prime = options.k_prime.value_or(rainbow_blocks_needed(rest.size()));
    const std::size_t k = 2 * k_prime + 1;
    step.blocks_needed = k;
    auto fail = [&](std::string why) -> std::optional<Embedding> {
      step.outcome = why;
      trace.push_back(step);
      notes.push_back("depth " + std::to_string(depth) + ": " + why);
      return std::nullopt;
    };
    if (a.length() < k) return fail("too few blocks (" + std::to_string(a.length()) + " < " + std::to_string(k) + ")");

    FullLeafCoverParams p = options.cover;
    p.k = k;
    p.c = c;
    p.sigma = sigma;
    p.sigma_prime = (sigma + c) / 2;
    p.leaf.rigor = rigor;
    FullLeafCoverResult cover;
    try {
      cover = full_leaf_cover(g, a, p);
    } catch (const CapabilityError& e) {
      return fail(std::string("covering stage: ") + e.what());
    }
    if (cover.anticomplete) return fail("covering stage found anticomplete blocks instead");
    const Blockade& sel = *cover.selection;
    std::vector<int> hs, js;
    for (std::size_t pos = 0; pos < sel.length(); ++pos) (pos % 2 == 1 ? hs : js).push_back(sel.index(pos));
    PartitionCover pc = cover_partition(g, cover, p, hs);
    if (!pc.cover.result) return fail("leaf covering failed: " + pc.cover.failure);
    const LeafCoveredBlockade& l = *pc.cover.result;
    const Blockade b = l.blockade.sub(hs);

    step.outcome = "recurse";
    trace.push_back(step);
    std::optional<Embedding> inner = run(b, smaller, p.sigma_prime, depth + 1);
    if (!inner) return std::nullopt;

    // Pick the J-block sitting between the images before and after the leaf's position.
    const std::vector<int> block_of = b.block_of();
    int lo = INT32_MIN;
    int hi = INT32_MAX;
    int u_block = -1;
    for (std::size_t s = 0; s < rest.size(); ++s) {
      const int host = inner->map[s];
      const int idx = b.index(static_cast<std::size_t>(block_of[host]));
      if (rest[s] < leaf) lo = std::max(lo, idx);
      if (rest[s] > leaf) hi = std::min(hi, idx);
      if (rest[s] == nb) u_block = idx;
    }
    int j = -1;
    for (int cand : js)
      if (cand > lo && cand < hi) {
        j = cand;
        break;
      }
    if (j < 0) return fail("no J-block between the neighbouring images");
    const int u_image = inner->map[static_cast<std::size_t>(std::find(rest.begin(), rest.end(), nb) - rest.begin())];
    const VertexSet& x = l.covers.at({u_block, j});
    const int v_image = (g.row(u_image) & x.bits()).first();
    if (v_image < 0) return fail("cover does not reach the neighbour's image");

    Embedding e;
    for (std::size_t s = 0, r = 0; s < static_cast<std::size_t>(t.n()); ++s)
      e.map.push_back(static_cast<int>(s) == leaf ? v_image : inner->map[r++]);
    if (!is_rainbow_embedding(g, a, t, e)) return fail("assembled copy failed validation");
    return e;
  }
};

}  // namespace

EmbedResult embed_rainbow_tree(const OrderedGraph& g, const Blockade& a, const OrderedGraph& t, double c, double sigma,
                               const EmbedOptions& options) {
  if (!is_connected(t)) throw InputError("embed_rainbow_tree needs an ordered tree");
  if (a.host() != g.id()) throw InputError("blockade belongs to a different graph");
  EmbedResult r;
  std::vector<EmbedMode> stages;
  if (options.mode == EmbedMode::theoretical) stages.push_back(EmbedMode::theoretical);
  if (options.mode != EmbedMode::direct && (options.mode == EmbedMode::practical || options.fallback))
    stages.push_back(EmbedMode::practical);
  if (options.mode == EmbedMode::direct || options.fallback) stages.push_back(EmbedMode::direct);

  for (EmbedMode stage : stages) {
    r.stage = stage;
    if (stage == EmbedMode::direct) {
      r.embedding = find_rainbow_copy(g, a, t);
    } else {
      Recursion rec{g, c, stage == EmbedMode::theoretical ? Rigor::theoretical : Rigor::practical, options, r.trace,
                    r.notes};
      try {
        r.embedding = rec.run(a, t, sigma, 0);
      } catch (const PreconditionError& e) {
        r.notes.push_back(to_string(stage) + " stage stopped: " + e.what());
      } catch (const CapabilityError& e) {
        r.notes.push_back(to_string(stage) + " stage stopped: " + e.what());
      }
    }
    if (r.embedding) {
      r.validated = is_rainbow_embedding(g, a, t, *r.embedding);
      if (!r.validated) throw AnalysisError("rainbow embedding failed validation");
      return r;
    }
    if (stage != EmbedMode::direct) r.notes.push_back(to_string(stage) + " stage found no copy");
  }
  return r;
}

OrderedGraph augment_to_tree(const OrderedGraph& t) {
  std::vector<int> root(static_cast<std::size_t>(t.n()), -1);
  std::vector<int> least;
  for (int s = 0; s < t.n(); ++s) {
    if (root[s] >= 0) continue;
    least.push_back(s);
    std::vector<int> stack{s};
    root[s] = s;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      t.row(v).for_each([&](int u) {
        if (root[u] < 0) {
          root[u] = s;
          stack.push_back(u);
        }
      });
    }
  }
  if (least.size() <= 1) return t;
  std::vector<Edge> edges = t.edges();
  for (int s : least) edges.emplace_back(s, t.n());
  return OrderedGraph::build(t.n() + 1, edges);
}

VerysparseResult verysparse_witness(const OrderedGraph& g, const OrderedGraph& t, double c,
                                    const VerysparseOptions& options) {
  if (!is_ordered_forest(t)) throw InputError("T must be an ordered forest");
  if (!(c > 0 && c <= 1)) throw InputError("c must lie in (0,1]");
  if (!(options.eps > 0 && options.eps <= 1)) throw InputError("eps must lie in (0,1]");
  VerysparseResult out;
  VerysparseReport& rep = out.report;
  const int n = g.n();
  const OrderedGraph tree = t.n() == 0 ? OrderedGraph::empty(1) : augment_to_tree(t);
  rep.sigma = c / 2;
  rep.augmented_size = static_cast<std::size_t>(tree.n());
  const std::size_t k_full = tree.n() < 63 ? rainbow_blocks_needed(static_cast<std::size_t>(tree.n())) : SIZE_MAX;
  rep.blocks = std::min<std::size_t>(static_cast<std::size_t>(n), k_full);
  rep.eps_used = options.eps;
  {
    const double kk = static_cast<double>(std::max<std::size_t>(k_full, 1));
    const double m = std::max(kk, std::ceil(std::pow(2 * kk, 1 / rep.sigma)));
    rep.eps_theory = std::min(1 / m, 1 / (2 * kk));
  }
  rep.pair_floor = n >= 1 ? std::max<std::size_t>(1, ceil_count(std::pow(n, 1 - c))) : 1;
  TrichotomyOutcome& o = out.outcome;

  const std::size_t degree_needed = std::max<std::size_t>(1, ceil_count(options.eps * n));
  for (int v = 0; v < n; ++v)
    if (static_cast<std::size_t>(g.degree(v)) >= degree_needed && g.degree(v) > o.degree) {
      o.vertex = v;
      o.degree = g.degree(v);
    }
  if (o.vertex >= 0) {
    o.kind = TrichotomyOutcome::Kind::degree;
    return out;
  }

  if (t.n() == 0) {
    o.kind = TrichotomyOutcome::Kind::copy;
    rep.copy_stage = "trivial";
    return out;
  }
  if (rep.blocks >= 1) {
    const Blockade a = equal_blockade(g, static_cast<int>(rep.blocks));
    EmbedResult e = embed_rainbow_tree(g, a, tree, c, rep.sigma, options.embed);
    if (e.embedding) {
      o.kind = TrichotomyOutcome::Kind::copy;
      o.copy.map.assign(e.embedding->map.begin(), e.embedding->map.begin() + t.n());
      rep.copy_stage = "rainbow-" + to_string(e.stage);
      if (!is_valid_embedding(g, t, o.copy)) throw AnalysisError("restricted rainbow copy is not a copy of T");
      return out;
    }
  }
  SearchOptions so;
  so.threads = options.search.threads;
  if (auto e = contains_ordered(g, t, so)) {
    o.kind = TrichotomyOutcome::Kind::copy;
    o.copy = *e;
    rep.copy_stage = "matcher";
    return out;
  }

  PairSearchOptions po;
  po.floor = rep.pair_floor;
  po.exact_cap = options.search.exact_cap;
  po.node_budget = options.search.node_budget;
  po.threads = options.search.threads;
  po.mode = static_cast<std::size_t>(n) <= po.exact_cap ? PairMode::exact : PairMode::branch_bound;
  PairSearchStats st;
  auto w = best_anticomplete_pair(g, po, &st);
  if (w && w->size() >= rep.pair_floor) {
    o.kind = TrichotomyOutcome::Kind::pair;
    o.pair = std::move(w);
    return out;
  }
  o.detail = "max_degree<" + std::to_string(degree_needed) + " no_copy best_pair=" +
             std::to_string(w ? w->size() : 0) + "<" + std::to_string(rep.pair_floor) +
             " search=" + to_string(st.mode_used) + (st.complete ? " complete" : " capped");
  return out;
}

RodlResult rodl_extract(const OrderedGraph& g, double eps) {
  if (!(eps > 0 && eps <= 1)) throw InputError("eps must lie in (0,1]");
  const int n = g.n();
  RodlResult best;
  std::optional<Bitset> best_bits;
  for (Side side : {Side::sparse, Side::dense}) {
    const OrderedGraph h = side == Side::sparse ? g : complement(g);
    Bitset alive = Bitset::full(static_cast<std::size_t>(n));
    while (alive.any()) {
      const double limit = std::log2(eps) + log2_count(alive.count());
      int worst = -1;
      std::size_t worst_deg = 0;
      alive.for_each([&](int v) {
        const std::size_t d = h.row(v).count_and(alive);
        if (worst < 0 || d > worst_deg) {
          worst = v;
          worst_deg = d;
        }
      });
      if (log_lt(log2_count(worst_deg), limit)) break;
      alive.reset(static_cast<std::size_t>(worst));
    }
    if (!best_bits || alive.count() > best_bits->count()) {
      best_bits = alive;
      best.side = side;
    }
  }
  best.x = VertexSet(g, *best_bits);
  best.delta = n > 0 ? static_cast<double>(best.x.size()) / n : 0;
  // Independent re-check of the degree condition.
  const double limit = std::log2(eps) + log2_count(best.x.size());
  best.validated = true;
  for (int v : best.x.members()) {
    std::size_t d = 0;
    for (int u : best.x.members())
      if (u != v && g.adjacent(u, v) == (best.side == Side::sparse)) ++d;
    if (!log_lt(log2_count(d), limit)) best.validated = false;
  }
  return best;
}

MainPairResult main_pure_pair(const OrderedGraph& g, const OrderedGraph& t, double c,
                              const VerysparseOptions& options) {
  if (!is_ordered_forest(t)) throw InputError("T must be an ordered forest");
  MainPairResult r;
  const int n = g.n();
  r.target = n >= 1 ? std::max<std::size_t>(1, ceil_count(std::pow(n, 1 - c))) : 0;
  SearchOptions so;
  so.threads = options.search.threads;
  r.copy_of_t = contains_ordered(g, t, so);
  r.copy_of_complement = contains_ordered(g, complement(t), so);
  if (r.copy_of_t) r.notes.push_back("G contains T; continuing");
  if (r.copy_of_complement) r.notes.push_back("G contains the complement of T; continuing");
  if (n <= 1) {
    r.route = "none";
    r.notes.push_back("fewer than two vertices");
    return r;
  }

  r.rodl = rodl_extract(g, options.eps);
  const std::vector<int>& xs = r.rodl.x.members();
  if (xs.size() == 1) {
    // Any two vertices form a pure pair of singletons.
    r.route = "singleton";
    const Polarity pol = g.adjacent(0, 1) ? Polarity::complete : Polarity::anticomplete;
    r.pair = PurePairWitness{pol, VertexSet(g, {0}), VertexSet(g, {1}), false};
    r.pair->verified = verify_pure_pair(g, *r.pair);
    return r;
  }

  const OrderedGraph gx = g.induced(xs);
  const OrderedGraph h = r.rodl.side == Side::sparse ? gx : complement(gx);
  VerysparseResult vs = verysparse_witness(h, t, c, options);
  if (vs.outcome.kind == TrichotomyOutcome::Kind::pair) {
    auto lift = [&](const VertexSet& s) {
      std::vector<int> out;
      for (int v : s.members()) out.push_back(xs[v]);
      return VertexSet(g, out);
    };
    const Polarity pol = r.rodl.side == Side::sparse ? Polarity::anticomplete : Polarity::complete;
    r.pair = PurePairWitness{pol, lift(vs.outcome.pair->z1), lift(vs.outcome.pair->z2), false};
    r.pair->verified = verify_pure_pair(g, *r.pair);
    if (!r.pair->verified) throw AnalysisError("lifted pure pair failed validation");
    r.route = "verysparse";
    return r;
  }
  r.notes.push_back("trichotomy on the extracted set gave: " + format_outcome(vs.outcome));

  PairSearchOptions po;
  po.mode = PairMode::greedy;
  auto a = best_anticomplete_pair(g, po);
  auto b = best_complete_pair(g, po);
  if (a && (!b || a->size() >= b->size()))
    r.pair = std::move(a);
  else
    r.pair = std::move(b);
  r.route = r.pair ? "fallback" : "none";
  return r;
}

}  // namespace opp
