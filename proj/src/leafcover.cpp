#include "opp/leafcover.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace opp {

namespace {

std::size_t neighbours_in(const OrderedGraph& g, int v, const Bitset& s) { return g.row(v).count_and(s); }

// Exact checking refuses large blocks; fall back to sampling for those.
CheckOptions fit_check(const Blockade& b, CheckOptions check) {
  if (check.mode == CheckMode::exact)
    for (const auto& blk : b.blocks())
      if (blk.size() > check.exact_cap) check.mode = CheckMode::sampled;
  return check;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> concat(std::initializer_list<const std::vector<int>*> parts) {
  std::vector<int> out;
  for (auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return sorted_unique(out);
}

// The parts must be disjoint and together list every index of the blockade.
void require_partition(const Blockade& b, std::initializer_list<const std::vector<int>*> parts, const char* what) {
  std::vector<int> all;
  for (auto* p : parts) all.insert(all.end(), p->begin(), p->end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw InputError(std::string(what) + ": index sets overlap");
  if (all != b.indices()) throw InputError(std::string(what) + ": index sets do not partition the blockade");
}

bool max_degree_at_most(const OrderedGraph& g, const Bitset& from, const Bitset& to, double log2_bound) {
  return log_leq(log2_count(max_degree_from(g, from, to)), log2_bound);
}

double log2_big_n_needed(std::size_t k) {
  const double kk = static_cast<double>(k);
  return 1 + kk * std::log2(16 * kk * kk);
}

void settle(std::vector<std::string>& failed, Rigor rigor, std::vector<std::string>& warnings) {
  if (failed.empty()) return;
  if (rigor == Rigor::theoretical) throw PreconditionError(failed);
  for (auto& f : failed) warnings.push_back("unmet: " + f);
}

}  // namespace

LeafVerdict verify_leaf_covered(const OrderedGraph& g, const LeafCoveredBlockade& l, const CheckOptions& band_check) {
  LeafVerdict v;
  const Blockade& b = l.blockade;
  if (b.host() != g.id()) throw InputError("blockade belongs to a different graph");
  auto fail = [&](int bullet, std::string detail) {
    if (v.holds) {
      v.holds = false;
      v.failed_bullet = bullet;
      v.detail = std::move(detail);
    }
  };
  {
    std::vector<int> all = l.h;
    all.insert(all.end(), l.i.begin(), l.i.end());
    all.insert(all.end(), l.j.begin(), l.j.end());
    std::sort(all.begin(), all.end());
    if (all != b.indices() || std::adjacent_find(all.begin(), all.end()) != all.end()) {
      fail(0, "H, I, J do not partition the blockade indices");
      return v;
    }
  }
  const LeafParams& p = l.params;
  v.parameters_in_range = log_leq(p.log2_lambda, 0) && p.phi > 0 && p.phi <= 1 && p.mu > 0 && p.mu <= 1 &&
                          p.tau > 0 && p.tau <= 1;
  if (!l.h.empty()) {
    const Blockade bh = b.sub(l.h);
    const BlockadeMeasures m = measures(g, bh);
    if (!log_leq(p.log2_w, log2_count(m.width))) fail(1, "width of the H-blocks is below w");
    if (!log_leq(log2_count(m.linkage), p.log2_lambda)) fail(1, "linkage of the H-blocks exceeds lambda");
  }
  if (!l.i.empty() && !log_leq(p.log2_W, log2_count(b.sub(l.i).width()))) fail(2, "width of the I-blocks is below W");

  const std::vector<int> hi = concat({&l.h, &l.i});
  for (int h : l.h)
    for (int j : l.j) {
      auto it = l.covers.find({h, j});
      const std::string tag = "X(" + std::to_string(h) + "," + std::to_string(j) + ")";
      if (it == l.covers.end()) {
        fail(3, tag + " is missing");
        continue;
      }
      const VertexSet& x = it->second;
      if (x.host() != g.id() || !x.bits().is_subset_of(b.at(j).bits())) {
        fail(3, tag + " is not inside B_j");
        continue;
      }
      for (int u : b.at(h).members())
        if (!g.row(u).intersects(x.bits())) {
          fail(3, tag + " misses vertex " + std::to_string(u));
          break;
        }
      for (int i : hi)
        if (i != h && edges_between(g, x.bits(), b.at(i).bits()) > 0) fail(3, tag + " touches B_" + std::to_string(i));
    }

  const std::vector<int> ij = concat({&l.i, &l.j});
  if (ij.size() >= 2) {
    const Blockade band = b.sub(ij);
    const BandVerdict bv = check_band(g, band, p.tau, p.phi, p.mu, fit_check(band, band_check));
    if (!bv.bullets_hold) fail(4, "band bullet " + std::to_string(bv.failed_bullet) + " fails");
  }
  for (int h : l.h)
    for (int i : ij)
      if (!max_degree_at_most(g, b.at(h).bits(), b.at(i).bits(), std::log2(p.tau) + log2_count(b.at(i).size())))
        fail(5, "max-degree from B_" + std::to_string(h) + " to B_" + std::to_string(i) + " exceeds tau|B_i|");
  return v;
}

MatchResult match_step(const OrderedGraph& g, const MatchInput& in, const LeafOptions& options) {
  const Blockade& a = in.a;
  if (a.host() != g.id()) throw InputError("blockade belongs to a different graph");
  const std::vector<int> zero{in.zero};
  require_partition(a, {&zero, &in.h, &in.i, &in.j}, "match_step");
  if (!(in.tau > 0 && in.phi > 0 && in.mu > 0)) throw InputError("match_step: tau, phi, mu must be positive");

  MatchResult r;
  const std::size_t k = a.length();
  const double kk = static_cast<double>(k);
  const double log2_n = log2_count(g.n());
  const double log2_tau = std::log2(in.tau);
  const std::vector<int> hs = sorted_unique(in.h);
  const std::vector<int> is = sorted_unique(in.i);
  const std::vector<int> js = sorted_unique(in.j);
  const std::vector<int> band_idx = concat({&zero, &is, &js});

  std::vector<std::string> failed;
  if (!(2 * kk * in.mu <= 1 + kLogTol)) failed.push_back("2k mu <= 1");
  if (!(in.phi <= 0.5 + kLogTol)) failed.push_back("phi <= 1/2");
  if (!(4 * kk * kk * in.tau <= 1 + kLogTol)) failed.push_back("4k^2 tau <= 1");
  if (k >= 2 && !log_leq(log2_big_n_needed(k), in.phi * log2_n)) failed.push_back("|G|^phi >= 2(16k^2)^k");
  if (band_idx.size() >= 2) {
    const Blockade band = a.sub(band_idx);
    if (!check_band(g, band, in.tau, in.phi, in.mu, fit_check(band, options.check)).holds)
      failed.push_back("tau is a (phi,mu)-band for the 0, I and J blocks");
  }
  for (int h : hs)
    for (int i : band_idx)
      if (!max_degree_at_most(g, a.at(h).bits(), a.at(i).bits(), log2_tau + log2_count(a.at(i).size()))) {
        failed.push_back("max-degree from A_" + std::to_string(h) + " to A_" + std::to_string(i) + " <= tau|A_i|");
        break;
      }
  settle(failed, options.rigor, r.warnings);

  // Step 1: D_j drops vertices heavy into some H-block; D_0 also drops vertices light into some D_j.
  auto drop_heavy = [&](int idx) {
    Bitset d = a.at(idx).bits();
    for (int h : hs) {
      const Bitset& ah = a.at(h).bits();
      const std::size_t limit = ceil_count(2 * kk * in.tau * static_cast<double>(a.at(h).size()));
      a.at(idx).bits().for_each([&](int v) {
        if (neighbours_in(g, v, ah) >= limit) d.reset(static_cast<std::size_t>(v));
      });
    }
    return d;
  };
  std::map<int, Bitset> d;
  for (int j : js) d[j] = drop_heavy(j);
  Bitset d0 = drop_heavy(in.zero);
  for (int j : js) {
    const double log2_limit = log2_tau - in.phi * log2_n + log2_count(a.at(j).size());
    a.at(in.zero).bits().for_each([&](int v) {
      if (log_leq(log2_count(neighbours_in(g, v, d[j])), log2_limit)) d0.reset(static_cast<std::size_t>(v));
    });
  }
  for (auto& [j, bits] : d) r.d[j] = VertexSet(g, bits);
  r.d[in.zero] = VertexSet(g, d0);

  // Step 2: one greedy cover per J-block, each shrinking the target Y to what it covers.
  const std::vector<int> guarded = concat({&hs, &is});
  std::map<int, Bitset> damage;
  for (int i : guarded) damage[i] = Bitset(static_cast<std::size_t>(g.n()));
  const std::size_t cap = options.rigor == Rigor::theoretical
                              ? floor_count(1 / (4 * kk * kk * in.tau))
                              : static_cast<std::size_t>(g.n());
  Bitset y = d0;
  for (int j : js) {
    CoverRound round;
    round.j = j;
    round.y_before = y.count();
    const double ysize = static_cast<double>(round.y_before);
    const std::size_t target =
        options.stop == StopRule::half
            ? ceil_count(ysize / 2)
            : std::max<std::size_t>(1, ceil_count(std::exp2(-in.phi * log2_n) * ysize / (16 * kk * kk)));
    Bitset uncovered = y;
    Bitset cover(static_cast<std::size_t>(g.n()));
    std::size_t covered = 0;
    while (true) {
      if (round.y_before > 0 && covered >= target) {
        round.branch = 2 * covered >= round.y_before ? "half" : "bound";
        break;
      }
      if (round.cover_size >= cap) {
        round.branch = "cap";
        break;
      }
      int pick = -1;
      std::size_t gain = 0;
      d[j].for_each([&](int v) {
        if (cover.test(static_cast<std::size_t>(v))) return;
        const std::size_t add = neighbours_in(g, v, uncovered);
        if (add == 0 || add <= gain) return;
        for (int i : guarded) {
          const Bitset& ai = a.at(i).bits();
          const std::size_t hit = (damage[i] | (g.row(v) & ai)).count();
          if (hit > a.at(i).size() / 2) return;
        }
        pick = v;
        gain = add;
      });
      if (pick < 0) {
        round.branch = "stall";
        break;
      }
      cover.set(static_cast<std::size_t>(pick));
      ++round.cover_size;
      round.min_gain = round.cover_size == 1 ? gain : std::min(round.min_gain, gain);
      covered += gain;
      uncovered -= g.row(pick);
      for (int i : guarded) damage[i] |= g.row(pick) & a.at(i).bits();
    }
    y -= uncovered;
    round.y_after = y.count();
    round.claim_bound_ok = round.y_before > 0 && log_leq(-in.phi * log2_n + log2_count(round.y_before) -
                                                             std::log2(16 * kk * kk),
                                                         log2_count(round.y_after));
    r.covers[j] = VertexSet(g, cover);
    r.rounds.push_back(round);
  }

  r.blocks.resize(k);
  for (std::size_t p = 0; p < k; ++p) {
    const int idx = a.index(p);
    if (idx == in.zero)
      r.blocks[p] = VertexSet(g, y);
    else if (damage.count(idx))
      r.blocks[p] = VertexSet(g, a.block(p).bits() - damage[idx]);
    else
      r.blocks[p] = a.block(p);
  }
  r.feasible = std::all_of(r.blocks.begin(), r.blocks.end(), [](const VertexSet& s) { return !s.empty(); });
  if (!r.feasible) {
    r.warnings.push_back("covering left an empty block; construction is infeasible");
    return r;
  }
  r.blockade = a.contract(g, r.blocks);
  const Blockade& b = r.blockade;

  // The five conclusion bullets.
  bool ok1 = log_leq(-kk * in.phi * log2_n + log2_count(a.at(in.zero).size()), log2_count(b.at(in.zero).size()));
  for (int i : guarded) ok1 = ok1 && 2 * b.at(i).size() >= a.at(i).size();
  for (int j : js) ok1 = ok1 && b.at(j) == a.at(j);
  bool ok2 = true;
  for (int j : js) {
    const Bitset& c = r.covers[j].bits();
    ok2 = ok2 && c.is_subset_of(a.at(j).bits());
    b.at(in.zero).bits().for_each([&](int v) { ok2 = ok2 && g.row(v).intersects(c); });
    for (int i : guarded) ok2 = ok2 && edges_between(g, c, b.at(i).bits()) == 0;
  }
  const std::vector<int> ij = concat({&is, &js});
  bool ok3 = true;
  if (ij.size() >= 2) {
    const Blockade band = b.sub(ij);
    ok3 = check_band(g, band, 2 * in.tau, 2 * in.phi, 2 * in.mu, fit_check(band, options.check)).bullets_hold;
  }
  bool ok4 = true;
  for (int h : concat({&hs, &zero}))
    for (int i : ij)
      ok4 = ok4 && max_degree_at_most(g, b.at(h).bits(), b.at(i).bits(),
                                      std::log2(2 * in.tau) + log2_count(b.at(i).size()));
  bool ok5 = true;
  for (int h : hs)
    ok5 = ok5 && max_degree_at_most(g, b.at(in.zero).bits(), b.at(h).bits(),
                                    std::log2(4 * kk * in.tau) + log2_count(b.at(h).size()));
  r.bullets = {ok1, ok2, ok3, ok4, ok5};
  for (std::size_t t = 0; t < 5; ++t)
    if (!r.bullets[t]) r.warnings.push_back("conclusion bullet " + std::to_string(t + 1) + " fails");
  return r;
}

MoreLeavesResult more_leaves(const OrderedGraph& g, const LeafCoveredBlockade& l, int index,
                             const LeafOptions& options) {
  MoreLeavesResult out;
  if (std::find(l.i.begin(), l.i.end(), index) == l.i.end())
    throw InputError("more_leaves: index " + std::to_string(index) + " is not in I");
  const Blockade& a = l.blockade;
  const LeafParams& p = l.params;
  const double kk = static_cast<double>(a.length());
  const double log2_n = log2_count(g.n());

  std::vector<std::string> failed;
  if (!log_leq(std::log2(2 * kk * p.tau), p.log2_lambda)) failed.push_back("lambda >= 2k tau");
  if (!log_leq(p.log2_w - 2, -kk * p.phi * log2_n + p.log2_W)) failed.push_back("|G|^{-k phi} W >= w/4");
  settle(failed, options.rigor, out.warnings);

  MatchInput in;
  in.a = a;
  in.zero = index;
  in.h = l.h;
  for (int i : l.i)
    if (i != index) in.i.push_back(i);
  in.j = l.j;
  in.tau = p.tau;
  in.phi = p.phi;
  in.mu = p.mu;
  out.match = match_step(g, in, options);
  for (auto& w : out.match.warnings) out.warnings.push_back(w);
  if (!out.match.feasible) return out;

  // H-blocks keep only vertices with at most 8k tau |B_0| neighbours in B_0.
  const Blockade& m = out.match.blockade;
  const VertexSet& b0 = m.at(index);
  const double log2_limit = std::log2(8 * kk * p.tau) + log2_count(b0.size());
  std::vector<VertexSet> blocks = m.blocks();
  for (int h : l.h) {
    Bitset keep(static_cast<std::size_t>(g.n()));
    m.at(h).bits().for_each([&](int v) {
      if (log_leq(log2_count(neighbours_in(g, v, b0.bits())), log2_limit)) keep.set(static_cast<std::size_t>(v));
    });
    if (keep.none()) {
      out.warnings.push_back("degree filter emptied block " + std::to_string(h));
      return out;
    }
    blocks[m.position(h)] = VertexSet(g, keep);
  }

  LeafCoveredBlockade next;
  next.blockade = a.contract(g, std::move(blocks));
  const std::vector<int> moved{index};
  next.h = concat({&l.h, &moved});
  next.i = in.i;
  next.j = l.j;
  next.params = {p.log2_w - 2, p.log2_W - 1, p.log2_lambda + 2, 2 * p.phi, 2 * p.mu, 2 * p.tau};
  next.covers = l.covers;
  for (int j : l.j) next.covers[{index, j}] = out.match.covers.at(j);
  out.result = std::move(next);
  return out;
}

LeafCoverAllResult leaf_cover_all(const OrderedGraph& g, const Blockade& a, const std::vector<int>& hset,
                                  const std::vector<int>& jset, double tau, double phi, double mu,
                                  const LeafOptions& options) {
  LeafCoverAllResult out;
  if (a.host() != g.id()) throw InputError("blockade belongs to a different graph");
  const std::vector<int> js = sorted_unique(jset);
  std::vector<int> is;
  for (int idx : a.indices())
    if (!std::binary_search(js.begin(), js.end(), idx)) is.push_back(idx);
  if (is.size() + js.size() != a.length()) throw InputError("leaf_cover_all: J has indices outside the blockade");
  const std::vector<int> hs = sorted_unique(hset);
  for (int h : hs)
    if (!std::binary_search(is.begin(), is.end(), h))
      throw InputError("leaf_cover_all: H must be a subset of I; " + std::to_string(h) + " is not");

  const double kk = static_cast<double>(a.length());
  const double log2_n = log2_count(g.n());
  std::vector<std::string> failed;
  if (!(kk * std::exp2(kk) * mu <= 1 + kLogTol)) failed.push_back("k 2^k mu <= 1");
  if (!(phi * std::exp2(kk) <= 1 + kLogTol)) failed.push_back("phi 2^k <= 1");
  if (!(kk * kk * std::exp2(kk + 1) * tau <= 1 + kLogTol)) failed.push_back("k^2 2^{k+1} tau <= 1");
  if (a.length() >= 2 && !log_leq(log2_big_n_needed(a.length()), phi * log2_n))
    failed.push_back("|G|^phi >= 2(16k^2)^k");
  if (a.length() >= 2 && !check_band(g, a, tau, phi, mu, fit_check(a, options.check)).holds)
    failed.push_back("tau is a (phi,mu)-band for the blockade");
  settle(failed, options.rigor, out.warnings);

  LeafCoveredBlockade cur;
  cur.blockade = a;
  cur.i = is;
  cur.j = js;
  const double log2_W = log2_count(a.sub(is).width());
  cur.params = {-kk * std::exp2(kk - 1) * phi * log2_n + log2_W, log2_W, std::log2(2 * kk * tau), phi, mu, tau};
  out.trace.push_back(cur.params);
  for (int h : hs) {
    MoreLeavesResult step = more_leaves(g, cur, h, options);
    for (auto& w : step.warnings) out.warnings.push_back("move " + std::to_string(h) + ": " + w);
    out.matches.push_back(std::move(step.match));
    if (!step.result) {
      out.failure = "moving block " + std::to_string(h) + " into H was infeasible";
      return out;
    }
    cur = std::move(*step.result);
    out.moved.push_back(h);
    out.trace.push_back(cur.params);
  }
  out.result = std::move(cur);
  return out;
}

FullLeafCoverResult full_leaf_cover(const OrderedGraph& g, const Blockade& a, const FullLeafCoverParams& p) {
  FullLeafCoverResult r;
  const double kk = static_cast<double>(std::max<std::size_t>(p.k, 1));
  r.big_sigma = p.big_sigma.value_or((p.sigma + p.sigma_prime) / 2);
  r.phi = p.phi.value_or((p.sigma_prime - r.big_sigma) / (kk * std::exp2(kk - 1) + 1));
  r.mu = p.mu.value_or(std::exp2(-kk) / kk);
  r.big_lambda = p.big_lambda.value_or(p.lambda_prime * std::exp2(-2 * kk) / (2 * kk));

  std::vector<std::string> failed;
  if (!(p.sigma < p.sigma_prime && p.sigma_prime < p.c)) failed.push_back("sigma < sigma' < c");
  if (!(p.sigma < r.big_sigma && r.big_sigma < p.sigma_prime)) failed.push_back("sigma < Sigma < sigma'");
  settle(failed, p.leaf.rigor, r.warnings);

  if (p.k == 0) {
    r.selection = a.sub(std::vector<int>{});
    return r;
  }
  if (p.k == 1) {
    if (a.empty()) throw CapabilityError("full_leaf_cover: the blockade has no blocks");
    r.selection = a.sub(std::vector<int>{a.index(0)});
    return r;
  }

  Homog2Params hp;
  hp.k = p.k;
  hp.c = p.c;
  hp.phi = r.phi;
  hp.mu = r.mu;
  hp.sigma = p.sigma;
  hp.big_sigma = r.big_sigma;
  hp.big_lambda = r.big_lambda;
  hp.rigor = p.leaf.rigor;
  hp.check = fit_check(a, p.leaf.check);
  r.homog = homog2(g, a, hp);
  for (auto& w : r.homog.warnings) r.warnings.push_back(w);
  if (r.homog.anticomplete) {
    r.anticomplete = r.homog.anticomplete;
    return r;
  }
  r.selection = r.homog.band->selection;
  r.tau = r.homog.band->certificate.tau;
  return r;
}

PartitionCover cover_partition(const OrderedGraph& g, const FullLeafCoverResult& r, const FullLeafCoverParams& p,
                               const std::vector<int>& hset) {
  if (!r.selection) throw InputError("cover_partition: no selection to cover");
  const Blockade& sel = *r.selection;
  std::vector<int> js;
  for (int idx : sel.indices())
    if (std::find(hset.begin(), hset.end(), idx) == hset.end()) js.push_back(idx);
  PartitionCover out;
  out.cover = leaf_cover_all(g, sel, hset, js, p.leaf_tau.value_or(r.tau), p.leaf_phi.value_or(r.phi),
                             p.leaf_mu.value_or(r.mu), p.leaf);
  if (!out.cover.result) return out;
  const LeafCoveredBlockade& l = *out.cover.result;
  if (l.h.empty()) {
    out.shrinkage_ok = out.linkage_ok = true;
    return out;
  }
  const BlockadeMeasures m = measures(g, l.blockade.sub(l.h));
  out.shrinkage = m.shrinkage;
  out.linkage = m.linkage;
  out.shrinkage_ok = m.shrinkage <= p.sigma_prime + kLogTol;
  out.linkage_ok = log_leq(log2_count(m.linkage), std::log2(p.lambda_prime));
  return out;
}

}  // namespace opp
