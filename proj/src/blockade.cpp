#include "opp/blockade.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace opp {

// ---------------------------------------------------------------------------
// Blockade

Blockade::Blockade(const OrderedGraph& g, std::vector<int> indices, std::vector<VertexSet> blocks)
    : host_(g.id()), host_n_(g.n()), indices_(std::move(indices)), blocks_(std::move(blocks)) {
  if (indices_.size() != blocks_.size()) throw InputError("blockade: index count differs from block count");
  for (std::size_t p = 0; p < blocks_.size(); ++p) {
    check_host(g, blocks_[p]);
    if (blocks_[p].empty()) throw InputError("blockade: block " + std::to_string(indices_[p]) + " is empty");
    if (p > 0) {
      if (indices_[p] <= indices_[p - 1]) throw InputError("blockade: indices must be strictly increasing");
      if (blocks_[p - 1].back() >= blocks_[p].front())
        throw InputError("blockade: block " + std::to_string(indices_[p - 1]) + " does not precede block " +
                         std::to_string(indices_[p]));
    }
  }
}

namespace {

std::vector<int> one_based(std::size_t k) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 1);
  return idx;
}

}  // namespace

Blockade::Blockade(const OrderedGraph& g, std::vector<VertexSet> blocks) {
  auto idx = one_based(blocks.size());
  *this = Blockade(g, std::move(idx), std::move(blocks));
}

std::size_t Blockade::position(int index) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
  if (it == indices_.end() || *it != index) throw InputError("blockade has no block " + std::to_string(index));
  return static_cast<std::size_t>(it - indices_.begin());
}

bool Blockade::has_index(int index) const { return std::binary_search(indices_.begin(), indices_.end(), index); }

std::vector<int> Blockade::block_of() const {
  std::vector<int> out(static_cast<std::size_t>(host_n_), -1);
  for (std::size_t p = 0; p < blocks_.size(); ++p)
    for (int v : blocks_[p].members()) out[v] = static_cast<int>(p);
  return out;
}

std::size_t Blockade::width() const {
  if (blocks_.empty()) return static_cast<std::size_t>(host_n_);
  std::size_t w = blocks_.front().size();
  for (const auto& b : blocks_) w = std::min(w, b.size());
  return w;
}

Blockade Blockade::sub(std::span<const int> indices) const {
  std::vector<int> idx(indices.begin(), indices.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  Blockade out;
  out.host_ = host_;
  out.host_n_ = host_n_;
  for (int i : idx) {
    out.indices_.push_back(i);
    out.blocks_.push_back(blocks_[position(i)]);
  }
  return out;
}

Blockade Blockade::contract(const OrderedGraph& g, std::vector<VertexSet> blocks) const {
  if (blocks.size() != blocks_.size()) throw InputError("contract: wrong number of blocks");
  for (std::size_t p = 0; p < blocks.size(); ++p) {
    check_host(g, blocks[p]);
    if (!blocks[p].bits().is_subset_of(blocks_[p].bits()))
      throw InputError("contract: block " + std::to_string(indices_[p]) + " is not a subset of the original");
  }
  return Blockade(g, indices_, std::move(blocks));
}

Blockade equal_blockade(const OrderedGraph& g, int k) {
  if (k < 1) throw InputError("equal_blockade: K must be at least 1");
  if (g.n() < k) throw InputError("equal_blockade: |G| = " + std::to_string(g.n()) + " < K = " + std::to_string(k));
  const int q = g.n() / k;
  const int r = g.n() % k;
  std::vector<VertexSet> blocks;
  int start = 0;
  for (int i = 0; i < k; ++i) {
    const int len = q + (i < r ? 1 : 0);
    blocks.push_back(VertexSet::interval(g, start, start + len));
    start += len;
  }
  return Blockade(g, std::move(blocks));
}

double shrinkage_of(int host_size, std::size_t width) {
  if (host_size < 2 || width == 0) return width == 0 ? 1.0 : 0.0;
  return 1.0 - std::log2(static_cast<double>(width)) / std::log2(static_cast<double>(host_size));
}

BlockadeMeasures measures(const OrderedGraph& g, const Blockade& b) {
  if (b.host() != g.id()) throw InputError("blockade belongs to a different graph");
  BlockadeMeasures m;
  const std::size_t len = b.length();
  m.width = b.width();
  m.shrinkage = shrinkage_of(g.n(), m.width);
  m.maxdeg.assign(len, std::vector<int>(len, 0));
  for (std::size_t a = 0; a < len; ++a)
    for (std::size_t c = 0; c < len; ++c) {
      if (a == c) continue;
      const int d = max_degree_from(g, b.block(a).bits(), b.block(c).bits());
      m.maxdeg[a][c] = d;
      m.linkage = std::max(m.linkage, static_cast<double>(d) / static_cast<double>(b.block(c).size()));
      m.log2_maxdeg_product += log2_count(d);
    }
  return m;
}

// ---------------------------------------------------------------------------
// Sub-pair search shared by the shrink-resistance and band checks.

namespace {

std::size_t fraction_size(double mu, std::size_t size) {
  return std::clamp<std::size_t>(ceil_count(mu * static_cast<double>(size)), 1, size);
}

// Given Y, the mh members of B_h with fewest neighbours in Y (least vertex on ties)
// minimise the max-degree from X to Y over all X with |X| = mh.
struct LowestX {
  std::vector<int> x;
  int max_degree = 0;
};

LowestX lowest_x(const OrderedGraph& g, const std::vector<int>& xs, const Bitset& y, std::size_t mh) {
  std::vector<std::pair<int, int>> deg;
  deg.reserve(xs.size());
  for (int v : xs) deg.emplace_back(static_cast<int>(g.row(v).count_and(y)), v);
  std::sort(deg.begin(), deg.end());
  LowestX out;
  for (std::size_t i = 0; i < mh; ++i) out.x.push_back(deg[i].second);
  std::sort(out.x.begin(), out.x.end());
  out.max_degree = deg[mh - 1].first;
  return out;
}

std::optional<SubpairWitness> make_witness(const OrderedGraph& g, int h, int j, std::vector<int> x,
                                           std::vector<int> y, int maxdeg) {
  return SubpairWitness{h, j, VertexSet(g, x), VertexSet(g, y), maxdeg};
}

// Searches X ⊆ B_h, Y ⊆ B_j of sizes ceil(mu |B|) with max-degree <= 2^threshold.
std::optional<SubpairWitness> find_low_subpair(const OrderedGraph& g, const Blockade& b, std::size_t ph,
                                               std::size_t pj, double mu, double log2_threshold,
                                               const CheckOptions& options, std::size_t* trials_used) {
  const auto& xs = b.block(ph).members();
  const auto& ys = b.block(pj).members();
  const std::size_t mh = fraction_size(mu, xs.size());
  const std::size_t mj = fraction_size(mu, ys.size());
  const int h = b.index(ph);
  const int j = b.index(pj);

  if (options.mode == CheckMode::exact) {
    // Local adjacency masks over the members of B_j.
    std::vector<std::uint64_t> adj(xs.size(), 0);
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t c = 0; c < ys.size(); ++c)
        if (g.adjacent(xs[a], ys[c])) adj[a] |= std::uint64_t{1} << c;
    std::vector<std::size_t> comb(mj);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<std::pair<int, int>> deg(xs.size());
    while (true) {
      std::uint64_t mask = 0;
      for (auto c : comb) mask |= std::uint64_t{1} << c;
      for (std::size_t a = 0; a < xs.size(); ++a) deg[a] = {std::popcount(adj[a] & mask), xs[a]};
      std::nth_element(deg.begin(), deg.begin() + static_cast<std::ptrdiff_t>(mh - 1), deg.end());
      const int md = deg[mh - 1].first;
      if (log_leq(log2_count(md), log2_threshold)) {
        std::vector<int> y;
        for (auto c : comb) y.push_back(ys[c]);
        Bitset ybits = Bitset::from_members(static_cast<std::size_t>(g.n()), y);
        LowestX lx = lowest_x(g, xs, ybits, mh);
        return make_witness(g, h, j, std::move(lx.x), std::move(y), lx.max_degree);
      }
      // Next combination in lexicographic order.
      std::size_t i = mj;
      while (i > 0 && comb[i - 1] == ys.size() - mj + (i - 1)) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t t = i; t < mj; ++t) comb[t] = comb[t - 1] + 1;
    }
    return std::nullopt;
  }

  // Sampled: a few alternating greedy descents, then uniform random Y.
  std::size_t trials = 0;
  auto test_y = [&](std::vector<int> y) -> std::optional<SubpairWitness> {
    ++trials;
    std::sort(y.begin(), y.end());
    Bitset ybits = Bitset::from_members(static_cast<std::size_t>(g.n()), y);
    LowestX lx = lowest_x(g, xs, ybits, mh);
    if (log_leq(log2_count(lx.max_degree), log2_threshold))
      return make_witness(g, h, j, std::move(lx.x), std::move(y), lx.max_degree);
    return std::nullopt;
  };
  auto fewest_into = [&](const Bitset& target) {
    std::vector<std::pair<int, int>> deg;
    for (int v : ys) deg.emplace_back(static_cast<int>(g.row(v).count_and(target)), v);
    std::sort(deg.begin(), deg.end());
    std::vector<int> y;
    for (std::size_t i = 0; i < mj; ++i) y.push_back(deg[i].second);
    return y;
  };
  std::vector<int> y = fewest_into(b.block(ph).bits());
  for (int round = 0; round < 4 && trials < options.trials; ++round) {
    if (auto w = test_y(y)) {
      *trials_used += trials;
      return w;
    }
    Bitset ybits = Bitset::from_members(static_cast<std::size_t>(g.n()), y);
    LowestX lx = lowest_x(g, xs, ybits, mh);
    y = fewest_into(Bitset::from_members(static_cast<std::size_t>(g.n()), lx.x));
  }
  std::mt19937_64 rng(options.seed ^ (static_cast<std::uint64_t>(h) * 0x9E3779B97F4A7C15ULL) ^
                      (static_cast<std::uint64_t>(j) * 0xC2B2AE3D27D4EB4FULL));
  std::vector<int> pool = ys;
  while (trials < options.trials) {
    for (std::size_t i = 0; i < mj; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    if (auto w = test_y(std::vector<int>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(mj)))) {
      *trials_used += trials;
      return w;
    }
  }
  *trials_used += trials;
  return std::nullopt;
}

void require_exact_fits(const Blockade& b, const CheckOptions& options) {
  if (options.mode != CheckMode::exact) return;
  if (options.exact_cap > 63) throw InputError("exact_cap must be at most 63");
  for (std::size_t p = 0; p < b.length(); ++p)
    if (b.block(p).size() > options.exact_cap)
      throw CapabilityError("exact check needs every block to have at most " + std::to_string(options.exact_cap) +
                            " vertices; block " + std::to_string(b.index(p)) + " has " +
                            std::to_string(b.block(p).size()));
}

}  // namespace

CheckOptions auto_check(const Blockade& b, std::uint64_t seed, std::size_t exact_cap) {
  CheckOptions o;
  o.exact_cap = exact_cap;
  o.seed = seed;
  o.mode = CheckMode::exact;
  for (const auto& blk : b.blocks())
    if (blk.size() > exact_cap) o.mode = CheckMode::sampled;
  return o;
}

ResistanceVerdict is_shrink_resistant(const OrderedGraph& g, const Blockade& b, double phi, double mu,
                                      const CheckOptions& options) {
  if (b.host() != g.id()) throw InputError("blockade belongs to a different graph");
  require_exact_fits(b, options);
  ResistanceVerdict verdict;
  verdict.mode = options.mode;
  const double log2_n = log2_count(g.n());
  for (std::size_t ph = 0; ph < b.length(); ++ph)
    for (std::size_t pj = 0; pj < b.length(); ++pj) {
      if (ph == pj) continue;
      const int d = max_degree_from(g, b.block(ph).bits(), b.block(pj).bits());
      const double threshold = log2_count(d) - phi * log2_n;
      if (auto w = find_low_subpair(g, b, ph, pj, mu, threshold, options, &verdict.trials)) {
        verdict.resistant = false;
        verdict.counterexample = std::move(w);
        return verdict;
      }
    }
  return verdict;
}

BandVerdict check_band(const OrderedGraph& g, const Blockade& b, double tau, double phi, double mu,
                       const CheckOptions& options) {
  if (b.host() != g.id()) throw InputError("blockade belongs to a different graph");
  BandVerdict verdict;
  verdict.mode = options.mode;
  if (!(tau > 0) || !(phi > 0) || !(mu > 0)) throw InputError("check_band: tau, phi and mu must be positive");
  // The bullets are evaluated literally; the definition additionally wants all three in (0,1].
  verdict.tau_in_range = tau <= 1 && phi <= 1 && mu <= 1;
  auto finish = [&] {
    verdict.holds = verdict.bullets_hold && verdict.tau_in_range;
    return verdict;
  };
  require_exact_fits(b, options);
  const double log2_n = log2_count(g.n());
  const double log2_tau = std::log2(tau);
  for (std::size_t ph = 0; ph < b.length(); ++ph)
    for (std::size_t pj = 0; pj < b.length(); ++pj) {
      if (ph == pj) continue;
      const int d = max_degree_from(g, b.block(ph).bits(), b.block(pj).bits());
      if (!log_leq(log2_count(d), log2_tau + log2_count(b.block(pj).size()))) {
        verdict.bullets_hold = false;
        verdict.failed_bullet = 1;
        verdict.h = b.index(ph);
        verdict.j = b.index(pj);
        return finish();
      }
    }
  std::size_t trials = 0;
  for (std::size_t ph = 0; ph < b.length(); ++ph)
    for (std::size_t pj = 0; pj < b.length(); ++pj) {
      if (ph == pj) continue;
      // No sub-pair is large enough when mu|B| exceeds |B|.
      if (ceil_count(mu * static_cast<double>(b.block(ph).size())) > b.block(ph).size() ||
          ceil_count(mu * static_cast<double>(b.block(pj).size())) > b.block(pj).size())
        continue;
      const double threshold = log2_tau - phi * log2_n + log2_count(b.block(pj).size());
      if (auto w = find_low_subpair(g, b, ph, pj, mu, threshold, options, &trials)) {
        verdict.bullets_hold = false;
        verdict.failed_bullet = 2;
        verdict.h = w->h;
        verdict.j = w->j;
        verdict.counterexample = std::move(w);
        return finish();
      }
    }
  return finish();
}

// ---------------------------------------------------------------------------
// Shrink-resistant contraction

ShrinkResistResult shrink_resist(const OrderedGraph& g, const Blockade& b, double phi, double mu,
                                 const CheckOptions& options) {
  if (!(phi > 0 && phi <= 1) || !(mu > 0 && mu <= 1)) throw InputError("shrink_resist: phi and mu must lie in (0,1]");
  const double len = static_cast<double>(b.length());
  ShrinkResistResult r;
  r.iteration_bound = floor_count(len * len / phi);
  r.log2_beta = (1 + len * len / phi) * std::log2(mu);
  Blockade cur = b;
  while (true) {
    const BlockadeMeasures m = measures(g, cur);
    for (std::size_t a = 0; a < cur.length() && !r.anticomplete; ++a)
      for (std::size_t c = 0; c < cur.length() && !r.anticomplete; ++c)
        if (a != c && m.maxdeg[a][c] == 0)
          r.anticomplete = AnticompleteBlocks{cur.index(a), cur.index(c), cur.block(a), cur.block(c)};
    if (r.anticomplete) {
      r.certificate.resistant = false;
      r.certificate.mode = options.mode;
      r.blockade = cur;
      return r;
    }
    ResistanceVerdict v = is_shrink_resistant(g, cur, phi, mu, options);
    if (v.resistant) {
      r.certificate = std::move(v);
      r.blockade = cur;
      return r;
    }
    if (r.trace.size() >= r.iteration_bound)
      throw AnalysisError("shrink_resist exceeded its iteration bound of " + std::to_string(r.iteration_bound));
    const SubpairWitness& w = *v.counterexample;
    const std::size_t ph = cur.position(w.h);
    const std::size_t pj = cur.position(w.j);
    std::vector<VertexSet> blocks = cur.blocks();
    blocks[ph] = w.x;
    blocks[pj] = w.y;
    ContractionStep step;
    step.h = w.h;
    step.j = w.j;
    step.old_h_size = cur.block(ph).size();
    step.old_j_size = cur.block(pj).size();
    step.new_h_size = w.x.size();
    step.new_j_size = w.y.size();
    step.old_maxdeg = m.maxdeg[ph][pj];
    cur = cur.contract(g, std::move(blocks));
    step.new_maxdeg = max_degree_from(g, cur.block(ph).bits(), cur.block(pj).bits());
    step.log2_product_after = measures(g, cur).log2_maxdeg_product;
    r.trace.push_back(step);
  }
}

// ---------------------------------------------------------------------------
// Pair types and bands

int pair_type_from_logs(double a1, double a2, double log2_n, double phi) {
  if (!(phi > 0)) throw InputError("pair_type: phi must be positive");
  if (a1 == kNegInf || a2 == kNegInf) throw InputError("pair_type: both max-degrees must be at least 1");
  if (!(log2_n > 0)) throw AnalysisError("pair_type: |G| must be at least 2");
  const double step = 2 * phi * log2_n;
  const double worst = std::max(-a1, -a2);
  const int t_max = static_cast<int>(std::floor(worst / step)) + 3;
  for (int t = 0; t <= t_max; ++t) {
    const double lower = -t * step;
    const double upper = -(t - 2) * step;
    if (log_lt(lower, a1) && log_lt(lower, a2) && log_leq(a1, upper) && log_leq(a2, upper)) {
      if (!(t > 0 && t <= 1 / (2 * phi) + 2 + kLogTol))
        throw AnalysisError("pair_type: t = " + std::to_string(t) + " violates 0 < t <= 1/(2 phi) + 2");
      return t;
    }
  }
  // Report the inequality that blocks the least t satisfying the lower bounds.
  int t = 0;
  while (!(log_lt(-t * step, a1) && log_lt(-t * step, a2))) ++t;
  std::ostringstream msg;
  msg << "pair_type: no valid t; at t = " << t << " the upper bound ratio <= |G|^{-2(t-2)phi} fails for the "
      << (log_leq(a1, -(t - 2) * step) ? "d_{j,h}/|B_h|" : "d_{h,j}/|B_j|") << " ratio (log2 ratios " << a1 << ", "
      << a2 << ")";
  throw AnalysisError(msg.str());
}

int pair_type(const OrderedGraph& g, const Blockade& b, int h, int j, double phi) {
  const std::size_t ph = b.position(h);
  const std::size_t pj = b.position(j);
  const int dhj = max_degree_from(g, b.block(ph).bits(), b.block(pj).bits());
  const int djh = max_degree_from(g, b.block(pj).bits(), b.block(ph).bits());
  if (dhj < 1 || djh < 1) throw InputError("pair_type: d_{h,j} and d_{j,h} must be at least 1");
  return pair_type_from_logs(std::log2(dhj) - std::log2(b.block(pj).size()),
                             std::log2(djh) - std::log2(b.block(ph).size()), log2_count(g.n()), phi);
}

std::optional<std::vector<int>> find_monochromatic_subset(const std::vector<std::vector<int>>& colors, std::size_t k,
                                                          std::size_t exact_cap, std::vector<int>* largest) {
  const std::size_t m = colors.size();
  std::vector<int> best;
  auto note = [&](const std::vector<int>& s) {
    if (s.size() > best.size()) best = s;
  };
  if (k > m) {
    if (m > 0) note({0});
    if (largest) *largest = best;
    return std::nullopt;
  }
  if (k <= 1) {
    std::vector<int> out;
    if (k == 1) out.push_back(0);
    return out;
  }

  if (m <= exact_cap) {
    std::vector<int> chosen;
    std::optional<std::vector<int>> found;
    auto dfs = [&](auto&& self, int start, int color) -> void {
      note(chosen);
      if (chosen.size() == k) {
        found = chosen;
        return;
      }
      for (int p = start; p < static_cast<int>(m) && !found; ++p) {
        if (m - static_cast<std::size_t>(p) < k - chosen.size()) break;
        int c = color;
        bool ok = true;
        for (int q : chosen) {
          const int qc = colors[q][p];
          if (qc < 0 || (c >= 0 && qc != c)) {
            ok = false;
            break;
          }
          c = qc;
        }
        if (!ok) continue;
        chosen.push_back(p);
        self(self, p + 1, c);
        chosen.pop_back();
      }
    };
    dfs(dfs, 0, -1);
    if (!found && largest) {
      // Report the true maximum: the least subset of the largest attainable size.
      *largest = best;
      for (std::size_t kk = k - 1; kk > best.size(); --kk)
        if (auto r = find_monochromatic_subset(colors, kk, exact_cap)) {
          *largest = *r;
          break;
        }
    }
    return found;
  }

  std::vector<int> palette;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      if (colors[a][b] >= 0) palette.push_back(colors[a][b]);
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  for (int t : palette) {
    std::vector<int> chosen;
    for (int p = 0; p < static_cast<int>(m); ++p) {
      bool ok = true;
      for (int q : chosen)
        if (colors[q][p] != t) ok = false;
      if (ok) chosen.push_back(p);
    }
    note(chosen);
    if (chosen.size() >= k) {
      chosen.resize(k);
      return chosen;
    }
  }
  if (largest) *largest = best;
  return std::nullopt;
}

BandResult find_band(const OrderedGraph& g, const Blockade& b, double phi, double mu, std::size_t k,
                     const FindBandOptions& options) {
  BandResult out;
  const double log2_n = log2_count(g.n());
  std::vector<std::string> failed;
  if (!(phi > 0 && phi <= 0.2 + kLogTol)) failed.push_back("phi <= 1/5");
  if (!(mu > 0 && mu <= 1)) failed.push_back("0 < mu <= 1");
  if (!log_leq(-phi * log2_n, std::log2(1 - mu))) failed.push_back("1 - mu >= |G|^-phi");
  if (options.rigor == Rigor::theoretical) {
    if (failed.empty() && !is_shrink_resistant(g, b, phi, mu, options.check).resistant)
      failed.push_back("blockade is (phi,mu)-shrink-resistant");
    if (!failed.empty()) throw PreconditionError(failed);
  } else {
    for (auto& f : failed) out.warnings.push_back("unmet: " + f);
  }

  const std::size_t len = b.length();
  std::vector<std::vector<int>> colors(len, std::vector<int>(len, -1));
  for (std::size_t a = 0; a < len; ++a)
    for (std::size_t c = a + 1; c < len; ++c) {
      try {
        colors[a][c] = colors[c][a] = pair_type(g, b, b.index(a), b.index(c), phi);
      } catch (const Error& e) {
        out.warnings.push_back("pair (" + std::to_string(b.index(a)) + "," + std::to_string(b.index(c)) +
                               ") has no type: " + e.what());
      }
    }
  std::vector<int> largest;
  auto picked = find_monochromatic_subset(colors, k, options.exact_subset_cap, &largest);
  if (!picked)
    throw CapabilityError("find_band: no monochromatic " + std::to_string(k) + "-subset found; largest has size " +
                          std::to_string(largest.size()));
  std::vector<int> indices;
  for (int p : *picked) indices.push_back(b.index(static_cast<std::size_t>(p)));
  out.selection = b.sub(indices);

  BandCertificate& cert = out.certificate;
  cert.phi = 5 * phi;
  cert.mu = mu;
  cert.indices = indices;
  if (picked->size() >= 2) {
    cert.type = colors[(*picked)[0]][(*picked)[1]];
    cert.log2_tau_raw = -2.0 * (cert.type - 2) * phi * log2_n;
    cert.clamped = cert.log2_tau_raw > 0;
    cert.tau = cert.clamped ? 1.0 : std::exp2(cert.log2_tau_raw);
  }
  CheckOptions check = options.check;
  if (check.mode == CheckMode::exact)
    for (const auto& blk : out.selection.blocks())
      if (blk.size() > check.exact_cap) check.mode = CheckMode::sampled;
  cert.check_mode = check.mode;
  cert.verdict = check_band(g, out.selection, cert.tau, cert.phi, mu, check);
  cert.validated = cert.verdict.holds;
  out.linkage = measures(g, out.selection).linkage;
  return out;
}

HomogResult homog(const OrderedGraph& g, const Blockade& b, std::size_t k, double phi, double mu,
                  const FindBandOptions& options) {
  HomogResult r;
  const double len = static_cast<double>(b.length());
  r.log2_beta = (1 + 5 * len * len / phi) * std::log2(mu);
  r.shrink = shrink_resist(g, b, phi / 5, mu, options.check);
  if (r.shrink.anticomplete) {
    r.anticomplete = r.shrink.anticomplete;
    return r;
  }
  r.band = find_band(g, r.shrink.blockade, phi / 5, mu, k, options);
  return r;
}

Homog2Result homog2(const OrderedGraph& g, const Blockade& b, const Homog2Params& p) {
  Homog2Result r;
  const double log2_n = log2_count(g.n());
  const double len = static_cast<double>(b.length());
  r.log2_beta = (1 + 5 * len * len / p.phi) * std::log2(p.mu);
  r.log2_lambda = r.log2_beta + std::log2(p.big_lambda);
  r.log2_n_required = std::max(-r.log2_beta / (p.big_sigma - p.sigma), -std::log2(1 - p.mu) / (p.phi / 5));

  std::vector<std::string> failed;
  if (!(p.sigma < p.big_sigma && p.big_sigma < p.c)) failed.push_back("sigma < Sigma < c");
  const BlockadeMeasures m = measures(g, b);
  if (!(m.shrinkage <= p.sigma + kLogTol)) failed.push_back("shrinkage <= sigma");
  if (!log_leq(log2_count(m.linkage), r.log2_lambda)) failed.push_back("linkage <= lambda = beta Lambda");
  if (!log_leq(r.log2_n_required, log2_n)) failed.push_back("|G| >= N");
  if (p.rigor == Rigor::theoretical && !failed.empty()) throw PreconditionError(failed);
  for (auto& f : failed) r.warnings.push_back("unmet: " + f);

  if (p.k == 0 || b.length() <= 1) {
    BandResult empty;
    empty.selection = b.sub(std::vector<int>{});
    empty.certificate.validated = true;
    empty.certificate.phi = p.phi;
    empty.certificate.mu = p.mu;
    r.band = std::move(empty);
    r.shrinkage = 0;
    r.shrinkage_ok = r.tau_ok = true;
    return r;
  }

  FindBandOptions fo;
  fo.check = p.check;
  fo.rigor = p.rigor;
  HomogResult h = homog(g, b, p.k, p.phi, p.mu, fo);
  r.shrink = std::move(h.shrink);
  if (h.anticomplete) {
    r.anticomplete = h.anticomplete;
    return r;
  }
  r.band = std::move(h.band);
  for (auto& w : r.band->warnings) r.warnings.push_back(w);
  r.shrinkage = shrinkage_of(g.n(), r.band->selection.width());
  r.shrinkage_ok = r.shrinkage <= p.big_sigma + kLogTol;
  r.tau_ok = log_leq(std::log2(r.band->certificate.tau), std::log2(p.big_lambda));
  return r;
}

TheoreticalParams theoretical_params(const TheoreticalParamsInput& in) {
  TheoreticalParams t;
  t.colors = static_cast<int>(floor_count(1 / (2 * in.phi) + 2));
  const double log2_r = std::log2(static_cast<double>(t.colors));
  auto log2_ramsey = [&](double k) { return k <= 2 ? std::log2(std::max(k, 1.0)) : t.colors * k * log2_r; };
  t.log2_ramsey_k = log2_ramsey(static_cast<double>(in.k));
  const double len = static_cast<double>(in.blocks);
  t.shrink_iteration_bound = floor_count(len * len / in.phi);
  t.log2_beta_shrink = (1 + len * len / in.phi) * std::log2(in.mu);
  t.log2_beta_homog = (1 + 5 * len * len / in.phi) * std::log2(in.mu);
  t.log2_lambda = t.log2_beta_homog + std::log2(in.big_lambda);
  t.log2_n = std::max(-t.log2_beta_homog / (in.big_sigma - in.sigma), -std::log2(1 - in.mu) / (in.phi / 5));

  const double k = static_cast<double>(std::max<std::size_t>(in.k, 1));
  t.leaf_phi = (in.c - in.big_sigma) / (k * std::exp2(k - 1) + 1);
  t.leaf_mu = std::exp2(-k) / k;
  t.log2_leaf_lambda = std::log2(in.big_lambda) - 2 * k - std::log2(2 * k);
  t.log2_leaf_n = (1 + k * std::log2(16 * k * k)) / t.leaf_phi;

  double log2_k = 0;
  for (std::size_t s = 2; s <= in.tree_size; ++s) log2_k = log2_ramsey(2 * std::exp2(log2_k) + 1);
  t.log2_rainbow_k = log2_k;
  return t;
}

}  // namespace opp
