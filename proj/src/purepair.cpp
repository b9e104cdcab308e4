#include "opp/purepair.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace opp {

std::string to_string(Polarity p) { return p == Polarity::complete ? "complete" : "anticomplete"; }

std::string to_string(PairMode m) {
  switch (m) {
    case PairMode::exact:
      return "exact";
    case PairMode::branch_bound:
      return "branch_bound";
    case PairMode::greedy:
      return "greedy";
  }
  return "?";
}

bool verify_pure_pair(const OrderedGraph& g, const PurePairWitness& w) {
  if (w.z1.host() != g.id() || w.z2.host() != g.id()) return false;
  if (w.z1.empty() || w.z2.empty()) return false;
  for (int a : w.z1.members())
    for (int b : w.z2.members()) {
      if (a == b) return false;
      if (g.adjacent(a, b) != (w.polarity == Polarity::complete)) return false;
    }
  return true;
}

std::string format_witness(const PurePairWitness& w) {
  std::ostringstream out;
  out << to_string(w.polarity) << ";";
  for (int v : w.z1.members()) out << ' ' << v;
  out << ";";
  for (int v : w.z2.members()) out << ' ' << v;
  return out.str();
}

namespace {

// Anticomplete pairs are determined by Z1: the best partner is the set of
// vertices outside the closed neighbourhood of Z1, so the search runs over Z1
// only and tracks that "available" set.
class PairSearch {
 public:
  PairSearch(const OrderedGraph& g, std::uint64_t budget) : g_(g), n_(g.n()), budget_(budget) {
    for (int v = 0; v < n_; ++v) {
      Bitset c = g.row(v);
      c.set(static_cast<std::size_t>(v));
      closed_.push_back(std::move(c));
    }
  }

  std::size_t best() const { return best_.load(); }
  const std::vector<int>& best_z1() const { return best_z1_; }
  bool out_of_budget() const { return out_of_budget_.load(); }
  std::uint64_t nodes() const { return nodes_.load(); }
  void set_stop_at(std::optional<std::size_t> s) { stop_at_ = s; }
  bool stopped() const { return stop_at_ && best_.load() >= *stop_at_; }

  void offer(std::size_t value, const std::vector<int>& z1) {
    std::lock_guard lock(mutex_);
    if (value > best_.load() || (value == best_.load() && value > 0 && z1 < best_z1_)) {
      best_.store(value);
      best_z1_ = z1;
    }
  }

  // Maximises min(|Z1|, |avail|). WLOG the least vertex of the pair is in Z1,
  // so the first choice v0 also cuts the partner side down to vertices > v0.
  void run_root(int v0) {
    Bitset avail = Bitset::full(static_cast<std::size_t>(n_));
    avail.clear_through(static_cast<std::size_t>(v0));
    avail -= closed_[v0];
    std::vector<int> z1{v0};
    dfs(z1, avail, v0 + 1);
  }

  void run_all(int threads) {
    if (threads <= 1) {
      for (int v0 = 0; v0 < n_ && !halted(); ++v0) run_root(v0);
      return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int v0 = next.fetch_add(1); v0 < n_ && !halted(); v0 = next.fetch_add(1)) run_root(v0);
      });
    for (auto& t : pool) t.join();
  }

  // Lexicographically least Z1 of size s whose available set has >= s vertices.
  std::optional<std::vector<int>> least_z1(std::size_t s) {
    std::vector<int> z1;
    Bitset avail = Bitset::full(static_cast<std::size_t>(n_));
    if (lex_dfs(z1, avail, 0, s)) return z1;
    return std::nullopt;
  }

  Bitset avail_of(const std::vector<int>& z1) const {
    Bitset avail = Bitset::full(static_cast<std::size_t>(n_));
    for (int v : z1) avail -= closed_[v];
    return avail;
  }

 private:
  bool halted() const { return stopped() || out_of_budget_.load(); }

  bool tick() {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
      out_of_budget_.store(true);
      return false;
    }
    return true;
  }

  void dfs(std::vector<int>& z1, const Bitset& avail, int next) {
    if (!tick()) return;
    const std::size_t av = avail.count();
    const std::size_t value = std::min(z1.size(), av);
    if (value > best_.load()) offer(value, z1);
    if (halted()) return;
    for (int v = next; v < n_; ++v) {
      const std::size_t cur = best_.load();
      if (std::min(z1.size() + static_cast<std::size_t>(n_ - v), av) <= cur) return;
      Bitset na = avail - closed_[v];
      if (na.count() <= cur) continue;
      z1.push_back(v);
      dfs(z1, na, v + 1);
      z1.pop_back();
      if (halted()) return;
    }
  }

  bool lex_dfs(std::vector<int>& z1, const Bitset& avail, int next, std::size_t s) {
    if (!tick()) return false;
    if (z1.size() == s) return true;
    for (int v = next; v < n_; ++v) {
      if (z1.size() + static_cast<std::size_t>(n_ - v) < s) return false;
      Bitset na = avail - closed_[v];
      if (na.count() < s) continue;
      z1.push_back(v);
      if (lex_dfs(z1, na, v + 1, s)) return true;
      z1.pop_back();
      if (out_of_budget_.load()) return false;
    }
    return false;
  }

  const OrderedGraph& g_;
  int n_;
  std::uint64_t budget_;
  std::vector<Bitset> closed_;
  std::atomic<std::size_t> best_{0};
  std::vector<int> best_z1_;
  std::mutex mutex_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> out_of_budget_{false};
  std::optional<std::size_t> stop_at_;
};

// Greedy: repeatedly move into Z1 the available vertex that removes the fewest
// available vertices; keeps the best intermediate state. Tried from several starts.
std::pair<std::size_t, std::vector<int>> greedy_pair(const OrderedGraph& g) {
  const int n = g.n();
  std::vector<Bitset> closed;
  for (int v = 0; v < n; ++v) {
    Bitset c = g.row(v);
    c.set(static_cast<std::size_t>(v));
    closed.push_back(std::move(c));
  }
  std::vector<int> starts;
  if (n <= 64) {
    for (int v = 0; v < n; ++v) starts.push_back(v);
  } else {
    for (int i = 0; i < 16; ++i) starts.push_back(static_cast<int>(static_cast<long>(i) * n / 16));
  }
  std::size_t best = 0;
  std::vector<int> best_z1;
  for (int s : starts) {
    Bitset avail = Bitset::full(static_cast<std::size_t>(n));
    std::vector<int> z1;
    int pick = s;
    while (pick >= 0) {
      z1.push_back(pick);
      avail -= closed[pick];
      const std::size_t value = std::min(z1.size(), avail.count());
      std::vector<int> sorted = z1;
      std::sort(sorted.begin(), sorted.end());
      if (value > best || (value == best && value > 0 && sorted < best_z1)) {
        best = value;
        best_z1 = sorted;
      }
      pick = -1;
      std::size_t fewest = 0;
      avail.for_each([&](int v) {
        const std::size_t lost = closed[v].count_and(avail);
        if (pick < 0 || lost < fewest) {
          pick = v;
          fewest = lost;
        }
      });
    }
  }
  return {best, best_z1};
}

PurePairWitness make_pair(const OrderedGraph& g, std::vector<int> z1, const Bitset& avail, std::size_t s) {
  std::sort(z1.begin(), z1.end());
  z1.resize(s);
  std::vector<int> z2;
  for (int v = avail.first(); v >= 0 && z2.size() < s; v = avail.next(v)) z2.push_back(v);
  PurePairWitness w{Polarity::anticomplete, VertexSet(g, z1), VertexSet(g, z2), false};
  w.verified = verify_pure_pair(g, w);
  if (!w.verified) throw AnalysisError("pure pair search produced an invalid witness");
  return w;
}

}  // namespace

std::optional<PurePairWitness> best_anticomplete_pair(const OrderedGraph& g, const PairSearchOptions& options,
                                                      PairSearchStats* stats) {
  PairSearchStats local;
  PairSearchStats& st = stats ? *stats : local;
  st = PairSearchStats{};
  st.mode_used = options.mode;
  const std::size_t floor = options.floor.value_or(0);

  if (options.mode == PairMode::exact && static_cast<std::size_t>(g.n()) > options.exact_cap)
    throw CapabilityError("exact pure-pair search is capped at " + std::to_string(options.exact_cap) +
                          " vertices; graph has " + std::to_string(g.n()));
  if (g.n() < 2) {
    st.complete = true;
    return std::nullopt;
  }

  if (options.mode == PairMode::greedy) {
    auto [value, z1] = greedy_pair(g);
    st.complete = options.floor && value >= floor;
    if (value == 0) return std::nullopt;
    PairSearch helper(g, 0);
    const std::size_t s = options.floor && value >= floor ? std::max<std::size_t>(floor, 1) : value;
    std::vector<int> trimmed = z1;
    trimmed.resize(s);
    return make_pair(g, trimmed, helper.avail_of(trimmed), s);
  }

  const bool exact = options.mode == PairMode::exact;
  PairSearch search(g, exact ? UINT64_MAX : options.node_budget);
  if (options.floor) search.set_stop_at(std::max<std::size_t>(*options.floor, 1));
  if (!exact) {
    auto [value, z1] = greedy_pair(g);
    if (value > 0) search.offer(value, z1);
  }
  if (!search.stopped()) search.run_all(exact ? options.threads : 1);
  const std::size_t best = search.best();
  st.nodes = search.nodes();
  st.complete = !search.out_of_budget() || search.stopped();
  if (best == 0) return std::nullopt;

  // Reaching the floor fixes the reported size at the floor, so the answer does
  // not depend on how far a (possibly parallel) search happened to get.
  const std::size_t s = search.stopped() ? std::max<std::size_t>(*options.floor, 1) : best;
  if (st.complete) {
    if (auto z1 = search.least_z1(s)) return make_pair(g, *z1, search.avail_of(*z1), s);
  }
  std::vector<int> z1 = search.best_z1();
  z1.resize(s);
  return make_pair(g, z1, search.avail_of(z1), s);
}

std::optional<PurePairWitness> best_complete_pair(const OrderedGraph& g, const PairSearchOptions& options,
                                                  PairSearchStats* stats) {
  const OrderedGraph gc = complement(g);
  auto w = best_anticomplete_pair(gc, options, stats);
  if (!w) return std::nullopt;
  PurePairWitness out{Polarity::complete, VertexSet(g, w->z1.members()), VertexSet(g, w->z2.members()), false};
  out.verified = verify_pure_pair(g, out);
  if (!out.verified) throw AnalysisError("complete pair lifted from the complement is invalid");
  return out;
}

namespace {

void max_clique(const std::vector<std::uint64_t>& adj, std::uint64_t cand, int size, int& best) {
  if (cand == 0) {
    best = std::max(best, size);
    return;
  }
  while (cand) {
    if (size + std::popcount(cand) <= best) return;
    const int v = std::countr_zero(cand);
    max_clique(adj, cand & adj[v], size + 1, best);
    cand &= cand - 1;
  }
}

int clique_number(const OrderedGraph& g) {
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(g.n()), 0);
  for (int v = 0; v < g.n(); ++v)
    g.row(v).for_each([&](int u) { adj[v] |= std::uint64_t{1} << u; });
  const std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
  int best = 0;
  max_clique(adj, all, 0, best);
  return best;
}

}  // namespace

std::pair<int, int> alpha_omega(const OrderedGraph& g) {
  if (g.n() > 40) throw CapabilityError("alpha_omega is capped at 40 vertices; graph has " + std::to_string(g.n()));
  return {clique_number(complement(g)), clique_number(g)};
}

TrichotomyOutcome trichotomy_witness(const OrderedGraph& g, const OrderedGraph& t, double eps, double c,
                                     const TrichotomyOptions& options) {
  if (!is_ordered_forest(t)) throw InputError("T must be an ordered forest");
  if (!(eps > 0 && eps <= 1)) throw InputError("eps must lie in (0,1]");
  if (!(c > 0 && c <= 1)) throw InputError("c must lie in (0,1]");
  const int n = g.n();
  TrichotomyOutcome out;

  const std::size_t degree_needed = std::max<std::size_t>(1, ceil_count(eps * n));
  for (int v = 0; v < n; ++v)
    if (static_cast<std::size_t>(g.degree(v)) >= degree_needed && g.degree(v) > out.degree) {
      out.vertex = v;
      out.degree = g.degree(v);
    }
  if (out.vertex >= 0) {
    // Report the maximum-degree vertex, least on ties.
    out.kind = TrichotomyOutcome::Kind::degree;
    return out;
  }

  SearchOptions so;
  so.threads = options.threads;
  if (auto e = contains_ordered(g, t, so)) {
    out.kind = TrichotomyOutcome::Kind::copy;
    out.copy = *e;
    return out;
  }

  const std::size_t floor = n >= 1 ? std::max<std::size_t>(1, ceil_count(std::pow(n, 1 - c))) : 1;
  PairSearchOptions po;
  po.floor = floor;
  po.exact_cap = options.exact_cap;
  po.node_budget = options.node_budget;
  po.threads = options.threads;
  po.mode = static_cast<std::size_t>(n) <= options.exact_cap ? PairMode::exact : PairMode::branch_bound;
  PairSearchStats st;
  auto w = best_anticomplete_pair(g, po, &st);
  if (w && w->size() >= floor) {
    out.kind = TrichotomyOutcome::Kind::pair;
    out.pair = std::move(w);
    return out;
  }
  std::ostringstream detail;
  detail << "max_degree<" << degree_needed << " no_copy best_pair=" << (w ? w->size() : 0) << "<" << floor
         << " search=" << to_string(st.mode_used) << (st.complete ? " complete" : " capped");
  out.detail = detail.str();
  return out;
}

std::string format_outcome(const TrichotomyOutcome& o) {
  switch (o.kind) {
    case TrichotomyOutcome::Kind::degree:
      return "degree " + std::to_string(o.vertex) + " " + std::to_string(o.degree);
    case TrichotomyOutcome::Kind::copy:
      return "copy " + format_embedding(o.copy);
    case TrichotomyOutcome::Kind::pair:
      return "pair " + format_witness(*o.pair);
    case TrichotomyOutcome::Kind::exhausted:
      return "exhausted " + o.detail;
  }
  return "exhausted";
}

}  // namespace opp
