#pragma once

// Brute-force reference implementations. They only use OrderedGraph::adjacent
// and plain loops, never the library's search or check routines.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "opp/blockade.hpp"

namespace oracle {

using opp::OrderedGraph;

inline std::vector<int> bits_to_list(std::uint32_t mask, const std::vector<int>& pool) {
  std::vector<int> out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (mask >> i & 1U) out.push_back(pool[i]);
  return out;
}

inline int maxdeg(const OrderedGraph& g, const std::vector<int>& x, const std::vector<int>& y) {
  int best = 0;
  for (int v : x) {
    int d = 0;
    for (int u : y) d += g.adjacent(v, u) ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

inline bool forest(const OrderedGraph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.n()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (g.adjacent(u, v)) {
        const int a = find(u), b = find(v);
        if (a == b) return false;
        parent[a] = b;
      }
  return true;
}

struct TupleResult {
  std::optional<std::vector<int>> least;
  std::uint64_t count = 0;
};

/// All strictly increasing tuples, in lexicographic order. With `block_of`,
/// tuples must use block vertices from pairwise different blocks.
inline TupleResult tuples(const OrderedGraph& g, const OrderedGraph& h, const std::vector<int>* block_of = nullptr) {
  TupleResult r;
  const int k = h.n();
  std::vector<int> t(static_cast<std::size_t>(k));
  auto check = [&] {
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (g.adjacent(t[a], t[b]) != h.adjacent(a, b)) return false;
    if (block_of) {
      for (int a = 0; a < k; ++a) {
        if ((*block_of)[t[a]] < 0) return false;
        for (int b = a + 1; b < k; ++b)
          if ((*block_of)[t[a]] == (*block_of)[t[b]]) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, int pos, int from) -> void {
    if (pos == k) {
      if (check()) {
        if (!r.least) r.least = t;
        ++r.count;
      }
      return;
    }
    for (int v = from; v < g.n(); ++v) {
      t[pos] = v;
      self(self, pos + 1, v + 1);
    }
  };
  rec(rec, 0, 0);
  return r;
}

/// Largest min(|Z1|,|Z2|) over all ordered pairs of disjoint nonempty subsets
/// that are anticomplete (or complete). n <= 12.
inline std::size_t best_pair(const OrderedGraph& g, bool complete) {
  const int n = g.n();
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::size_t best = 0;
  const std::uint32_t full = (1U << n) - 1;
  for (std::uint32_t a = 1; a <= full; ++a) {
    const std::uint32_t rest = full & ~a;
    for (std::uint32_t b = rest; b; b = (b - 1) & rest) {
      const auto za = bits_to_list(a, all), zb = bits_to_list(b, all);
      const std::size_t m = std::min(za.size(), zb.size());
      if (m <= best) continue;
      bool ok = true;
      for (int u : za)
        for (int v : zb)
          if (g.adjacent(u, v) != complete) ok = false;
      if (ok) best = m;
    }
  }
  return best;
}

inline std::size_t min_count(double mu, std::size_t size) {
  // Smallest integer m with m >= mu*size (tolerant to rounding noise).
  std::size_t m = 0;
  while (static_cast<double>(m) < mu * static_cast<double>(size) - 1e-9) ++m;
  return m;
}

/// Some (X, Y) with |X| >= mu|B_h|, |Y| >= mu|B_j| and maxdeg(X,Y) <= bound(h,j),
/// over all ordered pairs of distinct positions and all subset pairs.
template <class Bound>
inline bool exists_low_subpair(const OrderedGraph& g, const opp::Blockade& b, double mu, Bound&& bound) {
  for (std::size_t h = 0; h < b.length(); ++h)
    for (std::size_t j = 0; j < b.length(); ++j) {
      if (h == j) continue;
      const auto& bh = b.block(h).members();
      const auto& bj = b.block(j).members();
      const std::size_t mh = min_count(mu, bh.size()), mj = min_count(mu, bj.size());
      const double lim = bound(h, j);
      for (std::uint32_t xm = 1; xm < (1U << bh.size()); ++xm) {
        if (static_cast<std::size_t>(__builtin_popcount(xm)) < mh) continue;
        const auto x = bits_to_list(xm, bh);
        for (std::uint32_t ym = 1; ym < (1U << bj.size()); ++ym) {
          if (static_cast<std::size_t>(__builtin_popcount(ym)) < mj) continue;
          if (maxdeg(g, x, bits_to_list(ym, bj)) <= lim + 1e-9) return true;
        }
      }
    }
  return false;
}

/// Shrink-resistance by double-subset enumeration. Blocks of at most ~10.
inline bool resistant(const OrderedGraph& g, const opp::Blockade& b, double phi, double mu) {
  const double scale = std::pow(static_cast<double>(g.n()), -phi);
  return !exists_low_subpair(g, b, mu, [&](std::size_t h, std::size_t j) {
    return maxdeg(g, b.block(h).members(), b.block(j).members()) * scale;
  });
}

/// Both band bullets, literally.
inline bool band(const OrderedGraph& g, const opp::Blockade& b, double tau, double phi, double mu) {
  for (std::size_t h = 0; h < b.length(); ++h)
    for (std::size_t j = 0; j < b.length(); ++j)
      if (h != j && maxdeg(g, b.block(h).members(), b.block(j).members()) >
                        tau * static_cast<double>(b.block(j).size()) + 1e-9)
        return false;
  const double scale = tau * std::pow(static_cast<double>(g.n()), -phi);
  return !exists_low_subpair(g, b, mu, [&](std::size_t, std::size_t j) {
    return scale * static_cast<double>(b.block(j).size());
  });
}

}  // namespace oracle
