#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "opp/core.hpp"

namespace opp {

/// Keyed counter hash: SplitMix64 applied to (mixed seed) xor counter.
std::uint64_t keyed_hash(std::uint64_t seed, std::uint64_t counter);

/// Uniform double in [0,1) from the top 53 bits of keyed_hash.
double keyed_uniform(std::uint64_t seed, std::uint64_t counter);

/// G(n,p). Pair {u,v} with u < v is an edge iff keyed_uniform(seed, v(v-1)/2 + u) < p,
/// so the graph does not depend on generation order or thread count.
OrderedGraph random_ordered(int n, double p, std::uint64_t seed, int threads = 1);

/// Random recursive tree: vertex v > 0 attaches to a parent drawn from [0, v).
OrderedGraph random_tree(int n, std::uint64_t seed);

struct GirthReport {
  int n = 0;
  int girth = 0;
  double p = 0;
  std::size_t sampled_edges = 0;
  std::size_t deletions = 0;
  std::size_t kept = 0;
  /// kept >= n/2
  bool half_kept = false;
  std::vector<int> kept_vertices;
};

struct GirthResult {
  OrderedGraph graph;
  GirthReport report;
};

/// Samples G(n, n^{-1+1/g}/2) and deletes, in increasing order, every vertex
/// that still lies on a cycle of length at most g. Returns the surviving induced subgraph.
GirthResult girth_construction(int n, int g, std::uint64_t seed);

/// Some cycle of length at most `max_len` (vertices in cycle order), by bounded DFS.
std::optional<std::vector<int>> find_short_cycle(const OrderedGraph& g, int max_len);

}  // namespace opp
