#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "opp/core.hpp"
#include "opp/patterns.hpp"

namespace opp {

enum class Polarity { complete, anticomplete };

std::string to_string(Polarity p);

struct PurePairWitness {
  Polarity polarity = Polarity::anticomplete;
  VertexSet z1;
  VertexSet z2;
  bool verified = false;

  std::size_t size() const { return std::min(z1.size(), z2.size()); }
};

/// Disjoint, nonempty, and the polarity holds for every cross pair.
bool verify_pure_pair(const OrderedGraph& g, const PurePairWitness& w);

/// `polarity; Z1; Z2` with space-separated sorted members.
std::string format_witness(const PurePairWitness& w);

enum class PairMode { exact, branch_bound, greedy };

std::string to_string(PairMode m);

struct PairSearchOptions {
  PairMode mode = PairMode::exact;
  /// Stop as soon as a pair of this min-size is known; the returned pair then has exactly this size.
  std::optional<std::size_t> floor;
  std::size_t exact_cap = 22;
  /// Search-node limit for branch_bound mode.
  std::uint64_t node_budget = 20'000'000;
  int threads = 1;
};

struct PairSearchStats {
  /// True when the search proved optimality (or reached the floor).
  bool complete = false;
  std::uint64_t nodes = 0;
  PairMode mode_used = PairMode::exact;
};

/// Anticomplete pair maximising min(|Z1|, |Z2|); among optima the lexicographically
/// least by (Z1, Z2). Both sides of the returned pair have the optimal size.
/// Exact mode throws CapabilityError above `exact_cap` vertices.
std::optional<PurePairWitness> best_anticomplete_pair(const OrderedGraph& g, const PairSearchOptions& options = {},
                                                      PairSearchStats* stats = nullptr);

/// Same search on the complement, reported as a complete pair of `g`.
std::optional<PurePairWitness> best_complete_pair(const OrderedGraph& g, const PairSearchOptions& options = {},
                                                  PairSearchStats* stats = nullptr);

/// Independence number and clique number, exact, |G| <= 40.
std::pair<int, int> alpha_omega(const OrderedGraph& g);

/// Outcome of the three-way search: a high-degree vertex, a copy of T, or a
/// large anticomplete pair; `exhausted` when none was found.
struct TrichotomyOutcome {
  enum class Kind { degree, copy, pair, exhausted };
  Kind kind = Kind::exhausted;
  int vertex = -1;
  int degree = 0;
  Embedding copy;
  std::optional<PurePairWitness> pair;
  /// Why the search gave up, for `exhausted`.
  std::string detail;
};

struct TrichotomyOptions {
  std::size_t exact_cap = 22;
  std::uint64_t node_budget = 20'000'000;
  int threads = 1;
};

/// Tries, in order: a vertex of degree >= eps|G|; a copy of T; an anticomplete
/// pair with both sides >= ceil(|G|^{1-c}). Throws InputError unless T is a forest.
TrichotomyOutcome trichotomy_witness(const OrderedGraph& g, const OrderedGraph& t, double eps, double c,
                                     const TrichotomyOptions& options = {});

/// `degree v d`, `copy m0 m1 ...`, `pair <witness>`, or `exhausted <detail>`.
std::string format_outcome(const TrichotomyOutcome& o);

}  // namespace opp
