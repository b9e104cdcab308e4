#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opp/leafcover.hpp"
#include "opp/patterns.hpp"
#include "opp/purepair.hpp"

namespace opp {

enum class EmbedMode { theoretical, practical, direct };

std::string to_string(EmbedMode m);

/// Which leaf the recursion removes.
enum class LeafPolicy { largest_position, smallest_position };

struct EmbedOptions {
  EmbedMode mode = EmbedMode::practical;
  /// Fall back theoretical -> practical -> direct when a stage fails.
  bool fallback = true;
  LeafPolicy leaf = LeafPolicy::largest_position;
  /// Blocks handed to the recursive call for the smaller tree; defaults to 2^{|T'|} - 1.
  std::optional<std::size_t> k_prime;
  /// Parameter overrides for the covering stage; k, c, sigma and sigma' are set per level.
  FullLeafCoverParams cover = [] {
    FullLeafCoverParams p;
    p.phi = 0.5;
    p.mu = 0.5;
    p.big_lambda = 1;
    return p;
  }();
};

struct EmbedStep {
  int depth = 0;
  std::size_t tree_size = 0;
  /// Order position of the removed leaf and of its neighbour.
  int leaf = -1;
  int neighbour = -1;
  std::size_t blocks_needed = 0;
  std::size_t blocks_available = 0;
  std::string outcome;
};

struct EmbedResult {
  std::optional<Embedding> embedding;
  /// Stage that produced the embedding (or the last stage tried).
  EmbedMode stage = EmbedMode::direct;
  std::vector<EmbedStep> trace;
  std::vector<std::string> notes;
  bool validated = false;
};

/// Blocks the recursion needs for a tree on t vertices: 1, 3, 7, ... (2^t - 1).
std::size_t rainbow_blocks_needed(std::size_t tree_size);

/// A-rainbow copy of the ordered tree T. Throws InputError unless T is a tree.
EmbedResult embed_rainbow_tree(const OrderedGraph& g, const Blockade& a, const OrderedGraph& t, double c, double sigma,
                               const EmbedOptions& options = {});

/// T plus, when T has several components, a new last vertex joined to the least vertex of each.
OrderedGraph augment_to_tree(const OrderedGraph& t);

struct VerysparseOptions {
  /// Degree threshold fraction used in place of the theoretical epsilon.
  double eps = 0.5;
  EmbedOptions embed;
  TrichotomyOptions search;
};

struct VerysparseReport {
  double sigma = 0;
  std::size_t blocks = 0;
  double eps_used = 0;
  /// min(1/M, lambda/(2K)) with lambda = 1 and M = max(K, (2K)^{1/sigma}).
  double eps_theory = 0;
  std::size_t pair_floor = 0;
  std::size_t augmented_size = 0;
  /// Stage that produced a copy, when the copy horn fired.
  std::string copy_stage;
};

struct VerysparseResult {
  TrichotomyOutcome outcome;
  VerysparseReport report;
};

/// Degree check, then a rainbow copy of the augmented tree in the equal blockade
/// (plain containment if that fails), then a large anticomplete pair.
VerysparseResult verysparse_witness(const OrderedGraph& g, const OrderedGraph& t, double c,
                                    const VerysparseOptions& options = {});

enum class Side { sparse, dense };

std::string to_string(Side s);

struct RodlResult {
  VertexSet x;
  Side side = Side::sparse;
  double delta = 0;
  /// Every vertex of X has degree < eps|X| on the reported side.
  bool validated = false;
};

/// Greedy peeling on G and on its complement; returns the larger survivor (sparse on ties).
RodlResult rodl_extract(const OrderedGraph& g, double eps);

struct MainPairResult {
  std::optional<PurePairWitness> pair;
  /// Copies of T and of its complement found in G, when G is not free of them.
  std::optional<Embedding> copy_of_t;
  std::optional<Embedding> copy_of_complement;
  RodlResult rodl;
  /// "singleton", "verysparse", "fallback" or "none".
  std::string route;
  std::size_t target = 0;
  std::vector<std::string> notes;
};

/// Pure pair via extraction and the sparse trichotomy; falls back to the best greedy pair.
MainPairResult main_pure_pair(const OrderedGraph& g, const OrderedGraph& t, double c,
                              const VerysparseOptions& options = {});

}  // namespace opp
