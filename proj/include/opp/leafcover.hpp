#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opp/blockade.hpp"

namespace opp {

/// (w, W, lambda, phi, mu, tau). The first three are stored as base-2 logs so
/// that long parameter recurrences stay exact.
struct LeafParams {
  double log2_w = 0;
  double log2_W = 0;
  double log2_lambda = 0;
  double phi = 0;
  double mu = 0;
  double tau = 0;

  friend bool operator==(const LeafParams&, const LeafParams&) = default;
};

/// Blockade over H ∪ I ∪ J with a cover X_{h,j} ⊆ B_j for every h in H and j in J.
struct LeafCoveredBlockade {
  Blockade blockade;
  std::vector<int> h;
  std::vector<int> i;
  std::vector<int> j;
  LeafParams params;
  std::map<std::pair<int, int>, VertexSet> covers;
};

struct LeafVerdict {
  bool holds = true;
  /// 1..5 for the first failing bullet, 0 if none.
  int failed_bullet = 0;
  std::string detail;
  /// All of lambda, phi, mu, tau lie in (0,1]; reported separately from the bullets.
  bool parameters_in_range = true;
};

/// Checks the five bullets: H width and linkage, I width, covers, the band on
/// I ∪ J, and the max-degree bound from H into I ∪ J.
LeafVerdict verify_leaf_covered(const OrderedGraph& g, const LeafCoveredBlockade& l, const CheckOptions& band_check);

/// When a greedy cover stops.
enum class StopRule {
  /// As soon as the covered part reaches |G|^-phi |Y| / (16 k^2).
  claim_bound,
  /// As soon as half of Y is covered.
  half,
};

struct LeafOptions {
  /// theoretical: hypotheses throw PreconditionError and covers obey |X| <= 1/(4k^2 tau).
  /// practical: hypotheses become warnings and covers are limited only by the damage guard.
  Rigor rigor = Rigor::practical;
  CheckOptions check;
  StopRule stop = StopRule::claim_bound;
};

struct CoverRound {
  int j = 0;
  /// "half", "bound", "cap" or "stall".
  std::string branch;
  std::size_t y_before = 0;
  std::size_t y_after = 0;
  std::size_t cover_size = 0;
  /// Smallest newly covered count over the accepted cover vertices.
  std::size_t min_gain = 0;
  /// |Y'| >= |G|^-phi |Y| / (16 k^2).
  bool claim_bound_ok = false;
};

struct MatchInput {
  Blockade a;
  int zero = 0;
  std::vector<int> h;
  std::vector<int> i;
  std::vector<int> j;
  double tau = 0;
  double phi = 0;
  double mu = 0;
};

struct MatchResult {
  /// Aligned with the positions of the input blockade; may hold an empty B_0 when infeasible.
  std::vector<VertexSet> blocks;
  /// Valid only when feasible.
  Blockade blockade;
  std::map<int, VertexSet> covers;
  /// D_j for j in J and for the zero block, keyed by index.
  std::map<int, VertexSet> d;
  std::vector<CoverRound> rounds;
  bool feasible = true;
  /// The five conclusion bullets as checked after construction.
  std::array<bool, 5> bullets{};
  std::vector<std::string> warnings;
};

/// One covering step: shrinks block `zero` to a core B_0 that every J-block
/// covers with a set C_j avoiding the shrunken H and I blocks.
MatchResult match_step(const OrderedGraph& g, const MatchInput& in, const LeafOptions& options = {});

struct MoreLeavesResult {
  std::optional<LeafCoveredBlockade> result;
  MatchResult match;
  std::vector<std::string> warnings;
};

/// Moves g from I to H; parameters become (w/4, W/2, 4 lambda, 2 phi, 2 mu, 2 tau).
MoreLeavesResult more_leaves(const OrderedGraph& g, const LeafCoveredBlockade& l, int index,
                             const LeafOptions& options = {});

struct LeafCoverAllResult {
  std::optional<LeafCoveredBlockade> result;
  /// Parameters before the first move and after each move.
  std::vector<LeafParams> trace;
  /// Index moved at each step.
  std::vector<int> moved;
  std::vector<MatchResult> matches;
  std::vector<std::string> warnings;
  /// Set when a step could not be completed.
  std::string failure;
};

/// Base case: partition (∅, I, J) with parameters (|G|^{-k 2^{k-1} phi} W, W, 2k tau, phi, mu, tau),
/// W the width of the I-blocks. Then moves the members of `hset` (a subset of I) one at a time, ascending.
LeafCoverAllResult leaf_cover_all(const OrderedGraph& g, const Blockade& a, const std::vector<int>& hset,
                                  const std::vector<int>& jset, double tau, double phi, double mu,
                                  const LeafOptions& options = {});

struct FullLeafCoverParams {
  std::size_t k = 3;
  double c = 0.5;
  double sigma = 0.1;
  double sigma_prime = 0.4;
  double lambda_prime = 1;
  /// Defaults to (sigma + sigma') / 2.
  std::optional<double> big_sigma;
  /// Overrides for the derived phi = (sigma' - Sigma)/(k 2^{k-1} + 1), mu = 2^-k / k, Lambda = lambda' 4^-k / (2k).
  std::optional<double> phi;
  std::optional<double> mu;
  std::optional<double> big_lambda;
  /// Optional overrides for the leaf-cover stage, whose parameters double at every move.
  std::optional<double> leaf_phi;
  std::optional<double> leaf_mu;
  std::optional<double> leaf_tau;
  LeafOptions leaf;
};

struct FullLeafCoverResult {
  std::optional<AnticompleteBlocks> anticomplete;
  /// The k selected, contracted blocks with their band.
  std::optional<Blockade> selection;
  double tau = 1;
  double phi = 0;
  double mu = 0;
  double big_sigma = 0;
  double big_lambda = 0;
  Homog2Result homog;
  std::vector<std::string> warnings;
};

FullLeafCoverResult full_leaf_cover(const OrderedGraph& g, const Blockade& a, const FullLeafCoverParams& p);

struct PartitionCover {
  LeafCoverAllResult cover;
  /// (B_h : h in H) measured after covering.
  double shrinkage = 0;
  double linkage = 0;
  bool shrinkage_ok = false;
  bool linkage_ok = false;
};

/// Covers for one partition (H, J) of the selection; `hset` lists H, the rest is J.
PartitionCover cover_partition(const OrderedGraph& g, const FullLeafCoverResult& r, const FullLeafCoverParams& p,
                               const std::vector<int>& hset);

}  // namespace opp
