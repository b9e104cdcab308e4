#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opp/core.hpp"

namespace opp {

/// Order-separated family of disjoint nonempty blocks, each tagged by a
/// strictly increasing integer index. Validity is checked on construction.
class Blockade {
 public:
  Blockade() = default;
  Blockade(const OrderedGraph& g, std::vector<int> indices, std::vector<VertexSet> blocks);
  /// Indices 1..K.
  Blockade(const OrderedGraph& g, std::vector<VertexSet> blocks);

  std::uint64_t host() const { return host_; }
  int host_size() const { return host_n_; }
  std::size_t length() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  const std::vector<int>& indices() const { return indices_; }
  int index(std::size_t pos) const { return indices_[pos]; }
  const VertexSet& block(std::size_t pos) const { return blocks_[pos]; }
  const std::vector<VertexSet>& blocks() const { return blocks_; }
  /// Position of `index`, throws InputError if absent.
  std::size_t position(int index) const;
  bool has_index(int index) const;
  const VertexSet& at(int index) const { return blocks_[position(index)]; }

  /// Host vertex -> block position, -1 outside every block.
  std::vector<int> block_of() const;
  /// Smallest block size; the host size when there are no blocks.
  std::size_t width() const;

  /// Sub-blockade on the given indices (any order; result sorted).
  Blockade sub(std::span<const int> indices) const;
  /// Replace blocks by subsets of themselves; `blocks` is aligned with positions.
  Blockade contract(const OrderedGraph& g, std::vector<VertexSet> blocks) const;

  friend bool operator==(const Blockade&, const Blockade&) = default;

 private:
  std::uint64_t host_ = 0;
  int host_n_ = 0;
  std::vector<int> indices_;
  std::vector<VertexSet> blocks_;
};

/// K consecutive intervals whose sizes differ by at most one, larger ones first.
Blockade equal_blockade(const OrderedGraph& g, int k);

/// 1 - log w / log n for n >= 2, and 0 otherwise.
double shrinkage_of(int host_size, std::size_t width);

struct BlockadeMeasures {
  std::size_t width = 0;
  double shrinkage = 0;
  double linkage = 0;
  /// maxdeg[a][b] is the max-degree from block position a to position b; zero on the diagonal.
  std::vector<std::vector<int>> maxdeg;
  /// Base-2 log of the product over distinct ordered pairs; -inf if any entry is 0.
  double log2_maxdeg_product = 0;
};

BlockadeMeasures measures(const OrderedGraph& g, const Blockade& b);

enum class CheckMode { exact, sampled };

struct CheckOptions {
  CheckMode mode = CheckMode::exact;
  /// Exact mode refuses blocks larger than this.
  std::size_t exact_cap = 14;
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
};

/// Exact when every block fits under the cap, sampled otherwise.
CheckOptions auto_check(const Blockade& b, std::uint64_t seed = 0, std::size_t exact_cap = 14);

/// Sub-pair X ⊆ B_h, Y ⊆ B_j of the minimum admissible sizes whose max-degree
/// is at most the threshold in force.
struct SubpairWitness {
  int h = 0;
  int j = 0;
  VertexSet x;
  VertexSet y;
  int max_degree = 0;
};

struct ResistanceVerdict {
  bool resistant = true;
  CheckMode mode = CheckMode::exact;
  std::size_t trials = 0;
  std::optional<SubpairWitness> counterexample;
};

/// (phi, mu)-shrink-resistance. Counterexamples are reported for the least
/// (h, j) and, within it, the lexicographically least Y.
ResistanceVerdict is_shrink_resistant(const OrderedGraph& g, const Blockade& b, double phi, double mu,
                                      const CheckOptions& options = {});

struct BandVerdict {
  /// Both bullets hold and tau, phi, mu all lie in (0,1].
  bool holds = true;
  /// The two bullets read literally, whatever the parameter ranges.
  bool bullets_hold = true;
  /// 0 when both bullets hold, else the failed bullet (1 or 2).
  int failed_bullet = 0;
  bool tau_in_range = true;
  CheckMode mode = CheckMode::exact;
  std::optional<SubpairWitness> counterexample;
  /// For bullet 1 failures.
  int h = 0;
  int j = 0;
};

/// Both band bullets: max-degree from B_h to B_j at most tau|B_j|, and every
/// mu-fraction sub-pair has max-degree above tau |G|^-phi |B_j|.
BandVerdict check_band(const OrderedGraph& g, const Blockade& b, double tau, double phi, double mu,
                       const CheckOptions& options = {});

struct AnticompleteBlocks {
  int h = 0;
  int j = 0;
  VertexSet zh;
  VertexSet zj;
};

struct ContractionStep {
  int h = 0;
  int j = 0;
  std::size_t old_h_size = 0;
  std::size_t old_j_size = 0;
  std::size_t new_h_size = 0;
  std::size_t new_j_size = 0;
  int old_maxdeg = 0;
  int new_maxdeg = 0;
  double log2_product_after = 0;
};

struct ShrinkResistResult {
  /// Set when a contraction (or the input) exposes d_{h,j} = 0.
  std::optional<AnticompleteBlocks> anticomplete;
  /// Final contraction; equal to the input when no step was taken.
  Blockade blockade;
  std::vector<ContractionStep> trace;
  ResistanceVerdict certificate;
  double log2_beta = 0;
  std::size_t iteration_bound = 0;
};

/// Contracts along least counterexamples until the blockade is (phi, mu)-shrink-resistant
/// or some pair of blocks becomes anticomplete.
ShrinkResistResult shrink_resist(const OrderedGraph& g, const Blockade& b, double phi, double mu,
                                 const CheckOptions& options = {});

/// Smallest t >= 0 with |G|^{-2t phi} < r <= |G|^{-2(t-2) phi} for both
/// r = d_{h,j}/|B_j| and r = d_{j,h}/|B_h|. Throws AnalysisError when no t exists.
int pair_type(const OrderedGraph& g, const Blockade& b, int h, int j, double phi);
/// Same rule on raw base-2 logs of the two ratios.
int pair_type_from_logs(double log2_ratio_hj, double log2_ratio_jh, double log2_n, double phi);

/// Lexicographically least k-subset of positions whose pairs all share one colour.
/// colors[a][b] < 0 marks a pair that may not be used. Exact DFS up to `exact_cap`
/// vertices, greedy per colour above it. When the search fails, `largest`
/// receives a largest monochromatic set (exact mode) or the biggest one seen (greedy).
std::optional<std::vector<int>> find_monochromatic_subset(const std::vector<std::vector<int>>& colors, std::size_t k,
                                                          std::size_t exact_cap = 20,
                                                          std::vector<int>* largest = nullptr);

struct BandCertificate {
  double tau = 1;
  double log2_tau_raw = 0;
  bool clamped = false;
  int type = 0;
  double phi = 0;
  double mu = 0;
  std::vector<int> indices;
  CheckMode check_mode = CheckMode::exact;
  bool validated = false;
  BandVerdict verdict;
};

struct FindBandOptions {
  CheckOptions check;
  std::size_t exact_subset_cap = 20;
  Rigor rigor = Rigor::theoretical;
};

struct BandResult {
  Blockade selection;
  BandCertificate certificate;
  double linkage = 0;
  std::vector<std::string> warnings;
};

/// Selects k blocks whose pairs share a type and certifies a (5 phi, mu)-band.
BandResult find_band(const OrderedGraph& g, const Blockade& b, double phi, double mu, std::size_t k,
                     const FindBandOptions& options = {});

struct HomogResult {
  std::optional<AnticompleteBlocks> anticomplete;
  std::optional<BandResult> band;
  ShrinkResistResult shrink;
  double log2_beta = 0;
};

/// shrink_resist with phi/5, then find_band; the band is a (phi, mu)-band.
HomogResult homog(const OrderedGraph& g, const Blockade& b, std::size_t k, double phi, double mu,
                  const FindBandOptions& options = {});

struct Homog2Params {
  std::size_t k = 0;
  double c = 0.5;
  double phi = 0.5;
  double mu = 0.5;
  double sigma = 0;
  double big_sigma = 0.25;
  double big_lambda = 1;
  Rigor rigor = Rigor::practical;
  CheckOptions check;
};

struct Homog2Result {
  std::optional<AnticompleteBlocks> anticomplete;
  std::optional<BandResult> band;
  ShrinkResistResult shrink;
  std::vector<std::string> warnings;
  double shrinkage = 0;
  bool shrinkage_ok = false;
  bool tau_ok = false;
  double log2_beta = 0;
  double log2_lambda = 0;
  double log2_n_required = 0;
};

Homog2Result homog2(const OrderedGraph& g, const Blockade& b, const Homog2Params& params);

struct TheoreticalParamsInput {
  double phi = 0.5;
  double mu = 0.5;
  std::size_t blocks = 2;
  std::size_t k = 3;
  double c = 0.5;
  double sigma = 0.1;
  double big_sigma = 0.2;
  double big_lambda = 1;
  std::size_t tree_size = 2;
};

struct TheoreticalParams {
  int colors = 0;
  double log2_ramsey_k = 0;
  double log2_beta_shrink = 0;
  double log2_beta_homog = 0;
  double log2_lambda = 0;
  double log2_n = 0;
  std::size_t shrink_iteration_bound = 0;
  /// Leaf-cover constants for k blocks: phi from (k 2^{k-1} + 1) phi = sigma' - Sigma,
  /// mu = 2^-k / k, Lambda = lambda' 4^-k / (2k), with sigma' = c.
  double leaf_phi = 0;
  double leaf_mu = 0;
  double log2_leaf_lambda = 0;
  double log2_leaf_n = 0;
  /// Blocks needed by the rainbow recursion, base-2 log: K(1) = 1, K(t) = ramsey(2K(t-1)+1).
  double log2_rainbow_k = 0;
};

/// Base-2 logs of the constants, using R_r(k) <= r^{rk} for the Ramsey bound.
TheoreticalParams theoretical_params(const TheoreticalParamsInput& in);

}  // namespace opp
