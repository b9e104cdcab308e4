#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opp/core.hpp"

namespace opp {

class Blockade;

/// Pattern vertex i maps to host vertex `map[i]`.
struct Embedding {
  std::vector<int> map;

  friend bool operator==(const Embedding&, const Embedding&) = default;
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

struct SearchOptions {
  /// Worker count for branch-parallel search; results are identical for any value.
  int threads = 1;
};

/// Lexicographically least order-preserving induced embedding of `pattern` into `host`.
std::optional<Embedding> contains_ordered(const OrderedGraph& host, const OrderedGraph& pattern,
                                          const SearchOptions& options = {});

/// Visits every embedding in lexicographic order until `visit` returns false.
void for_each_embedding(const OrderedGraph& host, const OrderedGraph& pattern,
                        const std::function<bool(const Embedding&)>& visit);
std::uint64_t count_embeddings(const OrderedGraph& host, const OrderedGraph& pattern);

/// Least embedding that uses at most one vertex per block and only block vertices.
std::optional<Embedding> find_rainbow_copy(const OrderedGraph& host, const Blockade& blockade,
                                           const OrderedGraph& pattern);
std::uint64_t count_rainbow_copies(const OrderedGraph& host, const Blockade& blockade, const OrderedGraph& pattern);

/// Strictly increasing and induced. Written independently of the search.
bool is_valid_embedding(const OrderedGraph& host, const OrderedGraph& pattern, const Embedding& e);
/// Valid, and rainbow with respect to `blockade`.
bool is_rainbow_embedding(const OrderedGraph& host, const Blockade& blockade, const OrderedGraph& pattern,
                          const Embedding& e);

/// Named gadget patterns: monotone_path (needs k >= 1), fox_path, double_leaf_forest, h1, h2.
OrderedGraph pattern(std::string_view name, std::optional<int> k = std::nullopt);
std::vector<std::string> pattern_names();

/// True iff the underlying graph has no cycle.
bool is_ordered_forest(const OrderedGraph& h);
bool is_ordered_tree(const OrderedGraph& h);

std::string format_embedding(const Embedding& e);

}  // namespace opp
