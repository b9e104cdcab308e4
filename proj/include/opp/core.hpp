#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "opp/bitset.hpp"
#include "opp/error.hpp"
#include "opp/numeric.hpp"

namespace opp {

using Edge = std::pair<int, int>;

/// theoretical: every hypothesis is checked and a failure throws PreconditionError.
/// practical: hypotheses are recorded as warnings and the run continues; the
/// validators decide whether the output is sound.
enum class Rigor { theoretical, practical };

/// A simple graph whose vertex labels 0..n-1 are its linear order.
///
/// Adjacency is stored as one packed row per vertex. Values are immutable once
/// built; every graph carries an id so that vertex sets can be checked against
/// the graph they were made for. Copies share the id of their source.
class OrderedGraph {
 public:
  OrderedGraph();

  /// Throws InputError on an out-of-range endpoint or a self-loop. Duplicates coalesce.
  static OrderedGraph build(int n, std::span<const Edge> edges);
  static OrderedGraph build(int n, std::initializer_list<Edge> edges) {
    return build(n, std::span<const Edge>(edges.begin(), edges.size()));
  }
  static OrderedGraph empty(int n);
  static OrderedGraph complete(int n);
  /// Takes ownership of symmetric rows with an empty diagonal (checked).
  static OrderedGraph from_rows(std::vector<Bitset> rows);

  int n() const { return static_cast<int>(rows_.size()); }
  std::uint64_t id() const { return id_; }

  bool adjacent(int u, int v) const { return rows_[u].test(static_cast<std::size_t>(v)); }
  const Bitset& row(int v) const { return rows_[v]; }
  int degree(int v) const { return static_cast<int>(rows_[v].count()); }
  std::size_t edge_count() const;
  /// Sorted lexicographically with u < v in every pair.
  std::vector<Edge> edges() const;

  /// Induced subgraph on `vertices` (sorted, distinct), relabelled in order.
  OrderedGraph induced(std::span<const int> vertices) const;

  /// Same content, compared without regard to id.
  friend bool operator==(const OrderedGraph& a, const OrderedGraph& b) { return a.rows_ == b.rows_; }

 private:
  explicit OrderedGraph(std::vector<Bitset> rows);

  std::uint64_t id_;
  std::vector<Bitset> rows_;
};

OrderedGraph complement(const OrderedGraph& g);
/// Relabels i -> n-1-i.
OrderedGraph reverse(const OrderedGraph& g);

/// A subset of the vertices of one particular OrderedGraph.
class VertexSet {
 public:
  VertexSet() = default;
  /// Throws InputError for members outside [0, n). Duplicates coalesce.
  VertexSet(const OrderedGraph& host, std::span<const int> members);
  VertexSet(const OrderedGraph& host, std::initializer_list<int> members)
      : VertexSet(host, std::span<const int>(members.begin(), members.size())) {}
  VertexSet(const OrderedGraph& host, Bitset bits);
  static VertexSet interval(const OrderedGraph& host, int begin, int end);
  static VertexSet all(const OrderedGraph& host);

  std::uint64_t host() const { return host_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(int v) const { return bits_.test(static_cast<std::size_t>(v)); }
  const std::vector<int>& members() const { return members_; }
  const Bitset& bits() const { return bits_; }
  int front() const { return members_.front(); }
  int back() const { return members_.back(); }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.host_ == b.host_ && a.members_ == b.members_;
  }

 private:
  std::uint64_t host_ = 0;
  Bitset bits_;
  std::vector<int> members_;
};

/// Throws InputError when `s` was made for a different graph.
void check_host(const OrderedGraph& g, const VertexSet& s);

/// max over v in X of |N(v) ∩ Y|. X must be nonempty and disjoint from Y.
int max_degree_from(const OrderedGraph& g, const VertexSet& x, const VertexSet& y);
/// Unchecked form for internal callers that already hold bitsets.
int max_degree_from(const OrderedGraph& g, const Bitset& x, const Bitset& y);

/// Both sides must be nonempty and disjoint.
bool is_anticomplete(const OrderedGraph& g, const VertexSet& a, const VertexSet& b);
bool is_complete(const OrderedGraph& g, const VertexSet& a, const VertexSet& b);

std::size_t edges_between(const OrderedGraph& g, const Bitset& a, const Bitset& b);

}  // namespace opp
