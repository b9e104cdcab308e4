#include "opp/core.hpp"

#include <algorithm>
#include <atomic>
#include <string>

namespace opp {

namespace {

std::uint64_t next_graph_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

void require_disjoint_nonempty(const VertexSet& a, const VertexSet& b, const char* what) {
  if (a.empty() || b.empty()) throw InputError(std::string(what) + ": empty side");
  if (a.bits().intersects(b.bits())) throw InputError(std::string(what) + ": sides overlap");
}

}  // namespace

PreconditionError::PreconditionError(std::vector<std::string> failed)
    : Error([&] {
        std::string msg = "precondition failed:";
        for (const auto& f : failed) msg += " [" + f + "]";
        return msg;
      }()),
      failed_(std::move(failed)) {}

OrderedGraph::OrderedGraph() : id_(next_graph_id()) {}

OrderedGraph::OrderedGraph(std::vector<Bitset> rows) : id_(next_graph_id()), rows_(std::move(rows)) {}

OrderedGraph OrderedGraph::build(int n, std::span<const Edge> edges) {
  if (n < 0) throw InputError("negative vertex count");
  std::vector<Bitset> rows(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside [0," + std::to_string(n) + ")");
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    rows[u].set(static_cast<std::size_t>(v));
    rows[v].set(static_cast<std::size_t>(u));
  }
  return OrderedGraph(std::move(rows));
}

OrderedGraph OrderedGraph::empty(int n) { return build(n, std::span<const Edge>{}); }

OrderedGraph OrderedGraph::complete(int n) { return complement(empty(n)); }

OrderedGraph OrderedGraph::from_rows(std::vector<Bitset> rows) {
  const std::size_t n = rows.size();
  for (std::size_t u = 0; u < n; ++u) {
    if (rows[u].size() != n) throw InputError("adjacency row has wrong length");
    if (rows[u].test(u)) throw InputError("self-loop at vertex " + std::to_string(u));
  }
  for (std::size_t u = 0; u < n; ++u)
    rows[u].for_each([&](int v) {
      if (!rows[v].test(u)) throw InputError("adjacency rows are not symmetric");
    });
  return OrderedGraph(std::move(rows));
}

std::size_t OrderedGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& r : rows_) twice += r.count();
  return twice / 2;
}

std::vector<Edge> OrderedGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n(); ++u)
    rows_[u].for_each([&](int v) {
      if (v > u) out.emplace_back(u, v);
    });
  return out;
}

OrderedGraph OrderedGraph::induced(std::span<const int> vertices) const {
  const std::size_t k = vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (vertices[i] < 0 || vertices[i] >= n()) throw InputError("induced: vertex out of range");
    if (i > 0 && vertices[i] <= vertices[i - 1]) throw InputError("induced: vertices must be strictly increasing");
  }
  std::vector<Bitset> rows(k, Bitset(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (adjacent(vertices[i], vertices[j])) {
        rows[i].set(j);
        rows[j].set(i);
      }
  return OrderedGraph(std::move(rows));
}

OrderedGraph complement(const OrderedGraph& g) {
  std::vector<Bitset> rows;
  rows.reserve(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) {
    Bitset r = g.row(v);
    r.flip_all();
    r.reset(static_cast<std::size_t>(v));
    rows.push_back(std::move(r));
  }
  return OrderedGraph::from_rows(std::move(rows));
}

OrderedGraph reverse(const OrderedGraph& g) {
  const int n = g.n();
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(n - 1 - v, n - 1 - u);
  return OrderedGraph::build(n, edges);
}

VertexSet::VertexSet(const OrderedGraph& host, std::span<const int> members)
    : host_(host.id()), bits_(static_cast<std::size_t>(host.n())) {
  for (int v : members) {
    if (v < 0 || v >= host.n())
      throw InputError("vertex " + std::to_string(v) + " outside [0," + std::to_string(host.n()) + ")");
    bits_.set(static_cast<std::size_t>(v));
  }
  members_ = bits_.members();
}

VertexSet::VertexSet(const OrderedGraph& host, Bitset bits) : host_(host.id()), bits_(std::move(bits)) {
  if (bits_.size() != static_cast<std::size_t>(host.n())) throw InputError("vertex set size does not match host");
  members_ = bits_.members();
}

VertexSet VertexSet::interval(const OrderedGraph& host, int begin, int end) {
  std::vector<int> m;
  for (int v = begin; v < end; ++v) m.push_back(v);
  return VertexSet(host, m);
}

VertexSet VertexSet::all(const OrderedGraph& host) { return interval(host, 0, host.n()); }

void check_host(const OrderedGraph& g, const VertexSet& s) {
  if (s.host() != g.id()) throw InputError("vertex set belongs to a different graph");
}

int max_degree_from(const OrderedGraph& g, const Bitset& x, const Bitset& y) {
  int best = 0;
  x.for_each([&](int v) { best = std::max(best, static_cast<int>(g.row(v).count_and(y))); });
  return best;
}

int max_degree_from(const OrderedGraph& g, const VertexSet& x, const VertexSet& y) {
  check_host(g, x);
  check_host(g, y);
  if (x.empty()) throw InputError("max_degree_from: X is empty");
  if (x.bits().intersects(y.bits())) throw InputError("max_degree_from: X and Y overlap");
  return max_degree_from(g, x.bits(), y.bits());
}

std::size_t edges_between(const OrderedGraph& g, const Bitset& a, const Bitset& b) {
  std::size_t total = 0;
  a.for_each([&](int v) { total += g.row(v).count_and(b); });
  return total;
}

bool is_anticomplete(const OrderedGraph& g, const VertexSet& a, const VertexSet& b) {
  check_host(g, a);
  check_host(g, b);
  require_disjoint_nonempty(a, b, "is_anticomplete");
  bool ok = true;
  a.bits().for_each([&](int v) {
    if (ok && g.row(v).intersects(b.bits())) ok = false;
  });
  return ok;
}

bool is_complete(const OrderedGraph& g, const VertexSet& a, const VertexSet& b) {
  check_host(g, a);
  check_host(g, b);
  require_disjoint_nonempty(a, b, "is_complete");
  bool ok = true;
  a.bits().for_each([&](int v) {
    if (ok && !b.bits().is_subset_of(g.row(v))) ok = false;
  });
  return ok;
}

}  // namespace opp
