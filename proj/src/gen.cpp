#include "opp/gen.hpp"

#include <cmath>
#include <deque>
#include <thread>

namespace opp {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t keyed_hash(std::uint64_t seed, std::uint64_t counter) { return splitmix(splitmix(seed) ^ counter); }

double keyed_uniform(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(keyed_hash(seed, counter) >> 11) * 0x1p-53;
}

OrderedGraph random_ordered(int n, double p, std::uint64_t seed, int threads) {
  if (n < 0) throw InputError("negative vertex count");
  if (!(p >= 0 && p <= 1)) throw InputError("p must lie in [0,1]");
  // Each worker fills the lower triangle of its own rows; symmetrised afterwards.
  std::vector<Bitset> rows(static_cast<std::size_t>(n), Bitset(static_cast<std::size_t>(n)));
  auto fill = [&](int begin, int end) {
    for (int v = begin; v < end; ++v) {
      const std::uint64_t base = static_cast<std::uint64_t>(v) * static_cast<std::uint64_t>(v - 1) / 2;
      for (int u = 0; u < v; ++u)
        if (keyed_uniform(seed, base + static_cast<std::uint64_t>(u)) < p) rows[v].set(static_cast<std::size_t>(u));
    }
  };
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    fill(0, n);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(fill, static_cast<int>(static_cast<long>(n) * t / threads),
                        static_cast<int>(static_cast<long>(n) * (t + 1) / threads));
    for (auto& t : pool) t.join();
  }
  for (int v = 0; v < n; ++v)
    rows[v].for_each([&](int u) {
      if (u < v) rows[u].set(static_cast<std::size_t>(v));
    });
  return OrderedGraph::from_rows(std::move(rows));
}

OrderedGraph random_tree(int n, std::uint64_t seed) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v)
    edges.emplace_back(static_cast<int>(keyed_hash(seed, static_cast<std::uint64_t>(v)) % static_cast<std::uint64_t>(v)),
                       v);
  return OrderedGraph::build(n, edges);
}

namespace {

// Length of the shortest cycle through s inside `alive`, searching only cycles of
// length <= g: BFS from s, tagging each vertex with the neighbour of s it hangs
// below; an edge joining two different branches closes a cycle.
bool on_short_cycle(const OrderedGraph& g, const Bitset& alive, int s, int max_len) {
  const int n = g.n();
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<int> branch(static_cast<std::size_t>(n), -1);
  std::deque<int> queue;
  depth[s] = 0;
  (g.row(s) & alive).for_each([&](int u) {
    depth[u] = 1;
    branch[u] = u;
    queue.push_back(u);
  });
  const int max_depth = max_len / 2;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    bool found = false;
    (g.row(x) & alive).for_each([&](int y) {
      if (found || y == s) return;
      if (depth[y] < 0) {
        if (depth[x] < max_depth) {
          depth[y] = depth[x] + 1;
          branch[y] = branch[x];
          queue.push_back(y);
        }
      } else if (branch[y] != branch[x] && depth[x] + depth[y] + 1 <= max_len) {
        found = true;
      }
    });
    if (found) return true;
  }
  return false;
}

}  // namespace

GirthResult girth_construction(int n, int g, std::uint64_t seed) {
  if (g < 3) throw InputError("girth_construction needs g >= 3");
  if (n < 4) throw InputError("girth_construction needs n >= 4");
  GirthResult out;
  GirthReport& rep = out.report;
  rep.n = n;
  rep.girth = g;
  rep.p = 0.5 * std::pow(static_cast<double>(n), -1.0 + 1.0 / g);
  const OrderedGraph full = random_ordered(n, rep.p, seed);
  rep.sampled_edges = full.edge_count();
  Bitset alive = Bitset::full(static_cast<std::size_t>(n));
  // A surviving short cycle would have had its least vertex deleted when that
  // vertex was examined, so one increasing pass suffices.
  for (int s = 0; s < n; ++s)
    if (on_short_cycle(full, alive, s, g)) {
      alive.reset(static_cast<std::size_t>(s));
      ++rep.deletions;
    }
  rep.kept_vertices = alive.members();
  rep.kept = rep.kept_vertices.size();
  rep.half_kept = 2 * rep.kept >= static_cast<std::size_t>(n);
  out.graph = full.induced(rep.kept_vertices);
  return out;
}

std::optional<std::vector<int>> find_short_cycle(const OrderedGraph& g, int max_len) {
  // Cycles are enumerated from their least vertex, extending through larger vertices only.
  std::vector<int> path;
  std::vector<char> on_path(static_cast<std::size_t>(g.n()), 0);
  std::optional<std::vector<int>> found;
  auto extend = [&](auto&& self, int start, int v) -> void {
    for (int u = g.row(v).next(start); u >= 0 && !found; u = g.row(v).next(u)) {
      if (on_path[u]) continue;
      if (static_cast<int>(path.size()) + 1 > max_len) return;
      path.push_back(u);
      on_path[u] = 1;
      if (path.size() >= 3 && g.adjacent(u, start))
        found = path;
      else
        self(self, start, u);
      path.pop_back();
      on_path[u] = 0;
    }
  };
  for (int s = 0; s < g.n() && !found; ++s) {
    path = {s};
    on_path[s] = 1;
    extend(extend, s, s);
    on_path[s] = 0;
  }
  return found;
}

}  // namespace opp
