#include "opp/patterns.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <thread>

#include "opp/blockade.hpp"

namespace opp {

namespace {

// Depth-first matcher over pattern vertices in label order. Candidates for
// pattern vertex i must lie strictly after the floor set by vertex i-1 and
// agree in adjacency with every earlier image.
class Matcher {
 public:
  Matcher(const OrderedGraph& host, const OrderedGraph& pattern, const Bitset* allowed,
          const std::vector<int>* block_of, const Blockade* blockade)
      : host_(host), pattern_(pattern), allowed_(allowed), block_of_(block_of), blockade_(blockade) {
    map_.assign(static_cast<std::size_t>(pattern.n()), -1);
  }

  // Candidates for the first pattern vertex.
  Bitset root_candidates() const {
    Bitset c = allowed_ ? *allowed_ : Bitset::full(static_cast<std::size_t>(host_.n()));
    trim_tail(c, 0);
    return c;
  }

  // Runs the search below a fixed image for pattern vertex 0.
  bool search_from(int first, const std::function<bool(const Embedding&)>& visit) {
    map_[0] = first;
    return descend(1, visit);
  }

  bool search(const std::function<bool(const Embedding&)>& visit) {
    if (pattern_.n() == 0) return visit(Embedding{});
    if (pattern_.n() > host_.n()) return true;
    bool keep_going = true;
    root_candidates().for_each([&](int v) {
      if (!keep_going) return;
      keep_going = search_from(v, visit);
    });
    return keep_going;
  }

 private:
  // Host vertices beyond n - remaining cannot start a long enough tail.
  void trim_tail(Bitset& c, int level) const {
    const int remaining = pattern_.n() - level;
    for (int v = host_.n() - remaining + 1; v < host_.n(); ++v)
      if (v >= 0) c.reset(static_cast<std::size_t>(v));
  }

  Bitset candidates(int level) const {
    Bitset c = allowed_ ? *allowed_ : Bitset::full(static_cast<std::size_t>(host_.n()));
    const int prev = map_[level - 1];
    int floor = prev;
    if (blockade_) floor = blockade_->block(static_cast<std::size_t>((*block_of_)[prev])).back();
    c.clear_through(static_cast<std::size_t>(floor));
    for (int a = 0; a < level; ++a) {
      if (pattern_.adjacent(a, level))
        c &= host_.row(map_[a]);
      else
        c -= host_.row(map_[a]);
    }
    trim_tail(c, level);
    return c;
  }

  bool descend(int level, const std::function<bool(const Embedding&)>& visit) {
    if (level == pattern_.n()) return visit(Embedding{map_});
    bool keep_going = true;
    candidates(level).for_each([&](int v) {
      if (!keep_going) return;
      map_[level] = v;
      keep_going = descend(level + 1, visit);
    });
    map_[level] = -1;
    return keep_going;
  }

  const OrderedGraph& host_;
  const OrderedGraph& pattern_;
  const Bitset* allowed_;
  const std::vector<int>* block_of_;
  const Blockade* blockade_;
  std::vector<int> map_;
};

std::optional<Embedding> first_embedding(Matcher& m) {
  std::optional<Embedding> found;
  m.search([&](const Embedding& e) {
    found = e;
    return false;
  });
  return found;
}

}  // namespace

std::optional<Embedding> contains_ordered(const OrderedGraph& host, const OrderedGraph& pattern,
                                          const SearchOptions& options) {
  if (pattern.n() > host.n()) return std::nullopt;
  if (options.threads <= 1 || pattern.n() <= 1) {
    Matcher m(host, pattern, nullptr, nullptr, nullptr);
    return first_embedding(m);
  }
  // Fan out on the image of pattern vertex 0; the least successful root wins.
  const std::vector<int> roots = Matcher(host, pattern, nullptr, nullptr, nullptr).root_candidates().members();
  std::vector<std::optional<Embedding>> results(roots.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{roots.size()};
  auto worker = [&] {
    Matcher m(host, pattern, nullptr, nullptr, nullptr);
    for (std::size_t i = next.fetch_add(1); i < roots.size(); i = next.fetch_add(1)) {
      if (i > best.load()) break;
      m.search_from(roots[i], [&](const Embedding& e) {
        results[i] = e;
        return false;
      });
      if (results[i]) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < options.threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (best.load() < roots.size()) return results[best.load()];
  return std::nullopt;
}

void for_each_embedding(const OrderedGraph& host, const OrderedGraph& pattern,
                        const std::function<bool(const Embedding&)>& visit) {
  Matcher m(host, pattern, nullptr, nullptr, nullptr);
  m.search(visit);
}

std::uint64_t count_embeddings(const OrderedGraph& host, const OrderedGraph& pattern) {
  std::uint64_t count = 0;
  for_each_embedding(host, pattern, [&](const Embedding&) {
    ++count;
    return true;
  });
  return count;
}

namespace {

template <class Visit>
void rainbow_search(const OrderedGraph& host, const Blockade& blockade, const OrderedGraph& pattern, Visit&& visit) {
  if (blockade.host() != host.id()) throw InputError("blockade belongs to a different graph");
  if (static_cast<std::size_t>(pattern.n()) > blockade.length()) return;
  Bitset allowed(static_cast<std::size_t>(host.n()));
  for (const auto& b : blockade.blocks()) allowed |= b.bits();
  const std::vector<int> block_of = blockade.block_of();
  Matcher m(host, pattern, &allowed, &block_of, &blockade);
  m.search(visit);
}

}  // namespace

std::optional<Embedding> find_rainbow_copy(const OrderedGraph& host, const Blockade& blockade,
                                           const OrderedGraph& pattern) {
  std::optional<Embedding> found;
  rainbow_search(host, blockade, pattern, [&](const Embedding& e) {
    found = e;
    return false;
  });
  return found;
}

std::uint64_t count_rainbow_copies(const OrderedGraph& host, const Blockade& blockade, const OrderedGraph& pattern) {
  std::uint64_t count = 0;
  rainbow_search(host, blockade, pattern, [&](const Embedding&) {
    ++count;
    return true;
  });
  return count;
}

bool is_valid_embedding(const OrderedGraph& host, const OrderedGraph& pattern, const Embedding& e) {
  if (e.map.size() != static_cast<std::size_t>(pattern.n())) return false;
  for (std::size_t i = 0; i < e.map.size(); ++i) {
    if (e.map[i] < 0 || e.map[i] >= host.n()) return false;
    if (i > 0 && e.map[i] <= e.map[i - 1]) return false;
  }
  for (int a = 0; a < pattern.n(); ++a)
    for (int b = a + 1; b < pattern.n(); ++b)
      if (pattern.adjacent(a, b) != host.adjacent(e.map[a], e.map[b])) return false;
  return true;
}

bool is_rainbow_embedding(const OrderedGraph& host, const Blockade& blockade, const OrderedGraph& pattern,
                          const Embedding& e) {
  if (blockade.host() != host.id()) return false;
  if (!is_valid_embedding(host, pattern, e)) return false;
  std::vector<int> used;
  for (int v : e.map) {
    int found = -1;
    for (std::size_t p = 0; p < blockade.length(); ++p)
      if (blockade.block(p).contains(v)) found = static_cast<int>(p);
    if (found < 0) return false;
    if (std::find(used.begin(), used.end(), found) != used.end()) return false;
    used.push_back(found);
  }
  return true;
}

OrderedGraph pattern(std::string_view name, std::optional<int> k) {
  if (name == "monotone_path") {
    if (!k || *k < 1) throw InputError("monotone_path needs k >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < *k; ++i) edges.emplace_back(i, i + 1);
    return OrderedGraph::build(*k, edges);
  }
  if (name == "fox_path") return OrderedGraph::build(3, {{0, 1}, {1, 2}});
  if (name == "double_leaf_forest") return OrderedGraph::build(4, {{0, 1}, {1, 3}});
  if (name == "h1") return OrderedGraph::build(4, {{0, 1}, {0, 2}, {0, 3}});
  if (name == "h2") return OrderedGraph::build(4, {{1, 2}, {0, 2}, {0, 3}});
  throw InputError("unknown pattern '" + std::string(name) + "'");
}

std::vector<std::string> pattern_names() { return {"monotone_path", "fox_path", "double_leaf_forest", "h1", "h2"}; }

namespace {

int component_count(const OrderedGraph& h) {
  std::vector<char> seen(static_cast<std::size_t>(h.n()), 0);
  int components = 0;
  for (int s = 0; s < h.n(); ++s) {
    if (seen[s]) continue;
    ++components;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      h.row(v).for_each([&](int u) {
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
      });
    }
  }
  return components;
}

}  // namespace

bool is_ordered_forest(const OrderedGraph& h) {
  return h.edge_count() + static_cast<std::size_t>(component_count(h)) == static_cast<std::size_t>(h.n());
}

bool is_ordered_tree(const OrderedGraph& h) { return h.n() >= 1 && is_ordered_forest(h) && component_count(h) == 1; }

std::string format_embedding(const Embedding& e) {
  std::ostringstream out;
  for (std::size_t i = 0; i < e.map.size(); ++i) out << (i ? " " : "") << e.map[i];
  return out.str();
}

}  // namespace opp
