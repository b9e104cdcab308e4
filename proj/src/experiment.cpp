#include "opp/experiment.hpp"

#include <atomic>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

#include "opp/gen.hpp"

namespace opp {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += f(v[i]);
  }
  return out;
}

OrderedGraph build_instance(const ExperimentConfig& cfg, int n, std::uint64_t seed) {
  if (cfg.construction == "empty") return OrderedGraph::build(n, {});
  if (cfg.construction == "complete") return complement(OrderedGraph::build(n, {}));
  if (cfg.construction == "random") return random_ordered(n, cfg.p, seed);
  if (cfg.construction == "girth") return girth_construction(n, cfg.girth, seed).graph;
  throw InputError("unknown construction '" + cfg.construction + "'");
}

struct Side {
  std::optional<PurePairWitness> pair;
  PairSearchStats stats;
};

Side search_side(const OrderedGraph& g, bool complete_side, const ExperimentConfig& cfg) {
  PairSearchOptions o;
  o.exact_cap = cfg.exact_cap;
  o.node_budget = cfg.node_budget;
  o.mode = static_cast<std::size_t>(g.n()) <= cfg.exact_cap ? PairMode::exact : PairMode::branch_bound;
  Side s;
  s.pair = complete_side ? best_complete_pair(g, o, &s.stats) : best_anticomplete_pair(g, o, &s.stats);
  return s;
}

ExperimentRow run_cell(const ExperimentConfig& cfg, int n, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const OrderedGraph g = build_instance(cfg, n, seed);
  const Side anti = search_side(g, false, cfg);
  const Side comp = search_side(g, true, cfg);
  const std::size_t a = anti.pair ? anti.pair->size() : 0;
  const std::size_t c = comp.pair ? comp.pair->size() : 0;
  const Side& best = c > a ? comp : anti;
  ExperimentRow r;
  r.construction = cfg.construction;
  r.n = n;
  r.seed = seed;
  r.host_size = static_cast<std::size_t>(g.n());
  r.polarity = c > a ? Polarity::complete : Polarity::anticomplete;
  if (best.pair) {
    if (!verify_pure_pair(g, *best.pair)) throw AnalysisError("experiment produced an invalid pure pair");
    r.z1 = best.pair->z1.size();
    r.z2 = best.pair->z2.size();
    r.min_size = best.pair->size();
  }
  r.mode = to_string(best.stats.mode_used);
  if (!best.stats.complete) r.mode += "+capped";
  if (cfg.timing)
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

std::string canonical_config(const ExperimentConfig& c) {
  std::string s = "construction=" + c.construction;
  if (c.construction == "girth") s += ";girth=" + std::to_string(c.girth);
  if (c.construction == "random") s += ";p=" + fmt(c.p);
  s += ";n=" + join(c.n_list, [](int n) { return std::to_string(n); });
  s += ";seeds=" + join(c.seeds, [](std::uint64_t x) { return std::to_string(x); });
  s += ";c=" + join(c.c_grid, [](double x) { return fmt(x); });
  s += ";exact_cap=" + std::to_string(c.exact_cap);
  s += ";budget=" + std::to_string(c.node_budget);
  s += ";timing=" + std::string(c.timing ? "1" : "0");
  return s;
}

SlopeFit fit_loglog(const std::vector<std::pair<double, double>>& pts, std::string label) {
  SlopeFit f;
  f.label = std::move(label);
  std::vector<std::pair<double, double>> xy;
  for (auto [n, y] : pts)
    if (n > 0 && y > 0) xy.emplace_back(std::log(n), std::log(y));
  f.points = xy.size();
  if (xy.size() < 2) return f;
  double mx = 0, my = 0;
  for (auto [x, y] : xy) mx += x, my += y;
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxx = 0, sxy = 0;
  for (auto [x, y] : xy) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
  if (sxx <= 0) return f;
  f.slope = sxy / sxx;
  f.lo = f.hi = f.slope;
  if (xy.size() < 3) return f;
  double sse = 0;
  for (auto [x, y] : xy) {
    const double e = y - (my + f.slope * (x - mx));
    sse += e * e;
  }
  const double df = static_cast<double>(xy.size() - 2);
  const double se = std::sqrt(sse / df / sxx);
  const double t = boost::math::quantile(boost::math::students_t(df), 0.975);
  f.lo = f.slope - t * se;
  f.hi = f.slope + t * se;
  f.has_interval = true;
  return f;
}

ExperimentResult scaling_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_list.empty() || cfg.seeds.empty()) throw InputError("experiment needs at least one n and one seed");
  for (int n : cfg.n_list)
    if (n < 1) throw InputError("experiment sizes must be positive");
  build_instance(cfg, 4, 0);  // rejects unknown constructions before spawning workers

  ExperimentResult res;
  res.canonical_config = canonical_config(cfg);
  res.config_hash = fnv1a64(res.canonical_config);

  const std::size_t cells = cfg.n_list.size() * cfg.seeds.size();
  res.rows.resize(cells);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cells);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells;) {
      try {
        res.rows[i] = run_cell(cfg, cfg.n_list[i / cfg.seeds.size()], cfg.seeds[i % cfg.seeds.size()]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cells)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<std::pair<double, double>> pooled;
  for (std::uint64_t seed : cfg.seeds) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : res.rows)
      if (r.seed == seed) pts.emplace_back(r.n, static_cast<double>(r.min_size));
    pooled.insert(pooled.end(), pts.begin(), pts.end());
    res.fits.push_back(fit_loglog(pts, "seed=" + std::to_string(seed)));
  }
  res.fits.push_back(fit_loglog(pooled, "pooled"));
  return res;
}

std::string experiment_csv(const ExperimentResult& res, const ExperimentConfig& cfg) {
  std::ostringstream out;
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(res.config_hash));
  out << "# config " << hash << ' ' << res.canonical_config << '\n';
  out << "construction,n,seed,polarity,z1,z2,min_size,mode,seconds\n";
  for (const auto& r : res.rows)
    out << r.construction << ',' << r.n << ',' << r.seed << ',' << to_string(r.polarity) << ',' << r.z1 << ',' << r.z2
        << ',' << r.min_size << ',' << r.mode << ',' << (r.seconds ? fmt(*r.seconds) : "NA") << '\n';
  for (const auto& f : res.fits) {
    out << "# fit " << f.label << " slope=" << fmt(f.slope);
    if (f.has_interval)
      out << " ci95=[" << fmt(f.lo) << ',' << fmt(f.hi) << ']';
    else
      out << " ci95=NA";
    out << " points=" << f.points << '\n';
  }
  for (double c : cfg.c_grid) {
    std::map<int, std::pair<double, int>> by_n;
    for (const auto& r : res.rows) {
      auto& acc = by_n[r.n];
      acc.first += static_cast<double>(r.min_size) / std::pow(static_cast<double>(r.n), 1 - c);
      ++acc.second;
    }
    for (const auto& [n, acc] : by_n)
      out << "# ratio c=" << fmt(c) << " n=" << n << " mean=" << fmt(acc.first / acc.second) << '\n';
  }
  return out.str();
}

}  // namespace opp
