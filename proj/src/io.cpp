#include "opp/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace opp {

using nlohmann::json;

namespace {

// Strips a trailing comment and surrounding blanks; returns false for lines with no content.
bool content(std::string& line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  const auto b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return false;
  line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
  return true;
}

// Reads exactly `count` integers from the line, nothing more.
bool read_ints(const std::string& line, long long* out, int count) {
  std::istringstream ss(line);
  for (int i = 0; i < count; ++i)
    if (!(ss >> out[i])) return false;
  std::string rest;
  return !(ss >> rest);
}

[[noreturn]] void fail_line(std::size_t lineno, const std::string& what) {
  throw InputError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

OrderedGraph parse_ogr(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long long n = 0, m = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (!content(line)) continue;
    long long v[2];
    if (!read_ints(line, v, 2)) fail_line(lineno, have_header ? "expected `u v`" : "expected header `n m`");
    if (!have_header) {
      n = v[0];
      m = v[1];
      if (n < 0 || m < 0) fail_line(lineno, "negative count in header");
      if (n > (1 << 24)) fail_line(lineno, "vertex count too large");
      have_header = true;
      continue;
    }
    if (static_cast<long long>(edges.size()) == m) fail_line(lineno, "more edges than the header declares");
    auto [a, b] = std::minmax(v[0], v[1]);
    if (a < 0 || b >= n) fail_line(lineno, "endpoint out of range");
    if (a == b) fail_line(lineno, "self-loop");
    const Edge e{static_cast<int>(a), static_cast<int>(b)};
    if (!seen.insert(e).second) fail_line(lineno, "duplicate edge");
    edges.push_back(e);
  }
  if (!have_header) throw InputError("missing header `n m`");
  if (static_cast<long long>(edges.size()) != m)
    throw InputError("header declares " + std::to_string(m) + " edges but " + std::to_string(edges.size()) +
                     " were given");
  return OrderedGraph::build(static_cast<int>(n), edges);
}

OrderedGraph read_ogr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return parse_ogr(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string format_ogr(const OrderedGraph& g) {
  std::string out = std::to_string(g.n()) + ' ' + std::to_string(g.edge_count()) + '\n';
  for (auto [u, v] : g.edges()) out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
  return out;
}

void write_ogr_file(const OrderedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << format_ogr(g);
}

Blockade parse_blockade_jsonl(std::istream& in, const OrderedGraph& g) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<int> indices;
  std::vector<VertexSet> blocks;
  int form = 0;  // 1 = bare arrays, 2 = objects
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_line(lineno, std::string("invalid JSON: ") + e.what());
    }
    const int this_form = j.is_array() ? 1 : j.is_object() ? 2 : 0;
    if (this_form == 0) fail_line(lineno, "expected an array or an object");
    if (form != 0 && form != this_form) fail_line(lineno, "bare arrays and objects cannot be mixed");
    form = this_form;
    const json& verts = form == 1 ? j : j.contains("vertices") ? j["vertices"] : json();
    if (!verts.is_array()) fail_line(lineno, "missing \"vertices\" array");
    int index = static_cast<int>(blocks.size()) + 1;
    if (form == 2) {
      if (!j.contains("index") || !j["index"].is_number_integer()) fail_line(lineno, "missing integer \"index\"");
      index = j["index"].get<int>();
    }
    std::vector<int> members;
    for (const auto& v : verts) {
      if (!v.is_number_integer()) fail_line(lineno, "vertices must be integers");
      const long long x = v.get<long long>();
      if (x < 0 || x >= g.n()) fail_line(lineno, "vertex " + std::to_string(x) + " out of range");
      members.push_back(static_cast<int>(x));
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) fail_line(lineno, "repeated vertex");
    indices.push_back(index);
    blocks.emplace_back(g, members);
  }
  return Blockade(g, std::move(indices), std::move(blocks));
}

Blockade read_blockade_file(const std::string& path, const OrderedGraph& g) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return parse_blockade_jsonl(in, g);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string format_blockade_jsonl(const Blockade& b) {
  std::string out;
  for (std::size_t p = 0; p < b.length(); ++p)
    out += json{{"index", b.index(p)}, {"vertices", b.block(p).members()}}.dump() + '\n';
  return out;
}

namespace {

json maybe_log(double x) { return std::isfinite(x) ? json(x) : json("-inf"); }

std::string mode_name(CheckMode m) { return m == CheckMode::exact ? "exact" : "sampled"; }

}  // namespace

json to_json(const Blockade& b) {
  json arr = json::array();
  for (std::size_t p = 0; p < b.length(); ++p)
    arr.push_back({{"index", b.index(p)}, {"vertices", b.block(p).members()}});
  return arr;
}

json to_json(const BlockadeMeasures& m) {
  return {{"width", m.width},
          {"shrinkage", m.shrinkage},
          {"linkage", m.linkage},
          {"maxdeg", m.maxdeg},
          {"log2_maxdeg_product", maybe_log(m.log2_maxdeg_product)}};
}

json to_json(const SubpairWitness& w) {
  return {{"h", w.h}, {"j", w.j}, {"x", w.x.members()}, {"y", w.y.members()}, {"max_degree", w.max_degree}};
}

json to_json(const ResistanceVerdict& v) {
  json j{{"resistant", v.resistant}, {"mode", mode_name(v.mode)}, {"trials", v.trials}};
  if (v.counterexample) j["counterexample"] = to_json(*v.counterexample);
  return j;
}

json to_json(const BandVerdict& v) {
  json j{{"holds", v.holds},
         {"bullets_hold", v.bullets_hold},
         {"failed_bullet", v.failed_bullet},
         {"parameters_in_range", v.tau_in_range},
         {"mode", mode_name(v.mode)}};
  if (v.failed_bullet == 1) j["pair"] = {v.h, v.j};
  if (v.counterexample) j["counterexample"] = to_json(*v.counterexample);
  return j;
}

json to_json(const AnticompleteBlocks& a) {
  return {{"h", a.h}, {"j", a.j}, {"zh", a.zh.members()}, {"zj", a.zj.members()}};
}

json to_json(const ShrinkResistResult& r) {
  json trace = json::array();
  for (const auto& s : r.trace)
    trace.push_back({{"h", s.h},
                     {"j", s.j},
                     {"old_sizes", {s.old_h_size, s.old_j_size}},
                     {"new_sizes", {s.new_h_size, s.new_j_size}},
                     {"old_maxdeg", s.old_maxdeg},
                     {"new_maxdeg", s.new_maxdeg},
                     {"log2_product_after", maybe_log(s.log2_product_after)}});
  json j{{"blockade", to_json(r.blockade)},
         {"trace", trace},
         {"iterations", r.trace.size()},
         {"iteration_bound", r.iteration_bound},
         {"log2_beta", r.log2_beta},
         {"certificate", to_json(r.certificate)}};
  if (r.anticomplete) j["anticomplete"] = to_json(*r.anticomplete);
  return j;
}

json to_json(const BandResult& r) {
  const auto& c = r.certificate;
  return {{"selection", to_json(r.selection)},
          {"type", c.type},
          {"tau", c.tau},
          {"log2_tau_raw", c.log2_tau_raw},
          {"clamped", c.clamped},
          {"phi", c.phi},
          {"mu", c.mu},
          {"indices", c.indices},
          {"validated", c.validated},
          {"verdict", to_json(c.verdict)},
          {"linkage", r.linkage},
          {"warnings", r.warnings}};
}

json to_json(const LeafCoveredBlockade& l) {
  json covers = json::array();
  for (const auto& [key, x] : l.covers) covers.push_back({{"h", key.first}, {"j", key.second}, {"x", x.members()}});
  const auto& p = l.params;
  return {{"blockade", to_json(l.blockade)},
          {"H", l.h},
          {"I", l.i},
          {"J", l.j},
          {"params",
           {{"log2_w", maybe_log(p.log2_w)},
            {"log2_W", maybe_log(p.log2_W)},
            {"log2_lambda", maybe_log(p.log2_lambda)},
            {"phi", p.phi},
            {"mu", p.mu},
            {"tau", p.tau}}},
          {"covers", covers}};
}

json to_json(const LeafVerdict& v) {
  return {{"holds", v.holds},
          {"failed_bullet", v.failed_bullet},
          {"detail", v.detail},
          {"parameters_in_range", v.parameters_in_range}};
}

json to_json(const PurePairWitness& w) {
  return {{"polarity", to_string(w.polarity)},
          {"z1", w.z1.members()},
          {"z2", w.z2.members()},
          {"size", w.size()},
          {"verified", w.verified}};
}

}  // namespace opp
