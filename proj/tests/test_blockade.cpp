#include <gtest/gtest.h>

#include <cmath>

#include "opp/blockade.hpp"
#include "opp/gen.hpp"
#include "oracles.hpp"

using namespace opp;

namespace {

// Blocks of the given sizes laid out left to right; cross edges drawn with
// probability p (or all of them when p >= 1).
struct Planted {
  OrderedGraph g;
  Blockade b;
};

Planted blocks_with(const std::vector<int>& sizes, double p, std::uint64_t seed, int pad = 0) {
  int n = pad;
  for (int s : sizes) n += s;
  const auto noise = random_ordered(n, p, seed);
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  int at = pad;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    for (int k = 0; k < sizes[i]; ++k) owner[at++] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : noise.edges())
    if (owner[u] >= 0 && owner[v] >= 0 && owner[u] != owner[v]) edges.emplace_back(u, v);
  Planted out{OrderedGraph::build(n, edges), {}};
  std::vector<VertexSet> blocks;
  at = pad;
  for (int s : sizes) {
    blocks.push_back(VertexSet::interval(out.g, at, at + s));
    at += s;
  }
  out.b = Blockade(out.g, blocks);
  return out;
}

double pow_n(const OrderedGraph& g, double e) { return std::pow(static_cast<double>(g.n()), e); }

}  // namespace

TEST(BlockadeType, ValidatesInvariants) {
  const auto g = OrderedGraph::empty(6);
  EXPECT_NO_THROW(Blockade(g, {VertexSet(g, {0, 1}), VertexSet(g, {2, 4})}));
  EXPECT_THROW(Blockade(g, {VertexSet(g, {0, 3}), VertexSet(g, {2, 4})}), InputError);  // not order-separated
  EXPECT_THROW(Blockade(g, {VertexSet(g, {0}), VertexSet(g, std::vector<int>{})}), InputError);
  EXPECT_THROW(Blockade(g, {2, 1}, {VertexSet(g, {0}), VertexSet(g, {1})}), InputError);
  EXPECT_THROW(Blockade(g, {1}, {VertexSet(g, {0}), VertexSet(g, {1})}), InputError);
}

TEST(BlockadeType, SubAndContract) {
  const auto g = OrderedGraph::empty(9);
  const auto b = equal_blockade(g, 3);
  const std::vector<int> keep{3, 1};
  const auto s = b.sub(keep);
  EXPECT_EQ(s.indices(), (std::vector<int>{1, 3}));
  EXPECT_EQ(s.at(3).members(), (std::vector<int>{6, 7, 8}));
  const auto c = b.contract(g, {VertexSet(g, {0}), VertexSet(g, {4, 5}), VertexSet(g, {8})});
  EXPECT_EQ(c.width(), 1u);
  EXPECT_THROW(b.contract(g, {VertexSet(g, {3}), VertexSet(g, {4}), VertexSet(g, {8})}), InputError);
}

TEST(EqualBlockade, SizesAndErrors) {
  const auto g10 = OrderedGraph::empty(10);
  auto b = equal_blockade(g10, 2);
  EXPECT_EQ(b.block(0).members(), (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_EQ(b.block(1).members(), (std::vector<int>{5, 6, 7, 8, 9}));
  b = equal_blockade(g10, 3);
  EXPECT_EQ(b.block(0).size(), 4u);
  EXPECT_EQ(b.block(1).size(), 3u);
  EXPECT_EQ(b.width(), 3u);
  EXPECT_EQ(b.indices(), (std::vector<int>{1, 2, 3}));
  const auto one = equal_blockade(g10, 1);
  EXPECT_EQ(measures(g10, one).shrinkage, 0.0);
  EXPECT_THROW(equal_blockade(OrderedGraph::empty(2), 3), InputError);
}

TEST(Measures, CompleteBetweenBlocks) {
  const auto p = blocks_with({4, 4}, 1.0, 0);
  const auto m = measures(p.g, p.b);
  EXPECT_EQ(m.maxdeg[0][1], 4);
  EXPECT_EQ(m.maxdeg[1][0], 4);
  EXPECT_EQ(m.maxdeg[0][0], 0);
  EXPECT_DOUBLE_EQ(m.linkage, 1.0);
  EXPECT_DOUBLE_EQ(m.log2_maxdeg_product, 4.0);
}

TEST(Measures, ShrinkageAndAnticomplete) {
  const auto g = OrderedGraph::empty(16);
  const Blockade b(g, {VertexSet::interval(g, 0, 8), VertexSet::interval(g, 8, 16)});
  const auto m = measures(g, b);
  EXPECT_NEAR(m.shrinkage, 0.25, 1e-12);
  EXPECT_EQ(m.maxdeg[0][1], 0);
  EXPECT_EQ(m.log2_maxdeg_product, kNegInf);

  const auto none = measures(g, b.sub(std::vector<int>{}));
  EXPECT_EQ(none.width, 16u);
  EXPECT_EQ(none.shrinkage, 0.0);
  EXPECT_EQ(measures(g, b.sub(std::vector<int>{1})).linkage, 0.0);
}

TEST(Measures, MaxDegreeTableMatchesPerVertexCounts) {
  const auto g = random_ordered(20, 0.3, 12);
  const auto b = equal_blockade(g, 4);
  const auto m = measures(g, b);
  double link = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t c = 0; c < 4; ++c) {
      if (a == c) continue;
      const int d = oracle::maxdeg(g, b.block(a).members(), b.block(c).members());
      EXPECT_EQ(m.maxdeg[a][c], d);
      link = std::max(link, static_cast<double>(d) / static_cast<double>(b.block(c).size()));
    }
  EXPECT_DOUBLE_EQ(m.linkage, link);
}

TEST(ShrinkResistance, CompleteBetweenBlocksIsResistant) {
  const auto p = blocks_with({5, 5}, 1.0, 0);
  // mu = 0.5 > |G|^-phi = 10^-0.5.
  const auto v = is_shrink_resistant(p.g, p.b, 0.5, 0.5);
  EXPECT_TRUE(v.resistant);
  EXPECT_TRUE(oracle::resistant(p.g, p.b, 0.5, 0.5));
}

TEST(ShrinkResistance, SingleCrossEdgeHasCounterexample) {
  const auto g = OrderedGraph::build(8, {{0, 4}});
  const Blockade b(g, {VertexSet::interval(g, 0, 4), VertexSet::interval(g, 4, 8)});
  const auto v = is_shrink_resistant(g, b, 0.5, 0.5);
  ASSERT_FALSE(v.resistant);
  ASSERT_TRUE(v.counterexample);
  const auto& w = *v.counterexample;
  EXPECT_GE(w.x.size(), 2u);
  EXPECT_GE(w.y.size(), 2u);
  EXPECT_EQ(max_degree_from(g, w.x, w.y), w.max_degree);
  EXPECT_EQ(w.max_degree, 0);
}

TEST(ShrinkResistance, ExactVerdictMatchesDoubleSubsetEnumeration) {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const double p = 0.3 + 0.05 * static_cast<double>(s % 5);
    const auto inst = blocks_with({6, 7, 6}, p, 500 + s);
    const double phi = 0.2 + 0.05 * static_cast<double>(s % 4), mu = 0.3 + 0.05 * static_cast<double>(s % 3);
    const auto v = is_shrink_resistant(inst.g, inst.b, phi, mu);
    EXPECT_EQ(v.resistant, oracle::resistant(inst.g, inst.b, phi, mu)) << "seed " << s;
    if (!v.resistant) {
      const auto& w = *v.counterexample;
      const std::size_t ph = inst.b.position(w.h), pj = inst.b.position(w.j);
      const double d = oracle::maxdeg(inst.g, inst.b.block(ph).members(), inst.b.block(pj).members());
      EXPECT_LE(oracle::maxdeg(inst.g, w.x.members(), w.y.members()), d * pow_n(inst.g, -phi) + 1e-9);
      EXPECT_GE(static_cast<double>(w.x.size()), mu * static_cast<double>(inst.b.block(ph).size()) - 1e-9);
      EXPECT_GE(static_cast<double>(w.y.size()), mu * static_cast<double>(inst.b.block(pj).size()) - 1e-9);
    }
  }
}

TEST(ShrinkResistance, ExactCapAndSampledMode) {
  const auto inst = blocks_with({15, 15}, 0.5, 3);
  EXPECT_THROW(is_shrink_resistant(inst.g, inst.b, 0.3, 0.4), CapabilityError);
  CheckOptions o;
  o.mode = CheckMode::sampled;
  o.seed = 9;
  o.trials = 200;
  const auto a = is_shrink_resistant(inst.g, inst.b, 0.3, 0.4, o);
  const auto b = is_shrink_resistant(inst.g, inst.b, 0.3, 0.4, o);
  EXPECT_EQ(a.resistant, b.resistant);
  EXPECT_EQ(a.mode, CheckMode::sampled);
  EXPECT_EQ(auto_check(inst.b).mode, CheckMode::sampled);
}

TEST(ShrinkResist, ResistantInputIsUnchanged) {
  const auto p = blocks_with({5, 5}, 1.0, 0);
  const auto r = shrink_resist(p.g, p.b, 0.5, 0.5);
  EXPECT_FALSE(r.anticomplete);
  EXPECT_TRUE(r.trace.empty());
  EXPECT_EQ(r.blockade, p.b);
  EXPECT_TRUE(r.certificate.resistant);
}

TEST(ShrinkResist, AnticompleteBlocksAreReturnedWhole) {
  const auto g = OrderedGraph::empty(8);
  const Blockade b(g, {VertexSet::interval(g, 0, 4), VertexSet::interval(g, 4, 8)});
  const auto r = shrink_resist(g, b, 0.5, 0.5);
  ASSERT_TRUE(r.anticomplete);
  EXPECT_EQ(r.anticomplete->zh.size(), 4u);
  EXPECT_EQ(r.anticomplete->zj.size(), 4u);
  EXPECT_TRUE(r.trace.empty());
}

TEST(ShrinkResist, RandomInstanceCertificate) {
  const auto inst = blocks_with({10, 10, 10}, 0.15, 6);
  const double phi = 0.3, mu = 0.4;
  const auto r = shrink_resist(inst.g, inst.b, phi, mu);
  EXPECT_EQ(r.iteration_bound, 30u);
  EXPECT_LE(r.trace.size(), 30u);
  const double beta = std::pow(mu, 1 + 9 / phi);
  if (r.anticomplete) {
    EXPECT_TRUE(is_anticomplete(inst.g, r.anticomplete->zh, r.anticomplete->zj));
    EXPECT_GE(static_cast<double>(r.anticomplete->zh.size()), beta * 10);
  } else {
    EXPECT_TRUE(oracle::resistant(inst.g, r.blockade, phi, mu));
  }
  for (std::size_t p = 0; p < r.blockade.length(); ++p)
    EXPECT_GE(static_cast<double>(r.blockade.block(p).size()), beta * 10);
}

TEST(ShrinkResist, ContractionNeverRaisesMaxDegrees) {
  const auto inst = blocks_with({8, 8, 8}, 0.35, 21);
  const auto r = shrink_resist(inst.g, inst.b, 0.25, 0.5);
  const auto before = measures(inst.g, inst.b);
  const auto after = measures(inst.g, r.blockade);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t c = 0; c < 3; ++c) EXPECT_LE(after.maxdeg[a][c], before.maxdeg[a][c]);
  EXPECT_LE(after.width, before.width);
  for (const auto& s : r.trace) EXPECT_LE(s.new_maxdeg, s.old_maxdeg);
}

TEST(PairType, ExamplesAndErrors) {
  EXPECT_EQ(pair_type_from_logs(0, 0, 10, 0.1), 1);
  EXPECT_EQ(pair_type_from_logs(-3, -3, 10, 0.1), 2);
  // Check the defining inequalities for the returned t directly.
  const int t = pair_type_from_logs(-3, -3, 10, 0.1);
  EXPECT_LT(std::pow(2.0, -2 * t), 0.125);
  EXPECT_LE(0.125, std::pow(2.0, -2 * (t - 2)));
  // Ratios too far apart for a common t.
  EXPECT_THROW(pair_type_from_logs(0, -9, 10, 0.1), AnalysisError);
  EXPECT_THROW(pair_type_from_logs(kNegInf, 0, 10, 0.1), InputError);
}

TEST(PairType, OnABlockade) {
  const auto p = blocks_with({4, 4}, 1.0, 0);
  EXPECT_EQ(pair_type(p.g, p.b, 1, 2, 0.1), 1);
}

TEST(MonochromaticSubset, MatchesEnumeration) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t m = 5 + s % 4;
    std::vector<std::vector<int>> col(m, std::vector<int>(m, -1));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        col[a][b] = col[b][a] = static_cast<int>(keyed_hash(s, a * 16 + b) % 2);
    const std::size_t k = 3;
    std::optional<std::vector<int>> want;
    // Lexicographic enumeration of k-subsets.
    std::vector<int> cur;
    auto rec = [&](auto&& self, int from) -> void {
      if (want) return;
      if (cur.size() == k) {
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j)
            if (col[cur[i]][cur[j]] != col[cur[0]][cur[1]]) return;
        want = cur;
        return;
      }
      for (int p = from; p < static_cast<int>(m); ++p) {
        cur.push_back(p);
        self(self, p + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    EXPECT_EQ(find_monochromatic_subset(col, k), want) << s;
  }
}

TEST(MonochromaticSubset, PlantedTriangle) {
  // Two colours on five positions; {0,1,4} is the lexicographically least colour-0 triangle.
  std::vector<std::vector<int>> col(5, std::vector<int>(5, 1));
  auto set = [&](int a, int b, int c) { col[a][b] = col[b][a] = c; };
  set(1, 3, 0);
  set(1, 4, 0);
  set(3, 4, 0);
  set(0, 1, 0);
  set(0, 2, 0);
  set(2, 3, 0);
  set(0, 3, 1);
  set(0, 4, 0);
  set(1, 2, 1);
  set(2, 4, 1);
  const auto r = find_monochromatic_subset(col, 3);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, (std::vector<int>{0, 1, 4}));
  std::vector<int> largest;
  EXPECT_FALSE(find_monochromatic_subset(col, 5, 20, &largest));
  EXPECT_EQ(largest, (std::vector<int>{0, 1, 4}));
}

TEST(CheckBand, MatchesLiteralBullets) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto inst = blocks_with({5, 6, 5}, 0.5, 800 + s);
    const double tau = 0.6 + 0.1 * static_cast<double>(s % 4), phi = 0.3, mu = 0.5;
    const auto v = check_band(inst.g, inst.b, tau, phi, mu);
    EXPECT_EQ(v.bullets_hold, oracle::band(inst.g, inst.b, tau, phi, mu)) << s;
    EXPECT_EQ(v.holds, v.bullets_hold);
    if (v.holds) EXPECT_LE(measures(inst.g, inst.b).linkage, tau + 1e-12);
  }
}

TEST(CheckBand, RangeIsReportedSeparately) {
  // Complete 8+8: max-degree 8 <= 1.5*8, and every admissible Y has 4 > 1.5 * 16^-1/2 * 8 vertices.
  const auto p = blocks_with({8, 8}, 1.0, 0);
  const auto v = check_band(p.g, p.b, 1.5, 0.5, 0.5);
  EXPECT_TRUE(oracle::band(p.g, p.b, 1.5, 0.5, 0.5));
  EXPECT_TRUE(v.bullets_hold);
  EXPECT_FALSE(v.tau_in_range);
  EXPECT_FALSE(v.holds);
}

TEST(FindBand, AllPairsSameTypeTakesFirstK) {
  const auto inst = blocks_with({6, 6, 6, 6}, 1.0, 0);
  FindBandOptions o;
  o.rigor = Rigor::practical;
  const auto r = find_band(inst.g, inst.b, 0.2, 0.5, 3, o);
  EXPECT_EQ(r.certificate.indices, (std::vector<int>{1, 2, 3}));
  // Type 1 gives a raw tau above 1; the clamp restores tau = 1 and the bullets still hold.
  EXPECT_EQ(r.certificate.type, 1);
  EXPECT_TRUE(r.certificate.clamped);
  EXPECT_EQ(r.certificate.tau, 1.0);
  EXPECT_TRUE(r.certificate.validated);
  EXPECT_TRUE(oracle::band(inst.g, r.selection, 1.0, 1.0, 0.5));
  EXPECT_LE(r.linkage, r.certificate.tau);
}

TEST(FindBand, TheoreticalModeChecksHypotheses) {
  const auto inst = blocks_with({6, 6}, 1.0, 0);
  EXPECT_THROW(find_band(inst.g, inst.b, 0.3, 0.5, 2), PreconditionError);  // phi > 1/5
  try {
    find_band(inst.g, inst.b, 0.3, 0.5, 2);
  } catch (const PreconditionError& e) {
    ASSERT_FALSE(e.failed().empty());
    EXPECT_EQ(e.failed()[0], "phi <= 1/5");
  }
}

TEST(FindBand, NoSubsetIsACapabilityError) {
  const auto inst = blocks_with({4, 4}, 1.0, 0);
  FindBandOptions o;
  o.rigor = Rigor::practical;
  EXPECT_THROW(find_band(inst.g, inst.b, 0.2, 0.5, 3, o), CapabilityError);
}

TEST(Homog, AnticompleteBlocks) {
  const auto g = OrderedGraph::empty(12);
  const auto b = equal_blockade(g, 3);
  FindBandOptions o;
  o.rigor = Rigor::practical;
  const auto r = homog(g, b, 2, 0.5, 0.5, o);
  ASSERT_TRUE(r.anticomplete);
  EXPECT_GE(static_cast<double>(r.anticomplete->zh.size()), std::exp2(r.log2_beta) * 4);
}

TEST(Homog, CompleteBetweenFiveBlocks) {
  const auto inst = blocks_with({5, 5, 5, 5, 5}, 1.0, 0);
  FindBandOptions o;
  o.rigor = Rigor::practical;
  const auto r = homog(inst.g, inst.b, 3, 0.5, 0.5, o);
  ASSERT_TRUE(r.band);
  EXPECT_EQ(r.band->certificate.tau, 1.0);
  EXPECT_TRUE(r.band->certificate.validated);
  EXPECT_EQ(r.band->selection.length(), 3u);
}

TEST(Homog, RandomDenseValidatedExactly) {
  const auto inst = blocks_with({7, 7, 7, 7}, 0.7, 17);
  FindBandOptions o;
  o.rigor = Rigor::practical;
  const auto r = homog(inst.g, inst.b, 3, 0.5, 0.45, o);
  if (r.anticomplete) {
    EXPECT_TRUE(is_anticomplete(inst.g, r.anticomplete->zh, r.anticomplete->zj));
  } else {
    ASSERT_TRUE(r.band);
    const auto& c = r.band->certificate;
    EXPECT_EQ(c.check_mode, CheckMode::exact);
    EXPECT_EQ(c.verdict.bullets_hold, oracle::band(inst.g, r.band->selection, c.tau, c.phi, c.mu));
  }
}

TEST(Homog2, TrivialSelections) {
  const auto inst = blocks_with({4, 4}, 1.0, 0);
  Homog2Params p;
  p.k = 0;
  const auto r = homog2(inst.g, inst.b, p);
  ASSERT_TRUE(r.band);
  EXPECT_TRUE(r.band->selection.empty());
  p.k = 1;
  const auto single = homog2(inst.g, inst.b.sub(std::vector<int>{1}), p);
  ASSERT_TRUE(single.band);
  EXPECT_TRUE(single.band->selection.empty());
}

TEST(Homog2, PlantedAnticompletePairIsReturned) {
  auto inst = blocks_with({6, 6, 6}, 1.0, 0);
  // Remove all edges between blocks 1 and 3.
  std::vector<Edge> keep;
  for (auto [u, v] : inst.g.edges())
    if (!(u < 6 && v >= 12)) keep.emplace_back(u, v);
  const auto g = OrderedGraph::build(18, keep);
  const auto b = equal_blockade(g, 3);
  Homog2Params p;
  p.k = 2;
  const auto r = homog2(g, b, p);
  ASSERT_TRUE(r.anticomplete);
  EXPECT_TRUE(is_anticomplete(g, r.anticomplete->zh, r.anticomplete->zj));
}

TEST(Homog2, DenseRandomSampledCertificate) {
  const auto g = random_ordered(60, 0.5, 1);
  const auto b = equal_blockade(g, 6);
  Homog2Params p;
  p.k = 3;
  p.phi = 0.5;
  p.mu = 0.5;
  p.c = 0.6;
  p.sigma = 0.45;
  p.big_sigma = 0.55;
  p.check.mode = CheckMode::sampled;
  p.check.seed = 4;
  p.check.trials = 300;
  const auto r = homog2(g, b, p);
  EXPECT_FALSE(r.warnings.empty());  // desk-scale |G| is far below N
  if (!r.anticomplete) {
    ASSERT_TRUE(r.band);
    EXPECT_EQ(r.band->selection.length(), 3u);
    EXPECT_TRUE(r.band->certificate.verdict.bullets_hold);
  }
}

TEST(Homog2, TheoreticalModeRejectsDeskScale) {
  const auto g = random_ordered(30, 0.5, 1);
  Homog2Params p;
  p.k = 2;
  p.rigor = Rigor::theoretical;
  EXPECT_THROW(homog2(g, equal_blockade(g, 3), p), PreconditionError);
}

TEST(TheoreticalParams, Examples) {
  TheoreticalParamsInput in;
  in.phi = 0.5;
  EXPECT_EQ(theoretical_params(in).colors, 3);
  in.phi = 1;
  in.mu = 0.5;
  in.blocks = 2;
  EXPECT_DOUBLE_EQ(theoretical_params(in).log2_beta_shrink, -5.0);
  EXPECT_EQ(theoretical_params(in).shrink_iteration_bound, 4u);
  in.k = 1;
  EXPECT_DOUBLE_EQ(theoretical_params(in).log2_ramsey_k, 0.0);
  in.tree_size = 1;
  EXPECT_DOUBLE_EQ(theoretical_params(in).log2_rainbow_k, 0.0);
}
