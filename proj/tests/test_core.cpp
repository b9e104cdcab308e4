#include <gtest/gtest.h>

#include "opp/core.hpp"
#include "opp/gen.hpp"
#include "oracles.hpp"

using namespace opp;

TEST(Bitset, MembersAndIteration) {
  Bitset b(130);
  for (int i : {0, 63, 64, 129}) b.set(static_cast<std::size_t>(i));
  EXPECT_EQ(b.count(), 4u);
  EXPECT_EQ(b.members(), (std::vector<int>{0, 63, 64, 129}));
  EXPECT_EQ(b.first(), 0);
  EXPECT_EQ(b.next(0), 63);
  EXPECT_EQ(b.next(64), 129);
  EXPECT_EQ(b.next(129), -1);
  b.clear_through(63);
  EXPECT_EQ(b.members(), (std::vector<int>{64, 129}));
}

TEST(Bitset, FullFlipAndSetAlgebra) {
  auto f = Bitset::full(70);
  EXPECT_EQ(f.count(), 70u);
  f.flip_all();
  EXPECT_TRUE(f.none());
  const std::vector<int> am{1, 2, 3}, bm{3, 4};
  const auto a = Bitset::from_members(10, am);
  const auto b = Bitset::from_members(10, bm);
  EXPECT_EQ((a & b).members(), (std::vector<int>{3}));
  EXPECT_EQ((a | b).count(), 4u);
  EXPECT_EQ((a - b).members(), (std::vector<int>{1, 2}));
  EXPECT_EQ(a.count_and(b), 1u);
  EXPECT_TRUE(Bitset::from_members(10, std::vector<int>{2}).is_subset_of(a));
}

TEST(OrderedGraph, BuildFromEdgeLists) {
  const auto h = OrderedGraph::build(3, {{0, 1}, {1, 2}});
  EXPECT_TRUE(h.adjacent(0, 1) && h.adjacent(1, 0) && h.adjacent(1, 2));
  EXPECT_FALSE(h.adjacent(0, 2));
  EXPECT_EQ(h.edge_count(), 2u);

  const auto single = OrderedGraph::build(1, {});
  EXPECT_EQ(single.n(), 1);
  EXPECT_EQ(single.edge_count(), 0u);

  const auto f = OrderedGraph::build(4, {{0, 1}, {1, 3}});
  EXPECT_EQ(f.edges(), (std::vector<Edge>{{0, 1}, {1, 3}}));
  EXPECT_FALSE(f.adjacent(2, 3));
}

TEST(OrderedGraph, RejectsBadEdges) {
  EXPECT_THROW(OrderedGraph::build(3, {{0, 3}}), InputError);
  EXPECT_THROW(OrderedGraph::build(3, {{1, 1}}), InputError);
  EXPECT_THROW(OrderedGraph::build(3, {{-1, 0}}), InputError);
}

TEST(OrderedGraph, DuplicateEdgesCoalesce) {
  const auto g = OrderedGraph::build(3, {{0, 1}, {1, 0}, {0, 1}});
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(OrderedGraph, Complement) {
  EXPECT_EQ(complement(OrderedGraph::empty(3)), OrderedGraph::complete(3));
  const auto h = OrderedGraph::build(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(complement(h).edges(), (std::vector<Edge>{{0, 2}}));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = random_ordered(17, 0.4, seed);
    EXPECT_EQ(complement(complement(g)), g);
  }
}

TEST(OrderedGraph, ReverseAndInduced) {
  const auto g = OrderedGraph::build(4, {{0, 1}, {1, 3}});
  const auto r = reverse(g);
  EXPECT_EQ(r.edges(), (std::vector<Edge>{{0, 2}, {2, 3}}));
  const std::vector<int> keep{1, 3};
  const auto s = g.induced(keep);
  EXPECT_EQ(s.n(), 2);
  EXPECT_TRUE(s.adjacent(0, 1));
}

TEST(VertexSet, HostIdentityIsChecked) {
  const auto g = OrderedGraph::empty(4);
  const auto other = OrderedGraph::empty(4);
  const VertexSet a(g, {0, 1});
  EXPECT_NO_THROW(check_host(g, a));
  EXPECT_THROW(check_host(other, a), InputError);
  EXPECT_THROW(VertexSet(g, {4}), InputError);
  EXPECT_EQ(VertexSet(g, {2, 0, 2}).members(), (std::vector<int>{0, 2}));
}

TEST(MaxDegree, PathExamples) {
  const auto p = OrderedGraph::build(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(max_degree_from(p, VertexSet(p, {1}), VertexSet(p, {0, 2})), 2);
  EXPECT_EQ(max_degree_from(p, VertexSet(p, {0, 2}), VertexSet(p, {1})), 1);
}

TEST(MaxDegree, MatchesPerVertexCount) {
  const auto g = random_ordered(8, 0.5, 1);
  const VertexSet x(g, {0, 1, 2, 3}), y(g, {4, 5, 6, 7});
  EXPECT_EQ(max_degree_from(g, x, y), oracle::maxdeg(g, x.members(), y.members()));
  EXPECT_EQ(max_degree_from(g, y, x), oracle::maxdeg(g, y.members(), x.members()));
}

TEST(MaxDegree, RejectsOverlapAndEmpty) {
  const auto g = OrderedGraph::empty(4);
  EXPECT_THROW(max_degree_from(g, VertexSet(g, {0, 1}), VertexSet(g, {1, 2})), InputError);
  EXPECT_THROW(max_degree_from(g, VertexSet(g, std::vector<int>{}), VertexSet(g, {1})), InputError);
}

TEST(Purity, AnticompleteAndComplete) {
  const auto e = OrderedGraph::empty(5);
  EXPECT_TRUE(is_anticomplete(e, VertexSet(e, {0, 1}), VertexSet(e, {3, 4})));
  const auto k = OrderedGraph::complete(5);
  EXPECT_TRUE(is_complete(k, VertexSet(k, {0, 1}), VertexSet(k, {3, 4})));
  const auto p = OrderedGraph::build(3, {{0, 1}, {1, 2}});
  EXPECT_TRUE(is_anticomplete(p, VertexSet(p, {0}), VertexSet(p, {2})));
  EXPECT_FALSE(is_anticomplete(p, VertexSet(p, {0}), VertexSet(p, {1})));
}

TEST(Numeric, LogComparisonsAndRounding) {
  EXPECT_TRUE(log_leq(1.0, 1.0 + 0x1p-42));
  EXPECT_TRUE(log_leq(1.0 + 0x1p-42, 1.0));
  EXPECT_FALSE(log_lt(1.0, 1.0 + 0x1p-42));
  EXPECT_TRUE(log_lt(1.0, 1.001));
  EXPECT_TRUE(log_leq(kNegInf, -1e300));
  EXPECT_EQ(ceil_count(2.0000000000001), 2u);
  EXPECT_EQ(ceil_count(2.1), 3u);
  EXPECT_EQ(floor_count(2.9999999999999), 3u);
  EXPECT_EQ(floor_count(2.9), 2u);
  EXPECT_EQ(log2_count(0), kNegInf);
}
