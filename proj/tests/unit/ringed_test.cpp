#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "gromov/delta.hpp"
#include "gromov/distance.hpp"
#include "gromov/ringed_geometry.hpp"
#include "gromov/ringed_tree.hpp"

namespace gromov {
namespace {

TEST(RingDistance, Examples) {
  EXPECT_EQ(ring_distance(3, 0, 7), 1u);
  EXPECT_EQ(ring_distance(3, 5, 5), 0u);
  EXPECT_EQ(ring_distance(5, 3, 19), 16u);
  EXPECT_EQ(ring_distance(1, 0, 1), 1u);
  EXPECT_EQ(ring_distance(0, 0, 0), 0u);
  EXPECT_THROW(ring_distance(3, 0, 8), InputError);
  EXPECT_THROW(ring_distance(TreeAddress{2, 0}, TreeAddress{3, 0}), InputError);
}

TEST(LcaHeight, Examples) {
  EXPECT_EQ(lca_height({4, 6}, {4, 7}), 1u);
  EXPECT_EQ(lca_height({4, 6}, {4, 6}), 0u);
  EXPECT_EQ(lca_height({3, 3}, {3, 4}), 3u);
  EXPECT_THROW(lca_height({3, 3}, {2, 1}), InputError);
  EXPECT_THROW(lca_height({3, 8}, {3, 1}), InputError);
}

TEST(LcaHeight, SmallestCommonShift) {
  for (std::uint64_t p = 0; p < 32; ++p)
    for (std::uint64_t q = 0; q < 32; ++q) {
      unsigned t = 0;
      while ((p >> t) != (q >> t)) ++t;
      EXPECT_EQ(lca_height({5, p}, {5, q}), t);
    }
}

TEST(CanonicalGeodesic, RootGivesAncestorChain) {
  const auto path = canonical_geodesic(TreeAddress{0, 0}, TreeAddress{5, 13}, 6);
  ASSERT_EQ(path.size(), 6u);
  TreeAddress a{5, 13};
  for (std::size_t i = path.size(); i-- > 0;) {
    EXPECT_EQ(path[i], vertex_id(a));
    if (a.level > 0) a = parent(a);
  }
}

TEST(CanonicalGeodesic, ShortRingPath) {
  const auto path = canonical_geodesic(TreeAddress{4, 14}, TreeAddress{4, 1}, 5);
  const Geodesic expected{vertex_id({4, 14}), vertex_id({4, 15}), vertex_id({4, 0}), vertex_id({4, 1})};
  EXPECT_EQ(path, expected);
}

TEST(CanonicalGeodesic, RingDistanceFourGoesThroughParents) {
  const Graph g = ringed_tree_graph(6);
  const auto m = all_pairs(g);
  for (std::uint64_t p = 0; p < 32; ++p) {
    const TreeAddress u{5, p}, v{5, (p + 4) % 32};
    const auto path = canonical_geodesic(u, v, 6);
    EXPECT_EQ(path.size() - 1, m.at(vertex_id(u), vertex_id(v)));
    EXPECT_EQ(address_of(path[1]).level, 4u);
  }
}

TEST(CanonicalGeodesic, InvalidAddress) {
  EXPECT_THROW(canonical_geodesic(TreeAddress{6, 0}, TreeAddress{0, 0}, 6), InputError);
  EXPECT_THROW(canonical_geodesic(TreeAddress{2, 4}, TreeAddress{0, 0}, 6), InputError);
}

TEST(CanonicalGeodesic, PathPropertiesOnAllPairs) {
  const unsigned k = 7;
  const Graph g = ringed_tree_graph(k);
  const auto m = all_pairs(g);
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v = 0; v < g.n(); ++v) {
      const auto path = canonical_geodesic(u, v, k);
      ASSERT_EQ(path.front(), u);
      ASSERT_EQ(path.back(), v);
      ASSERT_EQ(path.size() - 1, m.at(u, v));
      for (std::size_t i = 1; i < path.size(); ++i) ASSERT_TRUE(g.has_edge(path[i - 1], path[i]));
      // Levels first fall, then rise.
      std::size_t i = 1;
      while (i < path.size() && address_of(path[i]).level <= address_of(path[i - 1]).level) ++i;
      for (; i < path.size(); ++i) ASSERT_GE(address_of(path[i]).level, address_of(path[i - 1]).level);
      const auto back = canonical_geodesic(v, u, k);
      ASSERT_EQ(back.size(), path.size());
      if (address_of(u).level == address_of(v).level) {
        ASSERT_EQ(std::set<Vertex>(path.begin(), path.end()), std::set<Vertex>(back.begin(), back.end()))
            << u << " " << v;
      }
    }
}

TEST(Poincare, EmbeddingExamples) {
  const auto root = poincare_embed({0, 0});
  EXPECT_EQ(root.re, 0.0);
  EXPECT_EQ(root.im, 0.0);
  const auto a = poincare_embed({1, 0});
  EXPECT_NEAR(a.re, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(a.im, 0.0, 1e-15);
  const auto b = poincare_embed({2, 1});
  EXPECT_NEAR(b.re, 0.0, 1e-15);
  EXPECT_NEAR(b.im, std::sqrt(0.75), 1e-15);
}

TEST(Poincare, DistanceExamples) {
  const auto a = poincare_embed({0, 0}), b = poincare_embed({1, 0});
  EXPECT_EQ(poincare_distance(a, a), 0.0);
  EXPECT_NEAR(poincare_distance(a, b), std::acosh(3.0), kRealTolerance);
  EXPECT_NEAR(poincare_distance(a, b), 1.76275, 1e-5);
  EXPECT_THROW(poincare_distance(a, DiskPoint{1.0, 0.0}), DomainError);
  EXPECT_THROW(poincare_distance(DiskPoint{0.8, 0.7}, a), DomainError);
}

TEST(Poincare, SymmetryAndRotationInvariance) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const unsigned level = 1 + static_cast<unsigned>(rng.below(12));
    const TreeAddress u{level, rng.below(level_width(level))}, v{level, rng.below(level_width(level))};
    const auto d = poincare_distance(poincare_embed(u), poincare_embed(v));
    EXPECT_NEAR(d, poincare_distance(poincare_embed(v), poincare_embed(u)), kRealTolerance);
    const auto s = rng.below(level_width(level));
    const TreeAddress us{level, (u.pos + s) % level_width(level)}, vs{level, (v.pos + s) % level_width(level)};
    EXPECT_NEAR(d, poincare_distance(poincare_embed(us), poincare_embed(vs)), 1e-7);
  }
}

TEST(QuasiIsometry, NoViolations) {
  for (unsigned k : {1u, 4u, 8u}) {
    const auto r = verify_quasi_isometry(k, 2);
    EXPECT_EQ(r.violations, 0u) << "k=" << k;
    EXPECT_EQ(r.pairs_checked, ringed_tree_size(k) * (ringed_tree_size(k) - 1) / 2);
  }
  EXPECT_THROW(verify_quasi_isometry(kVerifyMaxK + 1), InputError);
}

TEST(QuasiIsometry, RootToFirstLeaf) {
  const Graph g = ringed_tree_graph(6);
  const auto dist = bfs_distances(g, 0);
  const Vertex leaf = vertex_id({5, 0});
  ASSERT_EQ(dist[leaf], 5u);
  const double dp = poincare_distance(poincare_embed({0, 0}), poincare_embed({5, 0}));
  EXPECT_NEAR(dp, std::acosh(1 + 2 * (1 - 1.0 / 32) / (1.0 / 32)), 1e-9);
  EXPECT_GE(dp, 5 * std::numbers::ln2 / 2 - std::log(200.0));
  EXPECT_LE(dp, 5 * std::numbers::ln2 + std::log(66 * std::numbers::pi * std::numbers::pi));
  EXPECT_DOUBLE_EQ(qi_lower(5), 5 * std::numbers::ln2 / 2 - std::log(200.0));
}

TEST(StructuralLemmas, PassOnIntactTrees) {
  for (unsigned k : {1u, 2u, 3u, 6u, 9u}) {
    const auto r = verify_structural_lemmas(k, LemmaOptions{});
    for (const auto* c : r.checks()) {
      if (c == &r.ring_lower) continue;  // see LowerRingBoundCounterexample
      EXPECT_TRUE(c->ok()) << "k=" << k << " " << c->name << ": " << c->witness;
    }
  }
  EXPECT_TRUE(verify_structural_lemmas(3, LemmaOptions{}).ok());
  const auto r6 = verify_structural_lemmas(6, LemmaOptions{});
  EXPECT_EQ(r6.canonical.checked, 63u * 64u / 2u);
  EXPECT_EQ(r6.rectification.checked, 10'000u);
  EXPECT_EQ(r6.slim_triangles.checked, 10'000u);
  EXPECT_GT(r6.ring_upper.checked, 0u);
}

// Two level-3 vertices three ring steps apart are joined through their
// parents in 3 hops, while 2 log2 3 > 3. The lower bound is off by at most
// a constant: the excess stays below 2 at every size checked.
TEST(StructuralLemmas, LowerRingBoundCounterexample) {
  const Graph g = ringed_tree_graph(4);
  EXPECT_EQ(bfs_distances(g, vertex_id({3, 0}))[vertex_id({3, 3})], 3u);
  EXPECT_GT(2 * std::log2(3.0), 3.0);
  const auto r = verify_structural_lemmas(4, LemmaOptions{});
  EXPECT_FALSE(r.ring_lower.ok());
  EXPECT_EQ(r.ring_lower.witness, "(3,0)-(3,3) d=3 dR=3");
  for (unsigned k : {4u, 8u, 11u}) {
    const auto big = verify_structural_lemmas(k, LemmaOptions{100, 100, 1, 0});
    EXPECT_GT(big.ring_lower_excess, 0.0);
    EXPECT_LT(big.ring_lower_excess, 2.0);
  }
}

TEST(StructuralLemmas, RemovedRingEdgeIsCaught) {
  const unsigned k = 6;
  const Graph intact = ringed_tree_graph(k);
  const Vertex a = vertex_id({5, 10}), b = vertex_id({5, 11});
  GraphBuilder builder(intact.n());
  for (const auto& [u, v] : intact.edges())
    if (!(u == a && v == b)) builder.add_edge(u, v);
  const auto r = verify_structural_lemmas(k, std::move(builder).build(), LemmaOptions{});
  EXPECT_FALSE(r.canonical.ok());
  EXPECT_FALSE(r.canonical.witness.empty());
  EXPECT_FALSE(r.ok());
}

TEST(RingedTreeDelta, BoundedByForty) {
  for (unsigned k = 1; k <= 7; ++k) {
    const auto report = exact_delta(all_pairs(ringed_tree_graph(k)));
    EXPECT_LE(report.two_delta, 80u) << "k=" << k;
  }
}

}  // namespace
}  // namespace gromov
