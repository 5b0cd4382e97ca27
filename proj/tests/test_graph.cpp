#include "bellmark/devices.hpp"
#include "bellmark/error.hpp"
#include "bellmark/graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

using namespace bellmark;

namespace {

ConnectivityGraph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(density);
  ConnectivityGraph g(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (keep(rng)) {
        g.add_edge(a, b);
      }
    }
  }
  return g;
}

ConnectivityGraph random_connected(std::size_t n, double density, std::mt19937_64& rng) {
  auto g = random_graph(n, density, rng);
  for (Vertex v = 1; v < n; ++v) {
    g.add_edge(static_cast<Vertex>(rng() % v), v);
  }
  return g;
}

bool is_simple_path(const ConnectivityGraph& g, const std::vector<Vertex>& path) {
  std::set<Vertex> seen(path.begin(), path.end());
  if (seen.size() != path.size()) {
    return false;
  }
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (!g.has_edge(path[k - 1], path[k])) {
      return false;
    }
  }
  return true;
}

// Plain DFS from every start vertex, no pruning.
std::size_t brute_longest(const ConnectivityGraph& g) {
  std::vector<bool> used(g.size(), false);
  std::size_t best = 0;
  std::function<void(Vertex, std::size_t)> dfs = [&](Vertex v, std::size_t len) {
    best = std::max(best, len);
    for (Vertex w : g.neighbors(v)) {
      if (!used[w]) {
        used[w] = true;
        dfs(w, len + 1);
        used[w] = false;
      }
    }
  };
  for (Vertex s = 0; s < g.size(); ++s) {
    used[s] = true;
    dfs(s, 1);
    used[s] = false;
  }
  return best;
}

bool is_tree_of(const ConnectivityGraph& t, const ConnectivityGraph& g) {
  if (t.size() != g.size() || t.edge_count() + 1 != g.size() || !t.is_connected()) {
    return false;
  }
  for (const auto& [a, b] : t.edges()) {
    if (!g.has_edge(a, b)) {
      return false;
    }
  }
  return true;
}

} // namespace

TEST(Graph, RejectsSelfLoopsAndBadIndices) {
  ConnectivityGraph g(3);
  EXPECT_THROW(g.add_edge(1, 1), Error);
  EXPECT_THROW(g.add_edge(0, 3), Error);
  EXPECT_THROW((void)ConnectivityGraph(2, {{0, 2}}), Error);
}

TEST(Graph, DuplicateEdges) {
  EXPECT_THROW((void)ConnectivityGraph(3, {{0, 1}, {1, 0}}), Error);
  ConnectivityGraph g(3, {{0, 1}});
  g.add_edge(1, 0);
  EXPECT_EQ(g.edge_count(), 1U);
  EXPECT_TRUE(g.has_edge(1, 0));
}

TEST(Graph, LocalComplementExamples) {
  const auto path = ConnectivityGraph::path(3);
  const auto tri = ConnectivityGraph::complete(3);
  EXPECT_EQ(local_complement(path, 1), tri);
  EXPECT_EQ(local_complement(tri, 1), path);
  EXPECT_EQ(local_complement(ConnectivityGraph::star(6, 2), 2), ConnectivityGraph::complete(6));
  EXPECT_THROW((void)local_complement(path, 3), Error);
}

TEST(Graph, LocalComplementIsInvolutionAndLocal) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const auto g = random_graph(n, 0.4, rng);
    const auto v = static_cast<Vertex>(rng() % n);
    const auto h = local_complement(g, v);
    EXPECT_EQ(local_complement(h, v), g);
    EXPECT_EQ(h.size(), g.size());
    const auto& nb = g.neighbors(v);
    auto in_nb = [&](Vertex x) { return std::binary_search(nb.begin(), nb.end(), x); };
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) {
        if (in_nb(a) && in_nb(b)) {
          EXPECT_NE(h.has_edge(a, b), g.has_edge(a, b));
        } else {
          EXPECT_EQ(h.has_edge(a, b), g.has_edge(a, b));
        }
      }
    }
  }
}

TEST(Graph, SpanningTreeProperties) {
  const auto tree = ConnectivityGraph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
  EXPECT_EQ(spanning_tree(tree), tree);
  const auto k4 = ConnectivityGraph::complete(4);
  EXPECT_TRUE(is_tree_of(spanning_tree(k4), k4));
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_connected(2 + trial % 20, 0.2, rng);
    const auto t = spanning_tree(g);
    EXPECT_TRUE(is_tree_of(t, g));
    EXPECT_EQ(spanning_tree(g), t);
  }
  EXPECT_THROW((void)spanning_tree(ConnectivityGraph(3, {{0, 1}})), Error);
}

TEST(Graph, SpanningTreeOfPresets) {
  for (const auto& name : preset_names()) {
    const auto dev = load_preset(name);
    EXPECT_TRUE(is_tree_of(spanning_tree(dev.graph), dev.graph)) << name;
  }
  EXPECT_EQ(spanning_tree(load_preset("eagle-127").graph).edge_count(), 126U);
}

TEST(Graph, BfsAndMaxDegree) {
  const auto g = ConnectivityGraph(5, {{0, 3}, {3, 4}, {3, 1}, {1, 2}});
  EXPECT_EQ(max_degree_vertex(g), 3U);
  EXPECT_EQ(bfs_order(g, 3), (std::vector<Vertex>{3, 0, 1, 4, 2}));
  EXPECT_EQ(max_degree_vertex(ConnectivityGraph::path(4)), 1U);
}

TEST(Graph, LongestPathMatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const auto g = random_connected(n, trial % 3 == 0 ? 0.5 : 0.15, rng);
    const auto r = longest_simple_path(g);
    ASSERT_TRUE(r.exact);
    EXPECT_TRUE(is_simple_path(g, r.path));
    EXPECT_EQ(r.path.size(), brute_longest(g));
    EXPECT_EQ(r.untruncated_length, r.path.size());

    PathSearchOptions three;
    three.length_multiple = 3;
    const auto t = longest_simple_path(g, three);
    EXPECT_EQ(t.path.size(), brute_longest(g) / 3 * 3);
    EXPECT_TRUE(is_simple_path(g, t.path));
  }
}

TEST(Graph, LongestPathEdgeCases) {
  EXPECT_TRUE(longest_simple_path(ConnectivityGraph()).path.empty());
  EXPECT_EQ(longest_simple_path(ConnectivityGraph(1)).path.size(), 1U);
  PathSearchOptions bad;
  bad.length_multiple = 2;
  EXPECT_THROW((void)longest_simple_path(ConnectivityGraph::path(4), bad), Error);
}

TEST(Graph, LongestPathOnPresets) {
  PathSearchOptions three;
  three.length_multiple = 3;

  const auto star = longest_simple_path(load_preset("star-5").graph, three);
  EXPECT_EQ(star.path.size(), 3U);
  EXPECT_TRUE(star.exact);
  EXPECT_EQ(load_preset("star-5").graph.degree(star.path[1]), 4U);

  const auto falcon = longest_simple_path(load_preset("falcon-7").graph, three);
  EXPECT_EQ(falcon.path.size(), 3U);
  EXPECT_EQ(falcon.untruncated_length, 5U);
  EXPECT_TRUE(falcon.exact);

  const auto ion = longest_simple_path(load_preset("ion-trap-20").graph, three);
  EXPECT_EQ(ion.path.size(), 18U);

  const auto eagle_graph = load_preset("eagle-127").graph;
  const auto eagle = longest_simple_path(eagle_graph, three);
  EXPECT_GE(eagle.path.size(), 105U);
  EXPECT_EQ(eagle.path.size() % 3, 0U);
  EXPECT_TRUE(is_simple_path(eagle_graph, eagle.path));

  const auto sycamore_graph = load_preset("sycamore-53").graph;
  const auto syc = longest_simple_path(sycamore_graph, three);
  EXPECT_GE(syc.path.size(), 48U);
  EXPECT_TRUE(is_simple_path(sycamore_graph, syc.path));
}

TEST(Graph, InducedSubgraph) {
  const auto g = ConnectivityGraph::path(5);
  const auto h = g.induced({4, 3, 1});
  EXPECT_EQ(h.size(), 3U);
  EXPECT_TRUE(h.has_edge(0, 1));
  EXPECT_FALSE(h.has_edge(1, 2));
}
