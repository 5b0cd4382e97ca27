#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace bellmark {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph over vertices [0, n). Used both for device
/// connectivity and for the graphs defining graph states.
///
/// Adjacency lists are kept sorted so that every traversal visits neighbours
/// in ascending index order.
class ConnectivityGraph {
public:
  ConnectivityGraph() = default;
  explicit ConnectivityGraph(std::size_t n_vertices);
  ConnectivityGraph(std::size_t n_vertices, const std::vector<Edge>& edges);

  [[nodiscard]] std::size_t size() const noexcept { return adjacency_.size(); }
  [[nodiscard]] std::size_t edge_count() const noexcept { return n_edges_; }

  [[nodiscard]] bool has_edge(Vertex a, Vertex b) const;
  [[nodiscard]] const std::vector<Vertex>& neighbors(Vertex v) const;
  [[nodiscard]] std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  /// Edges as (i, j) with i < j, sorted lexicographically.
  [[nodiscard]] std::vector<Edge> edges() const;

  /// Adds the edge if absent. Throws on self-loops or out-of-range vertices.
  void add_edge(Vertex a, Vertex b);
  void remove_edge(Vertex a, Vertex b);
  void toggle_edge(Vertex a, Vertex b);

  [[nodiscard]] bool is_connected() const;

  /// Subgraph induced by `vertices`; vertex k of the result is vertices[k].
  [[nodiscard]] ConnectivityGraph induced(const std::vector<Vertex>& vertices) const;

  friend bool operator==(const ConnectivityGraph& a, const ConnectivityGraph& b) {
    return a.adjacency_ == b.adjacency_;
  }

  static ConnectivityGraph path(std::size_t n);
  static ConnectivityGraph star(std::size_t n, Vertex center = 0);
  static ConnectivityGraph complete(std::size_t n);

private:
  void check_vertex(Vertex v) const;

  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t n_edges_ = 0;
};

/// Complements the edge set inside N(v); everything else is untouched.
[[nodiscard]] ConnectivityGraph local_complement(const ConnectivityGraph& g, Vertex v);

/// Breadth-first spanning tree rooted at vertex 0, expanding neighbours in
/// ascending order. Throws on a disconnected graph.
[[nodiscard]] ConnectivityGraph spanning_tree(const ConnectivityGraph& g);

/// Vertices in breadth-first order from `root`, neighbours ascending.
[[nodiscard]] std::vector<Vertex> bfs_order(const ConnectivityGraph& g, Vertex root);

/// Lowest-index vertex of maximum degree.
[[nodiscard]] Vertex max_degree_vertex(const ConnectivityGraph& g);

struct PathSearchOptions {
  /// 1 or 3; the returned vertex count is truncated to a multiple of this.
  unsigned length_multiple = 1;
  /// Node expansions allowed for the exhaustive search. Graphs with at most
  /// 20 vertices ignore the budget and are always searched exhaustively.
  std::uint64_t budget = 2'000'000;
  /// Restarts of the randomized extension heuristic used when the exhaustive
  /// search runs out of budget.
  unsigned heuristic_restarts = 200;
  std::uint64_t seed = 0x5eed;
};

struct PathSearchResult {
  std::vector<Vertex> path;
  /// True iff the exhaustive search finished, i.e. no longer simple path
  /// exists (before truncation to the requested multiple).
  bool exact = false;
  /// Length of the longest path found before truncation.
  std::size_t untruncated_length = 0;
};

[[nodiscard]] PathSearchResult longest_simple_path(const ConnectivityGraph& g,
                                                   const PathSearchOptions& options = {});

} // namespace bellmark
