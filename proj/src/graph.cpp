#include "bellmark/graph.hpp"

#include "bellmark/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <string>

namespace bellmark {

ConnectivityGraph::ConnectivityGraph(std::size_t n_vertices) : adjacency_(n_vertices) {}

ConnectivityGraph::ConnectivityGraph(std::size_t n_vertices, const std::vector<Edge>& edges)
    : adjacency_(n_vertices) {
  for (const auto& [a, b] : edges) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) {
      fail(ErrorCode::InvalidArgument, "self-loop on vertex " + std::to_string(a));
    }
    if (has_edge(a, b)) {
      fail(ErrorCode::InvalidArgument,
           "duplicate edge (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
    add_edge(a, b);
  }
}

void ConnectivityGraph::check_vertex(Vertex v) const {
  if (v >= adjacency_.size()) {
    fail(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range [0, " +
                                         std::to_string(adjacency_.size()) + ")");
  }
}

bool ConnectivityGraph::has_edge(Vertex a, Vertex b) const {
  check_vertex(a);
  check_vertex(b);
  const auto& na = adjacency_[a];
  return std::binary_search(na.begin(), na.end(), b);
}

const std::vector<Vertex>& ConnectivityGraph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

std::vector<Edge> ConnectivityGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(n_edges_);
  for (Vertex a = 0; a < adjacency_.size(); ++a) {
    for (Vertex b : adjacency_[a]) {
      if (a < b) {
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

void ConnectivityGraph::add_edge(Vertex a, Vertex b) {
  check_vertex(a);
  check_vertex(b);
  if (a == b) {
    fail(ErrorCode::InvalidArgument, "self-loop on vertex " + std::to_string(a));
  }
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it != list.end() && *it == v) {
      return false;
    }
    list.insert(it, v);
    return true;
  };
  if (insert_sorted(adjacency_[a], b)) {
    insert_sorted(adjacency_[b], a);
    ++n_edges_;
  }
}

void ConnectivityGraph::remove_edge(Vertex a, Vertex b) {
  check_vertex(a);
  check_vertex(b);
  auto erase_sorted = [](std::vector<Vertex>& list, Vertex v) {
    auto it = std::lower_bound(list.begin(), list.end(), v);
    if (it == list.end() || *it != v) {
      return false;
    }
    list.erase(it);
    return true;
  };
  if (erase_sorted(adjacency_[a], b)) {
    erase_sorted(adjacency_[b], a);
    --n_edges_;
  }
}

void ConnectivityGraph::toggle_edge(Vertex a, Vertex b) {
  if (has_edge(a, b)) {
    remove_edge(a, b);
  } else {
    add_edge(a, b);
  }
}

bool ConnectivityGraph::is_connected() const {
  if (adjacency_.empty()) {
    return true;
  }
  return bfs_order(*this, 0).size() == adjacency_.size();
}

ConnectivityGraph ConnectivityGraph::induced(const std::vector<Vertex>& vertices) const {
  std::vector<std::int64_t> local(size(), -1);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    check_vertex(vertices[k]);
    if (local[vertices[k]] >= 0) {
      fail(ErrorCode::InvalidArgument, "repeated vertex in induced subgraph");
    }
    local[vertices[k]] = static_cast<std::int64_t>(k);
  }
  ConnectivityGraph out(vertices.size());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    for (Vertex u : adjacency_[vertices[k]]) {
      if (local[u] > static_cast<std::int64_t>(k)) {
        out.add_edge(static_cast<Vertex>(k), static_cast<Vertex>(local[u]));
      }
    }
  }
  return out;
}

ConnectivityGraph ConnectivityGraph::path(std::size_t n) {
  ConnectivityGraph g(n);
  for (Vertex v = 1; v < n; ++v) {
    g.add_edge(v - 1, v);
  }
  return g;
}

ConnectivityGraph ConnectivityGraph::star(std::size_t n, Vertex center) {
  ConnectivityGraph g(n);
  if (n > 0) {
    g.check_vertex(center);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (v != center) {
      g.add_edge(center, v);
    }
  }
  return g;
}

ConnectivityGraph ConnectivityGraph::complete(std::size_t n) {
  ConnectivityGraph g(n);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      g.add_edge(a, b);
    }
  }
  return g;
}

ConnectivityGraph local_complement(const ConnectivityGraph& g, Vertex v) {
  ConnectivityGraph out = g;
  const auto nbrs = g.neighbors(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      out.toggle_edge(nbrs[i], nbrs[j]);
    }
  }
  return out;
}

std::vector<Vertex> bfs_order(const ConnectivityGraph& g, Vertex root) {
  std::vector<Vertex> order;
  if (g.size() == 0) {
    return order;
  }
  std::vector<bool> seen(g.size(), false);
  std::deque<Vertex> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (Vertex u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
    }
  }
  return order;
}

ConnectivityGraph spanning_tree(const ConnectivityGraph& g) {
  ConnectivityGraph tree(g.size());
  if (g.size() == 0) {
    return tree;
  }
  std::vector<bool> seen(g.size(), false);
  std::deque<Vertex> queue{0};
  seen[0] = true;
  std::size_t visited = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    ++visited;
    for (Vertex u : g.neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        tree.add_edge(v, u);
        queue.push_back(u);
      }
    }
  }
  if (visited != g.size()) {
    fail(ErrorCode::InvalidArgument, "spanning_tree: graph is disconnected");
  }
  return tree;
}

Vertex max_degree_vertex(const ConnectivityGraph& g) {
  if (g.size() == 0) {
    fail(ErrorCode::InvalidArgument, "empty graph has no vertices");
  }
  Vertex best = 0;
  for (Vertex v = 1; v < g.size(); ++v) {
    if (g.degree(v) > g.degree(best)) {
      best = v;
    }
  }
  return best;
}

namespace {

/// Branch-and-bound DFS. The bound is the number of unvisited vertices
/// reachable from the current endpoint, which is exact for the path's
/// remaining capacity on trees and cheap everywhere.
class ExhaustiveSearch {
public:
  ExhaustiveSearch(const ConnectivityGraph& g, std::uint64_t budget, bool unlimited)
      : g_(g), budget_(budget), unlimited_(unlimited), visited_(g.size(), false),
        mark_(g.size(), 0) {}

  /// Returns true when the search completed without hitting the budget.
  bool run(std::vector<Vertex>& best) {
    const std::size_t n = g_.size();
    component_size_ = largest_component();
    // Paths tend to end at low-degree vertices; trying those first finds long
    // paths early and tightens the bound.
    std::vector<Vertex> starts(n);
    std::iota(starts.begin(), starts.end(), Vertex{0});
    std::stable_sort(starts.begin(), starts.end(),
                     [&](Vertex a, Vertex b) { return g_.degree(a) < g_.degree(b); });
    best_ = &best;
    for (Vertex s : starts) {
      if (best.size() >= component_size_) {
        return true;
      }
      current_.assign(1, s);
      visited_[s] = true;
      extend();
      visited_[s] = false;
      if (exhausted_) {
        return false;
      }
    }
    return true;
  }

private:
  std::size_t largest_component() {
    std::vector<bool> seen(g_.size(), false);
    std::size_t best = 0;
    for (Vertex v = 0; v < g_.size(); ++v) {
      if (!seen[v]) {
        auto order = bfs_order(g_, v);
        for (Vertex u : order) {
          seen[u] = true;
        }
        best = std::max(best, order.size());
      }
    }
    return best;
  }

  std::size_t reachable_unvisited(Vertex from) {
    ++stamp_;
    std::size_t count = 0;
    stack_.clear();
    stack_.push_back(from);
    mark_[from] = stamp_;
    while (!stack_.empty()) {
      const Vertex v = stack_.back();
      stack_.pop_back();
      for (Vertex u : g_.neighbors(v)) {
        if (!visited_[u] && mark_[u] != stamp_) {
          mark_[u] = stamp_;
          ++count;
          stack_.push_back(u);
        }
      }
    }
    return count;
  }

  std::size_t free_degree(Vertex v) const {
    std::size_t d = 0;
    for (Vertex u : g_.neighbors(v)) {
      d += visited_[u] ? 0 : 1;
    }
    return d;
  }

  void extend() {
    if (current_.size() > best_->size()) {
      *best_ = current_;
    }
    if (best_->size() >= component_size_) {
      return;
    }
    if (!unlimited_ && expansions_ >= budget_) {
      exhausted_ = true;
      return;
    }
    ++expansions_;
    const Vertex end = current_.back();
    if (current_.size() + reachable_unvisited(end) <= best_->size()) {
      return;
    }
    std::vector<Vertex> next;
    for (Vertex u : g_.neighbors(end)) {
      if (!visited_[u]) {
        next.push_back(u);
      }
    }
    std::stable_sort(next.begin(), next.end(),
                     [&](Vertex a, Vertex b) { return free_degree(a) < free_degree(b); });
    for (Vertex u : next) {
      visited_[u] = true;
      current_.push_back(u);
      extend();
      current_.pop_back();
      visited_[u] = false;
      if (exhausted_ || best_->size() >= component_size_) {
        return;
      }
    }
  }

  const ConnectivityGraph& g_;
  std::uint64_t budget_;
  bool unlimited_;
  std::uint64_t expansions_ = 0;
  bool exhausted_ = false;
  std::size_t component_size_ = 0;
  std::vector<bool> visited_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::vector<Vertex> stack_;
  std::vector<Vertex> current_;
  std::vector<Vertex>* best_ = nullptr;
};

/// Randomized greedy extension with Posa rotations: extend the tail towards
/// the neighbour with the fewest free neighbours; when stuck, rotate the path
/// through a back-edge to expose a new tail.
std::vector<Vertex> rotation_heuristic(const ConnectivityGraph& g, Vertex start,
                                       std::mt19937_64& rng) {
  const std::size_t n = g.size();
  std::vector<Vertex> path{start};
  std::vector<bool> on_path(n, false);
  on_path[start] = true;
  std::vector<Vertex> best = path;

  auto free_degree = [&](Vertex v) {
    std::size_t d = 0;
    for (Vertex u : g.neighbors(v)) {
      d += on_path[u] ? 0 : 1;
    }
    return d;
  };

  const std::size_t max_rotations = 8 * n;
  std::size_t rotations = 0;
  bool reversed_once = false;
  while (true) {
    const Vertex tail = path.back();
    std::vector<Vertex> candidates;
    std::size_t best_deg = n + 1;
    for (Vertex u : g.neighbors(tail)) {
      if (on_path[u]) {
        continue;
      }
      const std::size_t d = free_degree(u);
      if (d < best_deg) {
        best_deg = d;
        candidates.clear();
      }
      if (d == best_deg) {
        candidates.push_back(u);
      }
    }
    if (!candidates.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      const Vertex u = candidates[pick(rng)];
      path.push_back(u);
      on_path[u] = true;
      if (path.size() > best.size()) {
        best = path;
      }
      continue;
    }
    if (!reversed_once) {
      std::reverse(path.begin(), path.end());
      reversed_once = true;
      continue;
    }
    if (rotations >= max_rotations) {
      break;
    }
    // Rotation: tail t adjacent to path[i] (i < size-2) gives the path
    // path[0..i], t, path[size-2], ..., path[i+1] with new tail path[i+1].
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> position(n, 0);
    for (std::size_t i = 0; i < path.size(); ++i) {
      position[path[i]] = i;
    }
    for (Vertex u : g.neighbors(tail)) {
      if (on_path[u] && position[u] + 2 < path.size()) {
        pivots.push_back(position[u]);
      }
    }
    if (pivots.empty()) {
      break;
    }
    std::uniform_int_distribution<std::size_t> pick(0, pivots.size() - 1);
    const std::size_t i = pivots[pick(rng)];
    std::reverse(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
    ++rotations;
    reversed_once = false;
  }
  return best;
}

} // namespace

PathSearchResult longest_simple_path(const ConnectivityGraph& g, const PathSearchOptions& options) {
  if (options.length_multiple != 1 && options.length_multiple != 3) {
    fail(ErrorCode::InvalidArgument, "length_multiple must be 1 or 3");
  }
  PathSearchResult result;
  if (g.size() == 0) {
    result.exact = true;
    return result;
  }
  std::vector<Vertex> best;
  ExhaustiveSearch search(g, options.budget, g.size() <= 20);
  result.exact = search.run(best);

  if (!result.exact) {
    std::mt19937_64 rng(options.seed);
    std::vector<Vertex> starts(g.size());
    std::iota(starts.begin(), starts.end(), Vertex{0});
    std::stable_sort(starts.begin(), starts.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    for (unsigned r = 0; r < options.heuristic_restarts && best.size() < g.size(); ++r) {
      auto candidate = rotation_heuristic(g, starts[r % starts.size()], rng);
      if (candidate.size() > best.size()) {
        best = std::move(candidate);
      }
    }
  }

  if (!best.empty() && best.front() > best.back()) {
    std::reverse(best.begin(), best.end());
  }
  result.untruncated_length = best.size();
  best.resize(best.size() - best.size() % options.length_multiple);
  result.path = std::move(best);
  return result;
}

} // namespace bellmark
