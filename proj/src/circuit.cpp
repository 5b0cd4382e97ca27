#include "bellmark/circuit.hpp"

#include "bellmark/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <string>

namespace bellmark {

bool Gate::diagonal() const {
  if (is_cz()) {
    return true;
  }
  return std::all_of(ops.begin(), ops.end(), [](Gate1 g) { return is_diagonal(g); });
}

void Circuit::check() const {
  if (!labels.empty() && labels.size() != n_qubits) {
    fail(ErrorCode::InvalidArgument, "circuit labels do not match the qubit count");
  }
  std::vector<std::size_t> seen(n_qubits, 0);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    auto touch = [&](std::uint32_t q) {
      if (q >= n_qubits) {
        fail(ErrorCode::InvalidArgument, "gate qubit " + std::to_string(q) + " out of range");
      }
      if (seen[q] == l + 1) {
        fail(ErrorCode::InvalidArgument,
             "qubit " + std::to_string(q) + " used twice in layer " + std::to_string(l));
      }
      seen[q] = l + 1;
    };
    for (const auto& g : layers[l]) {
      touch(g.q0);
      if (g.is_cz()) {
        if (g.q0 == g.q1) {
          fail(ErrorCode::InvalidArgument, "CZ needs two distinct qubits");
        }
        touch(g.q1);
      } else if (g.ops.empty()) {
        fail(ErrorCode::InvalidArgument, "single-qubit gate without operations");
      }
    }
  }
}

GateCounts gate_counts(const Circuit& c) {
  GateCounts counts;
  counts.depth = c.layers.size();
  for (const auto& layer : c.layers) {
    std::uint64_t busy = 0;
    for (const auto& g : layer) {
      if (g.is_cz()) {
        ++counts.N2;
        busy += 2;
      } else {
        ++counts.N1;
        ++busy;
      }
    }
    counts.N1 += c.n_qubits - busy;
  }
  return counts;
}

void validate_edges(const Circuit& c, const ConnectivityGraph& device) {
  auto label = [&](std::uint32_t q) { return c.labels.empty() ? Vertex{q} : c.labels[q]; };
  for (const auto& layer : c.layers) {
    for (const auto& g : layer) {
      if (!g.is_cz()) {
        continue;
      }
      const Vertex a = label(g.q0);
      const Vertex b = label(g.q1);
      if (a >= device.size() || b >= device.size() || !device.has_edge(a, b)) {
        fail(ErrorCode::InvalidArgument, "CZ(" + std::to_string(a) + "," + std::to_string(b) +
                                             ") is not a device edge");
      }
    }
  }
}

void apply_gate(StabilizerTableau& t, const Gate& g) {
  if (g.is_cz()) {
    t.apply_cz(g.q0, g.q1);
    return;
  }
  for (Gate1 op : g.ops) {
    t.apply(op, g.q0);
  }
}

StabilizerTableau simulate(const Circuit& c) {
  c.check();
  StabilizerTableau t(c.n_qubits);
  for (const auto& layer : c.layers) {
    for (const auto& g : layer) {
      apply_gate(t, g);
    }
  }
  return t;
}

namespace {

Layer h_layer(std::size_t n) {
  Layer layer;
  for (std::uint32_t q = 0; q < n; ++q) {
    layer.push_back(Gate::single(q, Gate1::H));
  }
  return layer;
}

std::vector<Vertex> identity_labels(std::size_t n) {
  std::vector<Vertex> labels(n);
  for (std::size_t k = 0; k < n; ++k) {
    labels[k] = static_cast<Vertex>(k);
  }
  return labels;
}

/// Per-qubit concatenation: ops of `first` run before those of `second`.
Layer merge_single_layers(const Layer& first, const Layer& second) {
  Layer out = first;
  for (const auto& g : second) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Gate& h) { return h.q0 == g.q0; });
    if (it == out.end()) {
      out.push_back(g);
    } else {
      it->ops.insert(it->ops.end(), g.ops.begin(), g.ops.end());
    }
  }
  std::sort(out.begin(), out.end(), [](const Gate& a, const Gate& b) { return a.q0 < b.q0; });
  return out;
}

} // namespace

Circuit prep_lc_path(const std::vector<Vertex>& path, const ConnectivityGraph* device) {
  const std::size_t n = path.size();
  if (n == 0) {
    fail(ErrorCode::InvalidArgument, "empty path");
  }
  std::vector<Vertex> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorCode::InvalidArgument, "path repeats a vertex");
  }
  if (device != nullptr) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (path[k] >= device->size() || path[k + 1] >= device->size() ||
          !device->has_edge(path[k], path[k + 1])) {
        fail(ErrorCode::InvalidArgument, "consecutive path vertices " + std::to_string(path[k]) +
                                             "," + std::to_string(path[k + 1]) +
                                             " are not a device edge");
      }
    }
  }
  Circuit c;
  c.n_qubits = n;
  c.labels = path;
  c.layers.push_back(h_layer(n));
  Layer even;
  Layer odd;
  for (std::uint32_t k = 0; k + 1 < n; ++k) {
    (k % 2 == 0 ? even : odd).push_back(Gate::cz(k, k + 1));
  }
  if (!even.empty()) {
    c.layers.push_back(std::move(even));
  }
  if (!odd.empty()) {
    c.layers.push_back(std::move(odd));
  }
  return c;
}

Circuit prep_ghz_line(std::size_t n) {
  if (n < 2) {
    fail(ErrorCode::InvalidArgument, "GHZ preparation needs n >= 2");
  }
  Circuit c;
  c.n_qubits = n;
  c.labels = identity_labels(n);
  c.layers.push_back(h_layer(n));
  for (std::uint32_t k = 1; k < n; ++k) {
    c.layers.push_back({Gate::cz(0, k)});
  }
  return c;
}

Layer lc_layer(const ConnectivityGraph& state, Vertex v) {
  Layer layer;
  layer.push_back(Gate::single(v, Gate1::SqrtX));
  for (Vertex u : state.neighbors(v)) {
    layer.push_back(Gate::single(u, Gate1::SDag));
  }
  std::sort(layer.begin(), layer.end(), [](const Gate& a, const Gate& b) { return a.q0 < b.q0; });
  return layer;
}

GhzPrep prep_ghz_connectivity(const ConnectivityGraph& g) {
  const std::size_t n = g.size();
  if (n < 2) {
    fail(ErrorCode::InvalidArgument, "GHZ preparation needs n >= 2");
  }
  if (!g.is_connected()) {
    fail(ErrorCode::InvalidArgument, "GHZ preparation needs a connected graph");
  }
  GhzPrep out;
  Circuit& c = out.circuit;
  c.n_qubits = n;
  c.labels = identity_labels(n);
  c.layers.push_back(h_layer(n));

  ConnectivityGraph state(n);
  std::vector<bool> coupled(n, false);
  Vertex center = max_degree_vertex(g);
  coupled[center] = true;
  std::size_t n_coupled = 1;

  auto uncoupled_neighbors = [&](Vertex v) {
    std::size_t count = 0;
    for (Vertex u : g.neighbors(v)) {
      count += coupled[u] ? 0 : 1;
    }
    return count;
  };

  while (n_coupled < n) {
    Vertex best = center;
    std::size_t best_count = uncoupled_neighbors(center);
    if (best_count == 0) {
      for (Vertex v = 0; v < n; ++v) {
        if (!coupled[v]) {
          continue;
        }
        const std::size_t count = uncoupled_neighbors(v);
        if (count > best_count) {
          best = v;
          best_count = count;
        }
      }
    }
    if (best != center) {
      // LC at the centre makes the leaves a clique, LC at the new centre then
      // leaves a star around it.
      c.layers.push_back(lc_layer(state, center));
      state = local_complement(state, center);
      c.layers.push_back(lc_layer(state, best));
      state = local_complement(state, best);
      center = best;
    }
    for (Vertex u : g.neighbors(center)) {
      if (!coupled[u]) {
        c.layers.push_back({Gate::cz(center, u)});
        state.add_edge(center, u);
        coupled[u] = true;
        ++n_coupled;
      }
    }
  }
  out.center = center;
  return out;
}

std::vector<Layer> cz_via_path(ConnectivityGraph& state, const std::vector<Vertex>& path) {
  const std::size_t m = path.size();
  if (m < 2) {
    fail(ErrorCode::InvalidArgument, "cz_via_path needs at least two vertices");
  }
  std::vector<Vertex> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      sorted.back() >= state.size()) {
    fail(ErrorCode::InvalidArgument, "cz_via_path needs distinct in-range vertices");
  }
  for (std::size_t k = 1; k < m; ++k) {
    if (state.degree(path[k]) != 0) {
      fail(ErrorCode::Precondition, "cz_via_path: intermediate qubit " + std::to_string(path[k]) +
                                        " is already coupled");
    }
  }
  const Vertex first = path.front();
  std::vector<Layer> layers;
  layers.push_back({Gate::cz(first, path[1])});
  state.add_edge(first, path[1]);
  for (std::size_t k = 1; k + 1 < m; ++k) {
    const Vertex a = path[k];
    const Vertex b = path[k + 1];
    layers.push_back({Gate::cz(a, b)});
    state.add_edge(a, b);
    // LC at a couples first and b; LC at b then removes first-a.
    const Layer la = lc_layer(state, a);
    state = local_complement(state, a);
    const Layer lb = lc_layer(state, b);
    state = local_complement(state, b);
    layers.push_back(merge_single_layers(la, lb));
    layers.push_back({Gate::cz(a, b)});
    state.remove_edge(a, b);
  }
  return layers;
}

std::vector<Layer> schedule_asap(const std::vector<Layer>& layers, std::size_t n_qubits) {
  std::vector<Layer> out;
  std::vector<std::vector<char>> busy;
  // Per qubit: 1 + last layer holding any gate, and holding a non-diagonal gate.
  std::vector<std::size_t> after_any(n_qubits, 0);
  std::vector<std::size_t> after_nondiag(n_qubits, 0);
  for (const auto& layer : layers) {
    for (const auto& g : layer) {
      const bool diag = g.diagonal();
      std::vector<std::uint32_t> qs{g.q0};
      if (g.is_cz()) {
        qs.push_back(g.q1);
      }
      std::size_t lb = 0;
      for (auto q : qs) {
        if (q >= n_qubits) {
          fail(ErrorCode::InvalidArgument, "gate qubit out of range");
        }
        lb = std::max(lb, diag ? after_nondiag[q] : after_any[q]);
      }
      std::size_t slot = lb;
      for (;; ++slot) {
        if (slot == out.size()) {
          out.emplace_back();
          busy.emplace_back(n_qubits, 0);
        }
        if (std::none_of(qs.begin(), qs.end(), [&](auto q) { return busy[slot][q] != 0; })) {
          break;
        }
      }
      out[slot].push_back(g);
      for (auto q : qs) {
        busy[slot][q] = 1;
        after_any[q] = std::max(after_any[q], slot + 1);
        if (!diag) {
          after_nondiag[q] = std::max(after_nondiag[q], slot + 1);
        }
      }
    }
  }
  return out;
}

LcTreePrep prep_lc_spanning_tree(const ConnectivityGraph& g) {
  const std::size_t n = g.size();
  if (n == 0) {
    fail(ErrorCode::InvalidArgument, "empty graph");
  }
  if (!g.is_connected()) {
    fail(ErrorCode::InvalidArgument, "LC preparation needs a connected graph");
  }
  const ConnectivityGraph tree = spanning_tree(g);

  // Parent pointers and post-order from root 0, children ascending.
  std::vector<Vertex> parent(n, 0);
  std::vector<std::size_t> depth(n, 0);
  std::vector<Vertex> post;
  post.reserve(n);
  {
    std::vector<std::pair<Vertex, std::size_t>> stack{{0, 0}};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& nb = tree.neighbors(v);
      if (next < nb.size()) {
        const Vertex u = nb[next++];
        if (!seen[u]) {
          seen[u] = true;
          parent[u] = v;
          depth[u] = depth[v] + 1;
          stack.emplace_back(u, 0);
        }
      } else {
        post.push_back(v);
        stack.pop_back();
      }
    }
  }

  auto tree_path = [&](Vertex a, Vertex b) {
    std::vector<Vertex> up;
    std::vector<Vertex> down;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        up.push_back(a);
        a = parent[a];
      } else {
        down.push_back(b);
        b = parent[b];
      }
    }
    up.push_back(a);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  };

  std::vector<Layer> sequence;
  sequence.push_back(h_layer(n));
  ConnectivityGraph state(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    auto fragment = cz_via_path(state, tree_path(post[k], post[k + 1]));
    sequence.insert(sequence.end(), fragment.begin(), fragment.end());
  }

  LcTreePrep out;
  out.circuit.n_qubits = n;
  out.circuit.labels = identity_labels(n);
  out.circuit.layers = schedule_asap(sequence, n);
  out.ordering.assign(post.rbegin(), post.rend());
  return out;
}

namespace {

using nlohmann::json;

json gate_to_json(const Gate& g) {
  if (g.is_cz()) {
    return {{"gate", "CZ"}, {"qubits", {g.q0, g.q1}}};
  }
  if (g.ops.size() == 1) {
    return {{"gate", std::string(gate1_name(g.ops.front()))}, {"qubits", {g.q0}}};
  }
  json ops = json::array();
  for (Gate1 op : g.ops) {
    ops.push_back(std::string(gate1_name(op)));
  }
  return {{"gate", "C1"}, {"qubits", {g.q0}}, {"ops", ops}};
}

Gate gate_from_json(const json& j) {
  const auto name = j.at("gate").get<std::string>();
  const auto qubits = j.at("qubits").get<std::vector<std::uint32_t>>();
  if (name == "CZ") {
    if (qubits.size() != 2) {
      fail(ErrorCode::InvalidArgument, "CZ needs two qubits");
    }
    return Gate::cz(qubits[0], qubits[1]);
  }
  if (qubits.size() != 1) {
    fail(ErrorCode::InvalidArgument, "single-qubit gate needs one qubit");
  }
  if (name == "C1") {
    std::vector<Gate1> ops;
    for (const auto& op : j.at("ops")) {
      ops.push_back(gate1_from_name(op.get<std::string>()));
    }
    return Gate::composite(qubits[0], std::move(ops));
  }
  return Gate::single(qubits[0], gate1_from_name(name));
}

} // namespace

std::string circuit_to_json(const Circuit& c) {
  json layers = json::array();
  for (const auto& layer : c.layers) {
    json l = json::array();
    for (const auto& g : layer) {
      l.push_back(gate_to_json(g));
    }
    layers.push_back(std::move(l));
  }
  json doc = {{"n_qubits", c.n_qubits}, {"labels", c.labels}, {"layers", std::move(layers)}};
  return doc.dump();
}

Circuit circuit_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    Circuit c;
    c.n_qubits = doc.at("n_qubits").get<std::size_t>();
    if (doc.contains("labels")) {
      c.labels = doc.at("labels").get<std::vector<Vertex>>();
    }
    for (const auto& l : doc.at("layers")) {
      Layer layer;
      for (const auto& g : l) {
        layer.push_back(gate_from_json(g));
      }
      c.layers.push_back(std::move(layer));
    }
    c.check();
    return c;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed circuit JSON: ") + e.what());
  }
}

} // namespace bellmark
