#pragma once

#include "bellmark/graph.hpp"
#include "bellmark/tableau.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bellmark {

/// One gate of a layer: a CZ, or a single-qubit Clifford given as a sequence
/// of primitives applied in order (a composite counts as one gate).
struct Gate {
  enum class Kind : std::uint8_t { Single, CZ };

  Kind kind = Kind::Single;
  std::uint32_t q0 = 0;
  std::uint32_t q1 = 0;  // CZ only
  std::vector<Gate1> ops;  // Single only

  static Gate single(std::uint32_t q, Gate1 g) { return {Kind::Single, q, 0, {g}}; }
  static Gate composite(std::uint32_t q, std::vector<Gate1> ops) {
    return {Kind::Single, q, 0, std::move(ops)};
  }
  static Gate cz(std::uint32_t a, std::uint32_t b) { return {Kind::CZ, a, b, {}}; }

  [[nodiscard]] bool is_cz() const noexcept { return kind == Kind::CZ; }
  [[nodiscard]] bool acts_on(std::uint32_t q) const { return q0 == q || (is_cz() && q1 == q); }
  /// Diagonal in the computational basis (CZ, or only S/S_DAG/Z/I).
  [[nodiscard]] bool diagonal() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

using Layer = std::vector<Gate>;

/// Layered circuit on local qubits 0..n-1. `labels[k]` is the device qubit
/// that local qubit k runs on.
struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<Layer> layers;
  std::vector<Vertex> labels;

  [[nodiscard]] std::size_t depth() const noexcept { return layers.size(); }

  /// Throws Error(InvalidArgument) if a layer reuses a qubit or a qubit index
  /// is out of range.
  void check() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct GateCounts {
  std::uint64_t N1 = 0;  // single-qubit gates including idle identities
  std::uint64_t N2 = 0;  // CZ gates
  std::uint64_t depth = 0;
  friend bool operator==(const GateCounts&, const GateCounts&) = default;
};

/// N1 counts every explicit single-qubit gate plus one identity for each
/// qubit idle in a layer.
[[nodiscard]] GateCounts gate_counts(const Circuit& c);

/// Throws Error(InvalidArgument) unless every CZ acts on an edge of `device`
/// (after mapping through the labels).
void validate_edges(const Circuit& c, const ConnectivityGraph& device);

/// Runs the circuit noiselessly on |0...0>.
[[nodiscard]] StabilizerTableau simulate(const Circuit& c);
void apply_gate(StabilizerTableau& t, const Gate& g);

/// H on all qubits, then CZs on edges (0,1),(2,3),... and (1,2),(3,4),...
/// Local qubit k is path[k].
[[nodiscard]] Circuit prep_lc_path(const std::vector<Vertex>& path,
                                   const ConnectivityGraph* device = nullptr);

/// H layer followed by CZ(0, k) for k = 1..n-1, one per layer. Produces the
/// star graph state centred on qubit 0.
[[nodiscard]] Circuit prep_ghz_line(std::size_t n);

struct GhzPrep {
  Circuit circuit;
  Vertex center = 0;  // local index of the final star centre
};

/// Grows a star over the whole connected graph `g`: start at the max-degree
/// vertex, move the centre with two local-complementation layers whenever a
/// coupled vertex has more uncoupled neighbours, attach those by CZ. The
/// output is the star graph state with centre `center`.
[[nodiscard]] GhzPrep prep_ghz_connectivity(const ConnectivityGraph& g);

/// Single-layer realization of a local complementation at v of `state`:
/// SQRT_X on v, S_DAG on every neighbour.
[[nodiscard]] Layer lc_layer(const ConnectivityGraph& state, Vertex v);

/// CZ between path.front() and path.back() built from CZs along the path and
/// local complementations. `state` is the graph state currently prepared (all
/// qubits in |+> as a starting point); path[1..] must be isolated in it.
/// Updates `state` by adding the endpoint edge. Depth 3 (m - 2) + 1.
[[nodiscard]] std::vector<Layer> cz_via_path(ConnectivityGraph& state,
                                             const std::vector<Vertex>& path);

struct LcTreePrep {
  Circuit circuit;
  /// Local qubits in path order: the output is the path graph state of it.
  std::vector<Vertex> ordering;
};

/// Linear cluster state over all vertices of the connected graph `g`, by a
/// post-order walk of its spanning tree. Consecutive vertices not adjacent in
/// the tree are joined with cz_via_path. Depth at most 5 n.
[[nodiscard]] LcTreePrep prep_lc_spanning_tree(const ConnectivityGraph& g);

/// Re-layers a gate sequence as-soon-as-possible. Gates may move past earlier
/// gates they commute with (both diagonal, or disjoint support).
[[nodiscard]] std::vector<Layer> schedule_asap(const std::vector<Layer>& layers,
                                               std::size_t n_qubits);

/// {"n_qubits", "labels", "layers": [[{"gate", "qubits"[, "ops"]}]]}.
[[nodiscard]] std::string circuit_to_json(const Circuit& c);
[[nodiscard]] Circuit circuit_from_json(std::string_view text);

} // namespace bellmark
