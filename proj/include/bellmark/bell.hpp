#pragma once

#include "bellmark/graph.hpp"
#include "bellmark/pauli.hpp"
#include "bellmark/term_index.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace bellmark {

enum class Family { GHZ, LC };

[[nodiscard]] std::string_view family_name(Family f);  // "ghz" / "lc"
[[nodiscard]] Family family_from_name(std::string_view name);

/// Quantum bound Q, classical (LHV) bound C and their ratio D = Q / C.
struct BellBounds {
  double Q = 0;
  double C = 0;
  double D = 0;

  /// White-noise weight above which the state violates the inequality.
  [[nodiscard]] double alpha_min() const { return 1.0 / D; }
  friend bool operator==(const BellBounds&, const BellBounds&) = default;
};

/// Closed-form bounds. GHZ: Q = 2^(n-1), C = 2^((n-1)/2) (odd n) or 2^(n/2)
/// (even n). LC: n divisible by 3, Q = 4^(n/3), C = D = 2^(n/3).
[[nodiscard]] BellBounds bell_bounds(Family family, std::size_t n);

/// Bell operator of a graph state written as a sum of M = Q signed stabilizer
/// products. Terms are generated on demand from their index; the family is
/// never materialized.
///
/// GHZ (star graph, centre c, leaves l_0 < l_1 < ...):
///   B = g_c prod_k (1 + g_{l_k}),  bit k of the index selects g_{l_k}.
/// LC (path p_0, p_1, ..., n divisible by 3):
///   B = prod_b (1 + g_{p_3b}) g_{p_3b+1} (1 + g_{p_3b+2}),
///   base-4 digit b of the index is 2 s + t with s selecting g_{p_3b} and t
///   selecting g_{p_3b+2}.
class BellOperator {
public:
  /// `state_graph` must be a star (GHZ) or a path with n % 3 == 0 (LC).
  /// `qubit_map[k]` is the device qubit holding vertex k (identity if empty).
  static BellOperator build(Family family, const ConnectivityGraph& state_graph,
                            std::vector<Vertex> qubit_map = {});
  /// Star with centre 0, or path 0-1-...-(n-1).
  static BellOperator standard(Family family, std::size_t n);

  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] std::size_t size() const noexcept { return graph_.size(); }
  [[nodiscard]] const ConnectivityGraph& graph() const noexcept { return graph_; }
  [[nodiscard]] const std::vector<Vertex>& qubit_map() const noexcept { return qubit_map_; }
  [[nodiscard]] const std::vector<PauliString>& generators() const noexcept { return generators_; }

  /// log2 of the term count M.
  [[nodiscard]] unsigned index_bits() const noexcept { return index_bits_; }
  /// M as a double (exact: M is a power of two).
  [[nodiscard]] double term_count() const;
  /// M when it fits in 64 bits.
  [[nodiscard]] std::optional<std::uint64_t> term_count_exact() const;

  /// Hermitian signed Pauli term B_j. Pure; safe to call concurrently.
  [[nodiscard]] PauliString term(const TermIndex& j) const;
  [[nodiscard]] PauliString term(std::uint64_t j) const;

  [[nodiscard]] BellBounds bounds() const { return bell_bounds(family_, size()); }

  /// GHZ: the star centre. LC: the path order (vertex at each position).
  [[nodiscard]] Vertex ghz_center() const noexcept { return center_; }
  [[nodiscard]] const std::vector<Vertex>& order() const noexcept { return order_; }

private:
  Family family_ = Family::GHZ;
  ConnectivityGraph graph_;
  std::vector<Vertex> qubit_map_;
  std::vector<PauliString> generators_;
  unsigned index_bits_ = 0;
  Vertex center_ = 0;
  std::vector<Vertex> order_;  // GHZ: leaves ascending; LC: path order
};

/// Maximum of the Bell expression over deterministic local hidden variable
/// strategies: every (qubit, Pauli letter) pair occurring in some term gets an
/// independent +-1 value. Exhaustive; throws Error(InvalidArgument) when the
/// number of such pairs exceeds 24.
[[nodiscard]] std::int64_t lhv_bruteforce_bound(const BellOperator& op);

} // namespace bellmark
