#pragma once

#include "bellmark/graph.hpp"
#include "bellmark/pauli.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace bellmark {

using Rng = std::mt19937_64;

/// Single-qubit Clifford primitives understood by the simulator.
enum class Gate1 : std::uint8_t { I, H, S, SDag, SqrtX, SqrtXDag, X, Y, Z };

[[nodiscard]] std::string_view gate1_name(Gate1 g);
[[nodiscard]] Gate1 gate1_from_name(std::string_view name);
/// True for gates diagonal in the computational basis.
[[nodiscard]] bool is_diagonal(Gate1 g);

struct MeasureResult {
  int outcome = 1;  // +1 or -1
  bool deterministic = true;
};

/// Aaronson-Gottesman tableau with destabilizers. Rows are stored bit-packed
/// (one x and one z word array per row) with phases in the X-before-Z
/// convention of PauliString, so all products are phase exact.
///
/// Row r < n is destabilizer r, row n + r is stabilizer r.
class StabilizerTableau {
public:
  /// |0...0>.
  explicit StabilizerTableau(std::size_t n_qubits);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }

  [[nodiscard]] PauliString stabilizer(std::size_t r) const { return row(n_ + r); }
  [[nodiscard]] PauliString destabilizer(std::size_t r) const { return row(r); }

  void apply(Gate1 g, std::size_t q);
  void apply_cz(std::size_t a, std::size_t b);
  /// Applies the Pauli operator p to the state (conjugation flips signs of
  /// anticommuting rows).
  void apply_pauli(const PauliString& p);

  /// Measures a Hermitian Pauli observable. If +-obs is in the stabilizer
  /// group the outcome is deterministic and the state is unchanged; otherwise
  /// the outcome is uniform and the state collapses.
  MeasureResult measure(const PauliString& obs, Rng& rng);
  /// Computational-basis measurement of one qubit.
  MeasureResult measure_z(std::size_t q, Rng& rng);

  /// Expectation value of a Hermitian Pauli: +-1 if deterministic, else 0.
  /// Does not modify the state.
  [[nodiscard]] int expectation(const PauliString& obs) const;

  /// Stabilizer rows commute pairwise and are Hermitian, each destabilizer
  /// anticommutes only with its paired stabilizer, destabilizers commute.
  [[nodiscard]] bool check_invariants() const;

private:
  [[nodiscard]] PauliString row(std::size_t r) const;
  Word* xrow(std::size_t r) { return &x_[r * words_]; }
  Word* zrow(std::size_t r) { return &z_[r * words_]; }
  [[nodiscard]] const Word* xrow(std::size_t r) const { return &x_[r * words_]; }
  [[nodiscard]] const Word* zrow(std::size_t r) const { return &z_[r * words_]; }
  [[nodiscard]] bool row_anticommutes(std::size_t r, const PauliString& p) const;
  [[nodiscard]] bool rows_anticommute(std::size_t a, std::size_t b) const;
  /// row[target] := row[target] * row[source]
  void multiply_row(std::size_t target, std::size_t source);

  std::size_t n_;
  std::size_t words_;
  std::vector<Word> x_;
  std::vector<Word> z_;
  std::vector<std::uint8_t> phase_;
};

/// Stabilizer generators g_i = X_i prod_{j in N(i)} Z_j, one per vertex.
[[nodiscard]] std::vector<PauliString> graph_stabilizers(const ConnectivityGraph& g);

/// True iff every generator of the graph state |g> measures +1
/// deterministically on `t` (i.e. t is exactly |g>).
[[nodiscard]] bool is_graph_state(const StabilizerTableau& t, const ConnectivityGraph& g);

// Stochastic Pauli channels realized as trajectory sampling. The sample_*
// functions draw the fault without applying it, so other simulators can
// consume the exact same random stream.

/// I with probability 1 - p, otherwise X, Y or Z uniformly.
[[nodiscard]] Gate1 sample_depolarizing1(double p, Rng& rng);
/// (I, I) with probability 1 - p, otherwise one of the 15 other pairs.
[[nodiscard]] std::pair<Gate1, Gate1> sample_depolarizing2(double p, Rng& rng);
/// True with probability p.
[[nodiscard]] bool sample_flip(double p, Rng& rng);

/// With probability p applies X, Y or Z (uniformly) to qubit q.
void apply_depolarizing1(StabilizerTableau& t, std::size_t q, double p, Rng& rng);
/// With probability p applies one of the 15 non-identity two-qubit Paulis.
void apply_depolarizing2(StabilizerTableau& t, std::size_t a, std::size_t b, double p, Rng& rng);
/// Classical readout error: returns `bit` flipped with probability p.
[[nodiscard]] int apply_readout_flip(int bit, double p, Rng& rng);

} // namespace bellmark
