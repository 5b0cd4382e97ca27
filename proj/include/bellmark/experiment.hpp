#pragma once

#include "bellmark/bell.hpp"
#include "bellmark/circuit.hpp"
#include "bellmark/devices.hpp"
#include "bellmark/estimation.hpp"
#include "bellmark/noise_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bellmark {

struct NoiseSpec {
  enum class Kind { Off, Depolarization, GlobalDepol };

  Kind kind = Kind::Off;
  NoiseParams params;  // Depolarization
  double alpha = 1.0;  // GlobalDepol: weight of the ideal state

  static NoiseSpec off() { return {}; }
  static NoiseSpec depolarization(const NoiseParams& p) { return {Kind::Depolarization, p, 1.0}; }
  static NoiseSpec global_depol(double alpha) { return {Kind::GlobalDepol, {}, alpha}; }

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

[[nodiscard]] std::string_view noise_kind_name(NoiseSpec::Kind k);  // off|depolarization|global
[[nodiscard]] NoiseSpec::Kind noise_kind_from_name(std::string_view name);

/// Trajectory simulator. Frame propagates the Pauli faults through the
/// circuit on top of the ideal state; Tableau re-simulates every shot,
/// including the basis change and per-qubit readout. Both draw the same
/// faults from the same stream and give identical outcomes.
enum class Engine { Frame, Tableau };

[[nodiscard]] std::string_view engine_name(Engine e);
[[nodiscard]] Engine engine_from_name(std::string_view name);

struct ExperimentConfig {
  std::string device = "eagle-127";  // preset name or JSON path
  Family family = Family::LC;
  std::size_t n = 6;
  std::uint64_t L = 800;
  std::uint64_t K = 1;
  std::uint32_t repetitions = 10;
  double sigma_target = 5.0;
  std::uint64_t master_seed = 1;
  NoiseSpec noise;
  Engine engine = Engine::Frame;
  /// Worker threads; 0 means BELLMARK_WORKERS or the hardware default.
  unsigned workers = 0;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Qubits chosen on the device, the preparation circuit and the operator.
struct Placement {
  Circuit circuit;  // labels: device qubit of each local qubit
  BellOperator op;  // over local qubits
};

/// LC: the first n vertices of the longest path found. GHZ: the first n
/// vertices in breadth-first order from the max-degree vertex, prepared by
/// star growth on the induced subgraph.
[[nodiscard]] Placement place(const DevicePreset& device, Family family, std::size_t n);

struct RepetitionResult {
  std::vector<TermIndex> indices;
  std::vector<int> outcomes;  // K per index, index-major
  double estimate = 0;
  double estimate_over_Q = 0;
  double p_value_bound = 1;
  double log_p_value_bound = 0;
  double sigma_equivalent = 0;

  friend bool operator==(const RepetitionResult&, const RepetitionResult&) = default;
};

struct ExperimentRecord {
  ExperimentConfig config;
  std::vector<Vertex> qubits;  // device qubits used, by local index
  GateCounts counts;
  BellBounds bounds;
  double M = 0;
  unsigned index_bits = 0;
  std::vector<RepetitionResult> repetitions;
  double mean_estimate = 0;
  double std_estimate = 0;
  double mean_over_Q = 0;
  double std_over_Q = 0;
  double seconds = 0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// Workers used when the config leaves the count open.
[[nodiscard]] unsigned default_workers();

/// Deterministic seed mixing for per-repetition and per-trajectory streams.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

/// Outcome (+-1) of one noisy shot measuring `term` (local qubits) after
/// preparing with `circuit`. `ideal` is the noiseless output of the circuit.
[[nodiscard]] int run_trajectory(const Circuit& circuit, const StabilizerTableau& ideal,
                                 const PauliString& term, const NoiseSpec& noise, Engine engine,
                                 std::uint64_t seed);

[[nodiscard]] ExperimentRecord run_experiment(const ExperimentConfig& cfg);

[[nodiscard]] std::string record_to_json(const ExperimentRecord& r);
[[nodiscard]] ExperimentRecord record_from_json(std::string_view text);
/// Header plus one row per repetition:
/// n,family,repetition,estimate,estimate_over_Q,p_bound,seed
[[nodiscard]] std::string record_to_csv(const ExperimentRecord& r, bool header = true);
[[nodiscard]] std::string csv_header();

struct SweepResult {
  std::vector<ExperimentRecord> records;
  ScalingModel model;
  std::optional<Extrapolation> extrapolation;
};

/// run_experiment for each n, then fit_scaling on the mean estimate / Q.
/// `form` defaults to linear for LC and quadratic for GHZ. When
/// `extrapolate_n` is set the fitted model is used for extrapolate_L.
[[nodiscard]] SweepResult sweep_and_fit(const ExperimentConfig& base,
                                        const std::vector<std::size_t>& ns,
                                        std::optional<ScalingModel::Form> form = std::nullopt,
                                        std::optional<double> extrapolate_n = std::nullopt);

[[nodiscard]] std::string sweep_to_csv(const SweepResult& s);
[[nodiscard]] std::string model_to_json(const ScalingModel& m);

} // namespace bellmark
