#include "bellmark/experiment.hpp"

#include "bellmark/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>

namespace bellmark {

using ojson = nlohmann::ordered_json;

std::string_view noise_kind_name(NoiseSpec::Kind k) {
  switch (k) {
  case NoiseSpec::Kind::Off: return "off";
  case NoiseSpec::Kind::Depolarization: return "depolarization";
  case NoiseSpec::Kind::GlobalDepol: return "global";
  }
  return "off";
}

NoiseSpec::Kind noise_kind_from_name(std::string_view name) {
  if (name == "off") {
    return NoiseSpec::Kind::Off;
  }
  if (name == "depolarization" || name == "device") {
    return NoiseSpec::Kind::Depolarization;
  }
  if (name == "global") {
    return NoiseSpec::Kind::GlobalDepol;
  }
  fail(ErrorCode::InvalidArgument, "unknown noise kind '" + std::string(name) + "'");
}

std::string_view engine_name(Engine e) { return e == Engine::Frame ? "frame" : "tableau"; }

Engine engine_from_name(std::string_view name) {
  if (name == "frame") {
    return Engine::Frame;
  }
  if (name == "tableau") {
    return Engine::Tableau;
  }
  fail(ErrorCode::InvalidArgument, "unknown engine '" + std::string(name) + "'");
}

Placement place(const DevicePreset& device, Family family, std::size_t n) {
  (void)bell_bounds(family, n);
  const ConnectivityGraph& g = device.graph;
  if (n > g.size()) {
    fail(ErrorCode::InvalidArgument, "n = " + std::to_string(n) + " exceeds the " +
                                         std::to_string(g.size()) + " qubits of " + device.name);
  }
  Placement out;
  if (family == Family::LC) {
    PathSearchOptions opts;
    opts.length_multiple = 3;
    auto found = longest_simple_path(g, opts);
    if (found.path.size() < n) {
      fail(ErrorCode::InvalidArgument, "no path of " + std::to_string(n) + " qubits found on " +
                                           device.name + " (longest: " +
                                           std::to_string(found.untruncated_length) + ")");
    }
    found.path.resize(n);
    out.circuit = prep_lc_path(found.path, &g);
    out.op = BellOperator::build(Family::LC, ConnectivityGraph::path(n), found.path);
    return out;
  }
  const auto order = bfs_order(g, max_degree_vertex(g));
  if (order.size() < n) {
    fail(ErrorCode::InvalidArgument, "device component too small for n = " + std::to_string(n));
  }
  std::vector<Vertex> qubits(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
  auto prep = prep_ghz_connectivity(g.induced(qubits));
  prep.circuit.labels = qubits;
  validate_edges(prep.circuit, g);
  out.circuit = std::move(prep.circuit);
  out.op = BellOperator::build(Family::GHZ, ConnectivityGraph::star(n, prep.center), qubits);
  return out;
}

unsigned default_workers() {
  if (const char* env = std::getenv("BELLMARK_WORKERS")) {
    unsigned value = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size() && value > 0) {
      return value;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kIndexStream = ~std::uint64_t{0};
constexpr std::uint64_t kMeasureStream = 0x6d65617375726531ULL;

/// Pauli fault frame, one (x, z) pair per qubit; phases are irrelevant.
struct Frame {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;

  explicit Frame(std::size_t n) : x(n, 0), z(n, 0) {}

  void inject(Gate1 e, std::size_t q) {
    if (e == Gate1::X || e == Gate1::Y) {
      x[q] ^= 1;
    }
    if (e == Gate1::Z || e == Gate1::Y) {
      z[q] ^= 1;
    }
  }

  void conjugate(Gate1 g, std::size_t q) {
    switch (g) {
    case Gate1::H: std::swap(x[q], z[q]); break;
    case Gate1::S:
    case Gate1::SDag: z[q] ^= x[q]; break;
    case Gate1::SqrtX:
    case Gate1::SqrtXDag: x[q] ^= z[q]; break;
    default: break;
    }
  }

  void conjugate(const Gate& g) {
    if (g.is_cz()) {
      z[g.q0] ^= x[g.q1];
      z[g.q1] ^= x[g.q0];
      return;
    }
    for (Gate1 op : g.ops) {
      conjugate(op, g.q0);
    }
  }

  [[nodiscard]] bool anticommutes(const PauliString& p) const {
    unsigned parity = 0;
    for (std::size_t q = 0; q < x.size(); ++q) {
      parity ^= (x[q] & static_cast<unsigned>(p.z(q))) ^ (z[q] & static_cast<unsigned>(p.x(q)));
    }
    return parity != 0;
  }
};

Gate1 letter_gate(unsigned k) {
  static constexpr Gate1 kPaulis[] = {Gate1::I, Gate1::X, Gate1::Y, Gate1::Z};
  return kPaulis[k & 3U];
}

/// Walks the circuit, applying gates and sampled faults through `apply` and
/// `inject`. Faults follow every gate; idle qubits get a single-qubit fault.
template <typename ApplyGate, typename Inject>
void walk_noisy(const Circuit& c, const NoiseParams& p, Rng& rng, ApplyGate&& apply,
                Inject&& inject) {
  std::vector<std::uint8_t> busy(c.n_qubits);
  for (const auto& layer : c.layers) {
    std::fill(busy.begin(), busy.end(), 0);
    for (const auto& g : layer) {
      apply(g);
      busy[g.q0] = 1;
      if (g.is_cz()) {
        busy[g.q1] = 1;
        const auto [ea, eb] = sample_depolarizing2(p.p2, rng);
        inject(ea, g.q0);
        inject(eb, g.q1);
      } else {
        inject(sample_depolarizing1(p.p1, rng), g.q0);
      }
    }
    for (std::size_t q = 0; q < c.n_qubits; ++q) {
      if (busy[q] == 0) {
        inject(sample_depolarizing1(p.p1, rng), q);
      }
    }
  }
}

int frame_trajectory(const Circuit& c, const StabilizerTableau& ideal, const PauliString& term,
                     const NoiseSpec& noise, Rng& rng) {
  const int ideal_value = ideal.expectation(term);
  if (ideal_value == 0) {
    fail(ErrorCode::Precondition, "frame engine needs terms that stabilize the prepared state");
  }
  Frame frame(c.n_qubits);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (noise.kind == NoiseSpec::Kind::Depolarization) {
    walk_noisy(
        c, noise.params, rng, [&](const Gate& g) { frame.conjugate(g); },
        [&](Gate1 e, std::size_t q) { frame.inject(e, q); });
  } else if (noise.kind == NoiseSpec::Kind::GlobalDepol) {
    if (u(rng) >= noise.alpha) {
      for (std::size_t q = 0; q < c.n_qubits; ++q) {
        frame.inject(letter_gate(static_cast<unsigned>(rng())), q);
      }
    }
  }
  int outcome = frame.anticommutes(term) ? -ideal_value : ideal_value;
  if (noise.kind == NoiseSpec::Kind::Depolarization) {
    for (std::size_t q = 0; q < c.n_qubits; ++q) {
      if (term.letter(q) != 'I' && sample_flip(noise.params.pr, rng)) {
        outcome = -outcome;
      }
    }
  }
  return outcome;
}

int tableau_trajectory(const Circuit& c, const StabilizerTableau& ideal, const PauliString& term,
                       const NoiseSpec& noise, Rng& rng, Rng& measure_rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  StabilizerTableau t = ideal;
  if (noise.kind == NoiseSpec::Kind::Depolarization) {
    t = StabilizerTableau(c.n_qubits);
    walk_noisy(
        c, noise.params, rng, [&](const Gate& g) { apply_gate(t, g); },
        [&](Gate1 e, std::size_t q) {
          if (e != Gate1::I) {
            t.apply(e, q);
          }
        });
  } else if (noise.kind == NoiseSpec::Kind::GlobalDepol) {
    if (u(rng) >= noise.alpha) {
      for (std::size_t q = 0; q < c.n_qubits; ++q) {
        const Gate1 e = letter_gate(static_cast<unsigned>(rng()));
        if (e != Gate1::I) {
          t.apply(e, q);
        }
      }
    }
  }
  int outcome = term.sign();
  for (std::size_t q = 0; q < c.n_qubits; ++q) {
    const char letter = term.letter(q);
    if (letter == 'I') {
      continue;
    }
    if (letter == 'X') {
      t.apply(Gate1::H, q);
    } else if (letter == 'Y') {
      t.apply(Gate1::SDag, q);
      t.apply(Gate1::H, q);
    }
    int bit = t.measure_z(q, measure_rng).outcome;
    if (noise.kind == NoiseSpec::Kind::Depolarization && sample_flip(noise.params.pr, rng)) {
      bit = -bit;
    }
    outcome *= bit;
  }
  return outcome;
}

/// Runs fn(i) for i in [0, count) on `workers` threads. The first exception
/// is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, workers), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  constexpr std::size_t kChunk = 64;
  auto body = [&] {
    try {
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= count) {
          break;
        }
        const std::size_t end = std::min(count, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
          fn(i);
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) {
        error = std::current_exception();
      }
      stop = true;
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(body);
  }
  for (auto& t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.L == 0 || cfg.K == 0 || cfg.repetitions == 0) {
    fail(ErrorCode::InvalidArgument, "L, K and repetitions must be at least 1");
  }
  if (!(cfg.sigma_target > 0.0)) {
    fail(ErrorCode::InvalidArgument, "sigma target must be positive");
  }
  if (cfg.noise.kind == NoiseSpec::Kind::Depolarization) {
    cfg.noise.params.validate();
  }
  if (cfg.noise.kind == NoiseSpec::Kind::GlobalDepol &&
      !(cfg.noise.alpha >= 0.0 && cfg.noise.alpha <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "global depolarization alpha must lie in [0, 1]");
  }
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  double mean = 0;
  for (double x : v) {
    mean += x;
  }
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) {
    return {mean, 0.0};
  }
  double ss = 0;
  for (double x : v) {
    ss += (x - mean) * (x - mean);
  }
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ a);
  return splitmix64(h ^ splitmix64(b));
}

int run_trajectory(const Circuit& circuit, const StabilizerTableau& ideal, const PauliString& term,
                   const NoiseSpec& noise, Engine engine, std::uint64_t seed) {
  Rng rng(seed);
  if (engine == Engine::Frame) {
    return frame_trajectory(circuit, ideal, term, noise, rng);
  }
  Rng measure_rng(splitmix64(seed ^ kMeasureStream));
  return tableau_trajectory(circuit, ideal, term, noise, rng, measure_rng);
}

ExperimentRecord run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const DevicePreset device = load_device(cfg.device);
  const Placement placement = place(device, cfg.family, cfg.n);
  const StabilizerTableau ideal = simulate(placement.circuit);
  if (!is_graph_state(ideal, placement.op.graph())) {
    fail(ErrorCode::Precondition, "preparation circuit does not produce the target graph state");
  }
  const BellOperator& op = placement.op;

  ExperimentRecord rec;
  rec.config = cfg;
  rec.config.workers = 0;
  rec.qubits = placement.circuit.labels;
  rec.counts = gate_counts(placement.circuit);
  rec.bounds = op.bounds();
  rec.M = op.term_count();
  rec.index_bits = op.index_bits();

  const std::size_t reps = cfg.repetitions;
  const std::uint64_t per_rep = cfg.L * cfg.K;
  rec.repetitions.resize(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    Rng index_rng(derive_seed(cfg.master_seed, r, kIndexStream));
    rec.repetitions[r].indices = sample_term_indices(op.index_bits(), cfg.L, index_rng);
    rec.repetitions[r].outcomes.assign(per_rep, 0);
  }

  const unsigned workers = cfg.workers != 0 ? cfg.workers : default_workers();
  parallel_for(reps * per_rep, workers, [&](std::size_t task) {
    const std::size_t r = task / per_rep;
    const std::uint64_t slot = task % per_rep;
    auto& rep = rec.repetitions[r];
    const PauliString term = op.term(rep.indices[slot / cfg.K]);
    rep.outcomes[slot] = run_trajectory(placement.circuit, ideal, term, cfg.noise, cfg.engine,
                                        derive_seed(cfg.master_seed, r, slot));
  });

  std::vector<double> estimates;
  std::vector<double> ratios;
  for (auto& rep : rec.repetitions) {
    auto eval = evaluate(rec.M, rec.bounds.C, cfg.K, std::move(rep.indices), std::move(rep.outcomes));
    rep.indices = std::move(eval.sampled_indices);
    rep.outcomes = std::move(eval.outcomes);
    rep.estimate = eval.estimate;
    rep.estimate_over_Q = eval.estimate / rec.bounds.Q;
    rep.p_value_bound = eval.p_value_bound;
    rep.log_p_value_bound = eval.log_p_value_bound;
    rep.sigma_equivalent = eval.sigma_equivalent;
    estimates.push_back(rep.estimate);
    ratios.push_back(rep.estimate_over_Q);
  }
  std::tie(rec.mean_estimate, rec.std_estimate) = mean_std(estimates);
  std::tie(rec.mean_over_Q, rec.std_over_Q) = mean_std(ratios);
  rec.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ojson config_to_json(const ExperimentConfig& c) {
  return ojson{{"device", c.device},
               {"family", family_name(c.family)},
               {"n", c.n},
               {"L", c.L},
               {"K", c.K},
               {"repetitions", c.repetitions},
               {"sigma_target", c.sigma_target},
               {"master_seed", c.master_seed},
               {"noise",
                {{"kind", noise_kind_name(c.noise.kind)},
                 {"p1", c.noise.params.p1},
                 {"p2", c.noise.params.p2},
                 {"pr", c.noise.params.pr},
                 {"alpha", c.noise.alpha}}},
               {"engine", engine_name(c.engine)}};
}

ExperimentConfig config_from_json(const ojson& j) {
  ExperimentConfig c;
  c.device = j.at("device").get<std::string>();
  c.family = family_from_name(j.at("family").get<std::string>());
  c.n = j.at("n").get<std::size_t>();
  c.L = j.at("L").get<std::uint64_t>();
  c.K = j.at("K").get<std::uint64_t>();
  c.repetitions = j.at("repetitions").get<std::uint32_t>();
  c.sigma_target = j.at("sigma_target").get<double>();
  c.master_seed = j.at("master_seed").get<std::uint64_t>();
  const auto& noise = j.at("noise");
  c.noise.kind = noise_kind_from_name(noise.at("kind").get<std::string>());
  c.noise.params = {noise.at("p1").get<double>(), noise.at("p2").get<double>(),
                    noise.at("pr").get<double>()};
  c.noise.alpha = noise.at("alpha").get<double>();
  c.engine = engine_from_name(j.at("engine").get<std::string>());
  return c;
}

} // namespace

std::string record_to_json(const ExperimentRecord& r) {
  ojson reps = ojson::array();
  for (const auto& rep : r.repetitions) {
    ojson indices = ojson::array();
    for (const auto& j : rep.indices) {
      indices.push_back(j.hex());
    }
    reps.push_back({{"estimate", rep.estimate},
                    {"estimate_over_Q", rep.estimate_over_Q},
                    {"p_value_bound", rep.p_value_bound},
                    {"log_p_value_bound", rep.log_p_value_bound},
                    {"sigma_equivalent", rep.sigma_equivalent},
                    {"indices", std::move(indices)},
                    {"outcomes", rep.outcomes}});
  }
  ojson doc{{"config", config_to_json(r.config)},
            {"qubits", r.qubits},
            {"gate_counts", {{"N1", r.counts.N1}, {"N2", r.counts.N2}, {"depth", r.counts.depth}}},
            {"bounds", {{"Q", r.bounds.Q}, {"C", r.bounds.C}, {"D", r.bounds.D}}},
            {"M", r.M},
            {"index_bits", r.index_bits},
            {"aggregate",
             {{"mean_estimate", r.mean_estimate},
              {"std_estimate", r.std_estimate},
              {"mean_over_Q", r.mean_over_Q},
              {"std_over_Q", r.std_over_Q}}},
            {"seconds", r.seconds},
            {"repetitions", std::move(reps)}};
  return doc.dump(2) + "\n";
}

ExperimentRecord record_from_json(std::string_view text) {
  try {
    const ojson doc = ojson::parse(text);
    ExperimentRecord r;
    r.config = config_from_json(doc.at("config"));
    r.qubits = doc.at("qubits").get<std::vector<Vertex>>();
    const auto& counts = doc.at("gate_counts");
    r.counts = {counts.at("N1").get<std::uint64_t>(), counts.at("N2").get<std::uint64_t>(),
                counts.at("depth").get<std::uint64_t>()};
    const auto& bounds = doc.at("bounds");
    r.bounds = {bounds.at("Q").get<double>(), bounds.at("C").get<double>(),
                bounds.at("D").get<double>()};
    r.M = doc.at("M").get<double>();
    r.index_bits = doc.at("index_bits").get<unsigned>();
    const auto& agg = doc.at("aggregate");
    r.mean_estimate = agg.at("mean_estimate").get<double>();
    r.std_estimate = agg.at("std_estimate").get<double>();
    r.mean_over_Q = agg.at("mean_over_Q").get<double>();
    r.std_over_Q = agg.at("std_over_Q").get<double>();
    r.seconds = doc.at("seconds").get<double>();
    for (const auto& j : doc.at("repetitions")) {
      RepetitionResult rep;
      rep.estimate = j.at("estimate").get<double>();
      rep.estimate_over_Q = j.at("estimate_over_Q").get<double>();
      rep.p_value_bound = j.at("p_value_bound").get<double>();
      rep.log_p_value_bound = j.at("log_p_value_bound").get<double>();
      rep.sigma_equivalent = j.at("sigma_equivalent").get<double>();
      for (const auto& h : j.at("indices")) {
        rep.indices.push_back(TermIndex::from_hex(r.index_bits, h.get<std::string>()));
      }
      rep.outcomes = j.at("outcomes").get<std::vector<int>>();
      r.repetitions.push_back(std::move(rep));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed record JSON: ") + e.what());
  }
}

std::string csv_header() { return "n,family,repetition,estimate,estimate_over_Q,p_bound,seed\n"; }

std::string record_to_csv(const ExperimentRecord& r, bool header) {
  std::string out = header ? csv_header() : std::string();
  for (std::size_t k = 0; k < r.repetitions.size(); ++k) {
    const auto& rep = r.repetitions[k];
    out += std::to_string(r.config.n) + "," + std::string(family_name(r.config.family)) + "," +
           std::to_string(k) + "," + format_double(rep.estimate) + "," +
           format_double(rep.estimate_over_Q) + "," + format_double(rep.p_value_bound) + "," +
           std::to_string(r.config.master_seed) + "\n";
  }
  return out;
}

SweepResult sweep_and_fit(const ExperimentConfig& base, const std::vector<std::size_t>& ns,
                          std::optional<ScalingModel::Form> form,
                          std::optional<double> extrapolate_n) {
  const auto f = form.value_or(base.family == Family::LC ? ScalingModel::Form::Linear
                                                         : ScalingModel::Form::Quadratic);
  SweepResult out;
  std::vector<ScalingPoint> points;
  for (std::size_t n : ns) {
    ExperimentConfig cfg = base;
    cfg.n = n;
    out.records.push_back(run_experiment(cfg));
    const double ratio = out.records.back().mean_over_Q;
    if (!(ratio > 0.0)) {
      fail(ErrorCode::InvalidArgument, "mean estimate / Q at n = " + std::to_string(n) +
                                           " is not positive; cannot fit in log domain");
    }
    points.push_back({static_cast<double>(n), ratio});
  }
  out.model = fit_scaling(points, f);
  if (extrapolate_n) {
    const auto n = static_cast<std::size_t>(*extrapolate_n);
    out.extrapolation = extrapolate_L(out.model, *extrapolate_n, bell_bounds(base.family, n).D,
                                      Confidence::from_sigma(base.sigma_target));
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& s) {
  std::string out = csv_header();
  for (const auto& r : s.records) {
    out += record_to_csv(r, false);
  }
  return out;
}

std::string model_to_json(const ScalingModel& m) {
  ojson doc{{"form", form_name(m.form)}, {"a", m.a}, {"b", m.b}, {"c", m.c},
            {"residuals", m.residuals}};
  return doc.dump(2) + "\n";
}

} // namespace bellmark
