#include "bellmark/bellmark.h"

#include "bellmark/error.hpp"
#include "bellmark/experiment.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace bellmark;
using ojson = nlohmann::ordered_json;

struct bm_device {
  DevicePreset preset;
};

struct bm_record {
  ExperimentRecord record;
};

namespace {

thread_local std::string g_last_error;

bm_status to_status(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidArgument: return BM_ERR_INVALID_ARGUMENT;
  case ErrorCode::NoViolationMargin: return BM_ERR_NO_VIOLATION_MARGIN;
  case ErrorCode::NotFound: return BM_ERR_NOT_FOUND;
  case ErrorCode::Precondition: return BM_ERR_PRECONDITION;
  case ErrorCode::Io: return BM_ERR_IO;
  }
  return BM_ERR_INTERNAL;
}

template <typename Fn>
bm_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return BM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BM_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  require(out, "output pointer");
  *out = dup_string(s);
}

void emit(char** out, const ojson& j) { emit(out, j.dump(2) + "\n"); }

ExperimentConfig to_config(const bm_run_config* c) {
  require(c, "config");
  ExperimentConfig cfg;
  if (c->device != nullptr) {
    cfg.device = c->device;
  }
  if (c->family != nullptr) {
    cfg.family = family_from_name(c->family);
  }
  cfg.n = c->n;
  cfg.L = c->L;
  cfg.K = c->K;
  cfg.repetitions = c->repetitions;
  cfg.sigma_target = c->sigma;
  cfg.master_seed = c->seed;
  const std::string noise = c->noise != nullptr ? c->noise : "off";
  cfg.noise.kind = noise_kind_from_name(noise);
  if (cfg.noise.kind == NoiseSpec::Kind::Depolarization) {
    cfg.noise.params = load_device(cfg.device).noise;
  } else if (cfg.noise.kind == NoiseSpec::Kind::GlobalDepol) {
    cfg.noise.alpha = c->alpha;
  }
  if (c->engine != nullptr) {
    cfg.engine = engine_from_name(c->engine);
  }
  cfg.workers = c->workers;
  return cfg;
}

ojson extrapolation_json(const Extrapolation& e) {
  ojson j{{"L", e.L}, {"alpha", e.alpha}, {"L_low", e.L_low}, {"L_high", e.L_high}};
  j["caveat"] = e.caveat.empty() ? ojson(nullptr) : ojson(e.caveat);
  return j;
}

ojson model_json(const ScalingModel& m) {
  return ojson{{"form", form_name(m.form)}, {"a", m.a}, {"b", m.b}, {"c", m.c},
               {"residuals", m.residuals}};
}

} // namespace

extern "C" {

const char* bm_version(void) { return "1.0.0"; }

const char* bm_last_error(void) { return g_last_error.c_str(); }

const char* bm_status_name(bm_status status) {
  switch (status) {
  case BM_OK: return "ok";
  case BM_ERR_INVALID_ARGUMENT: return "invalid argument";
  case BM_ERR_NO_VIOLATION_MARGIN: return "no violation margin";
  case BM_ERR_NOT_FOUND: return "not found";
  case BM_ERR_PRECONDITION: return "precondition violated";
  case BM_ERR_IO: return "i/o error";
  case BM_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void bm_free_string(char* s) { std::free(s); }

void bm_run_config_init(bm_run_config* cfg) {
  if (cfg == nullptr) {
    return;
  }
  cfg->device = "eagle-127";
  cfg->family = "lc";
  cfg->n = 6;
  cfg->L = 800;
  cfg->K = 1;
  cfg->repetitions = 10;
  cfg->sigma = 5.0;
  cfg->seed = 1;
  cfg->noise = "off";
  cfg->alpha = 1.0;
  cfg->engine = "frame";
  cfg->workers = 0;
}

bm_status bm_device_list(char** out_json) {
  return guarded([&] { emit(out_json, ojson(preset_names())); });
}

bm_status bm_device_open(const char* name_or_path, bm_device** out) {
  return guarded([&] {
    require(name_or_path, "device name");
    require(out, "output handle");
    *out = new bm_device{load_device(name_or_path)};
  });
}

void bm_device_free(bm_device* device) { delete device; }

bm_status bm_device_json(const bm_device* device, char** out_json) {
  return guarded([&] {
    require(device, "device");
    emit(out_json, device_to_json(device->preset));
  });
}

bm_status bm_device_summary(const bm_device* device, char** out_json) {
  return guarded([&] {
    require(device, "device");
    const auto& g = device->preset.graph;
    const auto path = longest_simple_path(g);
    emit(out_json, ojson{{"name", device->preset.name},
                         {"description", device->preset.description},
                         {"n_vertices", g.size()},
                         {"n_edges", g.edge_count()},
                         {"max_degree", g.degree(max_degree_vertex(g))},
                         {"connected", g.is_connected()},
                         {"longest_path", path.untruncated_length},
                         {"longest_path_exact", path.exact},
                         {"noise",
                          {{"p1", device->preset.noise.p1},
                           {"p2", device->preset.noise.p2},
                           {"pr", device->preset.noise.pr}}}});
  });
}

bm_status bm_bounds(const char* family, size_t n, char** out_json) {
  return guarded([&] {
    require(family, "family");
    const Family f = family_from_name(family);
    const auto b = bell_bounds(f, n);
    emit(out_json, ojson{{"family", family_name(f)},
                         {"n", n},
                         {"Q", b.Q},
                         {"C", b.C},
                         {"D", b.D},
                         {"alpha_min", b.alpha_min()},
                         {"M", b.Q}});
  });
}

bm_status bm_plan(const char* family, size_t n, double alpha, double sigma, char** out_json) {
  return guarded([&] {
    require(family, "family");
    const Family f = family_from_name(family);
    const auto b = bell_bounds(f, n);
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      fail(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
    }
    const auto conf = Confidence::from_sigma(sigma);
    const double M = b.Q;
    const double t = alpha * b.Q - b.C;
    const double L = required_samples(M, t, conf);
    emit(out_json, ojson{{"family", family_name(f)},
                         {"n", n},
                         {"alpha", alpha},
                         {"sigma", sigma},
                         {"gamma", conf.gamma()},
                         {"one_minus_gamma", conf.tail()},
                         {"M", M},
                         {"D", b.D},
                         {"t", t},
                         {"t_over_M", t / M},
                         {"L", L},
                         {"K", 1}});
  });
}

bm_status bm_predict(const char* device, const char* family, size_t n, double sigma,
                     char** out_json) {
  return guarded([&] {
    require(device, "device");
    require(family, "family");
    const auto preset = load_device(device);
    const Family f = family_from_name(family);
    const auto p = predict_required_L(f, n, preset.noise, Confidence::from_sigma(sigma));
    const auto counts = reference_counts(f, n);
    emit(out_json, ojson{{"device", preset.name},
                         {"family", family_name(f)},
                         {"n", n},
                         {"N1", counts.N1},
                         {"N2", counts.N2},
                         {"alpha", p.alpha},
                         {"violation_fraction", p.violation_fraction},
                         {"Q", p.bounds.Q},
                         {"C", p.bounds.C},
                         {"D", p.bounds.D},
                         {"L", p.L}});
  });
}

bm_status bm_violation_window_ghz(double a, char** out_json) {
  return guarded([&] {
    const auto n_max = violation_window_ghz(a);
    ojson j{{"a", a}};
    j["n_max"] = n_max ? ojson(*n_max) : ojson(nullptr);
    emit(out_json, j);
  });
}

bm_status bm_run(const bm_run_config* cfg, bm_record** out) {
  return guarded([&] {
    require(out, "output handle");
    *out = new bm_record{run_experiment(to_config(cfg))};
  });
}

void bm_record_free(bm_record* record) { delete record; }

bm_status bm_record_to_json(const bm_record* record, char** out_json) {
  return guarded([&] {
    require(record, "record");
    emit(out_json, record_to_json(record->record));
  });
}

bm_status bm_record_to_csv(const bm_record* record, int header, char** out_csv) {
  return guarded([&] {
    require(record, "record");
    emit(out_csv, record_to_csv(record->record, header != 0));
  });
}

bm_status bm_record_from_json(const char* json, bm_record** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output handle");
    *out = new bm_record{record_from_json(json)};
  });
}

bm_status bm_record_summary(const bm_record* record, char** out_json) {
  return guarded([&] {
    require(record, "record");
    const auto& r = record->record;
    ojson reps = ojson::array();
    for (const auto& rep : r.repetitions) {
      reps.push_back({{"estimate", rep.estimate},
                      {"estimate_over_Q", rep.estimate_over_Q},
                      {"p_value_bound", rep.p_value_bound},
                      {"log_p_value_bound", rep.log_p_value_bound},
                      {"sigma_equivalent", rep.sigma_equivalent}});
    }
    emit(out_json, ojson{{"device", r.config.device},
                         {"family", family_name(r.config.family)},
                         {"n", r.config.n},
                         {"L", r.config.L},
                         {"K", r.config.K},
                         {"noise", noise_kind_name(r.config.noise.kind)},
                         {"Q", r.bounds.Q},
                         {"C", r.bounds.C},
                         {"mean_estimate", r.mean_estimate},
                         {"std_estimate", r.std_estimate},
                         {"mean_over_Q", r.mean_over_Q},
                         {"std_over_Q", r.std_over_Q},
                         {"violates", r.mean_estimate > r.bounds.C},
                         {"seconds", r.seconds},
                         {"repetitions", std::move(reps)}});
  });
}

bm_status bm_sweep(const bm_run_config* cfg, const size_t* ns, size_t count, const char* form,
                   double extrapolate_n, char** out_csv, char** out_model_json) {
  return guarded([&] {
    require(ns, "n list");
    const auto base = to_config(cfg);
    std::optional<ScalingModel::Form> f;
    if (form != nullptr) {
      f = form_from_name(form);
    }
    std::optional<double> ext;
    if (extrapolate_n > 0.0) {
      ext = extrapolate_n;
    }
    const auto result = sweep_and_fit(base, std::vector<std::size_t>(ns, ns + count), f, ext);
    ojson model = model_json(result.model);
    ojson points = ojson::array();
    for (const auto& r : result.records) {
      points.push_back({{"n", r.config.n},
                        {"mean_over_Q", r.mean_over_Q},
                        {"std_over_Q", r.std_over_Q},
                        {"mean_estimate", r.mean_estimate},
                        {"C", r.bounds.C}});
    }
    model["points"] = std::move(points);
    if (result.extrapolation) {
      model["extrapolation"] = extrapolation_json(*result.extrapolation);
      model["extrapolation"]["n"] = extrapolate_n;
    }
    if (out_csv != nullptr) {
      *out_csv = dup_string(sweep_to_csv(result));
    }
    if (out_model_json != nullptr) {
      *out_model_json = dup_string(model.dump(2) + "\n");
    }
  });
}

bm_status bm_fit(const double* n, const double* alpha, size_t count, const char* form,
                 char** out_json) {
  return guarded([&] {
    require(n, "n values");
    require(alpha, "alpha values");
    require(form, "form");
    std::vector<ScalingPoint> points;
    for (size_t i = 0; i < count; ++i) {
      points.push_back({n[i], alpha[i]});
    }
    emit(out_json, model_json(fit_scaling(points, form_from_name(form))));
  });
}

bm_status bm_extrapolate(const char* family, double a, double b, double c, double n, double sigma,
                         double resolution, char** out_json) {
  return guarded([&] {
    require(family, "family");
    const Family f = family_from_name(family);
    if (!(n >= 1.0)) {
      fail(ErrorCode::InvalidArgument, "n must be at least 1");
    }
    ScalingModel m;
    m.form = a != 0.0 ? ScalingModel::Form::Quadratic : ScalingModel::Form::Linear;
    m.a = a;
    m.b = b;
    m.c = c;
    const auto D = bell_bounds(f, static_cast<std::size_t>(n)).D;
    ojson j = extrapolation_json(extrapolate_L(m, n, D, Confidence::from_sigma(sigma), resolution));
    j["family"] = family_name(f);
    j["n"] = n;
    j["D"] = D;
    emit(out_json, j);
  });
}

bm_status bm_circuit_json(const char* device, const char* family, size_t n, char** out_json) {
  return guarded([&] {
    require(device, "device");
    require(family, "family");
    const auto preset = load_device(device);
    const auto placement = place(preset, family_from_name(family), n);
    const auto counts = gate_counts(placement.circuit);
    ojson j = ojson::parse(circuit_to_json(placement.circuit));
    j["gate_counts"] = {{"N1", counts.N1}, {"N2", counts.N2}, {"depth", counts.depth}};
    j["state_edges"] = placement.op.graph().edges();
    emit(out_json, j);
  });
}

} // extern "C"
