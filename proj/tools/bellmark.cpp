// Command-line front end. Talks to the library only through bellmark.h.

#include "bellmark/bellmark.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct CStr {
  char* p = nullptr;
  ~CStr() { bm_free_string(p); }
  std::string str() const { return p ? p : ""; }
};

struct RecordHandle {
  bm_record* p = nullptr;
  ~RecordHandle() { bm_record_free(p); }
};

int exit_code(bm_status s) {
  switch (s) {
  case BM_OK: return 0;
  case BM_ERR_NO_VIOLATION_MARGIN: return 2;
  default: return 1;
  }
}

int report_error(bm_status s) {
  std::cerr << "bellmark: " << bm_status_name(s) << ": " << bm_last_error() << "\n";
  return exit_code(s);
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "bellmark: cannot write " << path << "\n";
    return false;
  }
  return true;
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "bellmark: cannot read " << path << "\n";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

std::string pretty(const std::string& text) { return json::parse(text).dump(2) + "\n"; }

// Options shared by run and sweep.
struct RunOptions {
  std::string device = "eagle-127";
  std::string family = "lc";
  std::size_t n = 6;
  std::uint64_t L = 800;
  std::uint64_t K = 1;
  std::uint32_t reps = 10;
  double sigma = 5;
  std::uint64_t seed = 1;
  std::string noise = "off";
  std::string engine = "frame";
  unsigned workers = 0;

  void add_to(CLI::App* cmd, bool with_n) {
    cmd->add_option("--device", device, "preset name or device JSON file")->capture_default_str();
    cmd->add_option("--family", family, "ghz or lc")->capture_default_str();
    if (with_n) {
      cmd->add_option("--n", n, "number of qubits")->capture_default_str();
    }
    cmd->add_option("--L", L, "sampled terms per repetition")->capture_default_str();
    cmd->add_option("--K", K, "shots per sampled term")->capture_default_str();
    cmd->add_option("--reps", reps, "repetitions")->capture_default_str();
    cmd->add_option("--sigma", sigma, "target confidence in sigma")->capture_default_str();
    cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    cmd->add_option("--noise", noise, "off, device or global:ALPHA")->capture_default_str();
    cmd->add_option("--engine", engine, "frame or tableau")->capture_default_str();
    cmd->add_option("--workers", workers, "worker threads (0: BELLMARK_WORKERS or all cores)");
  }

  // Fills `cfg`; `noise_kind` keeps the string alive for the C struct.
  bool fill(bm_run_config& cfg, std::string& noise_kind) const {
    bm_run_config_init(&cfg);
    cfg.device = device.c_str();
    cfg.family = family.c_str();
    cfg.n = n;
    cfg.L = L;
    cfg.K = K;
    cfg.repetitions = reps;
    cfg.sigma = sigma;
    cfg.seed = seed;
    cfg.engine = engine.c_str();
    cfg.workers = workers;
    noise_kind = noise;
    const auto colon = noise.find(':');
    if (colon != std::string::npos) {
      noise_kind = noise.substr(0, colon);
      try {
        cfg.alpha = std::stod(noise.substr(colon + 1));
      } catch (const std::exception&) {
        std::cerr << "bellmark: bad noise weight in '" << noise << "'\n";
        return false;
      }
    }
    cfg.noise = noise_kind.c_str();
    return true;
  }
};

int cmd_devices_list() {
  CStr out;
  if (auto s = bm_device_list(&out.p); s != BM_OK) {
    return report_error(s);
  }
  for (const auto& name : json::parse(out.str())) {
    std::cout << name.get<std::string>() << "\n";
  }
  return 0;
}

int cmd_devices_show(const std::string& name, bool raw) {
  bm_device* dev = nullptr;
  if (auto s = bm_device_open(name.c_str(), &dev); s != BM_OK) {
    return report_error(s);
  }
  std::unique_ptr<bm_device, void (*)(bm_device*)> guard(dev, bm_device_free);
  CStr out;
  const auto s = raw ? bm_device_json(dev, &out.p) : bm_device_summary(dev, &out.p);
  if (s != BM_OK) {
    return report_error(s);
  }
  std::cout << pretty(out.str());
  return 0;
}

int cmd_run(const RunOptions& opt, const std::string& out_path, const std::string& format) {
  bm_run_config cfg;
  std::string noise_kind;
  if (!opt.fill(cfg, noise_kind)) {
    return 1;
  }
  RecordHandle rec;
  if (auto s = bm_run(&cfg, &rec.p); s != BM_OK) {
    return report_error(s);
  }
  CStr text;
  const auto s = format == "csv" ? bm_record_to_csv(rec.p, 1, &text.p)
                                 : bm_record_to_json(rec.p, &text.p);
  if (s != BM_OK) {
    return report_error(s);
  }
  if (!write_output(out_path, text.str())) {
    return 1;
  }
  if (!out_path.empty() && out_path != "-") {
    CStr summary;
    if (bm_record_summary(rec.p, &summary.p) == BM_OK) {
      const auto j = json::parse(summary.str());
      std::fprintf(stderr, "mean estimate/Q %.6g (std %.3g), violates: %s\n",
                   j["mean_over_Q"].get<double>(), j["std_over_Q"].get<double>(),
                   j["violates"].get<bool>() ? "yes" : "no");
    }
  }
  return 0;
}

int cmd_sweep(RunOptions opt, const std::vector<std::size_t>& ns, const std::string& form,
              double extrapolate_n, const std::string& csv_path, const std::string& model_path) {
  bm_run_config cfg;
  std::string noise_kind;
  if (!opt.fill(cfg, noise_kind)) {
    return 1;
  }
  CStr csv;
  CStr model;
  const auto s = bm_sweep(&cfg, ns.data(), ns.size(), form.empty() ? nullptr : form.c_str(),
                          extrapolate_n, &csv.p, &model.p);
  if (s != BM_OK) {
    return report_error(s);
  }
  if (!csv_path.empty() && !write_output(csv_path, csv.str())) {
    return 1;
  }
  return write_output(model_path, model.str()) ? 0 : 1;
}

// Mean estimate_over_Q per n from CSV rows written by run or sweep.
bool read_points(const std::string& path, std::vector<double>& n, std::vector<double>& alpha) {
  std::string text;
  if (!read_file(path, text)) {
    return false;
  }
  std::map<double, std::pair<double, int>> acc;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line.rfind("n,", 0) == 0) {
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) {
      cells.push_back(cell);
    }
    if (cells.size() < 5) {
      std::cerr << "bellmark: malformed CSV row: " << line << "\n";
      return false;
    }
    try {
      auto& slot = acc[std::stod(cells[0])];
      slot.first += std::stod(cells[4]);
      slot.second += 1;
    } catch (const std::exception&) {
      std::cerr << "bellmark: malformed CSV row: " << line << "\n";
      return false;
    }
  }
  for (const auto& [key, v] : acc) {
    n.push_back(key);
    alpha.push_back(v.first / v.second);
  }
  return true;
}

int cmd_fit(const std::string& input, std::vector<std::string> points, const std::string& form) {
  std::vector<double> n;
  std::vector<double> alpha;
  if (!input.empty() && !read_points(input, n, alpha)) {
    return 1;
  }
  for (const auto& p : points) {
    const auto colon = p.find(':');
    try {
      if (colon == std::string::npos) {
        throw std::invalid_argument(p);
      }
      n.push_back(std::stod(p.substr(0, colon)));
      alpha.push_back(std::stod(p.substr(colon + 1)));
    } catch (const std::exception&) {
      std::cerr << "bellmark: points are N:VALUE, got '" << p << "'\n";
      return 1;
    }
  }
  CStr out;
  if (auto s = bm_fit(n.data(), alpha.data(), n.size(), form.c_str(), &out.p); s != BM_OK) {
    return report_error(s);
  }
  std::cout << pretty(out.str());
  return 0;
}

int cmd_report(const std::string& path) {
  std::string text;
  if (!read_file(path, text)) {
    return 1;
  }
  RecordHandle rec;
  if (auto s = bm_record_from_json(text.c_str(), &rec.p); s != BM_OK) {
    return report_error(s);
  }
  CStr summary;
  if (auto s = bm_record_summary(rec.p, &summary.p); s != BM_OK) {
    return report_error(s);
  }
  const auto j = json::parse(summary.str());
  std::printf("%s on %s, n = %zu, L = %llu, K = %llu, noise %s\n",
              j["family"].get<std::string>().c_str(), j["device"].get<std::string>().c_str(),
              j["n"].get<std::size_t>(), j["L"].get<unsigned long long>(),
              j["K"].get<unsigned long long>(), j["noise"].get<std::string>().c_str());
  std::printf("Q = %.6g, C = %.6g\n\n", j["Q"].get<double>(), j["C"].get<double>());
  std::printf("%4s  %14s  %10s  %12s  %8s\n", "rep", "estimate", "est/Q", "p bound", "sigma");
  int k = 0;
  for (const auto& r : j["repetitions"]) {
    std::printf("%4d  %14.6g  %10.5f  %12.4g  %8.2f\n", k++, r["estimate"].get<double>(),
                r["estimate_over_Q"].get<double>(), r["p_value_bound"].get<double>(),
                r["sigma_equivalent"].get<double>());
  }
  std::printf("\nmean estimate/Q %.5f, std %.5f, violates classical bound: %s\n",
              j["mean_over_Q"].get<double>(), j["std_over_Q"].get<double>(),
              j["violates"].get<bool>() ? "yes" : "no");
  return 0;
}

template <typename Fn>
int print_json(Fn&& fn) {
  CStr out;
  if (auto s = fn(&out.p); s != BM_OK) {
    return report_error(s);
  }
  std::cout << pretty(out.str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plan, simulate and certify multipartite Bell violations of graph states"};
  app.set_version_flag("--version", std::string(bm_version()));
  app.require_subcommand(1);

  auto* devices = app.add_subcommand("devices", "bundled device presets");
  devices->require_subcommand(1);
  devices->add_subcommand("list", "list preset names");
  auto* show = devices->add_subcommand("show", "summary of a preset or device file");
  std::string show_name;
  bool show_raw = false;
  show->add_option("name", show_name, "preset name or JSON file")->required();
  show->add_flag("--raw", show_raw, "print the device JSON instead of the summary");

  std::string family = "lc";
  std::size_t n = 6;
  double sigma = 5;

  auto* bounds = app.add_subcommand("bounds", "quantum and classical bounds");
  bounds->add_option("--family", family, "ghz or lc")->capture_default_str();
  bounds->add_option("--n", n, "number of qubits")->capture_default_str();

  double alpha = 1;
  auto* plan = app.add_subcommand("plan", "terms needed for a given white-noise weight");
  plan->add_option("--family", family, "ghz or lc")->capture_default_str();
  plan->add_option("--n", n, "number of qubits")->capture_default_str();
  plan->add_option("--alpha", alpha, "weight of the ideal state")->capture_default_str();
  plan->add_option("--sigma", sigma, "confidence in sigma")->capture_default_str();

  std::string device = "eagle-127";
  auto* predict = app.add_subcommand("predict", "depolarization prediction from device rates");
  predict->add_option("--device", device, "preset name or device JSON file")->capture_default_str();
  predict->add_option("--family", family, "ghz or lc")->capture_default_str();
  predict->add_option("--n", n, "number of qubits")->capture_default_str();
  predict->add_option("--sigma", sigma, "confidence in sigma")->capture_default_str();

  RunOptions run_opt;
  std::string out_path;
  std::string format = "json";
  auto* run = app.add_subcommand("run", "noisy Monte Carlo evaluation");
  run_opt.add_to(run, true);
  run->add_option("--out", out_path, "output file (default stdout)");
  run->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  RunOptions sweep_opt;
  std::vector<std::size_t> ns{3, 6, 9, 12, 15, 18, 21, 24};
  std::string form;
  double extrapolate_n = 0;
  std::string sweep_csv;
  std::string model_out;
  auto* sweep = app.add_subcommand("sweep", "run over several n and fit the decay");
  sweep_opt.add_to(sweep, false);
  sweep->add_option("--ns", ns, "qubit counts")->delimiter(',')->capture_default_str();
  sweep->add_option("--form", form, "linear or quadratic (default by family)");
  sweep->add_option("--extrapolate", extrapolate_n, "also extrapolate L to this n");
  sweep->add_option("--csv", sweep_csv, "write per-repetition rows to this file");
  sweep->add_option("--out", model_out, "model JSON output (default stdout)");

  std::string fit_input;
  std::vector<std::string> fit_points;
  std::string fit_form = "linear";
  auto* fit = app.add_subcommand("fit", "fit ln(estimate/Q) against n");
  fit->add_option("--input", fit_input, "CSV written by run or sweep");
  fit->add_option("--points", fit_points, "N:VALUE pairs")->delimiter(',');
  fit->add_option("--form", fit_form, "linear or quadratic")->capture_default_str();

  std::string report_input;
  auto* report = app.add_subcommand("report", "human-readable summary of a run record");
  report->add_option("record", report_input, "JSON written by run")->required();

  auto* circuit = app.add_subcommand("circuit", "preparation circuit placed on a device");
  circuit->add_option("--device", device, "preset name or device JSON file")->capture_default_str();
  circuit->add_option("--family", family, "ghz or lc")->capture_default_str();
  circuit->add_option("--n", n, "number of qubits")->capture_default_str();

  double window_a = 0;
  auto* window = app.add_subcommand("window", "GHZ sizes that violate for alpha = exp(-a n^2)");
  window->add_option("--a", window_a, "quadratic decay coefficient")->required();

  double ea = 0;
  double eb = 0;
  double ec = 0;
  double en = 108;
  double resolution = 0;
  auto* extrapolate = app.add_subcommand(
      "extrapolate", "terms needed at n for alpha = exp(-a n^2 - b n + c)");
  extrapolate->add_option("--family", family, "ghz or lc")->capture_default_str();
  extrapolate->add_option("--a", ea, "quadratic coefficient")->capture_default_str();
  extrapolate->add_option("--b", eb, "linear coefficient")->required();
  extrapolate->add_option("--c", ec, "offset")->required();
  extrapolate->add_option("--n", en, "number of qubits")->capture_default_str();
  extrapolate->add_option("--sigma", sigma, "confidence in sigma")->capture_default_str();
  extrapolate->add_option("--resolution", resolution,
                          "rounding step of the coefficients (0: no interval)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*devices) {
      if (devices->got_subcommand("list")) {
        return cmd_devices_list();
      }
      return cmd_devices_show(show_name, show_raw);
    }
    if (*bounds) {
      return print_json([&](char** o) { return bm_bounds(family.c_str(), n, o); });
    }
    if (*plan) {
      return print_json([&](char** o) { return bm_plan(family.c_str(), n, alpha, sigma, o); });
    }
    if (*predict) {
      return print_json(
          [&](char** o) { return bm_predict(device.c_str(), family.c_str(), n, sigma, o); });
    }
    if (*run) {
      return cmd_run(run_opt, out_path, format);
    }
    if (*sweep) {
      return cmd_sweep(sweep_opt, ns, form, extrapolate_n, sweep_csv, model_out);
    }
    if (*fit) {
      return cmd_fit(fit_input, fit_points, fit_form);
    }
    if (*report) {
      return cmd_report(report_input);
    }
    if (*circuit) {
      return print_json(
          [&](char** o) { return bm_circuit_json(device.c_str(), family.c_str(), n, o); });
    }
    if (*window) {
      return print_json([&](char** o) { return bm_violation_window_ghz(window_a, o); });
    }
    if (*extrapolate) {
      return print_json([&](char** o) {
        return bm_extrapolate(family.c_str(), ea, eb, ec, en, sigma, resolution, o);
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "bellmark: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
