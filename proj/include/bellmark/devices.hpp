#pragma once

#include "bellmark/graph.hpp"
#include "bellmark/noise_model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bellmark {

/// A named device: connectivity plus average error rates.
struct DevicePreset {
  std::string name;
  std::string description;
  ConnectivityGraph graph;
  NoiseParams noise;
};

/// Names of the bundled presets in a fixed order.
[[nodiscard]] std::vector<std::string> preset_names();

/// Looks up a bundled preset by name. Throws Error(NotFound).
[[nodiscard]] DevicePreset load_preset(std::string_view name);

/// Parses the device JSON format
///   {"name", "n_vertices", "edges": [[i, j], ...], "noise": {"p1", "p2", "pr"}}
/// "description" is optional.
[[nodiscard]] DevicePreset parse_device_json(std::string_view text);
[[nodiscard]] std::string device_to_json(const DevicePreset& device);

/// Bundled preset name or path to a device JSON file.
[[nodiscard]] DevicePreset load_device(const std::string& name_or_path);

} // namespace bellmark
