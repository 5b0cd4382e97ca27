#include "bellmark/devices.hpp"

#include "bellmark/error.hpp"
#include "device_data.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace bellmark {

using nlohmann::json;

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& entry : detail::kBundledDevices) {
    names.emplace_back(entry.name);
  }
  return names;
}

DevicePreset load_preset(std::string_view name) {
  for (const auto& entry : detail::kBundledDevices) {
    if (entry.name == name) {
      return parse_device_json(entry.json);
    }
  }
  fail(ErrorCode::NotFound, "unknown device preset '" + std::string(name) + "'");
}

DevicePreset parse_device_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidArgument, std::string("device JSON: ") + e.what());
  }
  try {
    DevicePreset device;
    device.name = doc.at("name").get<std::string>();
    device.description = doc.value("description", "");
    const auto n = doc.at("n_vertices").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        fail(ErrorCode::InvalidArgument, "device JSON: edges must be [i, j] pairs");
      }
      edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    device.graph = ConnectivityGraph(n, edges);
    const auto& noise = doc.at("noise");
    device.noise = NoiseParams{noise.at("p1").get<double>(), noise.at("p2").get<double>(),
                               noise.at("pr").get<double>()};
    device.noise.validate();
    return device;
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("device JSON: ") + e.what());
  }
}

std::string device_to_json(const DevicePreset& device) {
  json edges = json::array();
  for (const auto& [a, b] : device.graph.edges()) {
    edges.push_back({a, b});
  }
  json doc = {
      {"name", device.name},
      {"description", device.description},
      {"n_vertices", device.graph.size()},
      {"edges", edges},
      {"noise", {{"p1", device.noise.p1}, {"p2", device.noise.p2}, {"pr", device.noise.pr}}},
  };
  return doc.dump(2);
}

DevicePreset load_device(const std::string& name_or_path) {
  for (const auto& entry : detail::kBundledDevices) {
    if (entry.name == name_or_path) {
      return parse_device_json(entry.json);
    }
  }
  if (!std::filesystem::exists(name_or_path)) {
    fail(ErrorCode::NotFound,
         "'" + name_or_path + "' is neither a bundled preset nor a readable file");
  }
  std::ifstream in(name_or_path);
  if (!in) {
    fail(ErrorCode::Io, "cannot open " + name_or_path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_device_json(buffer.str());
}

} // namespace bellmark
