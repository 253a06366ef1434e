#pragma once

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace manigraph::cli {

/// Reproducibility record written next to every command output.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json flags = nlohmann::json::object();
  /// Input role -> {path, fnv1a64}.
  nlohmann::json inputs = nlohmann::json::object();
  std::uint64_t seed = 0;
  int threads = 1;
  double wall_ms = 0.0;

  void add_input(const std::string& role, const std::filesystem::path& path);
  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

/// Path of the manifest that accompanies `output`.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace manigraph::cli
