#include "manifest.hpp"

#include "manigraph/error.hpp"
#include "manigraph/io.hpp"

#include <fstream>

namespace manigraph::cli {

using nlohmann::json;

void RunManifest::add_input(const std::string& role, const std::filesystem::path& path) {
  inputs[role] = {{"path", path.string()}, {"fnv1a64", hex_digest(file_digest(path))}};
}

json RunManifest::to_json() const {
  return {
      {"tool", "manigraph"},
      {"version", MANIGRAPH_VERSION},
      {"command", command},
      {"argv", argv},
      {"flags", flags},
      {"inputs", inputs},
      {"seed", seed},
      {"threads", threads},
      {"wall_ms", wall_ms},
  };
}

RunManifest RunManifest::from_json(const json& j) {
  try {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.flags = j.value("flags", json::object());
    m.inputs = j.value("inputs", json::object());
    m.seed = j.value("seed", std::uint64_t{0});
    m.threads = j.value("threads", 1);
    m.wall_ms = j.value("wall_ms", 0.0);
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
  auto p = output;
  p += ".manifest.json";
  return p;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace manigraph::cli
