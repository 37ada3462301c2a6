#include "reachlab/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace reachlab {

namespace fs = std::filesystem;

Manifest::Manifest(std::string run_dir)
    : path_((fs::path(run_dir) / kManifestFileName).string()) {}

void Manifest::append(nlohmann::json event) {
  const bool fresh = !fs::exists(path_);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot append to '" + path_ + "'");
  if (fresh) {
    nlohmann::json header{{"type", "manifest"},
                          {"schema_version", kManifestSchemaVersion}};
    out << header.dump() << "\n";
  }
  out << event.dump() << "\n";
}

std::vector<nlohmann::json> Manifest::read(const std::string& run_dir) {
  const auto path = (fs::path(run_dir) / kManifestFileName).string();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<nlohmann::json> events;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    events.push_back(nlohmann::json::parse(line));
  }
  if (events.empty() || events.front().value("type", "") != "manifest")
    throw std::runtime_error(path + ": missing manifest header");
  const int version = events.front().at("schema_version").get<int>();
  if (version != kManifestSchemaVersion)
    throw std::runtime_error(path + ": manifest schema version mismatch");
  return events;
}

std::vector<std::string> Manifest::referenced_paths(
    const std::vector<nlohmann::json>& events) {
  std::vector<std::string> paths;
  for (const auto& event : events)
    if (event.contains("paths"))
      for (const auto& p : event.at("paths")) paths.push_back(p.get<std::string>());
  return paths;
}

std::optional<std::string> Manifest::cell_status(
    const std::vector<nlohmann::json>& events, const std::string& cell) {
  std::optional<std::string> status;
  for (const auto& event : events)
    if (event.value("type", "") == "cell" && event.value("cell", "") == cell)
      status = event.value("status", "");
  return status;
}

}  // namespace reachlab
