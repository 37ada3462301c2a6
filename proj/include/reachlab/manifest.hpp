#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace reachlab {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr const char* kManifestFileName = "manifest.jsonl";

// Append-only run manifest: one JSON object per line. Every artifact the run
// emits is listed in some event's "paths"; timing fields are informational
// and excluded from reproducibility comparisons.
class Manifest {
 public:
  explicit Manifest(std::string run_dir);

  // Appends an event (adds schema_version on the first write of a new file).
  void append(nlohmann::json event);

  static std::vector<nlohmann::json> read(const std::string& run_dir);

  // All artifact paths (relative to the run dir) referenced by the events.
  static std::vector<std::string> referenced_paths(
      const std::vector<nlohmann::json>& events);

  // Status of a cell event, if the cell has one ("trained", "failed", ...).
  static std::optional<std::string> cell_status(
      const std::vector<nlohmann::json>& events, const std::string& cell);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace reachlab
