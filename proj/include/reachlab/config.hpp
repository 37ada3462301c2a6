#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reachlab/cem.hpp"
#include "reachlab/reach_env.hpp"

namespace reachlab {

// Flat `key = value` configuration with dotted keys and '#' comments, e.g.
//   env.noise.sigma1 = 0.103
//   grid.variants    = baseline, hybrid
// Keys are tracked on read so that unknown (misspelled) keys can be reported.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::optional<std::string> raw(const std::string& key) const;

  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;  // comma split
  std::vector<double> get_double_list(const std::string& key) const;

  // Keys present in the file but never read by any getter.
  std::vector<std::string> unused_keys() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

struct GridSpec {
  std::vector<ModelVariant> variants{
      ModelVariant::kBaseline, ModelVariant::kExecutionNoise,
      ModelVariant::kOptimalityPrinciples, ModelVariant::kHybrid};
  std::vector<TaskRequirement> requirements{
      TaskRequirement::kPos, TaskRequirement::kPosVel, TaskRequirement::kPosVelAcc};
  std::vector<double> p_tols{0.105, 0.045, 0.021, 0.010161};
  std::uint64_t global_seed = 1;
  bool warm_start = true;  // seed each cell's mean with the previous ID's agent

  std::size_t cell_count() const {
    return variants.size() * requirements.size() * p_tols.size();
  }
  void validate() const;
};

// Applies config-file overrides on top of the built-in defaults. Throws
// std::invalid_argument with the offending key on malformed values.
EnvConfig make_env_config(const KeyValueConfig& cfg);
OptimizerConfig make_optimizer_config(const KeyValueConfig& cfg);
GridSpec make_grid_spec(const KeyValueConfig& cfg);

// Tag used in filenames: "id2".."id5" for the paper tolerances, otherwise
// "ptol<value>".
std::string id_tag(double p_tol);

std::string cell_name(ModelVariant v, TaskRequirement r, double p_tol);

}  // namespace reachlab
