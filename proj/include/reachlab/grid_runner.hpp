#pragma once

#include <cstdint>
#include <string>

#include "reachlab/agent_evaluation.hpp"
#include "reachlab/config.hpp"
#include "reachlab/manifest.hpp"

namespace reachlab {

struct TrainOptions {
  int workers = 1;
  bool paper_scale = false;  // multiplies the per-cell iteration budget by 5
};

struct RunSummary {
  int completed = 0;
  int skipped = 0;
  int failed = 0;
};

// Deterministic per-cell seed: (global seed, canonical variant index,
// canonical requirement index, p_tol bit pattern).
std::uint64_t cell_seed(std::uint64_t global_seed, ModelVariant v,
                        TaskRequirement r, double p_tol);

// Trains every cell of the grid into run_dir/agents/<cell>.json. Completed
// cells (per the manifest) are skipped, failed cells are recorded and the
// grid continues. Within one (variant, requirement) column, cells run from
// the widest tolerance to the narrowest and can warm-start from the
// previous agent (grid.warm_start).
RunSummary run_train(const GridSpec& grid, const EnvConfig& base_env,
                     const OptimizerConfig& base_opt, const std::string& run_dir,
                     const TrainOptions& options);

struct EvaluateOptions {
  int n_rollouts = 1000;
  int workers = 1;
  std::uint64_t eval_seed = 0x11A7;
};

// Evaluates every trained agent found in the manifest: writes
// metrics/<cell>.json and means/<cell>.csv, then the per-(variant,
// requirement) Fitts regressions to metrics/fitts.json. Missing agents are
// skipped with a warning (counted as failed).
RunSummary run_evaluate(const std::string& run_dir, const EvaluateOptions& options);

}  // namespace reachlab
