#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reachlab/reach_env.hpp"

namespace reachlab {

// Cross-entropy-method trainer configuration. The trainer talks to the
// environment only through rollout(), so a different learner can be swapped
// in behind train() without touching the environment.
struct OptimizerConfig {
  int population = 64;
  double elite_fraction = 0.125;
  double sigma_init = 0.1;
  double sigma_floor = 0.01;
  int iterations = 300;
  int episodes_deterministic = 1;  // episodes per candidate, noise-free variants
  int episodes_noisy = 3;          // episodes per candidate, noisy variants
  std::uint64_t seed = 0;
  int workers = 1;
  // Optional warm start (e.g. the previous difficulty level's parameters).
  std::optional<std::vector<double>> init_mean;

  void validate() const;  // throws std::invalid_argument
  int episodes_per_candidate(ModelVariant variant) const;
};

struct IterationStats {
  double mean_return = 0.0;
  double elite_mean_return = 0.0;
  double best_return_so_far = 0.0;
  double mean_sigma = 0.0;
  double success_fraction = 0.0;  // episodes with a successful reach
};

struct TrainedAgent {
  std::vector<double> params;  // final distribution mean
  EnvConfig env;
  OptimizerConfig optimizer;
  std::vector<IterationStats> curve;
  std::uint64_t seed = 0;
  double best_score = 0.0;    // best candidate score seen (diagnostic only)
  bool non_reaching = false;  // no successful episode ever observed
};

struct ParamDistribution {
  std::vector<double> mean;
  std::vector<double> sigma;
};

// One CEM update: pick the top ceil(elite_fraction*N) candidates by score
// (ties broken by lower candidate index), refit mean/sigma to the elites,
// floor sigma. Throws std::runtime_error if every score is -infinity.
ParamDistribution cem_update(const std::vector<std::vector<double>>& candidates,
                             const std::vector<double>& scores,
                             double elite_fraction, double sigma_floor);

// Indices of the elite candidates, best first (exposed for tests).
std::vector<std::size_t> select_elites(const std::vector<double>& scores,
                                       double elite_fraction);

TrainedAgent train(const EnvConfig& env_config, const OptimizerConfig& opt);

}  // namespace reachlab
