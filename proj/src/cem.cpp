#include "reachlab/cem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "reachlab/parallel.hpp"
#include "reachlab/policy.hpp"
#include "reachlab/rollout.hpp"

namespace reachlab {

void OptimizerConfig::validate() const {
  if (population < 4) throw std::invalid_argument("OptimizerConfig: population < 4");
  if (!(elite_fraction > 0.0 && elite_fraction <= 0.5))
    throw std::invalid_argument("OptimizerConfig: elite fraction outside (0, 0.5]");
  if (!(sigma_init > 0.0) || !(sigma_floor > 0.0))
    throw std::invalid_argument("OptimizerConfig: sigmas must be positive");
  if (iterations < 1) throw std::invalid_argument("OptimizerConfig: iterations < 1");
  if (episodes_deterministic < 1 || episodes_noisy < 1)
    throw std::invalid_argument("OptimizerConfig: episodes per candidate < 1");
  if (init_mean && init_mean->size() != Policy::param_count())
    throw std::invalid_argument("OptimizerConfig: init_mean has wrong size");
}

int OptimizerConfig::episodes_per_candidate(ModelVariant variant) const {
  return noise_enabled(variant) ? episodes_noisy : episodes_deterministic;
}

std::vector<std::size_t> select_elites(const std::vector<double>& scores,
                                       double elite_fraction) {
  const std::size_t n = scores.size();
  const std::size_t n_elite = static_cast<std::size_t>(
      std::ceil(elite_fraction * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];  // stable: ties keep lower index first
  });
  order.resize(std::max<std::size_t>(1, n_elite));
  return order;
}

ParamDistribution cem_update(const std::vector<std::vector<double>>& candidates,
                             const std::vector<double>& scores,
                             double elite_fraction, double sigma_floor) {
  if (candidates.empty() || candidates.size() != scores.size())
    throw std::invalid_argument("cem_update: candidates/scores mismatch");
  const bool any_finite =
      std::any_of(scores.begin(), scores.end(), [](double s) { return std::isfinite(s); });
  if (!any_finite)
    throw std::runtime_error(
        "cem_update: every candidate faulted (all scores are -inf)");

  const auto elites = select_elites(scores, elite_fraction);
  const std::size_t dim = candidates.front().size();
  ParamDistribution dist;
  dist.mean.assign(dim, 0.0);
  dist.sigma.assign(dim, 0.0);
  for (std::size_t e : elites)
    for (std::size_t d = 0; d < dim; ++d) dist.mean[d] += candidates[e][d];
  const double inv = 1.0 / static_cast<double>(elites.size());
  for (double& m : dist.mean) m *= inv;
  for (std::size_t e : elites)
    for (std::size_t d = 0; d < dim; ++d) {
      const double dev = candidates[e][d] - dist.mean[d];
      dist.sigma[d] += dev * dev;
    }
  for (double& s : dist.sigma) s = std::max(std::sqrt(s * inv), sigma_floor);
  return dist;
}

TrainedAgent train(const EnvConfig& env_config, const OptimizerConfig& opt) {
  env_config.validate();
  opt.validate();

  const std::size_t dim = Policy::param_count();
  ParamDistribution dist;
  dist.mean = opt.init_mean ? *opt.init_mean : std::vector<double>(dim, 0.0);
  dist.sigma.assign(dim, opt.sigma_init);

  const int episodes = opt.episodes_per_candidate(env_config.variant);
  const int n = opt.population;

  TrainedAgent agent;
  agent.env = env_config;
  agent.optimizer = opt;
  agent.seed = opt.seed;
  agent.non_reaching = true;
  agent.best_score = -std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> candidates(n, std::vector<double>(dim));
  std::vector<double> scores(n);
  std::vector<int> successes(n);

  for (int iter = 0; iter < opt.iterations; ++iter) {
    Rng sampler(derive_seed(opt.seed, {0xC3A, static_cast<std::uint64_t>(iter)}));
    for (int c = 0; c < n; ++c)
      for (std::size_t d = 0; d < dim; ++d)
        candidates[c][d] = dist.mean[d] + dist.sigma[d] * sampler.normal();

    // Common random numbers: every candidate sees the same episode seeds, so
    // goal draws and noise draws are shared within the iteration.
    std::vector<std::uint64_t> episode_seeds(episodes);
    for (int k = 0; k < episodes; ++k)
      episode_seeds[k] = derive_seed(
          opt.seed, {0xE9, static_cast<std::uint64_t>(iter), static_cast<std::uint64_t>(k)});

    std::vector<double> episode_returns(static_cast<std::size_t>(n) * episodes);
    std::vector<unsigned char> episode_success(static_cast<std::size_t>(n) * episodes);
    parallel_for(static_cast<std::size_t>(n) * episodes, opt.workers,
                 [&](std::size_t task) {
                   const int c = static_cast<int>(task / episodes);
                   const int k = static_cast<int>(task % episodes);
                   const RolloutResult rr =
                       rollout(candidates[c], env_config, episode_seeds[k],
                               ResetMode::kTraining);
                   episode_returns[task] = rr.episode_return;
                   episode_success[task] = rr.trajectory.success ? 1 : 0;
                 });

    int success_count = 0;
    for (int c = 0; c < n; ++c) {
      double sum = 0.0;
      int succ = 0;
      for (int k = 0; k < episodes; ++k) {
        sum += episode_returns[static_cast<std::size_t>(c) * episodes + k];
        succ += episode_success[static_cast<std::size_t>(c) * episodes + k];
      }
      scores[c] = sum / episodes;
      successes[c] = succ;
      success_count += succ;
    }

    if (success_count > 0) agent.non_reaching = false;
    for (int c = 0; c < n; ++c)
      agent.best_score = std::max(agent.best_score, scores[c]);

    const auto elites = select_elites(scores, opt.elite_fraction);
    IterationStats stats;
    stats.mean_return = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
    double elite_sum = 0.0;
    for (std::size_t e : elites) elite_sum += scores[e];
    stats.elite_mean_return = elite_sum / static_cast<double>(elites.size());
    stats.best_return_so_far = agent.best_score;
    stats.success_fraction =
        static_cast<double>(success_count) / (static_cast<double>(n) * episodes);

    dist = cem_update(candidates, scores, opt.elite_fraction, opt.sigma_floor);
    stats.mean_sigma =
        std::accumulate(dist.sigma.begin(), dist.sigma.end(), 0.0) / static_cast<double>(dim);
    agent.curve.push_back(stats);
  }
  // The optimized policy is the final distribution mean; per-candidate
  // returns are not comparable across iterations (different goal draws).
  agent.params = dist.mean;
  return agent;
}

}  // namespace reachlab
