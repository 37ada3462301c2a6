#include "reachlab/agent_evaluation.hpp"

#include <stdexcept>

#include "reachlab/parallel.hpp"

namespace reachlab {

std::array<MusclePairSignal, 3> muscle_pair_signals(const NormalizedTrajectory& traj) {
  std::array<MusclePairSignal, 3> pairs{
      MusclePairSignal{MusclePair::kShoulder, {}, {}},
      MusclePairSignal{MusclePair::kBiarticular, {}, {}},
      MusclePairSignal{MusclePair::kElbow, {}, {}},
  };
  const auto muscle = [](MusclePair p, bool agonist) {
    switch (p) {
      case MusclePair::kShoulder:
        return agonist ? kShoulderFlexor : kShoulderExtensor;
      case MusclePair::kBiarticular:
        return agonist ? kBiarticularFlexor : kBiarticularExtensor;
      case MusclePair::kElbow:
        return agonist ? kElbowFlexor : kElbowExtensor;
    }
    return kShoulderFlexor;
  };
  for (auto& pair : pairs) {
    pair.agonist.reserve(traj.rows.size());
    pair.antagonist.reserve(traj.rows.size());
    for (const auto& row : traj.rows) {
      pair.agonist.push_back(row.act[muscle(pair.pair, true)]);
      pair.antagonist.push_back(row.act[muscle(pair.pair, false)]);
    }
  }
  return pairs;
}

EvaluationResult evaluate_agent(const TrainedAgent& agent,
                                const EvaluationOptions& options) {
  if (agent.params.empty())
    throw std::invalid_argument("evaluate_agent: agent has no parameters");
  if (options.n_rollouts < 1)
    throw std::invalid_argument("evaluate_agent: n_rollouts < 1");

  std::vector<Trajectory> rollouts(options.n_rollouts);
  parallel_for(static_cast<std::size_t>(options.n_rollouts), options.workers,
               [&](std::size_t i) {
                 const std::uint64_t seed =
                     derive_seed(options.seed, {agent.seed, i});
                 rollouts[i] = rollout(agent.params, agent.env, seed,
                                       ResetMode::kEvaluation)
                                   .trajectory;
               });

  EvaluationResult result;
  MetricsReport& report = result.report;
  report.n_rollouts = options.n_rollouts;
  result.index_of_difficulty =
      index_of_difficulty(0.63, agent.env.p_tol);

  for (const auto& traj : rollouts)
    if (traj.success) ++report.successes;
  report.no_success = report.successes == 0;

  std::vector<double> integrals;
  integrals.reserve(rollouts.size());
  for (const auto& traj : rollouts) integrals.push_back(velocity_integral(traj));
  const auto kept_idx = filter_outliers(integrals, options.outlier_fence_k);
  report.kept = static_cast<int>(kept_idx.size());
  report.excluded = report.n_rollouts - report.kept;

  double mt_sum = 0.0;
  std::vector<NormalizedTrajectory> normalized;
  normalized.reserve(kept_idx.size());
  for (std::size_t i : kept_idx) {
    mt_sum += rollouts[i].movement_time;
    normalized.push_back(time_normalize(rollouts[i]));
  }
  if (!kept_idx.empty())
    report.mean_movement_time = mt_sum / static_cast<double>(kept_idx.size());

  report.pair_scores = {PairScore{MusclePair::kShoulder, 0, 0},
                        PairScore{MusclePair::kBiarticular, 0, 0},
                        PairScore{MusclePair::kElbow, 0, 0}};

  if (normalized.empty()) return result;
  // The mean trajectory is always available for inspection and plots; the
  // metrics stay absent when no rollout ever reached the goal.
  result.mean = mean_trajectory(normalized);
  if (report.no_success) return result;

  std::vector<Vec2> path;
  path.reserve(result.mean.rows.size());
  std::vector<double> speed;
  speed.reserve(result.mean.rows.size());
  for (const auto& row : result.mean.rows) {
    path.push_back(row.hand.p);
    speed.push_back(row.speed);
  }

  report.p_line = metric_line_r2(path, path.front(), result.mean.goal);
  report.v_bell = metric_bell(speed);

  const auto pairs = muscle_pair_signals(result.mean);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    int phases = 0;
    const int score = metric_triphasic(pairs[i], options.triphasic_delta, &phases);
    report.pair_scores[i] = PairScore{pairs[i].pair, score, phases};
    if (score == 1) report.u_triphasic = 1;
  }
  return result;
}

}  // namespace reachlab
