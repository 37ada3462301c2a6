#pragma once

#include <cstdint>

#include "reachlab/cem.hpp"
#include "reachlab/metrics.hpp"

namespace reachlab {

struct EvaluationOptions {
  int n_rollouts = 1000;
  double outlier_fence_k = 0.0;  // literal interquartile rule
  std::uint64_t seed = 0x11A7;   // evaluation stream, separate from training
  int workers = 1;
  TriphasicDelta triphasic_delta = TriphasicDelta::kSlopeDifference;
};

struct EvaluationResult {
  MetricsReport report;
  NormalizedTrajectory mean;  // mean over kept rollouts (empty if none kept)
  double index_of_difficulty = 0.0;
};

// Rolls the agent out n times at the fixed evaluation goal, applies the
// velocity-integral outlier filter, time-normalizes, averages, and computes
// the four stereotypy metrics on the mean trajectory.
EvaluationResult evaluate_agent(const TrainedAgent& agent,
                                const EvaluationOptions& options);

// Muscle-pair signals (flexor = agonist) extracted from activation channels.
std::array<MusclePairSignal, 3> muscle_pair_signals(const NormalizedTrajectory& traj);

}  // namespace reachlab
