#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reachlab/policy.hpp"
#include "reachlab/reach_env.hpp"

namespace reachlab {

// One control-rate sample of an episode. Row 0 is the reset state (zero
// stimulations and rewards); subsequent rows are post-step states at 10 ms.
struct TrajectorySample {
  double t = 0.0;
  Vec2 q, qd;
  HandState hand;
  double speed = 0.0;
  std::array<double, kNumMuscles> u{};    // applied stimulations u_f
  std::array<double, kNumMuscles> act{};
  RewardTerms reward;
};

struct Trajectory {
  std::vector<TrajectorySample> rows;
  double movement_time = 0.0;  // steps-to-success * control_dt, horizon if none
  bool success = false;
  bool faulted = false;
  Vec2 goal;
  Vec2 start;
};

struct RolloutResult {
  Trajectory trajectory;
  double episode_return = 0.0;
};

// Runs one full episode of the policy in a fresh environment seeded from
// `seed`. A plant fault yields return = -infinity and a faulted trajectory.
RolloutResult rollout(std::span<const double> params, const EnvConfig& config,
                      std::uint64_t seed, ResetMode mode);

}  // namespace reachlab
