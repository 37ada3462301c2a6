#include "reachlab/rollout.hpp"

#include <limits>

namespace reachlab {

RolloutResult rollout(std::span<const double> params, const EnvConfig& config,
                      std::uint64_t seed, ResetMode mode) {
  ReachEnv env(config);
  Rng rng(seed);
  Observation obs = env.reset(rng, mode);

  RolloutResult result;
  Trajectory& traj = result.trajectory;
  traj.rows.reserve(config.horizon_steps + 1);
  traj.goal = env.goal().p_goal;
  traj.start = env.initial_hand();

  auto record = [&traj, &env](const std::array<double, kNumMuscles>& u,
                              const RewardTerms& reward) {
    TrajectorySample row;
    const ArmState& s = env.arm_state();
    row.t = s.t;
    row.q = s.q;
    row.qd = s.qd;
    row.hand = env.hand();
    row.speed = env.hand().v.norm();
    row.u = u;
    row.act = s.act;
    row.reward = reward;
    traj.rows.push_back(row);
  };

  record({}, RewardTerms{});  // reset row

  while (true) {
    const auto u = Policy::forward(params, obs);
    const StepResult sr = env.step(u, rng);
    if (sr.fault) {
      traj.faulted = true;
      traj.movement_time = env.arm_state().t;
      result.episode_return = -std::numeric_limits<double>::infinity();
      return result;
    }
    record(sr.applied_u, sr.reward);
    result.episode_return += sr.reward.total;
    obs = sr.obs;
    if (sr.done) {
      traj.success = sr.success;
      break;
    }
  }
  traj.movement_time = env.steps_taken() * config.control_dt;
  return result;
}

}  // namespace reachlab
