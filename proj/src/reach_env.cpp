#include "reachlab/reach_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reachlab {

bool noise_enabled(ModelVariant v) {
  return v == ModelVariant::kExecutionNoise || v == ModelVariant::kHybrid;
}

bool optimality_enabled(ModelVariant v) {
  return v == ModelVariant::kOptimalityPrinciples || v == ModelVariant::kHybrid;
}

std::string to_string(TaskRequirement req) {
  switch (req) {
    case TaskRequirement::kPos: return "pos";
    case TaskRequirement::kPosVel: return "pos-vel";
    case TaskRequirement::kPosVelAcc: return "pos-vel-acc";
  }
  return "?";
}

std::string to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::kBaseline: return "baseline";
    case ModelVariant::kExecutionNoise: return "execution-noise";
    case ModelVariant::kOptimalityPrinciples: return "optimality-principles";
    case ModelVariant::kHybrid: return "hybrid";
  }
  return "?";
}

std::optional<TaskRequirement> task_requirement_from_string(const std::string& s) {
  if (s == "pos") return TaskRequirement::kPos;
  if (s == "pos-vel") return TaskRequirement::kPosVel;
  if (s == "pos-vel-acc") return TaskRequirement::kPosVelAcc;
  return std::nullopt;
}

std::optional<ModelVariant> model_variant_from_string(const std::string& s) {
  if (s == "baseline") return ModelVariant::kBaseline;
  if (s == "execution-noise") return ModelVariant::kExecutionNoise;
  if (s == "optimality-principles") return ModelVariant::kOptimalityPrinciples;
  if (s == "hybrid") return ModelVariant::kHybrid;
  return std::nullopt;
}

void EnvConfig::validate() const {
  arm.validate();
  if (!(task.v_tol > 0) || !(task.a_tol > 0))
    throw std::invalid_argument("EnvConfig: task tolerances must be positive");
  if (!(noise.sigma_signal >= 0) || !(noise.sigma_constant >= 0))
    throw std::invalid_argument("EnvConfig: noise stds must be nonnegative");
  if (!(weights.c1 >= 0 && weights.c2 >= 0 && weights.c3 >= 0 &&
        weights.c4 >= 0 && weights.c5 >= 0))
    throw std::invalid_argument("EnvConfig: reward weights must be nonnegative");
  if (!(weights.c3 + weights.c4 + weights.c5 > 0))
    throw std::invalid_argument("EnvConfig: c3+c4+c5 must be positive");
  if (!(weights.jerk_max > 0) || !(weights.work_max > 0))
    throw std::invalid_argument("EnvConfig: normalizers must be positive");
  if (!(p_tol > 0)) throw std::invalid_argument("EnvConfig: p_tol must be positive");
  if (!(control_dt > 0) || substeps < 1 || horizon_steps < 1)
    throw std::invalid_argument("EnvConfig: bad timing parameters");
  if (!(sampling.radius_min_frac > 0 &&
        sampling.radius_max_frac > sampling.radius_min_frac &&
        sampling.radius_max_frac <= 1.0))
    throw std::invalid_argument("EnvConfig: bad sampling annulus");
  if (!(sampling.angle_max_rad > sampling.angle_min_rad))
    throw std::invalid_argument("EnvConfig: bad sampling sector");
}

ExecutionNoise sample_execution_noise(const NoiseParams& noise, Rng& rng) {
  ExecutionNoise draw;
  for (int i = 0; i < kNumMuscles; ++i) {
    draw.eta_signal[i] = noise.sigma_signal * rng.normal();
    draw.eta_constant[i] = noise.sigma_constant * rng.normal();
  }
  return draw;
}

std::array<double, kNumMuscles> apply_execution_noise_unclamped(
    const std::array<double, kNumMuscles>& u, const ExecutionNoise& draw) {
  std::array<double, kNumMuscles> uf{};
  for (int i = 0; i < kNumMuscles; ++i)
    uf[i] = (1.0 + draw.eta_signal[i]) * u[i] + draw.eta_constant[i];
  return uf;
}

std::array<double, kNumMuscles> apply_execution_noise(
    const std::array<double, kNumMuscles>& u, const ExecutionNoise& draw) {
  auto uf = apply_execution_noise_unclamped(u, draw);
  for (double& v : uf) v = std::clamp(v, 0.0, 1.0);
  return uf;
}

std::array<double, kNumMuscles> apply_execution_noise(
    const std::array<double, kNumMuscles>& u, const NoiseParams& noise, Rng& rng) {
  return apply_execution_noise(u, sample_execution_noise(noise, rng));
}

bool task_requirement_met(const HandState& hand, const TaskSpec& task) {
  switch (task.requirement) {
    case TaskRequirement::kPos:
      return true;
    case TaskRequirement::kPosVel:
      return hand.v.norm() <= task.v_tol;
    case TaskRequirement::kPosVelAcc:
      return hand.v.norm() <= task.v_tol && hand.a.norm() <= task.a_tol;
  }
  return false;
}

double sparse_reward(const HandState& hand, const GoalSpec& goal,
                     const TaskSpec& task) {
  const bool inside = (hand.p - goal.p_goal).norm() <= goal.p_tol;
  return inside && task_requirement_met(hand, task) ? 0.0 : -1.0;
}

double optimal_reward(double effort, double jerk_n, double work_n,
                      const RewardWeights& w) {
  return (w.c3 * effort + w.c4 * jerk_n + w.c5 * work_n) / (w.c3 + w.c4 + w.c5);
}

double total_reward(double r_sparse, double r_optimal, const RewardWeights& w,
                    bool optimality_on) {
  return w.c1 * r_sparse - w.c2 * (optimality_on ? r_optimal : 0.0);
}

double jerk_estimate(const Vec2& a_now, const Vec2& a_prev, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("jerk_estimate: dt must be positive");
  return (a_now - a_prev).norm() / dt;
}

double index_of_difficulty(double distance, double p_tol) {
  if (!(distance > 0.0) || !(p_tol > 0.0))
    throw std::invalid_argument("index_of_difficulty: D and p_tol must be positive");
  return std::log2(distance / (2.0 * p_tol) + 1.0);
}

ReachEnv::ReachEnv(EnvConfig config) : config_(std::move(config)) {
  config_.validate();
}

Vec2 ReachEnv::evaluation_goal() const {
  return hand_position(config_.initial_pose, config_.arm) + config_.eval_goal_offset;
}

void ReachEnv::refresh_derived() {
  const Vec2 tau = muscle_torques(state_.act, config_.arm);
  qdd_ = forward_dynamics(state_, tau, config_.arm);
  hand_ = hand_state(state_, qdd_, config_.arm);
  last_torques_ = tau;
}

Observation ReachEnv::reset(Rng& rng, ResetMode mode) {
  state_ = ArmState{};
  state_.q = config_.initial_pose;
  state_.qd = {0.0, 0.0};
  state_.act.fill(0.0);
  state_.t = 0.0;
  steps_ = 0;
  done_ = false;
  work_ = 0.0;
  hand_jerk_ = 0.0;
  joint_jerk_ = {0.0, 0.0};
  have_prev_acc_ = false;
  episode_noise_set_ = false;

  initial_hand_ = hand_position(state_.q, config_.arm);
  goal_.p_tol = config_.p_tol;
  goal_.nominal_distance = 0.63;
  if (mode == ResetMode::kEvaluation) {
    goal_.p_goal = evaluation_goal();
    if (!goal_reachable(goal_.p_goal, config_.arm))
      throw std::invalid_argument("ReachEnv: configured goal is not reachable");
  } else {
    const double reach = config_.arm.l1 + config_.arm.l2;
    const double r_min = config_.sampling.radius_min_frac * reach;
    const double r_max = config_.sampling.radius_max_frac * reach;
    // Uniform over the part of the annulus sector the joint limits admit
    // (rejection sampling; area-uniform in the polar draw).
    bool found = false;
    for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
      const double r = std::sqrt(rng.uniform(r_min * r_min, r_max * r_max));
      const double ang = rng.uniform(config_.sampling.angle_min_rad,
                                     config_.sampling.angle_max_rad);
      goal_.p_goal = {r * std::sin(ang), -r * std::cos(ang)};
      found = goal_reachable(goal_.p_goal, config_.arm);
    }
    if (!found)
      throw std::invalid_argument(
          "ReachEnv: goal sampling region contains no reachable goals");
  }

  refresh_derived();
  return observe();
}

Observation ReachEnv::observe() const {
  Observation obs{};
  obs[kObsHandPos] = hand_.p.x;
  obs[kObsHandPos + 1] = hand_.p.y;
  obs[kObsHandVel] = hand_.v.x;
  obs[kObsHandVel + 1] = hand_.v.y;
  obs[kObsHandAcc] = hand_.a.x;
  obs[kObsHandAcc + 1] = hand_.a.y;
  obs[kObsJointPos] = state_.q.x;
  obs[kObsJointPos + 1] = state_.q.y;
  obs[kObsJointVel] = state_.qd.x;
  obs[kObsJointVel + 1] = state_.qd.y;
  obs[kObsJointAcc] = qdd_.x;
  obs[kObsJointAcc + 1] = qdd_.y;
  obs[kObsJointJerk] = joint_jerk_.x;
  obs[kObsJointJerk + 1] = joint_jerk_.y;
  for (int i = 0; i < kNumMuscles; ++i) {
    obs[kObsActivation + i] = state_.act[i];
    obs[kObsMuscleForce + i] = state_.act[i] * config_.arm.f_max[i];
    obs[kObsMuscleLength + i] = config_.arm.r_shoulder[i] * state_.q.x +
                                config_.arm.r_elbow[i] * state_.q.y;
    obs[kObsMuscleVelocity + i] = config_.arm.r_shoulder[i] * state_.qd.x +
                                  config_.arm.r_elbow[i] * state_.qd.y;
  }
  obs[kObsWork] = work_;
  obs[kObsHandJerk] = hand_jerk_;
  obs[kObsGoal] = goal_.p_goal.x;
  obs[kObsGoal + 1] = goal_.p_goal.y;
  return obs;
}

StepResult ReachEnv::step(const std::array<double, kNumMuscles>& u, Rng& rng) {
  StepResult result;
  if (done_) throw std::logic_error("ReachEnv::step called after episode end");

  std::array<double, kNumMuscles> u_clamped = u;
  for (double& v : u_clamped) v = std::clamp(v, 0.0, 1.0);

  std::array<double, kNumMuscles> u_applied = u_clamped;
  if (noise_enabled(config_.variant)) {
    if (config_.noise.cadence == NoiseCadence::kPerEpisode) {
      if (!episode_noise_set_) {
        episode_noise_ = sample_execution_noise(config_.noise, rng);
        episode_noise_set_ = true;
      }
      u_applied = apply_execution_noise(u_clamped, episode_noise_);
    } else {
      u_applied = apply_execution_noise(u_clamped, config_.noise, rng);
    }
  }
  result.applied_u = u_applied;

  const double dt = config_.physics_dt();
  try {
    for (int s = 0; s < config_.substeps; ++s) {
      state_ = reachlab::step(state_, u_applied, dt, config_.arm);
      const Vec2 tau = muscle_torques(state_.act, config_.arm);
      work_ += instantaneous_power(state_.qd, tau) * dt;
    }
    refresh_derived();
  } catch (const std::runtime_error&) {
    result.fault = true;
    result.done = true;
    done_ = true;
    return result;
  }

  ++steps_;

  if (have_prev_acc_) {
    hand_jerk_ = jerk_estimate(hand_.a, prev_hand_acc_, config_.control_dt);
    joint_jerk_ = (qdd_ - prev_qdd_) * (1.0 / config_.control_dt);
  } else {
    hand_jerk_ = 0.0;
    joint_jerk_ = {0.0, 0.0};
  }
  prev_hand_acc_ = hand_.a;
  prev_qdd_ = qdd_;
  have_prev_acc_ = true;

  double effort = 0.0;
  for (double v : u_applied) effort += v;
  effort /= kNumMuscles;
  const double work_sample = instantaneous_power(state_.qd, last_torques_);

  result.reward.sparse = sparse_reward(hand_, goal_, config_.task);
  result.reward.effort = effort;
  result.reward.jerk = hand_jerk_ / config_.weights.jerk_max;
  result.reward.work = work_sample / config_.weights.work_max;
  const double r_opt = optimal_reward(result.reward.effort, result.reward.jerk,
                                      result.reward.work, config_.weights);
  result.reward.total = total_reward(result.reward.sparse, r_opt, config_.weights,
                                     optimality_enabled(config_.variant));

  result.position_met = (hand_.p - goal_.p_goal).norm() <= goal_.p_tol;
  result.task_requirement_met = task_requirement_met(hand_, config_.task);
  result.success = result.reward.sparse == 0.0;
  result.done = result.success || steps_ >= config_.horizon_steps;
  done_ = result.done;
  result.obs = observe();
  return result;
}

}  // namespace reachlab
