#include "reachlab/reach_env.hpp"

#include <cmath>

#include <stdexcept>

#include "doctest.h"

using namespace reachlab;

TEST_CASE("index of difficulty reproduces the four tolerance levels") {
  CHECK(index_of_difficulty(0.63, 0.105) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(index_of_difficulty(0.63, 0.045) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(index_of_difficulty(0.63, 0.021) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(std::abs(index_of_difficulty(0.63, 0.010161) - 5.0) < 0.01);
  CHECK(index_of_difficulty(0.5, 0.25) == doctest::Approx(1.0));  // D == W
}

TEST_CASE("execution noise: zero-noise identity and clamping") {
  NoiseParams silent;
  silent.sigma_signal = 0.0;
  silent.sigma_constant = 0.0;
  Rng rng(3);
  const std::array<double, kNumMuscles> u{0.4, 0.4, 0.4, 0.4, 0.4, 0.4};
  const auto uf = apply_execution_noise(u, silent, rng);
  for (int i = 0; i < kNumMuscles; ++i) CHECK(uf[i] == 0.4);

  ExecutionNoise big;
  big.eta_constant.fill(5.0);
  const auto clamped = apply_execution_noise({1, 1, 1, 1, 1, 1}, big);
  for (double v : clamped) CHECK(v == 1.0);
  ExecutionNoise negative;
  negative.eta_constant.fill(-5.0);
  const auto zeroed = apply_execution_noise({0.2, 0.2, 0.2, 0.2, 0.2, 0.2}, negative);
  for (double v : zeroed) CHECK(v == 0.0);
}

TEST_CASE("execution noise statistics over 1e6 draws") {
  NoiseParams noise;  // sigma1 = 0.103, sigma2 = 0.185
  Rng rng(2024);
  const std::array<double, kNumMuscles> u{0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  const int n = 1000000 / kNumMuscles;

  double sum1 = 0.0, sq1 = 0.0, sum2 = 0.0, sq2 = 0.0, sum_uf = 0.0, sq_uf = 0.0;
  const std::size_t count = static_cast<std::size_t>(n) * kNumMuscles;
  for (int k = 0; k < n; ++k) {
    const auto draw = sample_execution_noise(noise, rng);
    const auto uf = apply_execution_noise_unclamped(u, draw);
    for (int i = 0; i < kNumMuscles; ++i) {
      sum1 += draw.eta_signal[i];
      sq1 += draw.eta_signal[i] * draw.eta_signal[i];
      sum2 += draw.eta_constant[i];
      sq2 += draw.eta_constant[i] * draw.eta_constant[i];
      sum_uf += uf[i];
      sq_uf += uf[i] * uf[i];
    }
  }
  const double inv = 1.0 / static_cast<double>(count);
  const double mean1 = sum1 * inv, mean2 = sum2 * inv, mean_uf = sum_uf * inv;
  const double std1 = std::sqrt(sq1 * inv - mean1 * mean1);
  const double std2 = std::sqrt(sq2 * inv - mean2 * mean2);
  const double std_uf = std::sqrt(sq_uf * inv - mean_uf * mean_uf);

  CHECK(std::abs(mean1) < 0.002);
  CHECK(std::abs(mean2) < 0.002);
  CHECK(std::abs(std1 - 0.103) < 0.02 * 0.103);
  CHECK(std::abs(std2 - 0.185) < 0.02 * 0.185);
  // Pre-clamp std of u_f at u = 0.5: sqrt(0.25*sigma1^2 + sigma2^2).
  CHECK(std::abs(std_uf - 0.19203450210834511) < 0.01 * 0.19203450210834511);
}

TEST_CASE("task requirement predicates") {
  TaskSpec task;  // defaults v_tol = 0.20, a_tol = 0.10
  HandState hand;

  task.requirement = TaskRequirement::kPos;
  hand.v = {10.0, 0.0};
  CHECK(task_requirement_met(hand, task));

  task.requirement = TaskRequirement::kPosVel;
  hand.v = {0.25, 0.0};
  CHECK_FALSE(task_requirement_met(hand, task));
  hand.v = {0.1, 0.1};
  CHECK(task_requirement_met(hand, task));

  task.requirement = TaskRequirement::kPosVelAcc;
  hand.v = {0.1, 0.0};
  hand.a = {0.05, 0.0};
  CHECK(task_requirement_met(hand, task));
  hand.a = {0.2, 0.0};
  CHECK_FALSE(task_requirement_met(hand, task));
}

TEST_CASE("sparse reward composes position and task predicates") {
  GoalSpec goal;
  goal.p_goal = {0.1, 0.2};
  goal.p_tol = 0.05;
  TaskSpec task;
  task.requirement = TaskRequirement::kPosVelAcc;

  HandState hand;
  hand.p = {0.1, 0.2};
  hand.v = {0.0, 0.0};
  hand.a = {0.0, 0.0};
  CHECK(sparse_reward(hand, goal, task) == 0.0);

  hand.p = {0.2, 0.2};  // 2 * p_tol away
  CHECK(sparse_reward(hand, goal, task) == -1.0);

  task.requirement = TaskRequirement::kPosVel;
  hand.p = {0.1, 0.2};
  hand.v = {0.5, 0.0};  // inside tolerance but moving fast
  CHECK(sparse_reward(hand, goal, task) == -1.0);
}

TEST_CASE("reward composition") {
  RewardWeights w;  // c1..c5 = 0.2, 0.8, 1, 8, 1
  CHECK(optimal_reward(0.0, 0.0, 0.0, w) == 0.0);
  CHECK(optimal_reward(1.0, 0.0, 0.0, w) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(optimal_reward(0.0, 1.0, 0.0, w) == doctest::Approx(0.8).epsilon(1e-15));

  CHECK(total_reward(0.0, 0.0, w, true) == 0.0);
  CHECK(total_reward(-1.0, 0.0, w, true) == doctest::Approx(-0.2));
  CHECK(total_reward(-1.0, 0.1, w, true) == doctest::Approx(-0.28));
  CHECK(total_reward(-1.0, 0.1, w, false) == doctest::Approx(-0.2));  // gated off
}

TEST_CASE("jerk estimate") {
  CHECK(jerk_estimate({1.0, 2.0}, {1.0, 2.0}, 0.01) == 0.0);
  CHECK(jerk_estimate({0.1, 0.0}, {0.0, 0.0}, 0.01) == doctest::Approx(10.0));
  CHECK_THROWS_AS(jerk_estimate({0, 0}, {0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("reset: paper pose, fixed evaluation goal, determinism") {
  EnvConfig config;
  ReachEnv env(config);
  Rng rng(5);
  const Observation obs = env.reset(rng, ResetMode::kEvaluation);

  // Initial pose (0 deg, 90 deg), zero velocities and activations.
  CHECK(obs[kObsJointPos] == 0.0);
  CHECK(obs[kObsJointPos + 1] == doctest::Approx(1.5707963267948966));
  CHECK(obs[kObsJointVel] == 0.0);
  CHECK(obs[kObsJointVel + 1] == 0.0);
  for (int i = 0; i < kNumMuscles; ++i) CHECK(obs[kObsActivation + i] == 0.0);

  // Evaluation goal = initial tip + (-0.295, +0.557).
  CHECK(obs[kObsGoal] == doctest::Approx(0.35 - 0.295).epsilon(1e-12));
  CHECK(obs[kObsGoal + 1] == doctest::Approx(-0.35 + 0.557).epsilon(1e-12));
  CHECK(env.goal().p_tol == config.p_tol);

  Rng rng_a(99), rng_b(99);
  ReachEnv env_a(config), env_b(config);
  const Observation oa = env_a.reset(rng_a, ResetMode::kTraining);
  const Observation ob = env_b.reset(rng_b, ResetMode::kTraining);
  for (int i = 0; i < kObsDim; ++i) CHECK(oa[i] == ob[i]);
}

TEST_CASE("training goals stay inside the sampling region and are reachable") {
  EnvConfig config;
  ReachEnv env(config);
  Rng rng(17);
  const double reach = config.arm.l1 + config.arm.l2;
  for (int i = 0; i < 200; ++i) {
    env.reset(rng, ResetMode::kTraining);
    const Vec2 g = env.goal().p_goal;
    const double r = g.norm();
    CHECK(r >= config.sampling.radius_min_frac * reach - 1e-12);
    CHECK(r <= config.sampling.radius_max_frac * reach + 1e-12);
    const double polar = std::atan2(g.x, -g.y);
    CHECK(polar >= config.sampling.angle_min_rad - 1e-12);
    CHECK(polar <= config.sampling.angle_max_rad + 1e-12);
  }
}

TEST_CASE("unreachable configured goal is a configuration error") {
  EnvConfig config;
  config.eval_goal_offset = {2.0, 2.0};  // far outside the workspace
  ReachEnv env(config);
  Rng rng(1);
  CHECK_THROWS_AS(env.reset(rng, ResetMode::kEvaluation), std::invalid_argument);
}

TEST_CASE("step: 5 substeps advance time 10 ms; baseline reward is -0.2") {
  EnvConfig config;  // baseline, pos
  ReachEnv env(config);
  Rng rng(5);
  env.reset(rng, ResetMode::kEvaluation);
  const std::array<double, kNumMuscles> u{0.1, 0.2, 0.3, 0.1, 0.2, 0.3};
  const StepResult r1 = env.step(u, rng);
  CHECK(env.arm_state().t == doctest::Approx(0.010).epsilon(1e-12));
  CHECK(r1.reward.total == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(r1.reward.sparse == -1.0);
  // Noise disabled: applied stimulations are the commands, bit-exact.
  for (int i = 0; i < kNumMuscles; ++i) CHECK(r1.applied_u[i] == u[i]);
  const StepResult r2 = env.step(u, rng);
  CHECK(env.arm_state().t == doctest::Approx(0.020).epsilon(1e-12));
  CHECK(r2.done == false);
}

TEST_CASE("reward decomposition identity holds along episodes for every variant") {
  for (ModelVariant variant :
       {ModelVariant::kBaseline, ModelVariant::kExecutionNoise,
        ModelVariant::kOptimalityPrinciples, ModelVariant::kHybrid}) {
    EnvConfig config;
    config.variant = variant;
    config.horizon_steps = 60;
    ReachEnv env(config);
    Rng rng(123);
    env.reset(rng, ResetMode::kEvaluation);
    Rng act_rng(7);
    for (int k = 0; k < 60; ++k) {
      std::array<double, kNumMuscles> u;
      for (double& v : u) v = act_rng.uniform01();
      const StepResult r = env.step(u, rng);
      const double r_opt =
          optimal_reward(r.reward.effort, r.reward.jerk, r.reward.work, config.weights);
      const double expected = total_reward(r.reward.sparse, r_opt, config.weights,
                                           optimality_enabled(variant));
      CHECK(r.reward.total == doctest::Approx(expected).epsilon(1e-12));
      if (!optimality_enabled(variant))
        CHECK(r.reward.total == doctest::Approx(config.weights.c1 * r.reward.sparse));
      if (r.done) break;
    }
  }
}

TEST_CASE("variant gating: baseline applies commands bit-exactly, noisy variants differ") {
  EnvConfig config;
  config.variant = ModelVariant::kOptimalityPrinciples;
  ReachEnv env(config);
  Rng rng(55);
  env.reset(rng, ResetMode::kEvaluation);
  const std::array<double, kNumMuscles> u{0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  const StepResult r = env.step(u, rng);
  for (int i = 0; i < kNumMuscles; ++i) CHECK(r.applied_u[i] == 0.5);

  config.variant = ModelVariant::kHybrid;
  ReachEnv noisy(config);
  Rng rng2(55);
  noisy.reset(rng2, ResetMode::kEvaluation);
  const StepResult rn = noisy.step(u, rng2);
  bool any_different = false;
  for (int i = 0; i < kNumMuscles; ++i)
    if (rn.applied_u[i] != 0.5) any_different = true;
  CHECK(any_different);
}

TEST_CASE("per-episode noise cadence holds one draw for the whole episode") {
  EnvConfig config;
  config.variant = ModelVariant::kExecutionNoise;
  config.noise.cadence = NoiseCadence::kPerEpisode;
  ReachEnv env(config);
  Rng rng(77);
  env.reset(rng, ResetMode::kEvaluation);
  const std::array<double, kNumMuscles> u{0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  const StepResult r1 = env.step(u, rng);
  const StepResult r2 = env.step(u, rng);
  for (int i = 0; i < kNumMuscles; ++i) CHECK(r1.applied_u[i] == r2.applied_u[i]);

  config.noise.cadence = NoiseCadence::kPerControlStep;
  ReachEnv fresh(config);
  Rng rng2(77);
  fresh.reset(rng2, ResetMode::kEvaluation);
  const StepResult f1 = fresh.step(u, rng2);
  const StepResult f2 = fresh.step(u, rng2);
  bool differs = false;
  for (int i = 0; i < kNumMuscles; ++i)
    if (f1.applied_u[i] != f2.applied_u[i]) differs = true;
  CHECK(differs);
}

TEST_CASE("episode terminates at the horizon without success") {
  EnvConfig config;
  config.horizon_steps = 25;
  ReachEnv env(config);
  Rng rng(9);
  env.reset(rng, ResetMode::kEvaluation);
  StepResult r;
  int steps = 0;
  do {
    r = env.step({0, 0, 0, 0, 0, 0}, rng);
    ++steps;
  } while (!r.done);
  CHECK(steps == 25);
  CHECK_FALSE(r.success);
}

TEST_CASE("success terminates the episode immediately") {
  EnvConfig config;
  config.p_tol = 0.7;  // the whole reachable workspace is "at the goal"
  config.task.requirement = TaskRequirement::kPos;
  // A goal this wide needs a matching tolerance check: hand starts inside.
  ReachEnv env(config);
  Rng rng(4);
  env.reset(rng, ResetMode::kEvaluation);
  const StepResult r = env.step({0, 0, 0, 0, 0, 0}, rng);
  CHECK(r.success);
  CHECK(r.done);
  CHECK(r.reward.sparse == 0.0);
  CHECK_THROWS_AS(env.step({0, 0, 0, 0, 0, 0}, rng), std::logic_error);
}

TEST_CASE("model variant flags") {
  CHECK_FALSE(noise_enabled(ModelVariant::kBaseline));
  CHECK_FALSE(optimality_enabled(ModelVariant::kBaseline));
  CHECK(noise_enabled(ModelVariant::kExecutionNoise));
  CHECK_FALSE(optimality_enabled(ModelVariant::kExecutionNoise));
  CHECK_FALSE(noise_enabled(ModelVariant::kOptimalityPrinciples));
  CHECK(optimality_enabled(ModelVariant::kOptimalityPrinciples));
  CHECK(noise_enabled(ModelVariant::kHybrid));
  CHECK(optimality_enabled(ModelVariant::kHybrid));
}
