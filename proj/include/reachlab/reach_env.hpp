#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "reachlab/arm_dynamics.hpp"
#include "reachlab/rng.hpp"

namespace reachlab {

enum class TaskRequirement { kPos, kPosVel, kPosVelAcc };
enum class ModelVariant { kBaseline, kExecutionNoise, kOptimalityPrinciples, kHybrid };

bool noise_enabled(ModelVariant v);
bool optimality_enabled(ModelVariant v);

std::string to_string(TaskRequirement req);
std::string to_string(ModelVariant v);
std::optional<TaskRequirement> task_requirement_from_string(const std::string& s);
std::optional<ModelVariant> model_variant_from_string(const std::string& s);

// Terminal kinematic predicate plus its tolerances.
struct TaskSpec {
  TaskRequirement requirement = TaskRequirement::kPos;
  double v_tol = 0.20;   // m/s
  double a_tol = 0.10;   // m/s^2
};

enum class NoiseCadence { kPerControlStep, kPerEpisode };

struct NoiseParams {
  double sigma_signal = 0.103;    // std of signal-dependent noise eta1
  double sigma_constant = 0.185;  // std of constant motor noise eta2
  NoiseCadence cadence = NoiseCadence::kPerControlStep;
};

struct RewardWeights {
  double c1 = 0.2;   // sparse term
  double c2 = 0.8;   // optimality term
  double c3 = 1.0;   // effort
  double c4 = 8.0;   // hand jerk
  double c5 = 1.0;   // mechanical work
  double jerk_max = 1000.0;  // m/s^3 normalizer
  double work_max = 100.0;   // normalizer for the instantaneous power sample
};

struct GoalSpec {
  Vec2 p_goal;
  double p_tol = 0.105;            // goal radius (m)
  double nominal_distance = 0.63;  // D for index-of-difficulty bookkeeping (m)
};

// Training-time goal sampling region: annulus (fractions of full reach)
// intersected with a polar-angle sector measured from the downward vertical.
struct GoalSampling {
  double radius_min_frac = 0.25;
  double radius_max_frac = 0.95;
  double angle_min_rad = -0.5235987755982988;  // -30 deg
  double angle_max_rad = 2.0943951023931953;   // +120 deg
};

struct EnvConfig {
  ArmParams arm;
  ModelVariant variant = ModelVariant::kBaseline;
  TaskSpec task;
  NoiseParams noise;
  RewardWeights weights;
  GoalSampling sampling;
  double p_tol = 0.105;
  double control_dt = 0.01;   // policy rate (s)
  int substeps = 5;           // physics steps per control step (dt = 2 ms)
  int horizon_steps = 500;    // 5 s episode cap
  Vec2 eval_goal_offset{-0.295, 0.557};  // evaluation goal relative to start tip
  Vec2 initial_pose{0.0, 1.5707963267948966};  // (0 deg, 90 deg)

  double physics_dt() const { return control_dt / substeps; }
  void validate() const;  // throws std::invalid_argument
};

// Observation layout (42 values). Grouped by quantity:
//   [0..1]   hand position x,y          [2..3]   hand velocity
//   [4..5]   hand acceleration          [6..7]   joint angles q1,q2
//   [8..9]   joint velocities           [10..11] joint accelerations
//   [12..13] joint jerks (finite difference between control steps)
//   [14..19] muscle activations         [20..25] muscle forces
//   [26..31] muscle length proxies (sum_j r_ij q_j)
//   [32..37] muscle velocity proxies (sum_j r_ij qd_j)
//   [38]     accumulated mechanical work (integral of |qd.tau| dt)
//   [39]     hand jerk magnitude        [40..41] goal position
inline constexpr int kObsDim = 42;
using Observation = std::array<double, kObsDim>;

inline constexpr int kObsHandPos = 0;
inline constexpr int kObsHandVel = 2;
inline constexpr int kObsHandAcc = 4;
inline constexpr int kObsJointPos = 6;
inline constexpr int kObsJointVel = 8;
inline constexpr int kObsJointAcc = 10;
inline constexpr int kObsJointJerk = 12;
inline constexpr int kObsActivation = 14;
inline constexpr int kObsMuscleForce = 20;
inline constexpr int kObsMuscleLength = 26;
inline constexpr int kObsMuscleVelocity = 32;
inline constexpr int kObsWork = 38;
inline constexpr int kObsHandJerk = 39;
inline constexpr int kObsGoal = 40;

// Reward components of one control step. jerk and work are stored already
// normalized by jerk_max / work_max so that
//   total == c1*sparse - c2 * [optimality] * (c3*effort + c4*jerk + c5*work)/(c3+c4+c5)
// can be re-checked from logs.
struct RewardTerms {
  double sparse = 0.0;
  double effort = 0.0;
  double jerk = 0.0;
  double work = 0.0;
  double total = 0.0;
};

struct StepResult {
  Observation obs{};
  RewardTerms reward;
  bool done = false;
  bool success = false;          // sparse condition held this step
  bool fault = false;            // plant produced a non-finite state
  bool position_met = false;
  bool task_requirement_met = false;
  std::array<double, kNumMuscles> applied_u{};  // u_f actually sent to the plant
};

struct ExecutionNoise {
  std::array<double, kNumMuscles> eta_signal{};
  std::array<double, kNumMuscles> eta_constant{};
};

ExecutionNoise sample_execution_noise(const NoiseParams& noise, Rng& rng);

// u_f = (1 + eta1) u + eta2, clamped to [0,1].
std::array<double, kNumMuscles> apply_execution_noise(
    const std::array<double, kNumMuscles>& u, const ExecutionNoise& draw);
std::array<double, kNumMuscles> apply_execution_noise_unclamped(
    const std::array<double, kNumMuscles>& u, const ExecutionNoise& draw);
// Convenience: sample + apply (fresh draws for every call).
std::array<double, kNumMuscles> apply_execution_noise(
    const std::array<double, kNumMuscles>& u, const NoiseParams& noise, Rng& rng);

bool task_requirement_met(const HandState& hand, const TaskSpec& task);

// 0 if inside the goal radius AND the task requirement holds, else -1.
double sparse_reward(const HandState& hand, const GoalSpec& goal,
                     const TaskSpec& task);

// (c3*effort + c4*jerk_n + c5*work_n) / (c3+c4+c5); inputs pre-normalized.
double optimal_reward(double effort, double jerk_n, double work_n,
                      const RewardWeights& w);

double total_reward(double r_sparse, double r_optimal, const RewardWeights& w,
                    bool optimality_on);

// ||a_now - a_prev|| / dt.
double jerk_estimate(const Vec2& a_now, const Vec2& a_prev, double dt);

// ID = log2(D / (2*p_tol) + 1).
double index_of_difficulty(double distance, double p_tol);

enum class ResetMode { kTraining, kEvaluation };

// Episodic reaching environment. One instance is single-threaded; the random
// stream is an explicit argument so parallel rollouts stay reproducible.
class ReachEnv {
 public:
  explicit ReachEnv(EnvConfig config);

  Observation reset(Rng& rng, ResetMode mode);
  StepResult step(const std::array<double, kNumMuscles>& u, Rng& rng);

  const EnvConfig& config() const { return config_; }
  const ArmState& arm_state() const { return state_; }
  const GoalSpec& goal() const { return goal_; }
  const Vec2& initial_hand() const { return initial_hand_; }
  int steps_taken() const { return steps_; }
  double accumulated_work() const { return work_; }
  // Acceleration of the hand at the current state (also inside observations).
  const HandState& hand() const { return hand_; }
  const Vec2& last_torques() const { return last_torques_; }

  // The fixed evaluation goal for this config (initial tip + offset).
  Vec2 evaluation_goal() const;

 private:
  Observation observe() const;
  void refresh_derived();  // hand state, qdd at current arm state

  EnvConfig config_;
  ArmState state_;
  GoalSpec goal_;
  Vec2 initial_hand_;
  HandState hand_;
  Vec2 qdd_;
  Vec2 prev_qdd_;
  Vec2 prev_hand_acc_;
  bool have_prev_acc_ = false;
  Vec2 joint_jerk_;
  double hand_jerk_ = 0.0;
  double work_ = 0.0;
  int steps_ = 0;
  bool done_ = false;
  ExecutionNoise episode_noise_;
  bool episode_noise_set_ = false;
  Vec2 last_torques_;
};

}  // namespace reachlab
