#pragma once

#include <cstdint>
#include <string>

#include "reachlab/metrics.hpp"
#include "reachlab/reach_env.hpp"
#include "reachlab/rollout.hpp"

namespace reachlab {

inline constexpr int kTrajectorySchemaVersion = 1;

// Trajectory files are a CSV with the fixed header
//   t,q1,q2,qd1,qd2,hand_x,hand_y,hand_vx,hand_vy,hand_ax,hand_ay,speed,
//   u1..u6,a1..a6,r_sparse,r_effort,r_jerk,r_work,r_total
// (17 significant digits, lossless round trip) plus a `<path>.json` sidecar
// holding the EnvConfig, seed, movement time, success flag and schema version.

void write_trajectory_csv(const std::string& csv_path, const Trajectory& traj,
                          const EnvConfig& config, std::uint64_t seed);

struct LoadedTrajectory {
  Trajectory trajectory;
  EnvConfig config;
  std::uint64_t seed = 0;
};

// Throws std::runtime_error naming the missing column / on a schema-version
// mismatch in the sidecar.
LoadedTrajectory read_trajectory_csv(const std::string& csv_path);

// The normalized mean trajectory reuses the same row schema.
void write_normalized_csv(const std::string& csv_path,
                          const NormalizedTrajectory& traj);
NormalizedTrajectory read_normalized_csv(const std::string& csv_path);

std::string sidecar_path(const std::string& csv_path);

}  // namespace reachlab
