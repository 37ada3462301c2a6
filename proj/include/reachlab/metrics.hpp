#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reachlab/rollout.hpp"

namespace reachlab {

inline constexpr int kNormalizedSamples = 101;

// Trajectory resampled to kNormalizedSamples points over [0, MT] by linear
// interpolation of every channel; the endpoints are kept bit-exact.
struct NormalizedTrajectory {
  std::vector<TrajectorySample> rows;  // always kNormalizedSamples long
  double movement_time = 0.0;
  Vec2 goal;
  Vec2 start;
};

enum class MusclePair { kShoulder, kBiarticular, kElbow };
std::string to_string(MusclePair pair);

// Agonist = the flexor of the pair for this task (the reach flexes both
// joints), antagonist = the extensor.
struct MusclePairSignal {
  MusclePair pair;
  std::vector<double> agonist;
  std::vector<double> antagonist;
};

struct PairScore {
  MusclePair pair;
  int triphasic = 0;
  int phases = 0;
};

struct MetricsReport {
  std::optional<double> p_line;
  std::optional<double> v_bell;
  std::array<PairScore, 3> pair_scores{};
  int u_triphasic = 0;  // 1 iff any pair scores 1
  int n_rollouts = 0;
  int kept = 0;
  int excluded = 0;
  int successes = 0;
  double mean_movement_time = 0.0;
  bool no_success = false;  // zero successful rollouts: metrics absent
};

// Linear-interpolation percentile (numpy default); p in [0, 100].
double percentile(std::vector<double> values, double p);

// Trapezoidal integral of the tangential speed over the episode.
double velocity_integral(const Trajectory& traj);

// Keeps rollouts whose speed integral lies in [Q25 - k*IQR, Q75 + k*IQR].
// k = 0 is the literal between-the-quartiles rule. Fewer than 4 rollouts
// pass through untouched. Returns kept indices in input order.
std::vector<std::size_t> filter_outliers(const std::vector<double>& integrals,
                                         double fence_k);

NormalizedTrajectory time_normalize(const Trajectory& traj,
                                    int n = kNormalizedSamples);

// Pointwise arithmetic mean of every channel across the batch.
NormalizedTrajectory mean_trajectory(std::span<const NormalizedTrajectory> batch);

// R^2 of the path against the straight start->goal segment: predictions
// are orthogonal projections onto the segment, the baseline is the path
// centroid. Absent when start == goal.
std::optional<double> metric_line_r2(std::span<const Vec2> path, const Vec2& start,
                                     const Vec2& goal);

struct GaussianFit {
  double mu = 0.0;
  double sigma = 0.0;
  double r2 = 0.0;
  bool converged = false;
};

// Least-squares fit of g(t) = v_max * exp(-(t-mu)^2 / (2 sigma^2)) with the
// amplitude pinned to v_max. Damped Gauss-Newton from mu0 = argmax, sigma0 =
// window/4; at most 200 iterations, convergence when the step < 1e-9. On
// non-convergence the best iterate is returned with converged = false.
GaussianFit fit_gaussian_fixed_amplitude(std::span<const double> t,
                                         std::span<const double> v, double v_max);

// Onset/offset window (first/last sample above 0.1*v_max) plus the Gaussian
// fit on it. Absent if there is no peak or if the series ends above the
// threshold (the profile never falls back below 10% of the peak).
struct BellAnalysis {
  std::size_t onset = 0;
  std::size_t offset = 0;
  double v_max = 0.0;
  GaussianFit fit;
};
std::optional<BellAnalysis> analyze_bell(std::span<const double> speed);

// Bell-shape metric on a speed series over normalized time [0,1]: the R^2 of
// the windowed Gaussian fit, or absent per analyze_bell.
std::optional<double> metric_bell(std::span<const double> speed);

enum class TriphasicDelta { kSlopeDifference, kActivationDifference };

// Triphasic pattern detector. Slopes come from a central finite difference
// on 5-sample moving-average smoothed series; a sample is significant when
// Delta > 0.25*Delta_max and Delta > 1.5e-3; the leading muscle at a
// significant sample is the slope-dominant one provided its own slope is
// positive (a burst, not a decay). Phases are maximal leader runs; returns 1
// iff the phase sequence contains agonist -> antagonist -> agonist.
int metric_triphasic(const MusclePairSignal& pair,
                     TriphasicDelta delta_mode = TriphasicDelta::kSlopeDifference,
                     int* phase_count = nullptr);

struct FittsFit {
  double intercept = 0.0;
  double slope = 0.0;
  std::optional<double> r_f;  // Pearson correlation; absent with zero variance
};

// OLS of MT on ID over (ID, mean MT) pairs. Requires >= 3 distinct IDs.
std::optional<FittsFit> fitts_fit(std::span<const std::pair<double, double>> points);

}  // namespace reachlab
