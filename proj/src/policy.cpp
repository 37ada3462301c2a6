#include "reachlab/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace reachlab {

const std::array<double, kObsDim>& Policy::input_scales() {
  static const std::array<double, kObsDim> scales = [] {
    std::array<double, kObsDim> s{};
    auto set = [&s](int start, int count, double scale) {
      for (int i = 0; i < count; ++i) s[start + i] = scale;
    };
    set(kObsHandPos, 2, 1.0);
    set(kObsHandVel, 2, 2.0);
    set(kObsHandAcc, 2, 20.0);
    set(kObsJointPos, 2, 3.141592653589793);
    set(kObsJointVel, 2, 10.0);
    set(kObsJointAcc, 2, 50.0);
    set(kObsJointJerk, 2, 2000.0);
    set(kObsActivation, kNumMuscles, 1.0);
    set(kObsMuscleForce, kNumMuscles, 300.0);
    set(kObsMuscleLength, kNumMuscles, 0.15);
    set(kObsMuscleVelocity, kNumMuscles, 0.5);
    set(kObsWork, 1, 50.0);
    set(kObsHandJerk, 1, 1000.0);
    set(kObsGoal, 2, 1.0);
    return s;
  }();
  return scales;
}

std::array<double, kNumMuscles> Policy::forward(std::span<const double> params,
                                                const Observation& obs) {
  if (params.size() != param_count())
    throw std::invalid_argument("Policy::forward: wrong parameter count");
  for (double v : obs)
    if (!std::isfinite(v))
      throw std::runtime_error("Policy::forward: non-finite observation");

  const auto& scales = input_scales();
  std::array<double, kInputDim> x;
  for (int i = 0; i < kInputDim; ++i) x[i] = obs[i] / scales[i];

  std::size_t off = 0;
  std::array<double, kHiddenDim> h1;
  for (int j = 0; j < kHiddenDim; ++j) {
    double z = 0.0;
    for (int i = 0; i < kInputDim; ++i) z += params[off + j * kInputDim + i] * x[i];
    h1[j] = z;
  }
  off += static_cast<std::size_t>(kHiddenDim) * kInputDim;
  for (int j = 0; j < kHiddenDim; ++j) h1[j] = std::tanh(h1[j] + params[off + j]);
  off += kHiddenDim;

  std::array<double, kHiddenDim> h2;
  for (int j = 0; j < kHiddenDim; ++j) {
    double z = 0.0;
    for (int i = 0; i < kHiddenDim; ++i) z += params[off + j * kHiddenDim + i] * h1[i];
    h2[j] = z;
  }
  off += static_cast<std::size_t>(kHiddenDim) * kHiddenDim;
  for (int j = 0; j < kHiddenDim; ++j) h2[j] = std::tanh(h2[j] + params[off + j]);
  off += kHiddenDim;

  std::array<double, kNumMuscles> out;
  for (int j = 0; j < kOutputDim; ++j) {
    double z = 0.0;
    for (int i = 0; i < kHiddenDim; ++i) z += params[off + j * kHiddenDim + i] * h2[i];
    out[j] = z;
  }
  off += static_cast<std::size_t>(kOutputDim) * kHiddenDim;
  for (int j = 0; j < kOutputDim; ++j)
    out[j] = 1.0 / (1.0 + std::exp(-(out[j] + params[off + j])));
  return out;
}

}  // namespace reachlab
