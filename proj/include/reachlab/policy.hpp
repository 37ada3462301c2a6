#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "reachlab/reach_env.hpp"

namespace reachlab {

// Feed-forward reaching policy: 42 inputs -> 64 tanh -> 64 tanh -> 6 logistic
// outputs in (0,1). Parameters live in one flat vector, laid out as
// [W1 (64x42 row-major), b1, W2 (64x64), b2, W3 (6x64), b3].
//
// Inputs are divided by fixed per-channel scales (see input_scales) so that
// every observation channel enters the first layer at order one; the scales
// are constants of the architecture, not trained.
class Policy {
 public:
  static constexpr int kInputDim = kObsDim;
  static constexpr int kHiddenDim = 64;
  static constexpr int kOutputDim = kNumMuscles;

  static constexpr std::size_t param_count() {
    return static_cast<std::size_t>(kHiddenDim) * kInputDim + kHiddenDim +
           static_cast<std::size_t>(kHiddenDim) * kHiddenDim + kHiddenDim +
           static_cast<std::size_t>(kOutputDim) * kHiddenDim + kOutputDim;
  }

  static const std::array<double, kObsDim>& input_scales();

  // Deterministic forward pass. Throws std::invalid_argument on a parameter
  // vector of the wrong size and std::runtime_error on non-finite inputs.
  static std::array<double, kNumMuscles> forward(std::span<const double> params,
                                                 const Observation& obs);
};

}  // namespace reachlab
