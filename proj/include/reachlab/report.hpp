#pragma once

#include <string>

#include "reachlab/grid_runner.hpp"

namespace reachlab {

// Builds run_dir/report: a long-format results table (metric, requirement,
// model, ID, value) and four SVG plot families (hand trajectories, speed
// profiles with the fitted Gaussian, per-pair muscle activations, MT-vs-ID
// regression), each with its data dumped to a CSV next to the plot. Missing
// cells leave gaps listed in report/gaps.txt. Throws std::runtime_error when
// the run dir has no evaluation results at all.
RunSummary run_report(const std::string& run_dir);

}  // namespace reachlab
