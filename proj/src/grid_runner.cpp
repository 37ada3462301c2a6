#include "reachlab/grid_runner.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "reachlab/agent_io.hpp"
#include "reachlab/json_codecs.hpp"
#include "reachlab/trajectory_io.hpp"

namespace reachlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int canonical_index(ModelVariant v) {
  switch (v) {
    case ModelVariant::kBaseline: return 0;
    case ModelVariant::kExecutionNoise: return 1;
    case ModelVariant::kOptimalityPrinciples: return 2;
    case ModelVariant::kHybrid: return 3;
  }
  return 0;
}

int canonical_index(TaskRequirement r) {
  switch (r) {
    case TaskRequirement::kPos: return 0;
    case TaskRequirement::kPosVel: return 1;
    case TaskRequirement::kPosVelAcc: return 2;
  }
  return 0;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t global_seed, ModelVariant v,
                        TaskRequirement r, double p_tol) {
  return derive_seed(global_seed,
                     {static_cast<std::uint64_t>(canonical_index(v)),
                      static_cast<std::uint64_t>(canonical_index(r)),
                      std::bit_cast<std::uint64_t>(p_tol)});
}

RunSummary run_train(const GridSpec& grid, const EnvConfig& base_env,
                     const OptimizerConfig& base_opt, const std::string& run_dir,
                     const TrainOptions& options) {
  grid.validate();
  fs::create_directories(fs::path(run_dir) / "agents");
  Manifest manifest(run_dir);

  std::vector<json> events;
  if (fs::exists(manifest.path())) events = Manifest::read(run_dir);

  manifest.append(json{{"type", "run_config"},
                       {"grid", grid},
                       {"env", base_env},
                       {"optimizer", base_opt},
                       {"paper_scale", options.paper_scale}});

  // Widest tolerance (lowest ID) first, so warm starts climb the difficulty.
  std::vector<double> p_tols = grid.p_tols;
  std::sort(p_tols.begin(), p_tols.end(), std::greater<double>());

  RunSummary summary;
  for (ModelVariant variant : grid.variants) {
    for (TaskRequirement requirement : grid.requirements) {
      std::optional<std::vector<double>> previous_params;
      for (double p_tol : p_tols) {
        const std::string cell = cell_name(variant, requirement, p_tol);
        const std::string agent_rel = "agents/" + cell + ".json";
        const std::string agent_path = (fs::path(run_dir) / agent_rel).string();

        const auto status = Manifest::cell_status(events, cell);
        if (status && (*status == "trained" || *status == "non-reaching") &&
            fs::exists(agent_path)) {
          ++summary.skipped;
          if (grid.warm_start) previous_params = load_agent(agent_path).params;
          continue;
        }

        EnvConfig env = base_env;
        env.variant = variant;
        env.task.requirement = requirement;
        env.p_tol = p_tol;

        OptimizerConfig opt = base_opt;
        opt.seed = cell_seed(grid.global_seed, variant, requirement, p_tol);
        opt.workers = options.workers;
        if (options.paper_scale) opt.iterations *= 5;
        if (grid.warm_start && previous_params) opt.init_mean = previous_params;

        const auto start = std::chrono::steady_clock::now();
        try {
          const TrainedAgent agent = train(env, opt);
          save_agent(agent_path, agent);
          manifest.append(json{
              {"type", "cell"},
              {"cell", cell},
              {"status", agent.non_reaching ? "non-reaching" : "trained"},
              {"paths", {agent_rel}},
              {"seed", opt.seed},
              {"warm_started", grid.warm_start && previous_params.has_value()},
              {"best_score", agent.best_score},
              {"wall_clock_s", seconds_since(start)}});
          if (grid.warm_start) previous_params = agent.params;
          ++summary.completed;
        } catch (const std::exception& e) {
          manifest.append(json{{"type", "cell"},
                               {"cell", cell},
                               {"status", "failed"},
                               {"paths", json::array()},
                               {"error", e.what()},
                               {"wall_clock_s", seconds_since(start)}});
          std::cerr << "cell " << cell << " failed: " << e.what() << "\n";
          ++summary.failed;
        }
      }
    }
  }
  return summary;
}

RunSummary run_evaluate(const std::string& run_dir, const EvaluateOptions& options) {
  const auto events = Manifest::read(run_dir);
  Manifest manifest(run_dir);
  fs::create_directories(fs::path(run_dir) / "metrics");
  fs::create_directories(fs::path(run_dir) / "means");

  // variant/requirement -> (ID, mean MT) points for the Fitts regression.
  std::map<std::pair<std::string, std::string>,
           std::vector<std::pair<double, double>>>
      fitts_points;

  // Latest event per cell wins (a resumed run may retry a failed cell).
  std::map<std::string, json> latest;
  for (const auto& event : events)
    if (event.value("type", "") == "cell") latest[event.value("cell", "")] = event;

  RunSummary summary;
  for (const auto& [cell, event] : latest) {
    const std::string status = event.value("status", "");
    if (status != "trained" && status != "non-reaching") continue;
    const std::string agent_rel = event.at("paths").at(0).get<std::string>();
    const std::string agent_path = (fs::path(run_dir) / agent_rel).string();
    if (!fs::exists(agent_path)) {
      std::cerr << "warning: agent file missing for cell " << cell << ", skipped\n";
      ++summary.failed;
      continue;
    }

    const auto start = std::chrono::steady_clock::now();
    const TrainedAgent agent = load_agent(agent_path);
    EvaluationOptions eval;
    eval.n_rollouts = options.n_rollouts;
    eval.workers = options.workers;
    eval.seed = options.eval_seed;
    const EvaluationResult result = evaluate_agent(agent, eval);

    const std::string metrics_rel = "metrics/" + cell + ".json";
    const std::string mean_rel = "means/" + cell + ".csv";
    json mj{{"schema_version", 1},
            {"cell", cell},
            {"variant", to_string(agent.env.variant)},
            {"requirement", to_string(agent.env.task.requirement)},
            {"p_tol", agent.env.p_tol},
            {"index_of_difficulty", result.index_of_difficulty},
            {"n_rollouts", options.n_rollouts},
            {"report", result.report},
            {"mean_csv", mean_rel}};
    {
      std::ofstream out((fs::path(run_dir) / metrics_rel).string());
      out << mj.dump(2) << "\n";
    }

    std::vector<std::string> paths{metrics_rel};
    if (!result.mean.rows.empty()) {
      write_normalized_csv((fs::path(run_dir) / mean_rel).string(), result.mean);
      paths.push_back(mean_rel);
      paths.push_back(mean_rel + ".json");  // sidecar
    }
    manifest.append(json{{"type", "evaluation"},
                         {"cell", cell},
                         {"paths", paths},
                         {"n_rollouts", options.n_rollouts},
                         {"wall_clock_s", seconds_since(start)}});

    fitts_points[{to_string(agent.env.variant),
                  to_string(agent.env.task.requirement)}]
        .emplace_back(result.index_of_difficulty, result.report.mean_movement_time);
    ++summary.completed;
  }

  json fitts = json::array();
  for (auto& [key, points] : fitts_points) {
    std::sort(points.begin(), points.end());
    json entry{{"variant", key.first},
               {"requirement", key.second},
               {"points", json::array()}};
    for (const auto& [id, mt] : points) entry["points"].push_back({id, mt});
    if (const auto fit = fitts_fit(points)) {
      entry["intercept"] = fit->intercept;
      entry["slope"] = fit->slope;
      if (fit->r_f)
        entry["r_f"] = *fit->r_f;
      else
        entry["r_f"] = nullptr;
    }
    fitts.push_back(entry);
  }
  {
    std::ofstream out((fs::path(run_dir) / "metrics/fitts.json").string());
    out << fitts.dump(2) << "\n";
  }
  manifest.append(json{{"type", "fitts"}, {"paths", {"metrics/fitts.json"}}});
  return summary;
}

}  // namespace reachlab
