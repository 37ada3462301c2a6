// reachlab command line: trains the model x requirement x tolerance grid,
// evaluates trained agents against the movement-stereotypy metrics, and
// renders the results table and plots.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "reachlab/agent_io.hpp"
#include "reachlab/config.hpp"
#include "reachlab/grid_runner.hpp"
#include "reachlab/json_codecs.hpp"
#include "reachlab/report.hpp"
#include "reachlab/rollout.hpp"
#include "reachlab/trajectory_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitPartialFailure = 3;

reachlab::KeyValueConfig load_config(const std::string& path) {
  if (path.empty()) return reachlab::KeyValueConfig::parse_string("");
  return reachlab::KeyValueConfig::parse_file(path);
}

void fail_on_unknown_keys(const reachlab::KeyValueConfig& cfg) {
  const auto unknown = cfg.unused_keys();
  if (unknown.empty()) return;
  std::string message = "unknown config keys:";
  for (const auto& key : unknown) message += " '" + key + "'";
  throw std::invalid_argument(message);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reachlab: musculoskeletal reaching laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 1;
  int n_rollouts = 1000;
  bool paper_scale = false;

  auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--config", config_path, "key = value configuration file");
    auto* out = cmd->add_option("--out", out_dir, "run directory");
    if (needs_out) out->required();
    cmd->add_option("--seed", seed, "global seed override")
        ->each([&](const std::string&) { seed_set = true; });
    cmd->add_option("--workers", workers, "worker threads");
  };

  auto* train = app.add_subcommand("train", "train the agent grid");
  add_common(train, true);
  train->add_flag("--paper-scale", paper_scale,
                  "raise the per-cell budget (5x iterations)");

  auto* evaluate = app.add_subcommand("evaluate", "evaluate trained agents");
  add_common(evaluate, true);
  evaluate->add_option("--n-rollouts", n_rollouts, "rollouts per agent");

  auto* report = app.add_subcommand("report", "emit results table and plots");
  add_common(report, true);

  auto* rollout_cmd =
      app.add_subcommand("rollout", "single-episode debug dump to CSV");
  add_common(rollout_cmd, true);
  std::string agent_path;
  std::string mode = "eval";
  rollout_cmd->add_option("--agent", agent_path, "trained agent JSON");
  rollout_cmd->add_option("--mode", mode, "goal mode: eval | train")
      ->check(CLI::IsMember({"eval", "train"}));

  auto* validate =
      app.add_subcommand("validate-config", "parse and echo a configuration");
  validate->add_option("--config", config_path, "key = value configuration file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      const auto cfg = load_config(config_path);
      auto grid = reachlab::make_grid_spec(cfg);
      const auto env = reachlab::make_env_config(cfg);
      const auto opt = reachlab::make_optimizer_config(cfg);
      fail_on_unknown_keys(cfg);
      if (seed_set) grid.global_seed = seed;
      reachlab::TrainOptions options;
      options.workers = workers;
      options.paper_scale = paper_scale;
      const auto summary = reachlab::run_train(grid, env, opt, out_dir, options);
      std::cout << "trained " << summary.completed << " cells, skipped "
                << summary.skipped << ", failed " << summary.failed << "\n";
      return summary.failed > 0 ? kExitPartialFailure : kExitOk;
    }

    if (evaluate->parsed()) {
      const auto cfg = load_config(config_path);
      reachlab::EvaluateOptions options;
      options.n_rollouts = n_rollouts;
      options.workers = workers;
      if (seed_set) options.eval_seed = seed;
      fail_on_unknown_keys(cfg);
      const auto summary = reachlab::run_evaluate(out_dir, options);
      std::cout << "evaluated " << summary.completed << " agents, failed "
                << summary.failed << "\n";
      return summary.failed > 0 ? kExitPartialFailure : kExitOk;
    }

    if (report->parsed()) {
      const auto summary = reachlab::run_report(out_dir);
      std::cout << "report written for " << summary.completed << " cells";
      if (summary.failed > 0) std::cout << ", " << summary.failed << " gaps";
      std::cout << "\n";
      return kExitOk;
    }

    if (rollout_cmd->parsed()) {
      const auto cfg = load_config(config_path);
      reachlab::EnvConfig env = reachlab::make_env_config(cfg);
      std::vector<double> params(reachlab::Policy::param_count(), 0.0);
      if (!agent_path.empty()) {
        const auto agent = reachlab::load_agent(agent_path);
        params = agent.params;
        env = agent.env;
      }
      fail_on_unknown_keys(cfg);
      const auto result = reachlab::rollout(
          params, env, seed_set ? seed : 0,
          mode == "eval" ? reachlab::ResetMode::kEvaluation
                         : reachlab::ResetMode::kTraining);
      std::filesystem::create_directories(out_dir);
      const auto csv = (std::filesystem::path(out_dir) / "rollout.csv").string();
      reachlab::write_trajectory_csv(csv, result.trajectory, env,
                                     seed_set ? seed : 0);
      std::cout << "rollout: return=" << result.episode_return
                << " MT=" << result.trajectory.movement_time << "s success="
                << (result.trajectory.success ? "yes" : "no") << " -> " << csv
                << "\n";
      return kExitOk;
    }

    if (validate->parsed()) {
      const auto cfg = reachlab::KeyValueConfig::parse_file(config_path);
      const auto grid = reachlab::make_grid_spec(cfg);
      const auto env = reachlab::make_env_config(cfg);
      const auto opt = reachlab::make_optimizer_config(cfg);
      fail_on_unknown_keys(cfg);
      nlohmann::json echo{{"grid", grid}, {"env", env}, {"optimizer", opt}};
      std::cout << echo.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartialFailure;
  }
  return kExitOk;
}
