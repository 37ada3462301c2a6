#include "reachlab/json_codecs.hpp"

#include "json.hpp"

namespace reachlab {

using nlohmann::json;

void to_json(json& j, const Vec2& v) { j = json{{"x", v.x}, {"y", v.y}}; }

void from_json(const json& j, Vec2& v) {
  j.at("x").get_to(v.x);
  j.at("y").get_to(v.y);
}

void to_json(json& j, const ArmParams& p) {
  j = json{{"l1", p.l1},
           {"l2", p.l2},
           {"m1", p.m1},
           {"m2", p.m2},
           {"lc1", p.lc1},
           {"lc2", p.lc2},
           {"i1", p.i1},
           {"i2", p.i2},
           {"gravity", p.gravity},
           {"b1", p.b1},
           {"b2", p.b2},
           {"shoulder_limits", {p.shoulder_limits.min_rad, p.shoulder_limits.max_rad}},
           {"elbow_limits", {p.elbow_limits.min_rad, p.elbow_limits.max_rad}},
           {"tau_act", p.tau_act},
           {"tau_deact", p.tau_deact},
           {"f_max", p.f_max},
           {"r_shoulder", p.r_shoulder},
           {"r_elbow", p.r_elbow}};
}

void from_json(const json& j, ArmParams& p) {
  j.at("l1").get_to(p.l1);
  j.at("l2").get_to(p.l2);
  j.at("m1").get_to(p.m1);
  j.at("m2").get_to(p.m2);
  j.at("lc1").get_to(p.lc1);
  j.at("lc2").get_to(p.lc2);
  j.at("i1").get_to(p.i1);
  j.at("i2").get_to(p.i2);
  j.at("gravity").get_to(p.gravity);
  j.at("b1").get_to(p.b1);
  j.at("b2").get_to(p.b2);
  p.shoulder_limits.min_rad = j.at("shoulder_limits").at(0).get<double>();
  p.shoulder_limits.max_rad = j.at("shoulder_limits").at(1).get<double>();
  p.elbow_limits.min_rad = j.at("elbow_limits").at(0).get<double>();
  p.elbow_limits.max_rad = j.at("elbow_limits").at(1).get<double>();
  j.at("tau_act").get_to(p.tau_act);
  j.at("tau_deact").get_to(p.tau_deact);
  j.at("f_max").get_to(p.f_max);
  j.at("r_shoulder").get_to(p.r_shoulder);
  j.at("r_elbow").get_to(p.r_elbow);
}

void to_json(json& j, const EnvConfig& c) {
  j = json{{"arm", c.arm},
           {"variant", to_string(c.variant)},
           {"task", to_string(c.task.requirement)},
           {"v_tol", c.task.v_tol},
           {"a_tol", c.task.a_tol},
           {"noise_sigma1", c.noise.sigma_signal},
           {"noise_sigma2", c.noise.sigma_constant},
           {"noise_cadence", c.noise.cadence == NoiseCadence::kPerControlStep
                                 ? "per-step"
                                 : "per-episode"},
           {"c1", c.weights.c1},
           {"c2", c.weights.c2},
           {"c3", c.weights.c3},
           {"c4", c.weights.c4},
           {"c5", c.weights.c5},
           {"jerk_max", c.weights.jerk_max},
           {"work_max", c.weights.work_max},
           {"sampling_radius_min_frac", c.sampling.radius_min_frac},
           {"sampling_radius_max_frac", c.sampling.radius_max_frac},
           {"sampling_angle_min_rad", c.sampling.angle_min_rad},
           {"sampling_angle_max_rad", c.sampling.angle_max_rad},
           {"p_tol", c.p_tol},
           {"control_dt", c.control_dt},
           {"substeps", c.substeps},
           {"horizon_steps", c.horizon_steps},
           {"eval_goal_offset", c.eval_goal_offset},
           {"initial_pose", c.initial_pose}};
}

void from_json(const json& j, EnvConfig& c) {
  j.at("arm").get_to(c.arm);
  c.variant = *model_variant_from_string(j.at("variant").get<std::string>());
  c.task.requirement =
      *task_requirement_from_string(j.at("task").get<std::string>());
  j.at("v_tol").get_to(c.task.v_tol);
  j.at("a_tol").get_to(c.task.a_tol);
  j.at("noise_sigma1").get_to(c.noise.sigma_signal);
  j.at("noise_sigma2").get_to(c.noise.sigma_constant);
  c.noise.cadence = j.at("noise_cadence").get<std::string>() == "per-step"
                        ? NoiseCadence::kPerControlStep
                        : NoiseCadence::kPerEpisode;
  j.at("c1").get_to(c.weights.c1);
  j.at("c2").get_to(c.weights.c2);
  j.at("c3").get_to(c.weights.c3);
  j.at("c4").get_to(c.weights.c4);
  j.at("c5").get_to(c.weights.c5);
  j.at("jerk_max").get_to(c.weights.jerk_max);
  j.at("work_max").get_to(c.weights.work_max);
  j.at("sampling_radius_min_frac").get_to(c.sampling.radius_min_frac);
  j.at("sampling_radius_max_frac").get_to(c.sampling.radius_max_frac);
  j.at("sampling_angle_min_rad").get_to(c.sampling.angle_min_rad);
  j.at("sampling_angle_max_rad").get_to(c.sampling.angle_max_rad);
  j.at("p_tol").get_to(c.p_tol);
  j.at("control_dt").get_to(c.control_dt);
  j.at("substeps").get_to(c.substeps);
  j.at("horizon_steps").get_to(c.horizon_steps);
  j.at("eval_goal_offset").get_to(c.eval_goal_offset);
  j.at("initial_pose").get_to(c.initial_pose);
}

void to_json(json& j, const OptimizerConfig& c) {
  j = json{{"population", c.population},
           {"elite_fraction", c.elite_fraction},
           {"sigma_init", c.sigma_init},
           {"sigma_floor", c.sigma_floor},
           {"iterations", c.iterations},
           {"episodes_deterministic", c.episodes_deterministic},
           {"episodes_noisy", c.episodes_noisy},
           {"seed", c.seed},
           {"workers", c.workers}};
  if (c.init_mean) j["init_mean_size"] = c.init_mean->size();
}

void from_json(const json& j, OptimizerConfig& c) {
  j.at("population").get_to(c.population);
  j.at("elite_fraction").get_to(c.elite_fraction);
  j.at("sigma_init").get_to(c.sigma_init);
  j.at("sigma_floor").get_to(c.sigma_floor);
  j.at("iterations").get_to(c.iterations);
  j.at("episodes_deterministic").get_to(c.episodes_deterministic);
  j.at("episodes_noisy").get_to(c.episodes_noisy);
  j.at("seed").get_to(c.seed);
  j.at("workers").get_to(c.workers);
}

void to_json(json& j, const IterationStats& s) {
  j = json{{"mean_return", s.mean_return},
           {"elite_mean_return", s.elite_mean_return},
           {"best_return_so_far", s.best_return_so_far},
           {"mean_sigma", s.mean_sigma},
           {"success_fraction", s.success_fraction}};
}

void from_json(const json& j, IterationStats& s) {
  j.at("mean_return").get_to(s.mean_return);
  j.at("elite_mean_return").get_to(s.elite_mean_return);
  j.at("best_return_so_far").get_to(s.best_return_so_far);
  j.at("mean_sigma").get_to(s.mean_sigma);
  j.at("success_fraction").get_to(s.success_fraction);
}

void to_json(json& j, const MetricsReport& r) {
  j = json{{"p_line", nullptr},
           {"v_bell", nullptr},
           {"u_triphasic", r.u_triphasic},
           {"pairs", json::object()},
           {"n_rollouts", r.n_rollouts},
           {"kept", r.kept},
           {"excluded", r.excluded},
           {"successes", r.successes},
           {"mean_movement_time", r.mean_movement_time},
           {"no_success", r.no_success}};
  if (r.p_line) j["p_line"] = *r.p_line;
  if (r.v_bell) j["v_bell"] = *r.v_bell;
  for (const auto& pair : r.pair_scores)
    j["pairs"][to_string(pair.pair)] =
        json{{"triphasic", pair.triphasic}, {"phases", pair.phases}};
}

void from_json(const json& j, MetricsReport& r) {
  r.p_line.reset();
  r.v_bell.reset();
  if (!j.at("p_line").is_null()) r.p_line = j.at("p_line").get<double>();
  if (!j.at("v_bell").is_null()) r.v_bell = j.at("v_bell").get<double>();
  j.at("u_triphasic").get_to(r.u_triphasic);
  j.at("n_rollouts").get_to(r.n_rollouts);
  j.at("kept").get_to(r.kept);
  j.at("excluded").get_to(r.excluded);
  j.at("successes").get_to(r.successes);
  j.at("mean_movement_time").get_to(r.mean_movement_time);
  j.at("no_success").get_to(r.no_success);
  const std::array<MusclePair, 3> order{MusclePair::kShoulder,
                                        MusclePair::kBiarticular, MusclePair::kElbow};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& pj = j.at("pairs").at(to_string(order[i]));
    r.pair_scores[i].pair = order[i];
    pj.at("triphasic").get_to(r.pair_scores[i].triphasic);
    pj.at("phases").get_to(r.pair_scores[i].phases);
  }
}

void to_json(json& j, const GridSpec& g) {
  j = json{{"variants", json::array()},
           {"requirements", json::array()},
           {"p_tols", g.p_tols},
           {"global_seed", g.global_seed},
           {"warm_start", g.warm_start}};
  for (auto v : g.variants) j["variants"].push_back(to_string(v));
  for (auto r : g.requirements) j["requirements"].push_back(to_string(r));
}

void from_json(const json& j, GridSpec& g) {
  g.variants.clear();
  g.requirements.clear();
  for (const auto& v : j.at("variants"))
    g.variants.push_back(*model_variant_from_string(v.get<std::string>()));
  for (const auto& r : j.at("requirements"))
    g.requirements.push_back(*task_requirement_from_string(r.get<std::string>()));
  j.at("p_tols").get_to(g.p_tols);
  j.at("global_seed").get_to(g.global_seed);
  j.at("warm_start").get_to(g.warm_start);
}

}  // namespace reachlab
