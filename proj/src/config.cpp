#include "reachlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace reachlab {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_key(const std::string& key, const std::string& value,
                          const std::string& expected) {
  throw std::invalid_argument("config key '" + key + "': cannot parse '" + value +
                              "' as " + expected);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str());
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

bool KeyValueConfig::has(const std::string& key) const {
  return values_.count(key) > 0;
}

std::optional<std::string> KeyValueConfig::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  used_.insert(key);
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    const double d = std::stod(*v, &pos);
    if (pos != v->size()) bad_key(key, *v, "a number");
    return d;
  } catch (const std::invalid_argument&) {
    bad_key(key, *v, "a number");
  } catch (const std::out_of_range&) {
    bad_key(key, *v, "a number in range");
  }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const double d = get_double(key, fallback);
  const int i = static_cast<int>(d);
  if (d != static_cast<double>(i)) bad_key(key, *raw(key), "an integer");
  return i;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    const std::uint64_t u = std::stoull(*v, &pos);
    if (pos != v->size()) bad_key(key, *v, "an unsigned integer");
    return u;
  } catch (const std::exception&) {
    bad_key(key, *v, "an unsigned integer");
  }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  bad_key(key, *v, "a boolean");
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto v = raw(key);
  return v ? *v : fallback;
}

std::vector<std::string> KeyValueConfig::get_list(const std::string& key) const {
  const auto v = raw(key);
  std::vector<std::string> out;
  if (!v) return out;
  std::istringstream in(*v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& s : get_list(key)) {
    try {
      out.push_back(std::stod(s));
    } catch (const std::exception&) {
      bad_key(key, s, "a number");
    }
  }
  return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_)
    if (!used_.count(key)) out.push_back(key);
  return out;
}

void GridSpec::validate() const {
  if (variants.empty() || requirements.empty() || p_tols.empty())
    throw std::invalid_argument("GridSpec: empty axis");
  for (double p : p_tols)
    if (!(p > 0)) throw std::invalid_argument("GridSpec: p_tol must be positive");
}

namespace {

constexpr double kDegToRad = 3.141592653589793 / 180.0;

void apply_arm_overrides(const KeyValueConfig& cfg, ArmParams& arm) {
  arm.l1 = cfg.get_double("arm.l1", arm.l1);
  arm.l2 = cfg.get_double("arm.l2", arm.l2);
  arm.m1 = cfg.get_double("arm.m1", arm.m1);
  arm.m2 = cfg.get_double("arm.m2", arm.m2);
  arm.lc1 = cfg.get_double("arm.lc1", cfg.has("arm.l1") ? arm.l1 / 2 : arm.lc1);
  arm.lc2 = cfg.get_double("arm.lc2", cfg.has("arm.l2") ? arm.l2 / 2 : arm.lc2);
  const double default_i1 = cfg.has("arm.m1") || cfg.has("arm.l1")
                                ? arm.m1 * arm.l1 * arm.l1 / 12.0
                                : arm.i1;
  const double default_i2 = cfg.has("arm.m2") || cfg.has("arm.l2")
                                ? arm.m2 * arm.l2 * arm.l2 / 12.0
                                : arm.i2;
  arm.i1 = cfg.get_double("arm.i1", default_i1);
  arm.i2 = cfg.get_double("arm.i2", default_i2);
  arm.gravity = cfg.get_double("arm.gravity", arm.gravity);
  arm.b1 = cfg.get_double("arm.b1", arm.b1);
  arm.b2 = cfg.get_double("arm.b2", arm.b2);
  arm.tau_act = cfg.get_double("arm.tau_act", arm.tau_act);
  arm.tau_deact = cfg.get_double("arm.tau_deact", arm.tau_deact);
  arm.shoulder_limits.min_rad =
      cfg.get_double("arm.shoulder_min_deg", arm.shoulder_limits.min_rad / kDegToRad) *
      kDegToRad;
  arm.shoulder_limits.max_rad =
      cfg.get_double("arm.shoulder_max_deg", arm.shoulder_limits.max_rad / kDegToRad) *
      kDegToRad;
  arm.elbow_limits.min_rad =
      cfg.get_double("arm.elbow_min_deg", arm.elbow_limits.min_rad / kDegToRad) *
      kDegToRad;
  arm.elbow_limits.max_rad =
      cfg.get_double("arm.elbow_max_deg", arm.elbow_limits.max_rad / kDegToRad) *
      kDegToRad;
  const double f_all = cfg.get_double("arm.f_max", -1.0);
  if (f_all > 0) arm.f_max.fill(f_all);
  for (int i = 0; i < kNumMuscles; ++i) {
    const std::string suffix = "." + std::to_string(i);
    arm.f_max[i] = cfg.get_double("arm.f_max" + suffix, arm.f_max[i]);
    arm.r_shoulder[i] = cfg.get_double("arm.r_shoulder" + suffix, arm.r_shoulder[i]);
    arm.r_elbow[i] = cfg.get_double("arm.r_elbow" + suffix, arm.r_elbow[i]);
  }
}

}  // namespace

EnvConfig make_env_config(const KeyValueConfig& cfg) {
  EnvConfig env;
  apply_arm_overrides(cfg, env.arm);

  const std::string variant = cfg.get_string("env.variant", to_string(env.variant));
  const auto v = model_variant_from_string(variant);
  if (!v) throw std::invalid_argument("config key 'env.variant': unknown variant '" +
                                      variant + "'");
  env.variant = *v;

  const std::string req =
      cfg.get_string("env.task", to_string(env.task.requirement));
  const auto r = task_requirement_from_string(req);
  if (!r) throw std::invalid_argument("config key 'env.task': unknown requirement '" +
                                      req + "'");
  env.task.requirement = *r;
  env.task.v_tol = cfg.get_double("env.task.v_tol", env.task.v_tol);
  env.task.a_tol = cfg.get_double("env.task.a_tol", env.task.a_tol);

  env.noise.sigma_signal = cfg.get_double("env.noise.sigma1", env.noise.sigma_signal);
  env.noise.sigma_constant =
      cfg.get_double("env.noise.sigma2", env.noise.sigma_constant);
  const std::string cadence = cfg.get_string(
      "env.noise.cadence",
      env.noise.cadence == NoiseCadence::kPerControlStep ? "per-step" : "per-episode");
  if (cadence == "per-step")
    env.noise.cadence = NoiseCadence::kPerControlStep;
  else if (cadence == "per-episode")
    env.noise.cadence = NoiseCadence::kPerEpisode;
  else
    throw std::invalid_argument("config key 'env.noise.cadence': unknown cadence '" +
                                cadence + "'");

  env.weights.c1 = cfg.get_double("env.reward.c1", env.weights.c1);
  env.weights.c2 = cfg.get_double("env.reward.c2", env.weights.c2);
  env.weights.c3 = cfg.get_double("env.reward.c3", env.weights.c3);
  env.weights.c4 = cfg.get_double("env.reward.c4", env.weights.c4);
  env.weights.c5 = cfg.get_double("env.reward.c5", env.weights.c5);
  env.weights.jerk_max = cfg.get_double("env.reward.jerk_max", env.weights.jerk_max);
  env.weights.work_max = cfg.get_double("env.reward.work_max", env.weights.work_max);

  env.p_tol = cfg.get_double("env.p_tol", env.p_tol);
  env.control_dt = cfg.get_double("env.control_dt", env.control_dt);
  env.substeps = cfg.get_int("env.substeps", env.substeps);
  env.horizon_steps = cfg.get_int("env.horizon_steps", env.horizon_steps);
  env.eval_goal_offset.x =
      cfg.get_double("env.eval_goal_offset.x", env.eval_goal_offset.x);
  env.eval_goal_offset.y =
      cfg.get_double("env.eval_goal_offset.y", env.eval_goal_offset.y);

  env.sampling.radius_min_frac =
      cfg.get_double("env.sampling.radius_min_frac", env.sampling.radius_min_frac);
  env.sampling.radius_max_frac =
      cfg.get_double("env.sampling.radius_max_frac", env.sampling.radius_max_frac);
  env.sampling.angle_min_rad =
      cfg.get_double("env.sampling.angle_min_deg",
                     env.sampling.angle_min_rad / kDegToRad) *
      kDegToRad;
  env.sampling.angle_max_rad =
      cfg.get_double("env.sampling.angle_max_deg",
                     env.sampling.angle_max_rad / kDegToRad) *
      kDegToRad;

  env.validate();
  return env;
}

OptimizerConfig make_optimizer_config(const KeyValueConfig& cfg) {
  OptimizerConfig opt;
  opt.population = cfg.get_int("opt.population", opt.population);
  opt.elite_fraction = cfg.get_double("opt.elite_fraction", opt.elite_fraction);
  opt.sigma_init = cfg.get_double("opt.sigma_init", opt.sigma_init);
  opt.sigma_floor = cfg.get_double("opt.sigma_floor", opt.sigma_floor);
  opt.iterations = cfg.get_int("opt.iterations", opt.iterations);
  opt.episodes_deterministic =
      cfg.get_int("opt.episodes_deterministic", opt.episodes_deterministic);
  opt.episodes_noisy = cfg.get_int("opt.episodes_noisy", opt.episodes_noisy);
  opt.seed = cfg.get_u64("opt.seed", opt.seed);
  opt.validate();
  return opt;
}

GridSpec make_grid_spec(const KeyValueConfig& cfg) {
  GridSpec grid;
  if (cfg.has("grid.variants")) {
    grid.variants.clear();
    for (const auto& name : cfg.get_list("grid.variants")) {
      const auto v = model_variant_from_string(name);
      if (!v)
        throw std::invalid_argument("config key 'grid.variants': unknown variant '" +
                                    name + "'");
      grid.variants.push_back(*v);
    }
  }
  if (cfg.has("grid.requirements")) {
    grid.requirements.clear();
    for (const auto& name : cfg.get_list("grid.requirements")) {
      const auto r = task_requirement_from_string(name);
      if (!r)
        throw std::invalid_argument(
            "config key 'grid.requirements': unknown requirement '" + name + "'");
      grid.requirements.push_back(*r);
    }
  }
  if (cfg.has("grid.p_tols")) grid.p_tols = cfg.get_double_list("grid.p_tols");
  grid.global_seed = cfg.get_u64("grid.seed", grid.global_seed);
  grid.warm_start = cfg.get_bool("grid.warm_start", grid.warm_start);
  grid.validate();
  return grid;
}

std::string id_tag(double p_tol) {
  const double id = index_of_difficulty(0.63, p_tol);
  const double rounded = std::round(id);
  if (std::abs(id - rounded) < 0.01 && rounded >= 1 && rounded <= 9)
    return "id" + std::to_string(static_cast<int>(rounded));
  std::ostringstream out;
  out << "ptol" << p_tol;
  return out.str();
}

std::string cell_name(ModelVariant v, TaskRequirement r, double p_tol) {
  return to_string(v) + "_" + to_string(r) + "_" + id_tag(p_tol);
}

}  // namespace reachlab
