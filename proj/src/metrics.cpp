#include "reachlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reachlab {

std::string to_string(MusclePair pair) {
  switch (pair) {
    case MusclePair::kShoulder: return "S";
    case MusclePair::kBiarticular: return "B";
    case MusclePair::kElbow: return "E";
  }
  return "?";
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile: empty input");
  std::sort(values.begin(), values.end());
  const double h = (p / 100.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double velocity_integral(const Trajectory& traj) {
  double integral = 0.0;
  for (std::size_t i = 1; i < traj.rows.size(); ++i) {
    const double dt = traj.rows[i].t - traj.rows[i - 1].t;
    integral += 0.5 * (traj.rows[i].speed + traj.rows[i - 1].speed) * dt;
  }
  return integral;
}

std::vector<std::size_t> filter_outliers(const std::vector<double>& integrals,
                                         double fence_k) {
  std::vector<std::size_t> kept;
  if (integrals.size() < 4) {
    kept.resize(integrals.size());
    for (std::size_t i = 0; i < integrals.size(); ++i) kept[i] = i;
    return kept;
  }
  const double q25 = percentile(integrals, 25.0);
  const double q75 = percentile(integrals, 75.0);
  const double iqr = q75 - q25;
  const double lo = q25 - fence_k * iqr;
  const double hi = q75 + fence_k * iqr;
  for (std::size_t i = 0; i < integrals.size(); ++i)
    if (integrals[i] >= lo && integrals[i] <= hi) kept.push_back(i);
  return kept;
}

namespace {

TrajectorySample lerp_sample(const TrajectorySample& a, const TrajectorySample& b,
                             double w) {
  TrajectorySample out;
  auto mix = [w](double x, double y) { return x + w * (y - x); };
  out.t = mix(a.t, b.t);
  out.q = {mix(a.q.x, b.q.x), mix(a.q.y, b.q.y)};
  out.qd = {mix(a.qd.x, b.qd.x), mix(a.qd.y, b.qd.y)};
  out.hand.p = {mix(a.hand.p.x, b.hand.p.x), mix(a.hand.p.y, b.hand.p.y)};
  out.hand.v = {mix(a.hand.v.x, b.hand.v.x), mix(a.hand.v.y, b.hand.v.y)};
  out.hand.a = {mix(a.hand.a.x, b.hand.a.x), mix(a.hand.a.y, b.hand.a.y)};
  out.speed = mix(a.speed, b.speed);
  for (int i = 0; i < kNumMuscles; ++i) {
    out.u[i] = mix(a.u[i], b.u[i]);
    out.act[i] = mix(a.act[i], b.act[i]);
  }
  out.reward.sparse = mix(a.reward.sparse, b.reward.sparse);
  out.reward.effort = mix(a.reward.effort, b.reward.effort);
  out.reward.jerk = mix(a.reward.jerk, b.reward.jerk);
  out.reward.work = mix(a.reward.work, b.reward.work);
  out.reward.total = mix(a.reward.total, b.reward.total);
  return out;
}

}  // namespace

NormalizedTrajectory time_normalize(const Trajectory& traj, int n) {
  if (traj.rows.size() < 2)
    throw std::invalid_argument("time_normalize: need at least 2 samples");
  if (n < 2) throw std::invalid_argument("time_normalize: need at least 2 outputs");
  NormalizedTrajectory out;
  out.movement_time = traj.movement_time;
  out.goal = traj.goal;
  out.start = traj.start;
  out.rows.reserve(n);
  const double t0 = traj.rows.front().t;
  const double t1 = traj.rows.back().t;
  std::size_t seg = 0;
  for (int k = 0; k < n; ++k) {
    if (k == 0) {  // endpoints preserved exactly
      out.rows.push_back(traj.rows.front());
      continue;
    }
    if (k == n - 1) {
      out.rows.push_back(traj.rows.back());
      continue;
    }
    const double t = t0 + (t1 - t0) * (static_cast<double>(k) / (n - 1));
    while (seg + 2 < traj.rows.size() && traj.rows[seg + 1].t <= t) ++seg;
    const double span = traj.rows[seg + 1].t - traj.rows[seg].t;
    const double w = span > 0.0 ? (t - traj.rows[seg].t) / span : 0.0;
    out.rows.push_back(lerp_sample(traj.rows[seg], traj.rows[seg + 1], w));
  }
  return out;
}

NormalizedTrajectory mean_trajectory(std::span<const NormalizedTrajectory> batch) {
  if (batch.empty()) throw std::invalid_argument("mean_trajectory: empty batch");
  const std::size_t n = batch.front().rows.size();
  NormalizedTrajectory mean;
  mean.rows.assign(n, TrajectorySample{});
  mean.goal = batch.front().goal;
  mean.start = batch.front().start;
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (const auto& traj : batch) {
    if (traj.rows.size() != n)
      throw std::invalid_argument("mean_trajectory: length mismatch");
    mean.movement_time += traj.movement_time * inv;
    for (std::size_t i = 0; i < n; ++i) {
      const TrajectorySample& s = traj.rows[i];
      TrajectorySample& m = mean.rows[i];
      m.t += s.t * inv;
      m.q.x += s.q.x * inv;
      m.q.y += s.q.y * inv;
      m.qd.x += s.qd.x * inv;
      m.qd.y += s.qd.y * inv;
      m.hand.p.x += s.hand.p.x * inv;
      m.hand.p.y += s.hand.p.y * inv;
      m.hand.v.x += s.hand.v.x * inv;
      m.hand.v.y += s.hand.v.y * inv;
      m.hand.a.x += s.hand.a.x * inv;
      m.hand.a.y += s.hand.a.y * inv;
      m.speed += s.speed * inv;
      for (int j = 0; j < kNumMuscles; ++j) {
        m.u[j] += s.u[j] * inv;
        m.act[j] += s.act[j] * inv;
      }
      m.reward.sparse += s.reward.sparse * inv;
      m.reward.effort += s.reward.effort * inv;
      m.reward.jerk += s.reward.jerk * inv;
      m.reward.work += s.reward.work * inv;
      m.reward.total += s.reward.total * inv;
    }
  }
  return mean;
}

std::optional<double> metric_line_r2(std::span<const Vec2> path, const Vec2& start,
                                     const Vec2& goal) {
  if (path.size() < 3) throw std::invalid_argument("metric_line_r2: need >= 3 points");
  const Vec2 d = goal - start;
  const double len2 = d.dot(d);
  if (len2 <= 0.0) return std::nullopt;

  Vec2 centroid;
  for (const Vec2& p : path) centroid = centroid + p;
  centroid = centroid * (1.0 / static_cast<double>(path.size()));

  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const Vec2& p : path) {
    const double s = std::clamp((p - start).dot(d) / len2, 0.0, 1.0);
    const Vec2 proj = start + d * s;
    ss_res += (p - proj).dot(p - proj);
    ss_tot += (p - centroid).dot(p - centroid);
  }
  if (ss_tot <= 0.0) return std::nullopt;  // degenerate: path collapsed to a point
  return 1.0 - ss_res / ss_tot;
}

GaussianFit fit_gaussian_fixed_amplitude(std::span<const double> t,
                                         std::span<const double> v, double v_max) {
  if (t.size() != v.size() || t.size() < 3)
    throw std::invalid_argument("fit_gaussian_fixed_amplitude: bad window");
  if (!(v_max > 0.0))
    throw std::invalid_argument("fit_gaussian_fixed_amplitude: peak must be positive");

  const std::size_t n = t.size();
  std::size_t argmax = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] > v[argmax]) argmax = i;

  double mu = t[argmax];
  double sigma = std::max((t.back() - t.front()) / 4.0, 1e-9);

  auto sse = [&](double m, double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = v_max * std::exp(-(t[i] - m) * (t[i] - m) / (2.0 * s * s)) - v[i];
      acc += r * r;
    }
    return acc;
  };

  double lambda = 1e-3;
  double current = sse(mu, sigma);
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    // Normal equations of the damped Gauss-Newton step.
    double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jtr0 = 0.0, jtr1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dt = t[i] - mu;
      const double g = v_max * std::exp(-dt * dt / (2.0 * sigma * sigma));
      const double r = g - v[i];
      const double dmu = g * dt / (sigma * sigma);
      const double dsigma = g * dt * dt / (sigma * sigma * sigma);
      jtj00 += dmu * dmu;
      jtj01 += dmu * dsigma;
      jtj11 += dsigma * dsigma;
      jtr0 += dmu * r;
      jtr1 += dsigma * r;
    }
    const double a00 = jtj00 * (1.0 + lambda);
    const double a11 = jtj11 * (1.0 + lambda);
    const double det = a00 * a11 - jtj01 * jtj01;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double step_mu = -(a11 * jtr0 - jtj01 * jtr1) / det;
    const double step_sigma = -(a00 * jtr1 - jtj01 * jtr0) / det;

    const double mu_next = mu + step_mu;
    const double sigma_next = std::max(std::abs(sigma + step_sigma), 1e-12);
    const double next = sse(mu_next, sigma_next);
    if (next <= current) {
      mu = mu_next;
      sigma = sigma_next;
      current = next;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (std::hypot(step_mu, step_sigma) < 1e-9) {
        converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }

  double vbar = 0.0;
  for (double x : v) vbar += x;
  vbar /= static_cast<double>(n);
  double ss_tot = 0.0;
  for (double x : v) ss_tot += (x - vbar) * (x - vbar);

  GaussianFit fit;
  fit.mu = mu;
  fit.sigma = sigma;
  fit.converged = converged;
  fit.r2 = ss_tot > 0.0 ? 1.0 - current / ss_tot : 1.0;
  return fit;
}

std::optional<BellAnalysis> analyze_bell(std::span<const double> speed) {
  if (speed.size() < 3) return std::nullopt;
  double v_max = 0.0;
  for (double v : speed) v_max = std::max(v_max, v);
  if (!(v_max > 0.0)) return std::nullopt;  // no peak
  const double threshold = 0.1 * v_max;

  std::size_t onset = speed.size();
  std::size_t offset = 0;
  for (std::size_t i = 0; i < speed.size(); ++i) {
    if (speed[i] > threshold) {
      if (onset == speed.size()) onset = i;
      offset = i;
    }
  }
  if (onset == speed.size()) return std::nullopt;
  // Terminal speed never falls back below the threshold: profile invalid for
  // the bell metric (the position-only case).
  if (speed.back() > threshold) return std::nullopt;

  const std::size_t count = offset - onset + 1;
  if (count < 3) return std::nullopt;
  std::vector<double> tw(count), vw(count);
  const double dt = 1.0 / static_cast<double>(speed.size() - 1);
  for (std::size_t i = 0; i < count; ++i) {
    tw[i] = static_cast<double>(onset + i) * dt;
    vw[i] = speed[onset + i];
  }
  BellAnalysis analysis;
  analysis.onset = onset;
  analysis.offset = offset;
  analysis.v_max = v_max;
  analysis.fit = fit_gaussian_fixed_amplitude(tw, vw, v_max);
  return analysis;
}

std::optional<double> metric_bell(std::span<const double> speed) {
  const auto analysis = analyze_bell(speed);
  if (!analysis) return std::nullopt;
  return analysis->fit.r2;
}

namespace {

std::vector<double> moving_average5(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= 2 ? i - 2 : 0;
    const std::size_t hi = std::min(n - 1, i + 2);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += x[j];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<double> central_slopes(std::span<const double> x, double dt) {
  const std::size_t n = x.size();
  std::vector<double> s(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) s[i] = (x[i + 1] - x[i - 1]) / (2.0 * dt);
  s[0] = (x[1] - x[0]) / dt;
  s[n - 1] = (x[n - 1] - x[n - 2]) / dt;
  return s;
}

}  // namespace

int metric_triphasic(const MusclePairSignal& pair, TriphasicDelta delta_mode,
                     int* phase_count) {
  const std::size_t n = pair.agonist.size();
  if (n != pair.antagonist.size() || n < 5)
    throw std::invalid_argument("metric_triphasic: series too short or mismatched");
  const double dt = 1.0 / static_cast<double>(n - 1);
  const auto ag = moving_average5(pair.agonist);
  const auto ant = moving_average5(pair.antagonist);
  const auto s_ag = central_slopes(ag, dt);
  const auto s_ant = central_slopes(ant, dt);

  std::vector<double> delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = delta_mode == TriphasicDelta::kSlopeDifference
                   ? std::abs(s_ag[i] - s_ant[i])
                   : std::abs(ag[i] - ant[i]);
  }
  double delta_max = 0.0;
  for (double d : delta) delta_max = std::max(delta_max, d);

  std::vector<int> phases;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(delta[i] > 0.25 * delta_max && delta[i] > 1.5e-3)) continue;
    const double lead = s_ag[i] - s_ant[i];
    int leader;
    if (lead > 0.0 && s_ag[i] > 0.0)
      leader = 1;  // agonist burst
    else if (lead < 0.0 && s_ant[i] > 0.0)
      leader = -1;  // antagonist burst
    else
      continue;  // decay only, no leading burst
    if (phases.empty() || phases.back() != leader) phases.push_back(leader);
  }

  if (phase_count) *phase_count = static_cast<int>(phases.size());
  for (std::size_t j = 0; j + 2 < phases.size(); ++j)
    if (phases[j] == 1 && phases[j + 1] == -1 && phases[j + 2] == 1) return 1;
  return 0;
}

std::optional<FittsFit> fitts_fit(std::span<const std::pair<double, double>> points) {
  std::vector<double> ids;
  for (const auto& [id, mt] : points)
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  if (ids.size() < 3) return std::nullopt;

  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [id, mt] : points) {
    sx += id;
    sy += mt;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [id, mt] : points) {
    sxx += (id - mx) * (id - mx);
    sxy += (id - mx) * (mt - my);
    syy += (mt - my) * (mt - my);
  }
  FittsFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) fit.r_f = sxy / std::sqrt(sxx * syy);
  return fit;
}

}  // namespace reachlab
