#include "reachlab/metrics.hpp"

#include <cmath>
#include <functional>

#include <stdexcept>

#include "doctest.h"
#include "reachlab/rng.hpp"

using namespace reachlab;

namespace {

// Builds a trajectory whose hand path and speed follow the given samplers.
Trajectory make_trajectory(int steps, double dt,
                           const std::function<Vec2(double)>& pos,
                           const std::function<double(double)>& speed) {
  Trajectory traj;
  for (int i = 0; i <= steps; ++i) {
    TrajectorySample row;
    row.t = i * dt;
    row.hand.p = pos(row.t);
    row.speed = speed(row.t);
    traj.rows.push_back(row);
  }
  traj.movement_time = steps * dt;
  traj.start = traj.rows.front().hand.p;
  return traj;
}

double gaussian_bump(double t, double center, double width, double height) {
  return height * std::exp(-(t - center) * (t - center) / (2.0 * width * width));
}

}  // namespace

TEST_CASE("percentiles use linear interpolation") {
  const std::vector<double> v{1.0, 2.0, 3.0, 100.0};
  CHECK(percentile(v, 25.0) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(percentile(v, 75.0) == doctest::Approx(27.25).epsilon(1e-15));
  CHECK(percentile(v, 0.0) == 1.0);
  CHECK(percentile(v, 100.0) == 100.0);
}

TEST_CASE("outlier filter: literal interquartile rule and 1.5 IQR fences") {
  const std::vector<double> integrals{1.0, 2.0, 3.0, 100.0};
  const auto kept0 = filter_outliers(integrals, 0.0);
  REQUIRE(kept0.size() == 2);  // Q25 = 1.75, Q75 = 27.25 keep {2, 3}
  CHECK(kept0[0] == 1);
  CHECK(kept0[1] == 2);

  const auto kept15 = filter_outliers(integrals, 1.5);
  REQUIRE(kept15.size() == 3);  // fences [-36.5, 65.5] keep {1, 2, 3}
  CHECK(kept15[0] == 0);
  CHECK(kept15[1] == 1);
  CHECK(kept15[2] == 2);

  const std::vector<double> equal(8, 4.2);
  CHECK(filter_outliers(equal, 0.0).size() == 8);

  const std::vector<double> few{1.0, 50.0, 100.0};
  CHECK(filter_outliers(few, 0.0).size() == 3);  // pass-through under 4 rollouts
}

TEST_CASE("velocity integral is trapezoidal") {
  // speed ramps 0 -> 1 over 1 s: integral = 0.5.
  const auto traj = make_trajectory(
      100, 0.01, [](double) { return Vec2{0, 0}; }, [](double t) { return t; });
  CHECK(velocity_integral(traj) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("time normalization: exact endpoints, linear exactness, fixed length") {
  const auto ramp = make_trajectory(
      10, 0.1, [](double t) { return Vec2{t, 0.0}; }, [](double t) { return t; });
  const auto norm = time_normalize(ramp);
  REQUIRE(norm.rows.size() == kNormalizedSamples);
  CHECK(norm.rows.front().hand.p.x == ramp.rows.front().hand.p.x);  // bit-exact
  CHECK(norm.rows.back().hand.p.x == ramp.rows.back().hand.p.x);
  for (int k = 0; k < kNormalizedSamples; ++k)
    CHECK(norm.rows[k].hand.p.x == doctest::Approx(k / 100.0).epsilon(1e-12));

  const auto constant = make_trajectory(
      7, 0.01, [](double) { return Vec2{0.3, -0.1}; }, [](double) { return 2.0; });
  const auto cnorm = time_normalize(constant);
  for (const auto& row : cnorm.rows) {
    CHECK(row.hand.p.x == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(row.speed == doctest::Approx(2.0).epsilon(1e-15));
  }
}

TEST_CASE("mean trajectory: identity, mirrored detours, constant averaging") {
  const auto one = time_normalize(make_trajectory(
      20, 0.01, [](double t) { return Vec2{t, std::sin(t)}; },
      [](double) { return 1.0; }));
  const auto self_mean = mean_trajectory(std::vector<NormalizedTrajectory>{one});
  for (std::size_t i = 0; i < one.rows.size(); ++i)
    CHECK(self_mean.rows[i].hand.p.y == doctest::Approx(one.rows[i].hand.p.y));

  const auto up = time_normalize(make_trajectory(
      40, 0.01, [](double t) { return Vec2{t, std::sin(8 * t)}; },
      [](double) { return 1.0; }));
  const auto down = time_normalize(make_trajectory(
      40, 0.01, [](double t) { return Vec2{t, -std::sin(8 * t)}; },
      [](double) { return 1.0; }));
  const auto mean = mean_trajectory(std::vector<NormalizedTrajectory>{up, down});
  for (const auto& row : mean.rows) CHECK(row.hand.p.y == 0.0);

  const auto c1 = time_normalize(make_trajectory(
      5, 0.01, [](double) { return Vec2{1.0, 0}; }, [](double) { return 1.0; }));
  const auto c2 = time_normalize(make_trajectory(
      5, 0.01, [](double) { return Vec2{3.0, 0}; }, [](double) { return 2.0; }));
  const auto cm = mean_trajectory(std::vector<NormalizedTrajectory>{c1, c2});
  for (const auto& row : cm.rows) {
    CHECK(row.hand.p.x == doctest::Approx(2.0));
    CHECK(row.speed == doctest::Approx(1.5));
  }
}

TEST_CASE("line metric: exact segment, semicircular detour, degenerate input") {
  std::vector<Vec2> on_line;
  for (int i = 0; i <= 50; ++i)
    on_line.push_back({0.1 + 0.4 * i / 50.0, -0.2 + 0.6 * i / 50.0});
  const auto r2 = metric_line_r2(on_line, on_line.front(), on_line.back());
  REQUIRE(r2.has_value());
  CHECK(*r2 == doctest::Approx(1.0).epsilon(1e-12));

  // Semicircular detour of radius = half the chord. The discrete value was
  // frozen from a numpy oracle (closed form of the continuous limit:
  // 1 - 0.5/(1 - 4/pi^2) = 0.159261533941).
  std::vector<Vec2> semi;
  const int n = 10001;
  for (int i = 0; i < n; ++i) {
    const double phi = 3.141592653589793 * i / (n - 1);
    semi.push_back({1.0 - std::cos(phi), std::sin(phi)});
  }
  const auto semi_r2 = metric_line_r2(semi, {0.0, 0.0}, {2.0, 0.0});
  REQUIRE(semi_r2.has_value());
  CHECK(*semi_r2 == doctest::Approx(0.159460153323).epsilon(1e-8));
  CHECK(std::abs(*semi_r2 - 0.159261533941) < 5e-4);

  CHECK_FALSE(metric_line_r2(on_line, {0.3, 0.3}, {0.3, 0.3}).has_value());
}

TEST_CASE("line metric is invariant under rigid rotation and translation") {
  Rng rng(404);
  std::vector<Vec2> path;
  for (int i = 0; i <= 60; ++i) {
    const double t = i / 60.0;
    path.push_back({t + 0.05 * std::sin(5 * t), 0.3 * t + 0.02 * std::cos(7 * t)});
  }
  const Vec2 start{0.0, 0.0}, goal{1.0, 0.3};
  const double base = *metric_line_r2(path, start, goal);
  for (int trial = 0; trial < 20; ++trial) {
    const double ang = rng.uniform(-3.14, 3.14);
    const Vec2 shift{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    auto rot = [&](const Vec2& p) {
      return Vec2{std::cos(ang) * p.x - std::sin(ang) * p.y + shift.x,
                  std::sin(ang) * p.x + std::cos(ang) * p.y + shift.y};
    };
    std::vector<Vec2> moved;
    for (const auto& p : path) moved.push_back(rot(p));
    CHECK(*metric_line_r2(moved, rot(start), rot(goal)) ==
          doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("gaussian fit recovers planted parameters exactly") {
  std::vector<double> t(101), v(101);
  for (int i = 0; i <= 100; ++i) {
    t[i] = i / 100.0;
    v[i] = gaussian_bump(t[i], 0.42, 0.11, 1.7);
  }
  const auto fit = fit_gaussian_fixed_amplitude(t, v, 1.7);
  CHECK(fit.converged);
  CHECK(std::abs(fit.mu - 0.42) < 1e-6);
  CHECK(std::abs(fit.sigma - 0.11) < 1e-6);
  CHECK(fit.r2 >= 1.0 - 1e-9);

  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const double mu = rng.uniform(0.3, 0.7);
    const double sigma = rng.uniform(0.05, 0.15);
    const double amp = rng.uniform(0.5, 3.0);
    for (int i = 0; i <= 100; ++i) v[i] = gaussian_bump(t[i], mu, sigma, amp);
    const auto f = fit_gaussian_fixed_amplitude(t, v, amp);
    CHECK(std::abs(f.mu - mu) < 1e-6);
    CHECK(std::abs(f.sigma - sigma) < 1e-6);
  }
}

TEST_CASE("bell metric: frozen oracle values for minimum-jerk and triangle profiles") {
  std::vector<double> minjerk(101), triangle(101);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    minjerk[i] = 30 * t * t - 60 * t * t * t + 30 * t * t * t * t;
    triangle[i] = 1.0 - 2.0 * std::abs(t - 0.5);
  }
  const auto r2_minjerk = metric_bell(minjerk);
  const auto r2_triangle = metric_bell(triangle);
  REQUIRE(r2_minjerk.has_value());
  REQUIRE(r2_triangle.has_value());
  // Frozen from the scipy least-squares oracle run before implementation.
  CHECK(*r2_minjerk == doctest::Approx(0.988309546).epsilon(1e-3));
  CHECK(*r2_triangle == doctest::Approx(0.955603818).epsilon(1e-3));
  CHECK(*r2_minjerk > 0.95);
  CHECK(*r2_minjerk > *r2_triangle);
}

TEST_CASE("bell metric is absent when the profile never falls back below 10%") {
  std::vector<double> rising(101);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    rising[i] = gaussian_bump(t, 0.5, 0.15, 1.0);
  }
  for (int i = 60; i <= 100; ++i) rising[i] = 0.5;  // terminal speed stays high
  CHECK_FALSE(metric_bell(rising).has_value());

  const std::vector<double> zeros(101, 0.0);
  CHECK_FALSE(metric_bell(zeros).has_value());

  // Clean bell: the metric equals the windowed fit (composition check).
  std::vector<double> bell(101), t(101);
  for (int i = 0; i <= 100; ++i) {
    t[i] = i / 100.0;
    bell[i] = gaussian_bump(t[i], 0.5, 0.12, 2.0);
  }
  const auto analysis = analyze_bell(bell);
  REQUIRE(analysis.has_value());
  std::vector<double> tw(t.begin() + analysis->onset,
                         t.begin() + analysis->offset + 1);
  std::vector<double> vw(bell.begin() + analysis->onset,
                         bell.begin() + analysis->offset + 1);
  const auto direct = fit_gaussian_fixed_amplitude(tw, vw, analysis->v_max);
  CHECK(*metric_bell(bell) == doctest::Approx(direct.r2).epsilon(1e-12));
}

namespace {

MusclePairSignal crafted_triphasic() {
  MusclePairSignal pair{MusclePair::kElbow, {}, {}};
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    pair.agonist.push_back(gaussian_bump(t, 0.15, 0.05, 0.8) +
                           gaussian_bump(t, 0.75, 0.06, 0.5));
    pair.antagonist.push_back(gaussian_bump(t, 0.45, 0.06, 0.7));
  }
  return pair;
}

MusclePairSignal crafted_biphasic() {
  MusclePairSignal pair{MusclePair::kElbow, {}, {}};
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    pair.agonist.push_back(gaussian_bump(t, 0.2, 0.06, 0.8));
    pair.antagonist.push_back(gaussian_bump(t, 0.6, 0.06, 0.7));
  }
  return pair;
}

}  // namespace

TEST_CASE("triphasic metric: crafted signals match the reference scan") {
  // Expected scores validated by an independent Python scan of the same rule
  // before this implementation was written.
  int phases = 0;
  CHECK(metric_triphasic(crafted_triphasic(), TriphasicDelta::kSlopeDifference,
                         &phases) == 1);
  CHECK(phases >= 3);
  CHECK(metric_triphasic(crafted_biphasic()) == 0);

  MusclePairSignal constant{MusclePair::kShoulder, std::vector<double>(101, 0.3),
                            std::vector<double>(101, 0.3)};
  CHECK(metric_triphasic(constant) == 0);
}

TEST_CASE("triphasic metric is invariant to uniform activation scaling") {
  const auto base = crafted_triphasic();
  for (double gamma : {0.05, 0.5, 3.0}) {
    MusclePairSignal scaled = base;
    for (double& v : scaled.agonist) v *= gamma;
    for (double& v : scaled.antagonist) v *= gamma;
    CHECK(metric_triphasic(scaled) == 1);
  }
}

TEST_CASE("fitts fit: exact line, degenerate variance, few IDs") {
  const std::vector<std::pair<double, double>> line{
      {2.0, 0.4}, {3.0, 0.6}, {4.0, 0.8}, {5.0, 1.0}};
  const auto fit = fitts_fit(line);
  REQUIRE(fit.has_value());
  CHECK(std::abs(fit->slope - 0.2) < 1e-12);
  CHECK(std::abs(fit->intercept - 0.0) < 1e-12);
  REQUIRE(fit->r_f.has_value());
  CHECK(*fit->r_f == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<std::pair<double, double>> flat{
      {2.0, 0.5}, {3.0, 0.5}, {4.0, 0.5}};
  const auto flat_fit = fitts_fit(flat);
  REQUIRE(flat_fit.has_value());
  CHECK_FALSE(flat_fit->r_f.has_value());
  CHECK(flat_fit->slope == doctest::Approx(0.0));

  const std::vector<std::pair<double, double>> two{{2.0, 0.4}, {3.0, 0.6}};
  CHECK_FALSE(fitts_fit(two).has_value());
}

TEST_CASE("fitts fit beats a brute-force grid search on random instances") {
  Rng rng(252);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::pair<double, double>> pts;
    for (double id : {2.0, 3.5, 5.0})
      pts.emplace_back(id, rng.uniform(0.2, 2.0));
    const auto fit = fitts_fit(pts);
    REQUIRE(fit.has_value());
    auto sse = [&pts](double a, double b) {
      double acc = 0.0;
      for (const auto& [x, y] : pts) acc += (y - a - b * x) * (y - a - b * x);
      return acc;
    };
    const double best = sse(fit->intercept, fit->slope);
    for (int ia = -20; ia <= 20; ++ia)
      for (int ib = -20; ib <= 20; ++ib)
        CHECK(best <= sse(fit->intercept + ia * 0.05, fit->slope + ib * 0.05) + 1e-12);
  }
}
