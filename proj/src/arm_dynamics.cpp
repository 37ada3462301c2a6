#include "reachlab/arm_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace reachlab {

double Vec2::norm() const { return std::sqrt(x * x + y * y); }

Vec2 Mat2::solve(const Vec2& rhs) const {
  const double d = det();
  return {(a11 * rhs.x - a01 * rhs.y) / d, (a00 * rhs.y - a10 * rhs.x) / d};
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("ArmParams: " + what);
}

bool finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

}  // namespace

void ArmParams::validate() const {
  require(l1 > 0 && l2 > 0, "link lengths must be positive");
  require(m1 > 0 && m2 > 0, "link masses must be positive");
  require(lc1 > 0 && lc2 > 0, "c.o.m. offsets must be positive");
  require(i1 > 0 && i2 > 0, "link inertias must be positive");
  require(tau_act > 0 && tau_deact > 0, "activation time constants must be positive");
  require(b1 >= 0 && b2 >= 0, "joint damping must be nonnegative");
  require(shoulder_limits.min_rad < shoulder_limits.max_rad, "shoulder limits inverted");
  require(elbow_limits.min_rad < elbow_limits.max_rad, "elbow limits inverted");
  for (double f : f_max) require(f > 0, "f_max must be positive");
  // Pair structure: S pair spans only the shoulder, E pair only the elbow,
  // B pair both joints; within a pair the signed arms oppose on spanned joints.
  require(r_elbow[kShoulderFlexor] == 0 && r_elbow[kShoulderExtensor] == 0,
          "shoulder pair must not span the elbow");
  require(r_shoulder[kElbowFlexor] == 0 && r_shoulder[kElbowExtensor] == 0,
          "elbow pair must not span the shoulder");
  require(r_shoulder[kShoulderFlexor] * r_shoulder[kShoulderExtensor] < 0,
          "shoulder pair arms must oppose");
  require(r_elbow[kElbowFlexor] * r_elbow[kElbowExtensor] < 0,
          "elbow pair arms must oppose");
  require(r_shoulder[kBiarticularFlexor] * r_shoulder[kBiarticularExtensor] < 0 &&
              r_elbow[kBiarticularFlexor] * r_elbow[kBiarticularExtensor] < 0,
          "biarticular pair arms must oppose on both joints");
}

double activation_step(double act, double u, double dt, const ArmParams& params) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("activation_step: stimulation outside [0,1]");
  if (!(act >= 0.0 && act <= 1.0))
    throw std::invalid_argument("activation_step: activation outside [0,1]");
  if (!(dt > 0.0)) throw std::invalid_argument("activation_step: dt must be positive");
  const double tau = u > act ? params.tau_act : params.tau_deact;
  const double next = u + (act - u) * std::exp(-dt / tau);
  return std::clamp(next, 0.0, 1.0);
}

Vec2 muscle_torques(const std::array<double, kNumMuscles>& act,
                    const ArmParams& params) {
  Vec2 tau;
  for (int i = 0; i < kNumMuscles; ++i) {
    const double force = act[i] * params.f_max[i];
    tau.x += params.r_shoulder[i] * force;
    tau.y += params.r_elbow[i] * force;
  }
  return tau;
}

Mat2 mass_matrix(const Vec2& q, const ArmParams& p) {
  const double c2 = std::cos(q.y);
  const double m11 = p.i1 + p.i2 + p.m1 * p.lc1 * p.lc1 +
                     p.m2 * (p.l1 * p.l1 + p.lc2 * p.lc2 + 2.0 * p.l1 * p.lc2 * c2);
  const double m12 = p.i2 + p.m2 * (p.lc2 * p.lc2 + p.l1 * p.lc2 * c2);
  const double m22 = p.i2 + p.m2 * p.lc2 * p.lc2;
  return {m11, m12, m12, m22};
}

Vec2 coriolis_forces(const Vec2& q, const Vec2& qd, const ArmParams& p) {
  const double h = p.m2 * p.l1 * p.lc2 * std::sin(q.y);
  return {-h * qd.y * (2.0 * qd.x + qd.y), h * qd.x * qd.x};
}

Vec2 gravity_forces(const Vec2& q, const ArmParams& p) {
  const double s1 = std::sin(q.x);
  const double s12 = std::sin(q.x + q.y);
  return {p.gravity * ((p.m1 * p.lc1 + p.m2 * p.l1) * s1 + p.m2 * p.lc2 * s12),
          p.gravity * p.m2 * p.lc2 * s12};
}

Vec2 forward_dynamics(const ArmState& state, const Vec2& torques,
                      const ArmParams& params) {
  const Mat2 m = mass_matrix(state.q, params);
  const Vec2 c = coriolis_forces(state.q, state.qd, params);
  const Vec2 g = gravity_forces(state.q, params);
  const Vec2 rhs{torques.x - c.x - g.x - params.b1 * state.qd.x,
                 torques.y - c.y - g.y - params.b2 * state.qd.y};
  const Vec2 qdd = m.solve(rhs);
  if (!finite(qdd)) throw std::runtime_error("forward_dynamics: non-finite accelerations");
  return qdd;
}

namespace {

void clamp_joint(double& q, double& qd, const JointLimits& lim) {
  if (q < lim.min_rad) {
    q = lim.min_rad;
    if (qd < 0.0) qd = 0.0;
  } else if (q > lim.max_rad) {
    q = lim.max_rad;
    if (qd > 0.0) qd = 0.0;
  }
}

}  // namespace

ArmState step(const ArmState& state, const std::array<double, kNumMuscles>& u,
              double dt, const ArmParams& params) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  ArmState next = state;
  for (int i = 0; i < kNumMuscles; ++i)
    next.act[i] = activation_step(state.act[i], u[i], dt, params);
  const Vec2 tau = muscle_torques(next.act, params);
  const Vec2 qdd = forward_dynamics(state, tau, params);
  next.qd = state.qd + qdd * dt;
  next.q = state.q + next.qd * dt;
  clamp_joint(next.q.x, next.qd.x, params.shoulder_limits);
  clamp_joint(next.q.y, next.qd.y, params.elbow_limits);
  next.t = state.t + dt;
  if (!finite(next.q) || !finite(next.qd))
    throw std::runtime_error("step: non-finite state");
  return next;
}

Vec2 hand_position(const Vec2& q, const ArmParams& p) {
  const double a1 = q.x;
  const double a2 = q.x + q.y;
  return {p.l1 * std::sin(a1) + p.l2 * std::sin(a2),
          -p.l1 * std::cos(a1) - p.l2 * std::cos(a2)};
}

HandState hand_state(const ArmState& state, const Vec2& qdd, const ArmParams& p) {
  const double a1 = state.q.x;
  const double a2 = state.q.x + state.q.y;
  const double w1 = state.qd.x;            // absolute angular rates
  const double w2 = state.qd.x + state.qd.y;
  const double e1 = qdd.x;
  const double e2 = qdd.x + qdd.y;
  const Vec2 d1{std::sin(a1), -std::cos(a1)};
  const Vec2 d2{std::sin(a2), -std::cos(a2)};
  const Vec2 t1{std::cos(a1), std::sin(a1)};   // d/da of direction
  const Vec2 t2{std::cos(a2), std::sin(a2)};
  HandState hand;
  hand.p = d1 * p.l1 + d2 * p.l2;
  hand.v = t1 * (p.l1 * w1) + t2 * (p.l2 * w2);
  // a = J qdd + Jdot qd; the centripetal term points along -d.
  hand.a = t1 * (p.l1 * e1) + t2 * (p.l2 * e2) - d1 * (p.l1 * w1 * w1) -
           d2 * (p.l2 * w2 * w2);
  return hand;
}

double instantaneous_power(const Vec2& qd, const Vec2& torques) {
  return std::abs(qd.x * torques.x) + std::abs(qd.y * torques.y);
}

double total_energy(const ArmState& state, const ArmParams& p) {
  const Mat2 m = mass_matrix(state.q, p);
  const double kinetic =
      0.5 * (m.a00 * state.qd.x * state.qd.x + 2.0 * m.a01 * state.qd.x * state.qd.y +
             m.a11 * state.qd.y * state.qd.y);
  const double potential =
      (p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * (1.0 - std::cos(state.q.x)) +
      p.m2 * p.lc2 * p.gravity * (1.0 - std::cos(state.q.x + state.q.y));
  return kinetic + potential;
}

bool goal_reachable(const Vec2& p, const ArmParams& params) {
  const double r2 = p.dot(p);
  const double l1 = params.l1, l2 = params.l2;
  const double cos_elbow = (r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
  if (cos_elbow < -1.0 || cos_elbow > 1.0) return false;
  const double elbow = std::acos(cos_elbow);  // interior flexion >= 0
  if (elbow < params.elbow_limits.min_rad || elbow > params.elbow_limits.max_rad)
    return false;
  // Polar angle of the target from the downward vertical, positive toward +x.
  const double polar = std::atan2(p.x, -p.y);
  const double beta = std::atan2(l2 * std::sin(elbow), l1 + l2 * std::cos(elbow));
  const double shoulder = polar - beta;
  return shoulder >= params.shoulder_limits.min_rad &&
         shoulder <= params.shoulder_limits.max_rad;
}

}  // namespace reachlab
