#pragma once

#include <array>
#include <cstddef>

namespace reachlab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const;
};

// Symmetric 2x2 system solve; used for M(q) * qdd = rhs.
struct Mat2 {
  double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;
  double det() const { return a00 * a11 - a01 * a10; }
  Vec2 solve(const Vec2& rhs) const;
};

inline constexpr int kNumMuscles = 6;

// Muscle index map. Three antagonist pairs: monoarticular shoulder (S),
// monoarticular elbow (E), biarticular shoulder-elbow (B).
enum MuscleIndex : int {
  kShoulderFlexor = 0,
  kShoulderExtensor = 1,
  kElbowFlexor = 2,
  kElbowExtensor = 3,
  kBiarticularFlexor = 4,
  kBiarticularExtensor = 5,
};

struct JointLimits {
  double min_rad;
  double max_rad;
};

// Planar 2-link arm in the sagittal plane, shoulder at the origin, +y up.
// theta1 = shoulder angle from the downward vertical (0 = hanging),
// theta2 = elbow interior flexion (0 = straight); positive rotation swings
// the limb toward +x, so the initial pose (0 deg, 90 deg) puts the hand at
// (l2, -l1).
struct ArmParams {
  double l1 = 0.35;               // upper arm length (m)
  double l2 = 0.35;               // forearm length (m)
  double m1 = 2.0;                // link masses (kg)
  double m2 = 1.5;
  double lc1 = 0.175;             // center-of-mass offsets (m)
  double lc2 = 0.175;
  double i1 = 2.0 * 0.35 * 0.35 / 12.0;   // rod inertia about c.o.m.
  double i2 = 1.5 * 0.35 * 0.35 / 12.0;
  double gravity = 9.81;
  double b1 = 0.05;               // joint viscous damping (N m s / rad)
  double b2 = 0.05;
  JointLimits shoulder_limits{-1.0471975511965976, 2.6179938779914944};  // [-60, 150] deg
  JointLimits elbow_limits{0.0, 2.6179938779914944};                     // [0, 150] deg
  double tau_act = 0.01;          // activation time constant (s)
  double tau_deact = 0.04;        // deactivation time constant (s)
  std::array<double, kNumMuscles> f_max{300, 300, 300, 300, 300, 300};
  // Signed constant moment arms (m); flexors positive on their joint.
  std::array<double, kNumMuscles> r_shoulder{0.04, -0.04, 0.0, 0.0, 0.03, -0.03};
  std::array<double, kNumMuscles> r_elbow{0.0, 0.0, 0.04, -0.04, 0.03, -0.03};

  // Throws std::invalid_argument on non-positive lengths/masses/inertias/
  // time constants/forces or on a pair whose moment arms do not oppose.
  void validate() const;
};

struct ArmState {
  Vec2 q;                                    // [theta1, theta2] as (x, y)
  Vec2 qd;
  std::array<double, kNumMuscles> act{};
  double t = 0.0;
};

struct HandState {
  Vec2 p;
  Vec2 v;
  Vec2 a;
};

// First-order activation dynamics, integrated exactly over dt:
//   da/dt = (u - a)/tau,  tau = tau_act if u > a else tau_deact.
// Throws std::invalid_argument if u or act leaves [0,1] (caller clamping bug).
double activation_step(double act, double u, double dt, const ArmParams& params);

// Joint torques from activations: tau_j = sum_i r_ij * act_i * f_max_i.
Vec2 muscle_torques(const std::array<double, kNumMuscles>& act,
                    const ArmParams& params);

Mat2 mass_matrix(const Vec2& q, const ArmParams& params);
Vec2 coriolis_forces(const Vec2& q, const Vec2& qd, const ArmParams& params);
Vec2 gravity_forces(const Vec2& q, const ArmParams& params);

// qdd = M(q)^-1 (tau - C(q,qd)qd - G(q) - B qd). Throws std::runtime_error
// if the result is non-finite.
Vec2 forward_dynamics(const ArmState& state, const Vec2& torques,
                      const ArmParams& params);

// One semi-implicit Euler substep: activations advance exactly, then
// qd += dt*qdd, q += dt*qd, then joint limits clamp q and zero the violating
// velocity component. Pure function of its inputs.
ArmState step(const ArmState& state, const std::array<double, kNumMuscles>& u,
              double dt, const ArmParams& params);

Vec2 hand_position(const Vec2& q, const ArmParams& params);

// Hand position / velocity / acceleration from the joint state and the joint
// accelerations (analytic Jacobian and Jacobian derivative).
HandState hand_state(const ArmState& state, const Vec2& qdd,
                     const ArmParams& params);

// |qd1*tau1| + |qd2*tau2|.
double instantaneous_power(const Vec2& qd, const Vec2& torques);

// Kinetic + potential energy, potential referenced to the hanging pose.
double total_energy(const ArmState& state, const ArmParams& params);

// True if some elbow-positive IK solution for p lies within the joint limits.
bool goal_reachable(const Vec2& p, const ArmParams& params);

}  // namespace reachlab
