#pragma once

// Test-only adaptive Cash-Karp RKF45 integrator for the passive arm, used as
// the independent oracle against the fixed-step production integrator.

#include <algorithm>
#include <array>
#include <cmath>

#include "reachlab/arm_dynamics.hpp"

namespace reachlab::testing {

using State4 = std::array<double, 4>;  // q1, q2, qd1, qd2

inline State4 passive_derivative(const State4& y, const ArmParams& params) {
  ArmState s;
  s.q = {y[0], y[1]};
  s.qd = {y[2], y[3]};
  const Vec2 qdd = forward_dynamics(s, {0.0, 0.0}, params);
  return {y[2], y[3], qdd.x, qdd.y};
}

// Integrates the passive (zero-torque) arm from t0 to t_end with adaptive
// step control; no joint limits, matching a free double pendulum.
inline State4 reference_integrate(State4 y, double t0, double t_end,
                                  const ArmParams& params, double tol = 1e-10) {
  double t = t0;
  double h = 1e-4;

  // Cash-Karp tableau.
  constexpr double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
  constexpr double b21 = 1.0 / 5;
  constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
  constexpr double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  constexpr double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
  constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824,
                   b64 = 44275.0 / 110592, b65 = 253.0 / 4096;
  constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                   c6 = 512.0 / 1771;
  constexpr double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384, d4 = 13525.0 / 55296,
                   d5 = 277.0 / 14336, d6 = 1.0 / 4;
  (void)a2; (void)a3; (void)a4; (void)a5; (void)a6;

  auto axpy = [](const State4& base, double s, const State4& k) {
    State4 out;
    for (int i = 0; i < 4; ++i) out[i] = base[i] + s * k[i];
    return out;
  };

  while (t < t_end) {
    h = std::min(h, t_end - t);
    const State4 k1 = passive_derivative(y, params);
    State4 tmp = axpy(y, h * b21, k1);
    const State4 k2 = passive_derivative(tmp, params);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * (b31 * k1[i] + b32 * k2[i]);
    const State4 k3 = passive_derivative(tmp, params);
    for (int i = 0; i < 4; ++i)
      tmp[i] = y[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
    const State4 k4 = passive_derivative(tmp, params);
    for (int i = 0; i < 4; ++i)
      tmp[i] = y[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
    const State4 k5 = passive_derivative(tmp, params);
    for (int i = 0; i < 4; ++i)
      tmp[i] = y[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] + b64 * k4[i] +
                           b65 * k5[i]);
    const State4 k6 = passive_derivative(tmp, params);

    State4 y5, y4;
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      y5[i] = y[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
      y4[i] = y[i] + h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                          d6 * k6[i]);
      err = std::max(err, std::abs(y5[i] - y4[i]));
    }

    if (err <= tol || h <= 1e-12) {
      t += h;
      y = y5;
    }
    const double scale =
        err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
    h *= std::clamp(scale, 0.2, 5.0);
    h = std::max(h, 1e-12);
  }
  return y;
}

}  // namespace reachlab::testing
