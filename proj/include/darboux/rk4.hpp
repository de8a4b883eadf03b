#pragma once

#include <cstddef>

namespace darboux {

/// One classical RK4 step for y' = rhs(t, y). State must support y + s * k and
/// k1 + k2 style arithmetic.
template <typename State, typename Rhs>
State rk4_step(const Rhs& rhs, double t, const State& y, double dt) {
  const State k1 = rhs(t, y);
  const State k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1);
  const State k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2);
  const State k4 = rhs(t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace darboux
