#include "mutsel/flow.hpp"

#include <cmath>
#include <stdexcept>

#include "mutsel/errors.hpp"

namespace mutsel {

double drift(const ModelParams& p, double y) {
  return p.s * y * y - (p.u + p.s) * y + p.u * p.nu1;
}

namespace {

void require_state(double y0, double t) {
  if (!(y0 >= 0.0 && y0 <= 1.0)) throw std::invalid_argument("y0 must lie in [0,1]");
  if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
}

double clamp01(double y) { return y < 0.0 ? 0.0 : (y > 1.0 ? 1.0 : y); }

}  // namespace

double flow(const ModelParams& p, double y0, double t) {
  require_state(y0, t);
  if (t == 0.0) return y0;

  if (p.s == 0.0) {
    // Linear relaxation to nu1 at rate u.
    return clamp01(p.nu1 + (y0 - p.nu1) * std::exp(-p.u * t));
  }

  if (p.nu0 == 0.0 && p.u == p.s) {
    // Double root at 1: dy/dt = s*(y-1)^2. Algebraic decay toward 1;
    // the denominator is >= 1 because y0 <= 1.
    return clamp01(1.0 + (y0 - 1.0) / (1.0 - p.s * (y0 - 1.0) * t));
  }

  const Equilibria eq = equilibria(p);
  const double ybar = eq.y_bar;
  const double ystar = *eq.y_star;
  // Unstable fixed point; only reachable as a start state when it is 1.
  if (y0 == ystar) return ystar;

  // dy/dt = s*(y - ybar)*(y - ystar). The cross-ratio (y-ybar)/(y-ystar)
  // decays as e^{-rt}; solving for y gives the expression below. The
  // denominator is bounded away from 0 for y0 in [0,1] \ {ystar}.
  const double r = p.s * (ystar - ybar);
  const double e = std::exp(-r * t);
  const double a = ystar - y0;
  const double b = ybar - y0;
  return clamp01((ybar * a - ystar * b * e) / (a - b * e));
}

Trajectory integrate_rk4(const ModelParams& p, double y0, double t_end, double h) {
  require_state(y0, t_end);
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");

  Trajectory traj{p, {0.0}, {y0}};
  const double kOvershoot = 1e-12;
  double y = y0;
  // Sample times are k*h (computed by multiplication, not accumulation) with
  // one shorter final step onto t_end when needed.
  const auto n_full = static_cast<long long>(t_end / h);
  double t_prev = 0.0;
  for (long long k = 1;; ++k) {
    double t_next = (k <= n_full) ? static_cast<double>(k) * h : t_end;
    if (t_next > t_end) t_next = t_end;
    const double dt = t_next - t_prev;
    if (dt <= 0.0) break;
    const double k1 = drift(p, y);
    const double k2 = drift(p, y + 0.5 * dt * k1);
    const double k3 = drift(p, y + 0.5 * dt * k2);
    const double k4 = drift(p, y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (y < -kOvershoot || y > 1.0 + kOvershoot)
      throw NumericalInstability("RK4 sample left [0,1] beyond clamp tolerance");
    y = clamp01(y);
    traj.times.push_back(t_next);
    traj.values.push_back(y);
    t_prev = t_next;
    if (t_next >= t_end) break;
  }
  return traj;
}

}  // namespace mutsel
