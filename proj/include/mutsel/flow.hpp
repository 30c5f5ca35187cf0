#ifndef MUTSEL_FLOW_HPP
#define MUTSEL_FLOW_HPP

#include <vector>

#include "mutsel/model.hpp"

namespace mutsel {

// Right-hand side of the type-1 frequency ODE:
//   dy/dt = -s*y*(1-y) - u*nu0*y + u*nu1*(1-y) = s*y^2 - (u+s)*y + u*nu1.
double drift(const ModelParams& p, double y);

// Closed-form solution y(t; y0) of the initial value problem. Branches:
// distinct roots (logistic-type expression in e^{-rt}, r = s*(y_star-y_bar)),
// double root (nu0=0, u=s), and the linear s=0 case. Always evaluated with
// decaying exponentials, so large t degrades gracefully to y_bar.
// Requires y0 in [0,1], t >= 0; the result stays in [0,1].
double flow(const ModelParams& p, double y0, double t);

struct Trajectory {
  ModelParams params;
  std::vector<double> times;
  std::vector<double> values;
};

// Classical fourth-order Runge-Kutta on the same ODE; the independent check
// on flow(). Samples at t = 0, h, 2h, ..., plus t_end when it is not a
// multiple of h. Values are clamped into [0,1] when the overshoot is below
// 1e-12 and rejected with NumericalInstability beyond that.
Trajectory integrate_rk4(const ModelParams& p, double y0, double t_end, double h = 1e-3);

}  // namespace mutsel

#endif
