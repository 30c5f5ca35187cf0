#include "mutsel/pdmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mutsel/errors.hpp"
#include "mutsel/flow.hpp"
#include "mutsel/rng.hpp"

namespace mutsel {

double hazard_to_zero(const ModelParams& p, double y) {
  if (p.nu1 == 0.0) return 0.0;
  return p.u * p.nu1 * (1.0 - y) / y;
}

double hazard_to_one(const ModelParams& p, double y) {
  if (p.nu0 == 0.0) return 0.0;
  return p.u * p.nu0 * y / (1.0 - y);
}

double total_hazard(const ModelParams& p, double y) {
  return hazard_to_zero(p, y) + hazard_to_one(p, y);
}

namespace {

// Total hazard as a function of time along the flow from y0, tracking the
// largest value met so the caller can assert per-path boundedness.
struct HazardAlongFlow {
  const ModelParams* p;
  double y0;
  double* max_seen;
  double operator()(double tau) const {
    const double h = total_hazard(*p, flow(*p, y0, tau));
    if (h > *max_seen) *max_seen = h;
    return h;
  }
};

double simpson_slice(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const HazardAlongFlow& f, double a, double fa, double b, double fb, double m,
                   double fm, double whole, double eps, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_slice(a, fa, flm, m, fm);
  const double right = simpson_slice(m, fm, frm, b, fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * eps || (b - a) < 1e-13)
    return left + right + delta / 15.0;
  if (depth <= 0)
    throw HazardIntegrationFailure("hazard quadrature did not settle at tolerance 1e-9");
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1);
}

double integrate_segment(const HazardAlongFlow& f, double a, double b) {
  if (b <= a) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson_slice(a, fa, fm, b, fb);
  const double eps = 1e-9 * std::max(std::fabs(whole), 1e-12);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, eps, 48);
}

// Solves acc + integral_a^T f = target for T in [a,b], where the integral
// over the full segment is known to reach the target. Safeguarded Newton
// (the integrand is the derivative) inside a shrinking bisection bracket,
// to absolute time tolerance 1e-10.
double invert_segment(const HazardAlongFlow& f, double a, double b, double need) {
  double lo = a;
  double hi = b;
  double t = 0.5 * (a + b);
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double g = integrate_segment(f, a, t) - need;
    if (g > 0.0)
      hi = t;
    else
      lo = t;
    const double slope = f(t);
    double next = slope > 0.0 ? t - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return 0.5 * (lo + hi);
}

struct MarchResult {
  double lambda;   // accumulated hazard (== target when crossed)
  bool crossed;
  double t_cross;  // crossing time, or t_end when not crossed
  double max_h;
};

// Walks segments of roughly one expected jump time each, accumulating the
// hazard integral until it reaches `target` (pass +inf to integrate all the
// way to t_end). The flow is evaluated in closed form from the origin at
// every quadrature node, so segments introduce no drift error.
MarchResult march_hazard(const ModelParams& p, double y0, double t_end, double target) {
  double max_h = 0.0;
  const HazardAlongFlow f{&p, y0, &max_h};
  double acc = 0.0;
  double t = 0.0;
  for (int guard = 0; t < t_end; ++guard) {
    if (guard > 1000000)
      throw HazardIntegrationFailure("hazard marching exceeded its segment budget");
    const double h_here = total_hazard(p, flow(p, y0, t));
    double b = t_end;
    if (h_here > 0.0 && std::isfinite(h_here)) b = std::min(t + 1.0 / h_here, t_end);
    if (b <= t) b = t_end;
    const double inc = integrate_segment(f, t, b);
    if (acc + inc >= target)
      return {target, true, invert_segment(f, t, b, target - acc), max_h};
    acc += inc;
    t = b;
  }
  return {acc, false, t_end, max_h};
}

void require_probability(double y0) {
  if (!(y0 >= 0.0 && y0 <= 1.0)) throw std::invalid_argument("y0 must lie in [0,1]");
}

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("time must be finite and nonnegative");
}

}  // namespace

double cumulative_hazard(const ModelParams& p, double y0, double t) {
  require_probability(y0);
  require_time(t);
  if (y0 == 0.0 || y0 == 1.0) return 0.0;
  return march_hazard(p, y0, t, std::numeric_limits<double>::infinity()).lambda;
}

double default_pdmp_horizon(const ModelParams& p) {
  if (p.nu0 > 0.0 && p.nu0 < 1.0) {
    const Equilibria eq = equilibria(p);
    const double relax = p.s > 0.0 ? p.s * (*eq.y_star - eq.y_bar) : p.u;
    return 40.0 / relax + 20.0 / total_hazard(p, eq.y_bar);
  }
  return 60.0 / p.u;
}

PdmpPath simulate_pdmp(const ModelParams& p, double y0, double horizon, std::uint64_t seed) {
  require_probability(y0);
  require_time(horizon);
  PdmpPath path{p, y0, {}, PdmpOutcome{}, horizon, 0.0};
  if (y0 == 0.0) {
    path.terminal = {PdmpOutcome::AbsorbedZero, 0.0};
    return path;
  }
  if (y0 == 1.0) {
    path.terminal = {PdmpOutcome::AbsorbedOne, 0.0};
    return path;
  }
  Xoshiro256pp gen(seed);
  const double e_draw = exponential(gen, 1.0);
  const MarchResult m = march_hazard(p, y0, horizon, e_draw);
  path.max_hazard = m.max_h;
  if (!m.crossed) {
    path.terminal = {PdmpOutcome::RunningAtHorizon, flow(p, y0, horizon)};
    return path;
  }
  const double y_jump = flow(p, y0, m.t_cross);
  const double h1 = hazard_to_one(p, y_jump);
  const double h0 = hazard_to_zero(p, y_jump);
  const bool to_one = uniform_unit(gen) < h1 / (h0 + h1);
  path.jumps.push_back(PdmpJump{m.t_cross, to_one ? 1 : 0});
  path.terminal = {to_one ? PdmpOutcome::AbsorbedOne : PdmpOutcome::AbsorbedZero, m.t_cross};
  return path;
}

MonteCarloEstimate estimate_pdmp_absorb_one(const ModelParams& p, double y0, std::int64_t reps,
                                            double horizon, std::uint64_t seed) {
  if (!(p.nu0 > 0.0 && p.nu0 < 1.0))
    throw WrongRegime("pdmp absorption needs nu0 strictly inside (0,1)");
  require_probability(y0);
  require_time(horizon);
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  MonteCarloEstimate est = mc_estimate(reps, seed, [&](std::uint64_t sub) {
    const PdmpPath path = simulate_pdmp(p, y0, horizon, sub);
    switch (path.terminal.kind) {
      case PdmpOutcome::AbsorbedOne:
        return 1.0;
      case PdmpOutcome::AbsorbedZero:
        return 0.0;
      default:
        return std::numeric_limits<double>::quiet_NaN();
    }
  });
  if (est.n_excluded * 1000 > reps)
    throw IndeterminateFraction("pdmp absorption: " + std::to_string(est.n_excluded) + " of " +
                                std::to_string(reps) + " paths still running at the horizon");
  return est;
}

MonteCarloEstimate estimate_pdmp_moment(const ModelParams& p, double y0, std::int64_t n, double t,
                                        std::int64_t reps, std::uint64_t seed) {
  require_probability(y0);
  require_time(t);
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  return mc_estimate(reps, seed, [&](std::uint64_t sub) {
    const PdmpPath path = simulate_pdmp(p, y0, t, sub);
    switch (path.terminal.kind) {
      case PdmpOutcome::AbsorbedOne:
        return 1.0;
      case PdmpOutcome::AbsorbedZero:
        return 0.0;
      default:
        return std::pow(path.terminal.value, static_cast<double>(n));
    }
  });
}

}  // namespace mutsel
