#ifndef MUTSEL_ANALYTICS_HPP
#define MUTSEL_ANALYTICS_HPP

#include <cstdint>

#include "mutsel/model.hpp"
#include "mutsel/stats.hpp"

namespace mutsel {

// Probability that the killed chain R started from one line is eventually
// absorbed at 0. Coincides with the stable equilibrium y_bar for every
// parameter combination (nu1 when s = 0).
double w1(const ModelParams& p);

// Absorption probability from n lines: w1^n (lines die independently).
double w_n(const ModelParams& p, std::int64_t n);

// Success parameter of the stationary law of the line count L, which is
// geometric on {1,2,...} with P(L = n) = (1-p) p^{n-1}. Only defined when L
// is positive recurrent; throws WrongRegime otherwise.
double geometric_p(const ModelParams& p);

// Smaller root of the line-count quadratic with the roles of s and u*nu1
// interchanged. Defined whenever s > 0 or nu1 > 0; equals geometric_p in the
// positive recurrent regime (cross-checked internally to 1e-12).
double breve_ybar(const ModelParams& p);

// Limiting tail a_n = lim_r P(L_r > n | L_0 = 1), dispatched by regime:
// geometric p^n when positive recurrent, identically 1 when L drifts to
// infinity (transient or null recurrent), and 0 for n >= 1 when s = 0.
double tail_a(const ModelParams& p, std::int64_t n);

struct TailCoefficients {
  ModelParams params;
  LRegime regime;
  double a(std::int64_t n) const { return tail_a(params, n); }
};

TailCoefficients tail_coefficients(const ModelParams& p);

// Probability that the ancestral line is eventually of the unfit type when
// the forward process sits at y0: s = 0 gives y0; without beneficial
// mutations and u <= s it is 0 for y0 < 1 (and 1 at y0 = 1); otherwise
// (1-p) y0 / (1 - p y0).
double g_infinity(const ModelParams& p, double y0);

// Monte Carlo version at finite backward time r: mean of y0^{L_r} from
// L_0 = 1.
MonteCarloEstimate g_finite_mc(const ModelParams& p, double y0, double r, std::int64_t reps,
                               std::uint64_t seed);

// g_infinity evaluated at the stable equilibrium y_bar; jumps from 0 to 1 at
// u = s when nu0 = 0.
double g_at_equilibrium(const ModelParams& p);

}  // namespace mutsel

#endif
