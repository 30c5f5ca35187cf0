#ifndef MUTSEL_PDMP_HPP
#define MUTSEL_PDMP_HPP

#include <cstdint>
#include <vector>

#include "mutsel/model.hpp"
#include "mutsel/stats.hpp"

namespace mutsel {

struct PdmpJump {
  double t;
  int target;  // 0 or 1
};

struct PdmpOutcome {
  enum Kind { AbsorbedZero, AbsorbedOne, RunningAtHorizon };
  Kind kind = RunningAtHorizon;
  // Absorption time for the absorbed kinds, current state for a path still
  // running at the horizon.
  double value = 0.0;
};

// One realisation of the jump process: deterministic drift along the flow,
// absorbed at its first jump. `jumps` holds at most one entry by
// construction; max_hazard is the largest total jump rate met while
// integrating along the path (finite on any trajectory started in (0,1)).
struct PdmpPath {
  ModelParams params;
  double y0;
  std::vector<PdmpJump> jumps;
  PdmpOutcome terminal;
  double horizon;
  double max_hazard;
};

// Jump rates at state y: to 0 at rate u*nu1*(1-y)/y, to 1 at rate
// u*nu0*y/(1-y). A rate whose nu factor is zero is identically zero, even at
// the boundary the other factor diverges toward.
double hazard_to_zero(const ModelParams& p, double y);
double hazard_to_one(const ModelParams& p, double y);
double total_hazard(const ModelParams& p, double y);

// Integral of the total hazard along the flow started at y0, over [0, t].
// Adaptive Simpson with relative tolerance 1e-9; boundary starts integrate
// to 0. Throws HazardIntegrationFailure when the quadrature cannot settle.
double cumulative_hazard(const ModelParams& p, double y0, double t);

// Horizon long enough that a surviving path has equilibrated (40 relaxation
// times) and then waited out 20 expected jump times at the equilibrium
// hazard. For nu0 in {0,1} jumps need not ever come; a fixed 60/u window is
// returned instead and callers must expect RunningAtHorizon.
double default_pdmp_horizon(const ModelParams& p);

// Drifts along the closed-form flow and jumps when the cumulative hazard
// first exceeds an Exponential(1) draw; the jump target is 1 with
// probability hazard_to_one/total at the jump state. Starts on a boundary
// are absorbed there at t=0.
PdmpPath simulate_pdmp(const ModelParams& p, double y0, double horizon, std::uint64_t seed);

// Fraction of paths absorbed at 1. Requires nu0 in (0,1), where the jump
// comes almost surely; throws WrongRegime otherwise. Paths still running at
// the horizon are excluded and must stay below 0.1% of reps, else
// IndeterminateFraction.
MonteCarloEstimate estimate_pdmp_absorb_one(const ModelParams& p, double y0, std::int64_t reps,
                                            double horizon, std::uint64_t seed);

// Monte Carlo mean of (path state at t)^n: 0 or 1 once jumped, the flow
// value otherwise.
MonteCarloEstimate estimate_pdmp_moment(const ModelParams& p, double y0, std::int64_t n, double t,
                                        std::int64_t reps, std::uint64_t seed);

}  // namespace mutsel

#endif
