#ifndef MUTSEL_MODEL_HPP
#define MUTSEL_MODEL_HPP

#include <optional>

namespace mutsel {

// Two-type haploid mutation-selection model. Type 1 (frequency y) carries the
// selective disadvantage s >= 0; mutation fires at rate u > 0 and lands on
// type 0 with probability nu0, on type 1 with probability nu1 = 1 - nu0.
// nu1 is always derived from nu0 so the pair cannot drift apart.
struct ModelParams {
  double s;
  double u;
  double nu0;
  double nu1;

  // Per-line total event rate of the ancestral processes.
  double line_rate() const { return s + u; }
};

// Validates raw reals and builds ModelParams. Throws InvalidParams when
// s < 0, u <= 0, or nu0 outside [0,1] (NaN rejected everywhere).
ModelParams validate_params(double s, double u, double nu0);

// Equilibria of dy/dt = s*y^2 - (u+s)*y + u*nu1 on [0,1].
// y_star is the unstable root > y_bar; absent when s = 0 (linear dynamics).
struct Equilibria {
  double y_bar;
  std::optional<double> y_star;
};

Equilibria equilibria(const ModelParams& p);

// Long-run behaviour of the line-counting chain L.
enum class LRegime {
  AbsorbsAtOne,       // s = 0
  Transient,          // nu0 = 0 and u < s
  NullRecurrent,      // nu0 = 0 and u = s
  PositiveRecurrent,  // s > 0 and (u > s or nu0 > 0)
};

// Absorption pattern of the killed chain R started from a positive state.
enum class RAbsorption {
  AlwaysDelta,          // nu0 = 1: killed almost surely, 0 unreachable
  AlwaysZeroOrDelta,    // nu0 in (0,1): absorbs in {0, Delta} a.s.
  ZeroWithProbLessOne,  // nu0 = 0, u < s: hits 0 w.p. < 1, else grows without bound
  AlwaysZero,           // nu0 = 0, u >= s: hits 0 a.s.
};

LRegime classify_L_regime(const ModelParams& p);
RAbsorption classify_R_absorption(const ModelParams& p);

// Parameter transform interchanging the roles of s and u*nu1: selection rate
// becomes u*nu1, deleterious mutation rate becomes s, beneficial mutation
// rate u*nu0 is kept. Requires s + u*nu0 > 0 (the transformed u must be
// positive). The killed chain under the transformed parameters matches the
// Siegmund dual shifted down by one.
ModelParams swapped_params(const ModelParams& p);

// Equilibrium roots without the u > 0 gate, for figure grids that include
// u = 0 as a boundary column. Requires s > 0, u >= 0, nu0 in [0,1].
Equilibria equilibrium_roots_unchecked(double s, double u, double nu0);

const char* to_string(LRegime r);
const char* to_string(RAbsorption a);

}  // namespace mutsel

#endif
