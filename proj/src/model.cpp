#include "mutsel/model.hpp"

#include <algorithm>
#include <cmath>

#include "mutsel/errors.hpp"

namespace mutsel {

ModelParams validate_params(double s, double u, double nu0) {
  // Comparisons are written so NaN falls through to the error branch.
  if (!(s >= 0.0)) throw InvalidParams("s must be nonnegative");
  if (!(u > 0.0)) throw InvalidParams("u must be positive");
  if (!(nu0 >= 0.0 && nu0 <= 1.0)) throw InvalidParams("nu0 must lie in [0,1]");
  return ModelParams{s, u, nu0, 1.0 - nu0};
}

Equilibria equilibrium_roots_unchecked(double s, double u, double nu0) {
  const double nu1 = 1.0 - nu0;
  if (nu0 == 0.0) {
    // Exact pair (min{u/s,1}, max{1,u/s}); the general formula would round.
    const double ratio = u / s;
    return Equilibria{std::min(ratio, 1.0), std::max(1.0, ratio)};
  }
  // Roots of s*y^2 - (u+s)*y + u*nu1. The discriminant is evaluated as
  // (u-s)^2 + 4*s*u*nu0, a sum of nonnegative terms, so it never cancels.
  // The larger root comes from the quadratic formula; the smaller one from
  // the product of roots u*nu1/s, which is stable for small nu0.
  const double b = u + s;
  const double disc = (u - s) * (u - s) + 4.0 * s * u * nu0;
  const double q = 0.5 * (b + std::sqrt(disc));
  return Equilibria{(u * nu1) / q, q / s};
}

Equilibria equilibria(const ModelParams& p) {
  if (p.s == 0.0) return Equilibria{p.nu1, std::nullopt};
  return equilibrium_roots_unchecked(p.s, p.u, p.nu0);
}

LRegime classify_L_regime(const ModelParams& p) {
  if (p.s == 0.0) return LRegime::AbsorbsAtOne;
  if (p.nu0 == 0.0 && p.u < p.s) return LRegime::Transient;
  if (p.nu0 == 0.0 && p.u == p.s) return LRegime::NullRecurrent;
  return LRegime::PositiveRecurrent;
}

RAbsorption classify_R_absorption(const ModelParams& p) {
  if (p.nu0 == 1.0) return RAbsorption::AlwaysDelta;
  if (p.nu0 > 0.0) return RAbsorption::AlwaysZeroOrDelta;
  return p.u < p.s ? RAbsorption::ZeroWithProbLessOne : RAbsorption::AlwaysZero;
}

ModelParams swapped_params(const ModelParams& p) {
  const double s2 = p.u * p.nu1;
  const double u2 = p.s + p.u * p.nu0;
  if (!(u2 > 0.0)) throw InvalidParams("swapped parameters need s + u*nu0 > 0");
  return validate_params(s2, u2, (p.u * p.nu0) / u2);
}

const char* to_string(LRegime r) {
  switch (r) {
    case LRegime::AbsorbsAtOne: return "AbsorbsAtOne";
    case LRegime::Transient: return "Transient";
    case LRegime::NullRecurrent: return "NullRecurrent";
    case LRegime::PositiveRecurrent: return "PositiveRecurrent";
  }
  return "?";
}

const char* to_string(RAbsorption a) {
  switch (a) {
    case RAbsorption::AlwaysDelta: return "AlwaysDelta";
    case RAbsorption::AlwaysZeroOrDelta: return "AlwaysZeroOrDelta";
    case RAbsorption::ZeroWithProbLessOne: return "ZeroWithProbLessOne";
    case RAbsorption::AlwaysZero: return "AlwaysZero";
  }
  return "?";
}

}  // namespace mutsel
