#include "mutsel/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "mutsel/ctmc.hpp"
#include "mutsel/errors.hpp"

namespace mutsel {

double w1(const ModelParams& p) { return equilibria(p).y_bar; }

double w_n(const ModelParams& p, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  return std::pow(w1(p), static_cast<double>(n));
}

double geometric_p(const ModelParams& p) {
  if (classify_L_regime(p) != LRegime::PositiveRecurrent)
    throw WrongRegime("geometric_p is defined only in the positive recurrent regime");
  if (p.nu1 == 0.0) return p.s / (p.u + p.s);
  return p.s * equilibria(p).y_bar / (p.u * p.nu1);
}

double breve_ybar(const ModelParams& p) {
  if (p.s == 0.0 && p.nu1 == 0.0)
    throw std::invalid_argument("breve_ybar needs s > 0 or nu1 > 0");
  double breve;
  if (p.nu1 == 0.0) {
    breve = p.s / (p.u + p.s);
  } else if (p.s == 0.0) {
    breve = 0.0;
  } else {
    // Smaller root of u*nu1*y^2 - (u+s)y + s: the discriminant is the same
    // cancellation-free expression as for the original quadratic.
    const double disc = (p.u - p.s) * (p.u - p.s) + 4.0 * p.s * p.u * p.nu0;
    breve = 2.0 * p.s / ((p.u + p.s) + std::sqrt(disc));
  }
  if (classify_L_regime(p) == LRegime::PositiveRecurrent) {
    const double q = geometric_p(p);
    if (!(std::fabs(breve - q) < 1e-12))
      throw NumericalInstability("breve_ybar and geometric_p disagree beyond 1e-12");
  }
  return breve;
}

double tail_a(const ModelParams& p, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  switch (classify_L_regime(p)) {
    case LRegime::AbsorbsAtOne:
      return n == 0 ? 1.0 : 0.0;
    case LRegime::Transient:
    case LRegime::NullRecurrent:
      return 1.0;
    case LRegime::PositiveRecurrent:
      break;
  }
  return std::pow(geometric_p(p), static_cast<double>(n));
}

TailCoefficients tail_coefficients(const ModelParams& p) {
  return TailCoefficients{p, classify_L_regime(p)};
}

double g_infinity(const ModelParams& p, double y0) {
  if (!(y0 >= 0.0 && y0 <= 1.0)) throw std::invalid_argument("y0 must lie in [0,1]");
  if (p.s == 0.0) return y0;
  if (p.nu0 == 0.0 && p.u <= p.s) return y0 < 1.0 ? 0.0 : 1.0;
  const double q = geometric_p(p);
  return (1.0 - q) * y0 / (1.0 - q * y0);
}

MonteCarloEstimate g_finite_mc(const ModelParams& p, double y0, double r, std::int64_t reps,
                               std::uint64_t seed) {
  return sample_L_functional(p, y0, 1, r, reps, seed);
}

double g_at_equilibrium(const ModelParams& p) { return g_infinity(p, equilibria(p).y_bar); }

}  // namespace mutsel
