#ifndef MUTSEL_CTMC_HPP
#define MUTSEL_CTMC_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mutsel/model.hpp"
#include "mutsel/stats.hpp"

namespace mutsel {

// A line count extended by the cemetery symbol Delta, ordered above every
// integer. Delta is stored as the INT64 max sentinel so the natural integer
// order gives n < Delta for all n.
class ExtendedCount {
 public:
  ExtendedCount() : raw_(0) {}
  explicit ExtendedCount(std::int64_t n) : raw_(n) {}
  static ExtendedCount delta() { return ExtendedCount(kDelta); }

  bool is_delta() const { return raw_ == kDelta; }
  std::int64_t count() const { return raw_; }  // callers must check is_delta first

  friend bool operator==(ExtendedCount a, ExtendedCount b) { return a.raw_ == b.raw_; }
  friend auto operator<=>(ExtendedCount a, ExtendedCount b) { return a.raw_ <=> b.raw_; }

 private:
  static constexpr std::int64_t kDelta = std::numeric_limits<std::int64_t>::max();
  std::int64_t raw_;
};

enum class Process { R, L, D };

// Cause of a recorded transition. Branch = selective event, DeleteriousPrune
// = deleterious mutation, BeneficialKillOrCut = beneficial mutation (kill for
// R/D, cut-to-level for L). A transition that lands in an absorbing state is
// recorded as Absorb regardless of its cause; the cause stays recoverable
// from the state change.
enum class EventKind { Branch, DeleteriousPrune, BeneficialKillOrCut, Absorb };

enum class Terminal { AbsorbedZero, AbsorbedDelta, AbsorbedOne, CapReached, HorizonReached };

std::string to_string(Terminal t);

struct CtmcEvent {
  double t;
  ExtendedCount state;  // state after the transition
  EventKind kind;
};

struct CtmcPath {
  Process process;
  ModelParams params;
  std::vector<CtmcEvent> events;
  Terminal terminal;
  double end_time;           // absorption/cap time, or the horizon
  ExtendedCount final_state;
};

// Killed chain R on {0,1,...} + Delta: from k, rate k*s to k+1, k*u*nu1 to
// k-1, k*u*nu0 to Delta. 0 and Delta absorb. Paths reaching `cap` stop with
// CapReached.
CtmcPath simulate_R(const ModelParams& p, std::int64_t n0, double horizon, std::int64_t cap,
                    std::uint64_t seed);

// Lookdown line count L on {1,2,...}: from n, one event clock of rate
// n*(s+u); the event hits level i uniform on {1..n}; a selective event
// branches to n+1, a deleterious mutation prunes to n-1 unless it hits the
// top line, a beneficial mutation cuts down to i (nothing at the top).
// Recorded events are the effective transitions only. When s = 0 state 1 is
// absorbing (terminal AbsorbedOne).
CtmcPath simulate_L(const ModelParams& p, std::int64_t n0, double horizon, std::uint64_t seed);

// Siegmund dual D on {1,2,...} + Delta: from d, rate (d-1)*s to d-1,
// (d-1)*u*nu1 to d+1, (d-1)*u*nu0 to Delta; state 1 absorbs.
CtmcPath simulate_D(const ModelParams& p, std::int64_t m0, double horizon, std::int64_t cap,
                    std::uint64_t seed);

// Coupled pair (L, Lbar) for nu0(low) <= nu0(high), same (s,u), both started
// at 1. Events at levels <= Lbar drive both chains; a deleterious event is
// copied to Lbar with probability nu1(high)/nu1(low) and acts as beneficial
// there otherwise. Maintains Lbar <= L pathwise and throws CouplingViolation
// if that order is ever broken (a bug, not randomness).
std::pair<CtmcPath, CtmcPath> simulate_coupled_L(const ModelParams& p_low,
                                                 const ModelParams& p_high, double horizon,
                                                 std::uint64_t seed);

inline constexpr std::int64_t kDefaultCap = 10000;

// Fraction of R paths absorbed at 0 from n0. CapReached counts as escaped
// (not absorbed); HorizonReached paths count only when the parameter regime
// makes the eventual outcome certain (absorption pattern AlwaysZero or
// AlwaysDelta), otherwise they are excluded. Throws IndeterminateFraction
// when exclusions exceed 1% of reps. reps must be >= 100.
MonteCarloEstimate estimate_R_absorb_zero(const ModelParams& p, std::int64_t n0,
                                          std::int64_t reps, std::int64_t cap, double horizon,
                                          std::uint64_t seed);

// Monte Carlo mean of y0^{R_t} from R_0 = n0, with y0^Delta := 0 and capped
// paths contributing y0^cap (bias below y0^cap).
MonteCarloEstimate sample_R_functional(const ModelParams& p, double y0, std::int64_t n0, double t,
                                       std::int64_t reps, std::int64_t cap, std::uint64_t seed);

// Monte Carlo mean of y0^{L_t} from L_0 = n0.
MonteCarloEstimate sample_L_functional(const ModelParams& p, double y0, std::int64_t n0, double t,
                                       std::int64_t reps, std::uint64_t seed);

// Monte Carlo estimate of P(L_t >= m | L_0 = n0).
MonteCarloEstimate estimate_L_tail(const ModelParams& p, std::int64_t n0, std::int64_t m, double t,
                                   std::int64_t reps, std::uint64_t seed);

// Monte Carlo estimate of P(D_t <= n | D_0 = m0); Delta and capped paths
// count as above n.
MonteCarloEstimate estimate_D_cdf_at(const ModelParams& p, std::int64_t m0, std::int64_t n,
                                     double t, std::int64_t reps, std::int64_t cap,
                                     std::uint64_t seed);

// Fraction of D paths absorbed at 1 from m0; CapReached counts as escaped,
// HorizonReached counts only in regimes with a certain outcome (nu0=0, u<=s
// gives 1; s=0 with nu0>0 gives 0), else excluded with the same 1% rule.
MonteCarloEstimate estimate_D_absorb_one(const ModelParams& p, std::int64_t m0, std::int64_t reps,
                                         std::int64_t cap, double horizon, std::uint64_t seed);

// States of one long L path read at times burn_in + k*spacing,
// k = 0..n_samples-1. Only defined in the positive recurrent regime.
struct StationarySample {
  ModelParams params;
  std::vector<std::int64_t> states;
  double burn_in;
  double spacing;
  std::uint64_t seed;
};

double default_stationary_spacing(const ModelParams& p);  // 10/(s+u)
double default_stationary_burn_in(const ModelParams& p);

StationarySample sample_L_stationary(const ModelParams& p, double burn_in, std::int64_t n_samples,
                                     double spacing, std::uint64_t seed);

// Empirical P(L > m) from a stationary sample, with a batch-means standard
// error (100 batches) that respects the serial correlation of the path.
std::pair<double, double> stationary_tail_probability(const StationarySample& sample,
                                                      std::int64_t m);

}  // namespace mutsel

#endif
