#include "mutsel/ctmc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mutsel/errors.hpp"
#include "mutsel/rng.hpp"

namespace mutsel {

std::string to_string(Terminal t) {
  switch (t) {
    case Terminal::AbsorbedZero:
      return "AbsorbedZero";
    case Terminal::AbsorbedDelta:
      return "AbsorbedDelta";
    case Terminal::AbsorbedOne:
      return "AbsorbedOne";
    case Terminal::CapReached:
      return "CapReached";
    case Terminal::HorizonReached:
      return "HorizonReached";
  }
  return "?";
}

namespace {

void require_horizon(double horizon) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("horizon must be finite and nonnegative");
}

struct FullRecord {
  std::vector<CtmcEvent>* out;
  void operator()(double t, ExtendedCount state, EventKind kind) {
    out->push_back(CtmcEvent{t, state, kind});
  }
};

struct NoRecord {
  void operator()(double, ExtendedCount, EventKind) {}
};

struct RunResult {
  Terminal terminal;
  double end_time;
  ExtendedCount final_state;
};

// The three cores below are the single source of each chain's dynamics; the
// public path builders and the Monte Carlo estimators differ only in the
// recorder they pass in. Category thresholds test `nu == 0` explicitly so
// that transitions with rate exactly zero are unreachable, not merely
// improbable under rounding.

template <class Rec>
RunResult run_R(const ModelParams& p, std::int64_t n0, double horizon, std::int64_t cap,
                Xoshiro256pp& gen, Rec&& rec) {
  std::int64_t k = n0;
  if (k == 0) return {Terminal::AbsorbedZero, 0.0, ExtendedCount(0)};
  if (k >= cap) return {Terminal::CapReached, 0.0, ExtendedCount(k)};
  const double unit = p.s + p.u;
  const double p_branch = p.s / unit;
  const double p_prune = p.u * p.nu1 / unit;
  double t = 0.0;
  for (;;) {
    const double dt = exponential(gen, static_cast<double>(k) * unit);
    if (t + dt > horizon) return {Terminal::HorizonReached, horizon, ExtendedCount(k)};
    t += dt;
    const double v = uniform_unit(gen);
    if (v < p_branch) {
      ++k;
      rec(t, ExtendedCount(k), EventKind::Branch);
      if (k >= cap) return {Terminal::CapReached, t, ExtendedCount(k)};
    } else if (p.nu0 == 0.0 || v < p_branch + p_prune) {
      --k;
      if (k == 0) {
        rec(t, ExtendedCount(0), EventKind::Absorb);
        return {Terminal::AbsorbedZero, t, ExtendedCount(0)};
      }
      rec(t, ExtendedCount(k), EventKind::DeleteriousPrune);
    } else {
      rec(t, ExtendedCount::delta(), EventKind::Absorb);
      return {Terminal::AbsorbedDelta, t, ExtendedCount::delta()};
    }
  }
}

// L thinned to its effective events: of the n(s+u) event rate, deleterious
// and beneficial arrows at the top level change nothing, so the waiting time
// to the next state change is Exponential(ns + (n-1)u) and, given a change,
// it is a branch w.p. ns/(ns+(n-1)u), a prune w.p. (n-1)u*nu1/(...), or a
// cut to a level uniform on {1..n-1} w.p. (n-1)u*nu0/(...). Distributionally
// identical to simulating every arrow, without the no-op churn.
template <class Rec>
RunResult run_L(const ModelParams& p, std::int64_t n0, double horizon, Xoshiro256pp& gen,
                Rec&& rec) {
  std::int64_t n = n0;
  double t = 0.0;
  for (;;) {
    const double eff =
        static_cast<double>(n) * p.s + static_cast<double>(n - 1) * p.u;
    if (eff == 0.0) return {Terminal::AbsorbedOne, t, ExtendedCount(1)};  // n=1 and s=0
    const double dt = exponential(gen, eff);
    if (t + dt > horizon) return {Terminal::HorizonReached, horizon, ExtendedCount(n)};
    t += dt;
    const double p_branch = static_cast<double>(n) * p.s / eff;
    const double p_prune = static_cast<double>(n - 1) * p.u * p.nu1 / eff;
    const double v = uniform_unit(gen);
    if (v < p_branch) {
      ++n;
      rec(t, ExtendedCount(n), EventKind::Branch);
    } else if (p.nu0 == 0.0 || v < p_branch + p_prune) {
      --n;
      if (n == 1 && p.s == 0.0) {
        rec(t, ExtendedCount(1), EventKind::Absorb);
        return {Terminal::AbsorbedOne, t, ExtendedCount(1)};
      }
      rec(t, ExtendedCount(n), EventKind::DeleteriousPrune);
    } else {
      n = uniform_level(gen, n - 1);
      if (n == 1 && p.s == 0.0) {
        rec(t, ExtendedCount(1), EventKind::Absorb);
        return {Terminal::AbsorbedOne, t, ExtendedCount(1)};
      }
      rec(t, ExtendedCount(n), EventKind::BeneficialKillOrCut);
    }
  }
}

template <class Rec>
RunResult run_D(const ModelParams& p, std::int64_t m0, double horizon, std::int64_t cap,
                Xoshiro256pp& gen, Rec&& rec) {
  std::int64_t d = m0;
  if (d == 1) return {Terminal::AbsorbedOne, 0.0, ExtendedCount(1)};
  if (d >= cap) return {Terminal::CapReached, 0.0, ExtendedCount(d)};
  const double unit = p.s + p.u;
  const double p_down = p.s / unit;
  const double p_up = p.u * p.nu1 / unit;
  double t = 0.0;
  for (;;) {
    const double dt = exponential(gen, static_cast<double>(d - 1) * unit);
    if (t + dt > horizon) return {Terminal::HorizonReached, horizon, ExtendedCount(d)};
    t += dt;
    const double v = uniform_unit(gen);
    if (p.s != 0.0 && v < p_down) {
      --d;
      if (d == 1) {
        rec(t, ExtendedCount(1), EventKind::Absorb);
        return {Terminal::AbsorbedOne, t, ExtendedCount(1)};
      }
      rec(t, ExtendedCount(d), EventKind::Branch);
    } else if (p.nu0 == 0.0 || v < p_down + p_up) {
      ++d;
      rec(t, ExtendedCount(d), EventKind::DeleteriousPrune);
      if (d >= cap) return {Terminal::CapReached, t, ExtendedCount(d)};
    } else {
      rec(t, ExtendedCount::delta(), EventKind::Absorb);
      return {Terminal::AbsorbedDelta, t, ExtendedCount::delta()};
    }
  }
}

CtmcPath make_path(Process proc, const ModelParams& p, std::int64_t start) {
  return CtmcPath{proc, p, {}, Terminal::HorizonReached, 0.0, ExtendedCount(start)};
}

void seal(CtmcPath& path, const RunResult& r) {
  path.terminal = r.terminal;
  path.end_time = r.end_time;
  path.final_state = r.final_state;
}

}  // namespace

CtmcPath simulate_R(const ModelParams& p, std::int64_t n0, double horizon, std::int64_t cap,
                    std::uint64_t seed) {
  if (n0 < 0) throw std::invalid_argument("n0 must be nonnegative");
  if (cap < n0) throw std::invalid_argument("cap must be at least n0");
  require_horizon(horizon);
  CtmcPath path = make_path(Process::R, p, n0);
  Xoshiro256pp gen(seed);
  seal(path, run_R(p, n0, horizon, cap, gen, FullRecord{&path.events}));
  return path;
}

CtmcPath simulate_L(const ModelParams& p, std::int64_t n0, double horizon, std::uint64_t seed) {
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  require_horizon(horizon);
  CtmcPath path = make_path(Process::L, p, n0);
  Xoshiro256pp gen(seed);
  seal(path, run_L(p, n0, horizon, gen, FullRecord{&path.events}));
  return path;
}

CtmcPath simulate_D(const ModelParams& p, std::int64_t m0, double horizon, std::int64_t cap,
                    std::uint64_t seed) {
  if (m0 < 1) throw std::invalid_argument("m0 must be at least 1");
  if (cap < m0) throw std::invalid_argument("cap must be at least m0");
  require_horizon(horizon);
  CtmcPath path = make_path(Process::D, p, m0);
  Xoshiro256pp gen(seed);
  seal(path, run_D(p, m0, horizon, cap, gen, FullRecord{&path.events}));
  return path;
}

std::pair<CtmcPath, CtmcPath> simulate_coupled_L(const ModelParams& p_low,
                                                 const ModelParams& p_high, double horizon,
                                                 std::uint64_t seed) {
  if (p_low.s != p_high.s || p_low.u != p_high.u)
    throw std::invalid_argument("coupled chains must share s and u");
  if (p_low.nu0 > p_high.nu0)
    throw std::invalid_argument("p_low must not have the larger nu0");
  require_horizon(horizon);

  const double s = p_low.s;
  const double u = p_low.u;
  const double unit = s + u;
  const double p_sel = s / unit;

  CtmcPath low = make_path(Process::L, p_low, 1);
  CtmcPath high = make_path(Process::L, p_high, 1);

  // Records an effective transition; entering 1 while s = 0 is absorption.
  const auto record = [s](CtmcPath& path, double t, std::int64_t state, EventKind kind) {
    if (state == 1 && s == 0.0) kind = EventKind::Absorb;
    path.events.push_back(CtmcEvent{t, ExtendedCount(state), kind});
  };

  Xoshiro256pp gen(seed);
  std::int64_t big = 1;    // the chain with the smaller nu0 dominates
  std::int64_t small = 1;  // the chain with the larger nu0
  double t = 0.0;
  Terminal terminal = Terminal::HorizonReached;
  double end_time = horizon;

  for (;;) {
    if (s == 0.0 && big == 1) {
      // Both chains sit at 1 and every remaining arrow is a top-level no-op.
      terminal = Terminal::AbsorbedOne;
      end_time = t;
      break;
    }
    const double dt = exponential(gen, static_cast<double>(big) * unit);
    if (t + dt > horizon) break;
    t += dt;
    // Every arrow draws a level so both chains read one shared randomness
    // source; arrows above a chain's current level do not concern it.
    const std::int64_t i = uniform_level(gen, big);
    const double c = uniform_unit(gen);
    if (c < p_sel) {
      ++big;
      record(low, t, big, EventKind::Branch);
      if (i <= small) {
        ++small;
        record(high, t, small, EventKind::Branch);
      }
    } else {
      // Shared mutation mark: deleterious for a chain iff v < its nu1. Since
      // nu1(high nu0) <= nu1(low nu0), the dominated chain sees the arrow as
      // beneficial whenever the dominating one does, and sometimes when it
      // does not — exactly the coin of the coupling.
      const double v = uniform_unit(gen);
      if (v < p_low.nu1) {
        if (i < big) {
          --big;
          record(low, t, big, EventKind::DeleteriousPrune);
        }
      } else if (i < big) {
        big = i;
        record(low, t, big, EventKind::BeneficialKillOrCut);
      }
      if (i <= small) {
        if (v < p_high.nu1) {
          if (i < small) {
            --small;
            record(high, t, small, EventKind::DeleteriousPrune);
          }
        } else if (i < small) {
          small = i;
          record(high, t, small, EventKind::BeneficialKillOrCut);
        }
      }
    }
    if (small > big)
      throw CouplingViolation("coupled line counts out of order at t=" + std::to_string(t));
  }

  low.terminal = terminal;
  low.end_time = end_time;
  low.final_state = ExtendedCount(big);
  high.terminal = terminal;
  high.end_time = end_time;
  high.final_state = ExtendedCount(small);
  return {std::move(low), std::move(high)};
}

MonteCarloEstimate estimate_R_absorb_zero(const ModelParams& p, std::int64_t n0,
                                          std::int64_t reps, std::int64_t cap, double horizon,
                                          std::uint64_t seed) {
  if (reps < 100) throw std::invalid_argument("reps must be at least 100");
  if (n0 < 0) throw std::invalid_argument("n0 must be nonnegative");
  if (cap < n0) throw std::invalid_argument("cap must be at least n0");
  require_horizon(horizon);
  const RAbsorption cls = classify_R_absorption(p);
  MonteCarloEstimate est = mc_estimate(reps, seed, [&](std::uint64_t sub) {
    Xoshiro256pp gen(sub);
    const RunResult r = run_R(p, n0, horizon, cap, gen, NoRecord{});
    switch (r.terminal) {
      case Terminal::AbsorbedZero:
        return 1.0;
      case Terminal::AbsorbedDelta:
      case Terminal::CapReached:  // escaped; conditional on never absorbing, R -> infinity
        return 0.0;
      default:
        break;
    }
    if (cls == RAbsorption::AlwaysZero) return 1.0;   // still running, but 0 is certain
    if (cls == RAbsorption::AlwaysDelta) return 0.0;  // 0 unreachable
    return std::numeric_limits<double>::quiet_NaN();
  });
  if (est.n_excluded * 100 > reps)
    throw IndeterminateFraction("R absorption: " + std::to_string(est.n_excluded) + " of " +
                                std::to_string(reps) +
                                " paths reached the horizon without a certain outcome");
  return est;
}

MonteCarloEstimate sample_R_functional(const ModelParams& p, double y0, std::int64_t n0, double t,
                                       std::int64_t reps, std::int64_t cap, std::uint64_t seed) {
  if (!(y0 >= 0.0 && y0 <= 1.0)) throw std::invalid_argument("y0 must lie in [0,1]");
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  if (n0 < 0) throw std::invalid_argument("n0 must be nonnegative");
  if (cap < n0) throw std::invalid_argument("cap must be at least n0");
  require_horizon(t);
  return mc_estimate(reps, seed, [&](std::uint64_t sub) {
    Xoshiro256pp gen(sub);
    const RunResult r = run_R(p, n0, t, cap, gen, NoRecord{});
    if (r.final_state.is_delta()) return 0.0;
    return std::pow(y0, static_cast<double>(r.final_state.count()));
  });
}

MonteCarloEstimate sample_L_functional(const ModelParams& p, double y0, std::int64_t n0, double t,
                                       std::int64_t reps, std::uint64_t seed) {
  if (!(y0 >= 0.0 && y0 <= 1.0)) throw std::invalid_argument("y0 must lie in [0,1]");
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  require_horizon(t);
  return mc_estimate(reps, seed, [&](std::uint64_t sub) {
    Xoshiro256pp gen(sub);
    const RunResult r = run_L(p, n0, t, gen, NoRecord{});
    return std::pow(y0, static_cast<double>(r.final_state.count()));
  });
}

MonteCarloEstimate estimate_L_tail(const ModelParams& p, std::int64_t n0, std::int64_t m, double t,
                                   std::int64_t reps, std::uint64_t seed) {
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  if (n0 < 1) throw std::invalid_argument("n0 must be at least 1");
  require_horizon(t);
  return mc_estimate(reps, seed, [&](std::uint64_t sub) {
    Xoshiro256pp gen(sub);
    const RunResult r = run_L(p, n0, t, gen, NoRecord{});
    return r.final_state.count() >= m ? 1.0 : 0.0;
  });
}

MonteCarloEstimate estimate_D_cdf_at(const ModelParams& p, std::int64_t m0, std::int64_t n,
                                     double t, std::int64_t reps, std::int64_t cap,
                                     std::uint64_t seed) {
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  if (m0 < 1) throw std::invalid_argument("m0 must be at least 1");
  if (cap <= n) throw std::invalid_argument("cap must exceed n");
  if (cap < m0) throw std::invalid_argument("cap must be at least m0");
  require_horizon(t);
  return mc_estimate(reps, seed, [&](std::uint64_t sub) {
    Xoshiro256pp gen(sub);
    const RunResult r = run_D(p, m0, t, cap, gen, NoRecord{});
    if (r.terminal == Terminal::CapReached) return 0.0;  // above n, and n is below cap
    if (r.final_state.is_delta()) return 0.0;            // Delta counts as above every n
    return r.final_state.count() <= n ? 1.0 : 0.0;
  });
}

MonteCarloEstimate estimate_D_absorb_one(const ModelParams& p, std::int64_t m0, std::int64_t reps,
                                         std::int64_t cap, double horizon, std::uint64_t seed) {
  if (reps < 100) throw std::invalid_argument("reps must be at least 100");
  if (m0 < 1) throw std::invalid_argument("m0 must be at least 1");
  if (cap < m0) throw std::invalid_argument("cap must be at least m0");
  require_horizon(horizon);
  // Horizon-reached paths have a certain outcome in exactly two regimes:
  // without killing and with downward drift (nu0 = 0, u <= s) the chain hits
  // 1 almost surely; without selection it can never move down, so from m0 >= 2
  // it never hits 1 at all.
  const bool certain_one = p.nu0 == 0.0 && p.u <= p.s;
  const bool certain_never = p.s == 0.0;
  MonteCarloEstimate est = mc_estimate(reps, seed, [&](std::uint64_t sub) {
    Xoshiro256pp gen(sub);
    const RunResult r = run_D(p, m0, horizon, cap, gen, NoRecord{});
    switch (r.terminal) {
      case Terminal::AbsorbedOne:
        return 1.0;
      case Terminal::AbsorbedDelta:
      case Terminal::CapReached:
        return 0.0;
      default:
        break;
    }
    if (certain_one) return 1.0;
    if (certain_never) return 0.0;
    return std::numeric_limits<double>::quiet_NaN();
  });
  if (est.n_excluded * 100 > reps)
    throw IndeterminateFraction("D absorption: " + std::to_string(est.n_excluded) + " of " +
                                std::to_string(reps) +
                                " paths reached the horizon without a certain outcome");
  return est;
}

double default_stationary_spacing(const ModelParams& p) { return 10.0 / (p.s + p.u); }

double default_stationary_burn_in(const ModelParams& p) {
  return 5.0 * default_stationary_spacing(p);
}

namespace {

// Recorder that reads the pre-jump state off each transition and emits it at
// every grid time the path has just crossed.
struct GridSampler {
  std::vector<std::int64_t>* out;
  double burn_in;
  double spacing;
  std::int64_t n_samples;
  std::int64_t current = 1;
  std::int64_t next = 0;
  void operator()(double t, ExtendedCount state, EventKind) {
    while (next < n_samples && burn_in + static_cast<double>(next) * spacing < t) {
      out->push_back(current);
      ++next;
    }
    current = state.count();
  }
};

}  // namespace

StationarySample sample_L_stationary(const ModelParams& p, double burn_in, std::int64_t n_samples,
                                     double spacing, std::uint64_t seed) {
  if (classify_L_regime(p) != LRegime::PositiveRecurrent)
    throw WrongRegime("stationary sampling needs the positive recurrent regime");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be positive");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw std::invalid_argument("spacing must be positive and finite");
  if (!(burn_in >= 0.0) || !std::isfinite(burn_in))
    throw std::invalid_argument("burn_in must be nonnegative and finite");

  StationarySample out{p, {}, burn_in, spacing, seed};
  out.states.reserve(static_cast<std::size_t>(n_samples));
  Xoshiro256pp gen(seed);
  GridSampler sampler{&out.states, burn_in, spacing, n_samples, 1, 0};
  const double horizon = burn_in + static_cast<double>(n_samples - 1) * spacing;
  const RunResult r = run_L(p, 1, horizon, gen, sampler);
  while (sampler.next < n_samples) {
    out.states.push_back(r.final_state.count());
    ++sampler.next;
  }
  return out;
}

std::pair<double, double> stationary_tail_probability(const StationarySample& sample,
                                                      std::int64_t m) {
  if (sample.states.empty()) throw std::invalid_argument("empty stationary sample");
  std::vector<double> indicator(sample.states.size());
  double total = 0.0;
  for (std::size_t j = 0; j < indicator.size(); ++j) {
    indicator[j] = sample.states[j] > m ? 1.0 : 0.0;
    total += indicator[j];
  }
  const double mean = total / static_cast<double>(indicator.size());
  return {mean, batch_means_se(indicator)};
}

}  // namespace mutsel
