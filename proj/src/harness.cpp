#include "mutsel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "mutsel/analytics.hpp"
#include "mutsel/ctmc.hpp"
#include "mutsel/errors.hpp"
#include "mutsel/flow.hpp"
#include "mutsel/pdmp.hpp"
#include "mutsel/rng.hpp"
#include "mutsel/stats.hpp"

namespace mutsel {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Passed:
      return "pass";
    case CheckStatus::Failed:
      return "fail";
    case CheckStatus::Skipped:
      return "skip";
  }
  return "?";
}

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CheckReport mc_report(std::string name, const ModelParams& p, std::string grid, double mean,
                      double se, double target, double z, double wall) {
  CheckReport r;
  r.name = std::move(name);
  r.params = p;
  r.grid = std::move(grid);
  r.mean = mean;
  r.se = se;
  r.target = target;
  r.tolerance = z * se;
  r.z = z;
  r.status = std::fabs(mean - target) <= r.tolerance ? CheckStatus::Passed : CheckStatus::Failed;
  r.wall_seconds = wall;
  return r;
}

CheckReport skip_report(std::string name, const ModelParams& p, std::string grid,
                        std::string why) {
  CheckReport r;
  r.name = std::move(name);
  r.params = p;
  r.grid = std::move(grid);
  r.status = CheckStatus::Skipped;
  r.note = std::move(why);
  return r;
}

double combined_se(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

CheckReport check_moment_duality_R(const ModelParams& p, double y0, std::int64_t n, double t,
                                   std::int64_t reps, std::uint64_t seed, double z) {
  Timer timer;
  const MonteCarloEstimate est = sample_R_functional(p, y0, n, t, reps, kDefaultCap, seed);
  const double target = std::pow(flow(p, y0, t), static_cast<double>(n));
  return mc_report("moment_duality_R", p,
                   "y0=" + fmt(y0) + ";n=" + std::to_string(n) + ";t=" + fmt(t), est.mean,
                   est.std_error, target, z, timer.seconds());
}

std::vector<CheckReport> check_martingale(const ModelParams& p, std::int64_t n,
                                          const std::vector<double>& times, std::int64_t reps,
                                          std::uint64_t seed, double z) {
  if (times.empty()) throw std::invalid_argument("check_martingale needs a nonempty time list");
  const double y_bar = equilibria(p).y_bar;
  const double target = std::pow(y_bar, static_cast<double>(n));
  std::vector<CheckReport> out;
  out.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    Timer timer;
    const MonteCarloEstimate est = sample_R_functional(p, y_bar, n, times[i], reps, kDefaultCap,
                                                       substream_seed(seed, i));
    out.push_back(mc_report("martingale", p, "n=" + std::to_string(n) + ";r=" + fmt(times[i]),
                            est.mean, est.std_error, target, z, timer.seconds()));
  }
  return out;
}

CheckReport check_siegmund(const ModelParams& p, std::int64_t n, std::int64_t m, double t,
                           std::int64_t reps, std::uint64_t seed, double z) {
  Timer timer;
  const MonteCarloEstimate l_side = estimate_L_tail(p, n, m, t, reps, substream_seed(seed, 0));
  const MonteCarloEstimate d_side =
      estimate_D_cdf_at(p, m, n, t, reps, kDefaultCap, substream_seed(seed, 1));
  CheckReport r = mc_report(
      "siegmund_duality", p,
      "n=" + std::to_string(n) + ";m=" + std::to_string(m) + ";t=" + fmt(t), l_side.mean,
      combined_se(l_side.std_error, d_side.std_error), d_side.mean, z, timer.seconds());
  return r;
}

CheckReport check_L_D_tail_absorption(const ModelParams& p, std::int64_t n, std::int64_t reps,
                                      std::uint64_t seed, double z, std::int64_t cap,
                                      double horizon) {
  const std::string grid = "n=" + std::to_string(n);
  if (classify_L_regime(p) != LRegime::PositiveRecurrent)
    return skip_report("L_D_tail_absorption", p, grid, "outside the positive recurrent regime");
  Timer timer;
  const MonteCarloEstimate est = estimate_D_absorb_one(p, n + 1, reps, cap, horizon, seed);
  return mc_report("L_D_tail_absorption", p, grid, est.mean, est.std_error, tail_a(p, n), z,
                   timer.seconds());
}

CheckReport check_stationary_geometric(const ModelParams& p, std::int64_t n_samples,
                                       std::uint64_t seed, double tv_tol) {
  const std::string grid_base = "n_samples=" + std::to_string(n_samples);
  if (classify_L_regime(p) != LRegime::PositiveRecurrent)
    return skip_report("stationary_geometric", p, grid_base,
                       "outside the positive recurrent regime");
  Timer timer;
  const double geo = geometric_p(p);
  // Lump the tail where the geometric tail mass drops below 1e-4.
  std::int64_t n_tv = 1;
  while (n_tv < 400 && std::pow(geo, static_cast<double>(n_tv)) >= 1e-4) ++n_tv;
  const StationarySample sample = sample_L_stationary(
      p, default_stationary_burn_in(p), n_samples, default_stationary_spacing(p), seed);
  std::vector<double> counts(static_cast<std::size_t>(n_tv) + 1, 0.0);  // [n_tv] = lumped tail
  for (std::int64_t state : sample.states) {
    if (state <= n_tv)
      counts[static_cast<std::size_t>(state - 1)] += 1.0;
    else
      counts.back() += 1.0;
  }
  const double total = static_cast<double>(sample.states.size());
  double tv = 0.0;
  for (std::int64_t k = 1; k <= n_tv; ++k) {
    const double pmf = (1.0 - geo) * std::pow(geo, static_cast<double>(k - 1));
    tv += std::fabs(counts[static_cast<std::size_t>(k - 1)] / total - pmf);
  }
  tv += std::fabs(counts.back() / total - std::pow(geo, static_cast<double>(n_tv)));
  tv *= 0.5;
  CheckReport r = mc_report("stationary_geometric", p,
                            grid_base + ";n_tv=" + std::to_string(n_tv), tv, 0.0, 0.0, 0.0,
                            timer.seconds());
  r.tolerance = tv_tol;
  r.status = tv <= tv_tol ? CheckStatus::Passed : CheckStatus::Failed;
  return r;
}

CheckReport check_pdmp_duality(const ModelParams& p, double y0, std::int64_t n, double t,
                               std::int64_t reps, std::uint64_t seed, double z) {
  Timer timer;
  const MonteCarloEstimate pdmp_side =
      estimate_pdmp_moment(p, y0, n, t, reps, substream_seed(seed, 0));
  const MonteCarloEstimate l_side =
      sample_L_functional(p, y0, n, t, reps, substream_seed(seed, 1));
  return mc_report("pdmp_duality", p,
                   "y0=" + fmt(y0) + ";n=" + std::to_string(n) + ";t=" + fmt(t), pdmp_side.mean,
                   combined_se(pdmp_side.std_error, l_side.std_error), l_side.mean, z,
                   timer.seconds());
}

CheckReport check_pdmp_absorption(const ModelParams& p, double y0, std::int64_t reps,
                                  std::uint64_t seed, double z) {
  const std::string grid = "y0=" + fmt(y0);
  if (!(p.nu0 > 0.0 && p.nu0 < 1.0))
    return skip_report("pdmp_absorption", p, grid, "needs nu0 strictly between 0 and 1");
  Timer timer;
  const MonteCarloEstimate est =
      estimate_pdmp_absorb_one(p, y0, reps, default_pdmp_horizon(p), seed);
  return mc_report("pdmp_absorption", p, grid, est.mean, est.std_error, g_infinity(p, y0), z,
                   timer.seconds());
}

CheckReport check_monotone_coupling(const ModelParams& p_low, const ModelParams& p_high,
                                    double horizon, std::int64_t paths, std::uint64_t seed,
                                    double z) {
  if (paths < 1) throw std::invalid_argument("paths must be positive");
  Timer timer;
  std::vector<std::pair<std::int64_t, std::int64_t>> finals;
  finals.reserve(static_cast<std::size_t>(paths));
  for (std::int64_t i = 0; i < paths; ++i) {
    const auto pair =
        simulate_coupled_L(p_low, p_high, horizon, substream_seed(seed, static_cast<std::uint64_t>(i)));
    finals.emplace_back(pair.first.final_state.count(), pair.second.final_state.count());
  }
  // Every event already passed the hard in-simulator order assertion; the
  // functional ordering below is the statistical half of the check.
  const double y0s[] = {0.25, 0.5, 0.75};
  bool ordered = true;
  std::string note;
  for (double y0 : y0s) {
    RunningStats lo;
    RunningStats hi;
    for (const auto& f : finals) {
      lo.add(std::pow(y0, static_cast<double>(f.first)));
      hi.add(std::pow(y0, static_cast<double>(f.second)));
    }
    const double slack = z * combined_se(lo.std_error(), hi.std_error());
    const double margin = hi.mean() - lo.mean();
    if (margin < -slack) ordered = false;
    if (!note.empty()) note += " ";
    note += "margin(y0=" + fmt(y0) + ")=" + fmt(margin);
  }
  CheckReport r;
  r.name = "monotone_coupling";
  r.params = p_low;
  r.grid = "nu0_low=" + fmt(p_low.nu0) + ";nu0_high=" + fmt(p_high.nu0) +
           ";horizon=" + fmt(horizon) + ";paths=" + std::to_string(paths);
  r.mean = 1.0;  // fraction of paths with the pathwise order intact
  r.target = 1.0;
  r.z = z;
  r.status = ordered ? CheckStatus::Passed : CheckStatus::Failed;
  r.note = note;
  r.wall_seconds = timer.seconds();
  return r;
}

CheckReport check_rate_swap(const ModelParams& p, std::int64_t m0, double t, std::int64_t reps,
                            std::uint64_t seed, double tv_tol) {
  const std::string grid = "m0=" + std::to_string(m0) + ";t=" + fmt(t);
  if (p.s == 0.0 && p.nu0 == 0.0)
    return skip_report("rate_swap_tv", p, grid, "swapped parameters undefined when s=0 and nu0=0");
  Timer timer;
  const ModelParams swapped = swapped_params(p);
  const std::int64_t sentinel = std::numeric_limits<std::int64_t>::max();
  std::map<std::int64_t, std::int64_t> swapped_hist;
  std::map<std::int64_t, std::int64_t> d_hist;
  for (std::int64_t i = 0; i < reps; ++i) {
    const std::uint64_t sub = substream_seed(seed, static_cast<std::uint64_t>(i));
    const CtmcPath r_path = simulate_R(swapped, m0 - 1, t, kDefaultCap, substream_seed(sub, 0));
    const CtmcPath d_path = simulate_D(p, m0, t, kDefaultCap, substream_seed(sub, 1));
    ++swapped_hist[r_path.final_state.is_delta() ? sentinel : r_path.final_state.count()];
    ++d_hist[d_path.final_state.is_delta() ? sentinel : d_path.final_state.count() - 1];
  }
  const double tv = tv_distance(swapped_hist, reps, d_hist, reps);
  CheckReport r = mc_report("rate_swap_tv", p, grid, tv, 0.0, 0.0, 0.0, timer.seconds());
  r.tolerance = tv_tol;
  r.status = tv <= tv_tol ? CheckStatus::Passed : CheckStatus::Failed;
  return r;
}

CheckReport check_R_absorption_equilibrium(const ModelParams& p, std::int64_t n0,
                                           std::int64_t reps, std::uint64_t seed, double z,
                                           std::int64_t cap, double horizon) {
  Timer timer;
  const MonteCarloEstimate est = estimate_R_absorb_zero(p, n0, reps, cap, horizon, seed);
  return mc_report("R_absorption_equilibrium", p, "n0=" + std::to_string(n0), est.mean,
                   est.std_error, w_n(p, n0), z, timer.seconds());
}

CheckReport check_null_recurrent_trend(const ModelParams& p, std::int64_t reps,
                                       std::uint64_t seed) {
  const std::string grid = "r=10|40|160;level=5";
  if (classify_L_regime(p) != LRegime::NullRecurrent)
    return skip_report("null_recurrent_trend", p, grid, "outside the null recurrent regime");
  Timer timer;
  const double times[] = {10.0, 40.0, 160.0};
  double est[3];
  std::string note;
  for (int i = 0; i < 3; ++i) {
    est[i] = estimate_L_tail(p, 1, 6, times[i], reps, substream_seed(seed, i)).mean;
    if (!note.empty()) note += " ";
    note += "P(L_" + fmt(times[i]) + ">5)=" + fmt(est[i]);
  }
  CheckReport r;
  r.name = "null_recurrent_trend";
  r.params = p;
  r.grid = grid;
  r.mean = std::min(est[1] - est[0], est[2] - est[1]);  // smallest successive increase
  r.target = 0.0;
  r.status = r.mean > 0.0 ? CheckStatus::Passed : CheckStatus::Failed;
  r.note = note;
  r.wall_seconds = timer.seconds();
  return r;
}

SuiteConfig default_suite_config(std::uint64_t seed) {
  SuiteConfig cfg;
  cfg.seed = seed;
  SuiteRow with_killing;
  with_killing.params = validate_params(1.0, 0.3, 0.2);
  with_killing.stationary_samples = 400000;  // p near 1 needs more mass in the tail
  SuiteRow without_killing;
  without_killing.params = validate_params(1.0, 3.0, 0.0);
  without_killing.stationary_samples = 100000;
  cfg.rows = {with_killing, without_killing};
  CouplingSpec coupling;
  coupling.low = validate_params(1.0, 0.3, 0.1);
  coupling.high = validate_params(1.0, 0.3, 0.3);
  cfg.couplings = {coupling};
  return cfg;
}

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  std::vector<CheckReport> out;
  std::uint64_t slot = 0;
  const auto next_seed = [&config, &slot] { return substream_seed(config.seed, slot++); };
  for (const SuiteRow& row : config.rows) {
    const ModelParams& p = row.params;
    out.push_back(check_moment_duality_R(p, 0.6, 1, 1.0, row.reps, next_seed(), config.z));
    out.push_back(check_moment_duality_R(p, 0.9, 2, 0.5, row.reps, next_seed(), config.z));
    std::vector<CheckReport> mart =
        check_martingale(p, 1, {0.5, 1.0, 2.0, 5.0}, row.reps, next_seed(), config.z);
    out.insert(out.end(), mart.begin(), mart.end());
    out.push_back(check_siegmund(p, 2, 3, 1.0, row.reps, next_seed(), config.z));
    out.push_back(check_L_D_tail_absorption(p, 1, row.reps, next_seed(), config.z));
    out.push_back(check_L_D_tail_absorption(p, 2, row.reps, next_seed(), config.z));
    out.push_back(check_stationary_geometric(p, row.stationary_samples, next_seed()));
    out.push_back(check_pdmp_duality(p, 0.6, 2, 1.0, row.reps, next_seed(), config.z));
    out.push_back(check_pdmp_absorption(p, 0.5, row.reps, next_seed(), config.z));
    out.push_back(check_rate_swap(p, 2, 1.0, row.reps, next_seed()));
    out.push_back(check_R_absorption_equilibrium(p, 1, row.reps, next_seed(), config.z));
    out.push_back(check_null_recurrent_trend(p, row.trend_reps, next_seed()));
  }
  for (const CouplingSpec& c : config.couplings)
    out.push_back(check_monotone_coupling(c.low, c.high, c.horizon, c.paths, next_seed(),
                                          config.z));
  return out;
}

}  // namespace mutsel
