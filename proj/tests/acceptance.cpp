// Acceptance gate: twelve numbered end-to-end checks, one line of output
// each. Run with no arguments for the full battery or with a single number
// to run one check. Exit status 0 iff every check that ran passed.
//
// Every tolerance is written out literally next to the comparison it guards;
// Monte Carlo checks use a fixed master seed so a pass is reproducible.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "mutsel/analytics.hpp"
#include "mutsel/ctmc.hpp"
#include "mutsel/figures.hpp"
#include "mutsel/flow.hpp"
#include "mutsel/harness.hpp"
#include "mutsel/model.hpp"
#include "mutsel/pdmp.hpp"
#include "mutsel/rng.hpp"

namespace {

using mutsel::CheckReport;
using mutsel::CheckStatus;
using mutsel::ModelParams;

constexpr std::uint64_t kMasterSeed = 0xacce5eed00000001ULL;

std::uint64_t criterion_seed(int n) {
  return mutsel::substream_seed(kMasterSeed, static_cast<std::uint64_t>(n));
}

ModelParams reference_params() { return mutsel::validate_params(1.0, 0.3, 0.2); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void info(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

// --- 1: equilibria satisfy their defining quadratic across the grid -------

Outcome criterion1(std::uint64_t) {
  Outcome out;
  const double ss[] = {0.3, 1.0, 2.5};
  const double us[] = {0.05, 0.3, 1.0, 2.9, 6.0};
  const double nu0s[] = {0.0, 0.25, 0.6, 1.0};
  int points = 0;
  double worst = 0.0;
  for (double s : ss)
    for (double u : us)
      for (double nu0 : nu0s) {
        const ModelParams p = mutsel::validate_params(s, u, nu0);
        const mutsel::Equilibria eq = mutsel::equilibria(p);
        const double y_star = eq.y_star.value();  // s > 0 throughout the grid
        for (double root : {eq.y_bar, y_star}) {
          const double resid = std::fabs(s * root * root - (u + s) * root + u * p.nu1);
          worst = std::max(worst, resid);
          if (resid >= 1e-12) out.fail("residual " + fmt(resid) + " at s=" + fmt(s));
        }
        if (!(eq.y_bar >= 0.0 && eq.y_bar <= 1.0 && eq.y_bar <= y_star))
          out.fail("root ordering broken at s=" + fmt(s) + " u=" + fmt(u));
        if (nu0 == 0.0) {
          if (eq.y_bar != std::min(u / s, 1.0) || y_star != std::max(1.0, u / s))
            out.fail("kink formula not exact at u/s=" + fmt(u / s));
        }
        ++points;
      }
  out.info(std::to_string(points) + " parameter points, max residual " + fmt(worst));
  return out;
}

// --- 2: equilibrium sweep reproduces the kink and its smoothing -----------

Outcome criterion2(std::uint64_t) {
  Outcome out;
  const std::vector<mutsel::Fig2Row> kink = mutsel::fig2_rows(1.0, 0.0, 0.0, 1.4, 15);
  for (const mutsel::Fig2Row& r : kink)
    if (r.y_bar != std::min(r.u_over_s, 1.0) || r.y_star != std::max(1.0, r.u_over_s))
      out.fail("kink row u/s=" + fmt(r.u_over_s) + " not exact");

  const std::vector<mutsel::Fig2Row> smooth = mutsel::fig2_rows(1.0, 0.01, 0.0, 1.4, 15);
  if (smooth.front().y_bar != 0.0 || smooth.front().y_star != 1.0)
    out.fail("u=0 boundary column wrong");
  for (std::size_t i = 1; i < smooth.size(); ++i) {
    if (!(smooth[i].y_bar < 1.0)) out.fail("smoothed lower branch touches 1");
    if (!(smooth[i].y_star > 1.0)) out.fail("smoothed upper branch touches 1");
    if (!(smooth[i].y_bar > smooth[i - 1].y_bar)) out.fail("lower branch not increasing");
  }

  // Spot values against an independently coded quadratic formula.
  for (double u : {0.4, 1.0, 1.2}) {
    const std::vector<mutsel::Fig2Row> one = mutsel::fig2_rows(1.0, 0.01, u, u, 1);
    const double disc = (u - 1.0) * (u - 1.0) + 4.0 * u * 0.01;
    const double q = (u + 1.0 + std::sqrt(disc)) / 2.0;
    if (std::fabs(one[0].y_bar - u * 0.99 / q) > 1e-12) out.fail("spot y_bar off at u=" + fmt(u));
    if (std::fabs(one[0].y_star - q) > 1e-12) out.fail("spot y_star off at u=" + fmt(u));
  }
  const std::vector<mutsel::Fig2Row> at_one = mutsel::fig2_rows(1.0, 0.01, 1.0, 1.0, 1);
  if (std::fabs(at_one[0].y_bar - 0.9) > 1e-12) out.fail("y_bar(u=s, nu0=0.01) != 0.9");
  out.info("15-point sweeps for nu0 in {0, 0.01}, spot checks at u/s in {0.4, 1, 1.2}");
  return out;
}

// --- 3: moment duality between the flow and the killed chain --------------

Outcome criterion3(std::uint64_t seed) {
  Outcome out;
  const ModelParams p = reference_params();
  int passed = 0, total = 0;
  double worst_z = 0.0;
  std::uint64_t idx = 0;
  for (std::int64_t n : {1, 2, 3})
    for (double t : {0.5, 1.0, 2.0})
      for (double y0 : {0.3, 0.6, 0.9}) {
        const mutsel::MonteCarloEstimate est = mutsel::sample_R_functional(
            p, y0, n, t, 100000, mutsel::kDefaultCap, mutsel::substream_seed(seed, idx++));
        const double target = std::pow(mutsel::flow(p, y0, t), static_cast<double>(n));
        const double z = std::fabs(est.mean - target) / est.std_error;
        worst_z = std::max(worst_z, z);
        ++total;
        if (z <= 3.0) ++passed;
      }
  if (passed < total - 1)
    out.fail(std::to_string(total - passed) + " of " + std::to_string(total) + " cells beyond 3 se");
  out.info(std::to_string(passed) + "/" + std::to_string(total) +
           " cells within 3 se (at most 1 may stray), max |z|=" + fmt(worst_z));
  return out;
}

// --- 4: absorption probability of the killed chain matches w_1 ------------

Outcome criterion4(std::uint64_t seed) {
  Outcome out;
  const ModelParams cases[] = {reference_params(), mutsel::validate_params(1.0, 0.3, 0.0),
                               mutsel::validate_params(1.0, 0.8, 0.5)};
  std::uint64_t idx = 0;
  for (const ModelParams& p : cases) {
    const mutsel::MonteCarloEstimate est = mutsel::estimate_R_absorb_zero(
        p, 1, 100000, 256, 200.0, mutsel::substream_seed(seed, idx++));
    const double target = mutsel::w1(p);
    if (std::fabs(est.mean - target) > 3.0 * est.std_error)
      out.fail("nu0=" + fmt(p.nu0) + ": |" + fmt(est.mean) + " - " + fmt(target) + "| > 3 se");
  }
  out.info("3 parameter sets, 100000 paths each, all within 3 se of w_1");
  return out;
}

// --- 5: the equilibrium functional is a martingale in backward time -------

Outcome criterion5(std::uint64_t seed) {
  Outcome out;
  const ModelParams p = reference_params();
  const std::vector<double> times = {0.5, 1.0, 2.0, 5.0};
  double worst_z = 0.0;
  std::uint64_t idx = 0;
  for (std::int64_t n : {1, 2}) {
    const std::vector<CheckReport> rs =
        mutsel::check_martingale(p, n, times, 100000, mutsel::substream_seed(seed, idx++));
    for (const CheckReport& r : rs) {
      worst_z = std::max(worst_z, r.se > 0 ? std::fabs(r.mean - r.target) / r.se : 0.0);
      if (r.status != CheckStatus::Passed) out.fail("n=" + std::to_string(n) + " " + r.grid);
    }
  }
  out.info("8 (n, r) combinations within 3 se, max |z|=" + fmt(worst_z));
  return out;
}

// --- 6: stationary line count is geometric ---------------------------------

Outcome criterion6(std::uint64_t seed) {
  Outcome out;
  struct Row {
    ModelParams p;
    std::int64_t samples;
  };
  const Row rows[] = {{mutsel::validate_params(1.0, 3.0, 0.0), 100000},
                      {reference_params(), 400000}};
  std::uint64_t idx = 0;
  for (const Row& row : rows) {
    const CheckReport r = mutsel::check_stationary_geometric(row.p, row.samples,
                                                             mutsel::substream_seed(seed, idx++));
    if (r.status != CheckStatus::Passed)
      out.fail("nu0=" + fmt(row.p.nu0) + " u=" + fmt(row.p.u) + ": tv=" + fmt(r.mean));
    else
      out.info("tv=" + fmt(r.mean) + " at u=" + fmt(row.p.u));
  }
  out.info("threshold 0.01");
  return out;
}

// --- 7: Siegmund duality between the line count and its dual ---------------

Outcome criterion7(std::uint64_t seed) {
  Outcome out;
  const ModelParams p = reference_params();
  double worst_z = 0.0;
  int cells = 0;
  std::uint64_t idx = 0;
  for (std::int64_t n : {1, 2, 3})
    for (std::int64_t m : {1, 2, 3})
      for (double t : {0.5, 1.0}) {
        const CheckReport r =
            mutsel::check_siegmund(p, n, m, t, 100000, mutsel::substream_seed(seed, idx++));
        if (r.se > 0) worst_z = std::max(worst_z, std::fabs(r.mean - r.target) / r.se);
        ++cells;
        if (r.status != CheckStatus::Passed) out.fail(r.grid + " beyond 3 combined se");
      }
  out.info(std::to_string(cells) + " (n, m, t) cells within 3 combined se, max |z|=" +
           fmt(worst_z));
  return out;
}

// --- 8: rate swap maps the dual onto the killed chain ----------------------

Outcome criterion8(std::uint64_t seed) {
  Outcome out;
  const ModelParams p = reference_params();
  double worst_tv = 0.0;
  std::uint64_t idx = 0;
  for (double t : {0.5, 1.0, 2.0}) {
    const CheckReport r =
        mutsel::check_rate_swap(p, 2, t, 100000, mutsel::substream_seed(seed, idx++));
    worst_tv = std::max(worst_tv, r.mean);
    if (r.status != CheckStatus::Passed) out.fail("t=" + fmt(t) + ": tv=" + fmt(r.mean));
  }
  out.info("max tv=" + fmt(worst_tv) + " over t in {0.5, 1, 2}, threshold 0.02");
  return out;
}

// --- 9: jump process agrees with the line count and with g_infinity --------

Outcome criterion9(std::uint64_t seed) {
  Outcome out;
  const ModelParams p = reference_params();
  int passed = 0, total = 0;
  std::uint64_t idx = 0;
  for (double y0 : {0.3, 0.6, 0.9})
    for (double t : {0.5, 1.0, 2.0}) {
      const CheckReport r =
          mutsel::check_pdmp_duality(p, y0, 2, t, 100000, mutsel::substream_seed(seed, idx++));
      ++total;
      if (r.status == CheckStatus::Passed) ++passed;
    }
  if (passed < total - 1)
    out.fail("duality grid: only " + std::to_string(passed) + "/" + std::to_string(total));
  out.info("duality " + std::to_string(passed) + "/" + std::to_string(total) +
           " cells within 3 combined se (at most 1 may stray)");

  const double y_bar = mutsel::equilibria(p).y_bar;
  for (double y0 : {0.25, y_bar, 0.75}) {
    const CheckReport r =
        mutsel::check_pdmp_absorption(p, y0, 100000, mutsel::substream_seed(seed, idx++));
    if (r.status != CheckStatus::Passed) out.fail("absorption at y0=" + fmt(y0) + " beyond 3 se");
  }
  out.info("absorption matched g_infinity at 3 start points");
  return out;
}

// --- 10: ancestral-type sweep jumps without lethality, smooth with it ------

Outcome criterion10(std::uint64_t) {
  Outcome out;
  const std::vector<mutsel::Fig5Row> jump = mutsel::fig5_rows(1.0, 0.0, 0.0, 1.4, 15);
  for (const mutsel::Fig5Row& r : jump) {
    const double want = r.u_over_s < 1.0 ? 0.0 : 1.0;
    if (r.g_eq != want) out.fail("jump row u/s=" + fmt(r.u_over_s) + " not exact");
  }
  const std::vector<mutsel::Fig5Row> smooth = mutsel::fig5_rows(1.0, 0.01, 0.1, 1.4, 14);
  for (std::size_t i = 0; i < smooth.size(); ++i) {
    if (!(smooth[i].g_eq > 0.0 && smooth[i].g_eq < 1.0))
      out.fail("smooth row u/s=" + fmt(smooth[i].u_over_s) + " on the boundary");
    if (i > 0 && !(smooth[i].g_eq > smooth[i - 1].g_eq))
      out.fail("smooth column not strictly increasing at u/s=" + fmt(smooth[i].u_over_s));
  }
  out.info("15-point jump sweep exact, 14-point smoothed sweep strictly inside (0,1)");
  return out;
}

// --- 11: more lethal mutation yields pathwise-smaller line counts ----------

Outcome criterion11(std::uint64_t seed) {
  Outcome out;
  const ModelParams low = mutsel::validate_params(1.0, 0.3, 0.1);
  const ModelParams high = mutsel::validate_params(1.0, 0.3, 0.3);
  const std::int64_t paths = 10000;
  std::int64_t order_breaks = 0;
  for (std::int64_t i = 0; i < paths; ++i) {
    // simulate_coupled_L throws CouplingViolation if the order ever breaks
    // mid-path; a final-state comparison catches what the invariant missed.
    const auto pair = mutsel::simulate_coupled_L(
        low, high, 50.0, mutsel::substream_seed(seed, static_cast<std::uint64_t>(i)));
    if (pair.second.final_state > pair.first.final_state) ++order_breaks;
  }
  if (order_breaks != 0) out.fail(std::to_string(order_breaks) + " pairs ended out of order");
  out.info(std::to_string(paths) + " coupled pairs, 0 order violations");

  double prev = -1.0;
  for (int k = 1; k <= 19; ++k) {
    const double g =
        mutsel::g_infinity(mutsel::validate_params(1.0, 0.3, 0.05 * k), 0.5);
    if (!(g > prev)) out.fail("g_infinity not increasing at nu0=" + fmt(0.05 * k));
    prev = g;
  }
  out.info("g_infinity strictly increasing over 19 lethality levels");
  return out;
}

// --- 12: g_infinity solves the jump process boundary value problem ---------

Outcome criterion12(std::uint64_t) {
  Outcome out;
  const ModelParams p = reference_params();
  const double h = 1e-6;
  double worst = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double y = 0.1 * k;
    const double g = mutsel::g_infinity(p, y);
    const double dg = (mutsel::g_infinity(p, y + h) - mutsel::g_infinity(p, y - h)) / (2.0 * h);
    const double resid = std::fabs(mutsel::drift(p, y) * dg +
                                   mutsel::hazard_to_one(p, y) * (1.0 - g) -
                                   mutsel::hazard_to_zero(p, y) * g);
    worst = std::max(worst, resid);
    if (resid >= 1e-5) out.fail("generator residual " + fmt(resid) + " at y=" + fmt(y));
  }
  out.info("9 interior points, max residual " + fmt(worst) + " < 1e-5");
  return out;
}

struct Criterion {
  int number;
  Outcome (*run)(std::uint64_t);
  double budget_seconds;
};

const Criterion kCriteria[] = {
    {1, criterion1, 5.0},   {2, criterion2, 5.0},   {3, criterion3, 120.0},
    {4, criterion4, 60.0},  {5, criterion5, 60.0},  {6, criterion6, 120.0},
    {7, criterion7, 120.0}, {8, criterion8, 60.0},  {9, criterion9, 120.0},
    {10, criterion10, 5.0}, {11, criterion11, 60.0}, {12, criterion12, 5.0},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 2) {
    std::fprintf(stderr, "usage: %s [criterion 1..12]\n", argv[0]);
    return 2;
  }
  if (argc == 2) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 12) {
      std::fprintf(stderr, "usage: %s [criterion 1..12]\n", argv[0]);
      return 2;
    }
  }

  bool all_ok = true;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.number != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out = c.run(criterion_seed(c.number));
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (wall >= c.budget_seconds)
      out.fail("took " + fmt(wall) + "s, budget " + fmt(c.budget_seconds) + "s");
    std::printf("criterion %d: %s (%s; %.1fs)\n", c.number, out.ok ? "PASS" : "FAIL",
                out.detail.c_str(), wall);
    std::fflush(stdout);
    all_ok = all_ok && out.ok;
  }
  return all_ok ? 0 : 1;
}
