#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mutsel/analytics.hpp"
#include "mutsel/ctmc.hpp"
#include "mutsel/errors.hpp"
#include "mutsel/figures.hpp"
#include "mutsel/harness.hpp"
#include "mutsel/model.hpp"
#include "mutsel/pdmp.hpp"
#include "mutsel/rng.hpp"

namespace {

// Fixed fallback seed so bare invocations are reproducible run-to-run.
constexpr std::uint64_t kDefaultSeed = 0x5eedc0de00000001ULL;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
}

struct FigureArgs {
  double s = 1.0;
  double nu0 = 0.0;
  double umin = 0.0;
  double umax = 1.4;
  int steps = 15;
  std::string output = "-";
  std::string format = "csv";
};

void add_figure_flags(CLI::App* cmd, FigureArgs& a) {
  cmd->add_option("--s", a.s, "Selection strength (> 0)");
  cmd->add_option("--nu0", a.nu0, "Beneficial fraction of mutations");
  cmd->add_option("--umin", a.umin, "Smallest mutation rate in the sweep");
  cmd->add_option("--umax", a.umax, "Largest mutation rate in the sweep");
  cmd->add_option("--steps", a.steps, "Number of rows, endpoints included");
  cmd->add_option("--output", a.output, "Output path, '-' for stdout");
  cmd->add_option("--format", a.format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}));
}

int run_verify(const std::string& config_path, std::uint64_t seed, const std::string& output,
               std::uint64_t seed_count) {
  mutsel::SuiteConfig cfg;
  try {
    if (config_path.empty()) {
      cfg = mutsel::default_suite_config(seed);
    } else {
      std::ifstream f(config_path);
      if (!f) throw std::runtime_error("cannot open config: " + config_path);
      const nlohmann::json j = nlohmann::json::parse(f);
      cfg.seed = seed;
      cfg.z = j.value("z", 3.0);
      for (const auto& row : j.value("rows", nlohmann::json::array())) {
        mutsel::SuiteRow r;
        r.params = mutsel::validate_params(row.at("s").get<double>(), row.at("u").get<double>(),
                                           row.at("nu0").get<double>());
        r.reps = row.value("reps", std::int64_t{100000});
        r.stationary_samples = row.value("stationary_samples", std::int64_t{100000});
        r.trend_reps = row.value("trend_reps", std::int64_t{2000});
        cfg.rows.push_back(r);
      }
      for (const auto& c : j.value("couplings", nlohmann::json::array())) {
        mutsel::CouplingSpec cs;
        const double s = c.at("s").get<double>();
        const double u = c.at("u").get<double>();
        cs.low = mutsel::validate_params(s, u, c.at("nu0_low").get<double>());
        cs.high = mutsel::validate_params(s, u, c.at("nu0_high").get<double>());
        cs.horizon = c.value("horizon", 50.0);
        cs.paths = c.value("paths", std::int64_t{10000});
        cfg.couplings.push_back(cs);
      }
      if (seed_count == 0 && j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const std::vector<mutsel::CheckReport> reports = mutsel::run_suite(cfg);
  std::string out = "name,grid,mean,se,target,z,passed\n";
  for (const mutsel::CheckReport& r : reports) {
    std::string name = r.name;
    if (r.status == mutsel::CheckStatus::Skipped) name += "[" + r.note + "]";
    out += name + "," + r.grid + "," + fmt(r.mean) + "," + fmt(r.se) + "," + fmt(r.target) +
           "," + fmt(r.z) + "," + mutsel::to_string(r.status) + "\n";
  }
  emit(output, out);
  return mutsel::any_failed(reports) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification toolkit for two-type mutation-selection dynamics"};
  app.require_subcommand(1);

  // equilibria
  double eq_s = 0.0, eq_u = 0.0, eq_nu0 = 0.0;
  CLI::App* eq = app.add_subcommand("equilibria", "Equilibria and regime classification");
  eq->add_option("--s", eq_s, "Selection strength")->required();
  eq->add_option("--u", eq_u, "Mutation rate")->required();
  eq->add_option("--nu0", eq_nu0, "Beneficial fraction")->required();

  // fig2 / fig5
  FigureArgs f2;
  CLI::App* fig2 = app.add_subcommand("fig2", "Equilibria sweep over u/s (CSV or SVG)");
  add_figure_flags(fig2, f2);
  FigureArgs f5;
  CLI::App* fig5 =
      app.add_subcommand("fig5", "Unfit-ancestor probability sweep over u/s (CSV or SVG)");
  add_figure_flags(fig5, f5);

  // simulate
  std::string sim_process;
  double sim_s = 1.0, sim_u = 0.3, sim_nu0 = 0.2, sim_t = 1.0, sim_y0 = 0.5;
  std::int64_t sim_n0 = 1, sim_reps = 1, sim_cap = mutsel::kDefaultCap;
  std::uint64_t sim_seed = kDefaultSeed;
  std::string sim_output = "-";
  CLI::App* sim = app.add_subcommand("simulate", "Replicate path outcomes as CSV");
  sim->add_option("process", sim_process, "One of r, l, d, pdmp")
      ->required()
      ->check(CLI::IsMember({"r", "l", "d", "pdmp"}));
  sim->add_option("--s", sim_s, "Selection strength");
  sim->add_option("--u", sim_u, "Mutation rate");
  sim->add_option("--nu0", sim_nu0, "Beneficial fraction");
  sim->add_option("--t", sim_t, "Time horizon");
  sim->add_option("--n0", sim_n0, "Start state for r, l, d");
  sim->add_option("--y0", sim_y0, "Start state for pdmp");
  sim->add_option("--reps", sim_reps, "Number of replicates");
  sim->add_option("--cap", sim_cap, "Stop-and-flag bound for r and d");
  sim->add_option("--seed", sim_seed, "Master seed (replicate i uses substream i)");
  sim->add_option("--output", sim_output, "Output path, '-' for stdout");

  // verify
  std::string ver_config, ver_output = "-";
  std::uint64_t ver_seed = kDefaultSeed;
  CLI::App* ver = app.add_subcommand("verify", "Run the statistical identity suite");
  ver->add_option("--config", ver_config, "JSON suite description (omit for the default suite)");
  CLI::Option* ver_seed_opt = ver->add_option("--seed", ver_seed, "Suite master seed");
  ver->add_option("--output", ver_output, "Report CSV path, '-' for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eq->parsed()) {
      const mutsel::ModelParams p = mutsel::validate_params(eq_s, eq_u, eq_nu0);
      const mutsel::Equilibria e = mutsel::equilibria(p);
      std::string out = "y_bar=" + fmt(e.y_bar) + "\n";
      out += "y_star=" + (e.y_star ? fmt(*e.y_star) : std::string("none")) + "\n";
      out += std::string("L_regime=") + mutsel::to_string(mutsel::classify_L_regime(p)) + "\n";
      out += std::string("R_absorption=") + mutsel::to_string(mutsel::classify_R_absorption(p)) +
             "\n";
      std::cout << out;
      return 0;
    }
    if (fig2->parsed()) {
      const auto rows = mutsel::fig2_rows(f2.s, f2.nu0, f2.umin, f2.umax, f2.steps);
      emit(f2.output, f2.format == "svg" ? mutsel::fig2_svg(rows) : mutsel::fig2_csv(rows));
      return 0;
    }
    if (fig5->parsed()) {
      const auto rows = mutsel::fig5_rows(f5.s, f5.nu0, f5.umin, f5.umax, f5.steps);
      emit(f5.output, f5.format == "svg" ? mutsel::fig5_svg(rows) : mutsel::fig5_csv(rows));
      return 0;
    }
    if (sim->parsed()) {
      const mutsel::ModelParams p = mutsel::validate_params(sim_s, sim_u, sim_nu0);
      if (sim_reps < 1) throw std::invalid_argument("reps must be positive");
      std::string out = "replicate,terminal,time,final_state\n";
      for (std::int64_t i = 0; i < sim_reps; ++i) {
        const std::uint64_t sub = mutsel::substream_seed(sim_seed, static_cast<std::uint64_t>(i));
        std::string terminal, state;
        double time = 0.0;
        if (sim_process == "pdmp") {
          const mutsel::PdmpPath path = mutsel::simulate_pdmp(p, sim_y0, sim_t, sub);
          switch (path.terminal.kind) {
            case mutsel::PdmpOutcome::AbsorbedZero:
              terminal = "AbsorbedZero";
              time = path.terminal.value;
              state = "0";
              break;
            case mutsel::PdmpOutcome::AbsorbedOne:
              terminal = "AbsorbedOne";
              time = path.terminal.value;
              state = "1";
              break;
            case mutsel::PdmpOutcome::RunningAtHorizon:
              terminal = "RunningAtHorizon";
              time = sim_t;
              state = fmt(path.terminal.value);
              break;
          }
        } else {
          mutsel::CtmcPath path;
          if (sim_process == "r")
            path = mutsel::simulate_R(p, sim_n0, sim_t, sim_cap, sub);
          else if (sim_process == "l")
            path = mutsel::simulate_L(p, sim_n0, sim_t, sub);
          else
            path = mutsel::simulate_D(p, sim_n0, sim_t, sim_cap, sub);
          terminal = mutsel::to_string(path.terminal);
          time = path.end_time;
          state = path.final_state.is_delta() ? "Delta"
                                              : std::to_string(path.final_state.count());
        }
        out += std::to_string(i) + "," + terminal + "," + fmt(time) + "," + state + "\n";
      }
      emit(sim_output, out);
      return 0;
    }
    if (ver->parsed())
      return run_verify(ver_config, ver_seed, ver_output,
                        static_cast<std::uint64_t>(ver_seed_opt->count()));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
