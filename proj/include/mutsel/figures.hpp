#ifndef MUTSEL_FIGURES_HPP
#define MUTSEL_FIGURES_HPP

#include <string>
#include <utility>
#include <vector>

namespace mutsel {

struct Fig2Row {
  double u_over_s;
  double y_bar;
  double y_star;
};

struct Fig5Row {
  double u_over_s;
  double g_eq;
};

// Equilibria of the forward equation along a mutation-rate sweep. The grid
// is `steps` equally spaced u values from umin to umax inclusive (steps >= 2,
// or steps == 1 with umin == umax); u = 0 is allowed here, where the roots
// extend continuously to (0, 1).
std::vector<Fig2Row> fig2_rows(double s, double nu0, double umin, double umax, int steps);

// Probability of an unfit ancestral type at equilibrium along the same
// sweep; at u = 0 the value is exactly 0, and for nu0 = 0 the column jumps
// from 0 to 1 at u = s.
std::vector<Fig5Row> fig5_rows(double s, double nu0, double umin, double umax, int steps);

// Fixed CSV schemas; 12 significant digits, deterministic byte-for-byte.
std::string fig2_csv(const std::vector<Fig2Row>& rows);
std::string fig5_csv(const std::vector<Fig5Row>& rows);

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Self-contained SVG line chart of the same data the CSV writers emit; no
// external assets, fixed 720x480 canvas.
std::string line_chart_svg(const std::string& x_label, const std::string& y_label,
                           const std::vector<ChartSeries>& series);

std::string fig2_svg(const std::vector<Fig2Row>& rows);
std::string fig5_svg(const std::vector<Fig5Row>& rows);

}  // namespace mutsel

#endif
