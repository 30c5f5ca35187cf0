#include "mutsel/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mutsel/analytics.hpp"
#include "mutsel/model.hpp"

namespace mutsel {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> sweep(double umin, double umax, int steps) {
  if (!(umin >= 0.0) || !(umax >= umin))
    throw std::invalid_argument("need 0 <= umin <= umax");
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  if (steps == 1 && umin != umax)
    throw std::invalid_argument("steps=1 requires umin == umax");
  std::vector<double> us;
  us.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    us.push_back(umin);
    return us;
  }
  const double width = (umax - umin) / static_cast<double>(steps - 1);
  for (int i = 0; i < steps; ++i)
    us.push_back(i == steps - 1 ? umax : umin + width * static_cast<double>(i));
  return us;
}

void require_positive_s(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive for the figure sweeps");
}

}  // namespace

std::vector<Fig2Row> fig2_rows(double s, double nu0, double umin, double umax, int steps) {
  require_positive_s(s);
  if (!(nu0 >= 0.0 && nu0 <= 1.0)) throw std::invalid_argument("nu0 must lie in [0,1]");
  std::vector<Fig2Row> rows;
  for (double u : sweep(umin, umax, steps)) {
    const Equilibria eq = equilibrium_roots_unchecked(s, u, nu0);
    rows.push_back(Fig2Row{u / s, eq.y_bar, *eq.y_star});
  }
  return rows;
}

std::vector<Fig5Row> fig5_rows(double s, double nu0, double umin, double umax, int steps) {
  require_positive_s(s);
  if (!(nu0 >= 0.0 && nu0 <= 1.0)) throw std::invalid_argument("nu0 must lie in [0,1]");
  std::vector<Fig5Row> rows;
  for (double u : sweep(umin, umax, steps)) {
    // Selection without mutation drives the deleterious type out entirely.
    const double g = u == 0.0 ? 0.0 : g_at_equilibrium(validate_params(s, u, nu0));
    rows.push_back(Fig5Row{u / s, g});
  }
  return rows;
}

std::string fig2_csv(const std::vector<Fig2Row>& rows) {
  std::string out = "u_over_s,y_bar,y_star\n";
  for (const Fig2Row& r : rows)
    out += fmt(r.u_over_s) + "," + fmt(r.y_bar) + "," + fmt(r.y_star) + "\n";
  return out;
}

std::string fig5_csv(const std::vector<Fig5Row>& rows) {
  std::string out = "u_over_s,g_eq\n";
  for (const Fig5Row& r : rows) out += fmt(r.u_over_s) + "," + fmt(r.g_eq) + "\n";
  return out;
}

std::string line_chart_svg(const std::string& x_label, const std::string& y_label,
                           const std::vector<ChartSeries>& series) {
  const double width = 720.0, height = 480.0;
  const double ml = 64.0, mr = 24.0, mt = 24.0, mb = 48.0;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const ChartSeries& s : series) {
    for (const auto& pt : s.points) {
      if (first) {
        xmin = xmax = pt.first;
        ymin = ymax = pt.second;
        first = false;
      }
      xmin = std::min(xmin, pt.first);
      xmax = std::max(xmax, pt.first);
      ymin = std::min(ymin, pt.second);
      ymax = std::max(ymax, pt.second);
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;
  const auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  const auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };
  const char* colors[] = {"#1f6f8b", "#c0392b", "#2e8b57", "#8e44ad"};
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 720 480\" "
      "font-family=\"sans-serif\" font-size=\"13\">\n"
      "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
  // axes
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(height - mb) + "\" x2=\"" + fmt(width - mr) +
         "\" y2=\"" + fmt(height - mb) + "\" stroke=\"#333\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
         fmt(height - mb) + "\" stroke=\"#333\"/>\n";
  // extremal tick labels
  svg += "<text x=\"" + fmt(ml) + "\" y=\"" + fmt(height - mb + 18.0) +
         "\" text-anchor=\"middle\">" + fmt(xmin) + "</text>\n";
  svg += "<text x=\"" + fmt(width - mr) + "\" y=\"" + fmt(height - mb + 18.0) +
         "\" text-anchor=\"middle\">" + fmt(xmax) + "</text>\n";
  svg += "<text x=\"" + fmt(ml - 8.0) + "\" y=\"" + fmt(py(ymin + ypad) + 4.0) +
         "\" text-anchor=\"end\">" + fmt(ymin + ypad) + "</text>\n";
  svg += "<text x=\"" + fmt(ml - 8.0) + "\" y=\"" + fmt(py(ymax - ypad) + 4.0) +
         "\" text-anchor=\"end\">" + fmt(ymax - ypad) + "</text>\n";
  // axis labels
  svg += "<text x=\"" + fmt((ml + width - mr) / 2.0) + "\" y=\"" + fmt(height - 12.0) +
         "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt((mt + height - mb) / 2.0) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt((mt + height - mb) / 2.0) + ")\">" + y_label + "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = colors[i % 4];
    std::string pts;
    for (const auto& pt : series[i].points) {
      if (!pts.empty()) pts += " ";
      pts += fmt(px(pt.first)) + "," + fmt(py(pt.second));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double ly = mt + 18.0 * static_cast<double>(i + 1);
    svg += "<line x1=\"" + fmt(width - mr - 120.0) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
           fmt(width - mr - 96.0) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + fmt(width - mr - 90.0) + "\" y=\"" + fmt(ly + 4.0) + "\">" +
           series[i].label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string fig2_svg(const std::vector<Fig2Row>& rows) {
  ChartSeries stable{"y_bar", {}};
  ChartSeries unstable{"y_star", {}};
  for (const Fig2Row& r : rows) {
    stable.points.emplace_back(r.u_over_s, r.y_bar);
    unstable.points.emplace_back(r.u_over_s, r.y_star);
  }
  return line_chart_svg("u/s", "equilibrium", {stable, unstable});
}

std::string fig5_svg(const std::vector<Fig5Row>& rows) {
  ChartSeries g{"g_eq", {}};
  for (const Fig5Row& r : rows) g.points.emplace_back(r.u_over_s, r.g_eq);
  return line_chart_svg("u/s", "unfit ancestral probability", {g});
}

}  // namespace mutsel
