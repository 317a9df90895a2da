#include "netbandit/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "netbandit/errors.hpp"
#include "netbandit/output.hpp"

namespace netbandit {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 55;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Axis {
  double lo, hi;
  double map(double v, double from, double to) const {
    return hi == lo ? (from + to) / 2 : from + (v - lo) / (hi - lo) * (to - from);
  }
};

Axis padded(double lo, double hi) {
  if (hi < lo) std::swap(lo, hi);
  const double span = hi - lo;
  const double pad = span > 0 ? span * 0.05 : (std::abs(lo) > 0 ? std::abs(lo) * 0.1 : 1.0);
  return {lo - pad, hi + pad};
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void frame(std::ostringstream& svg, const Axis& x, const Axis& y, const std::string& title,
           const std::string& x_label, const std::string& y_label) {
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x.lo + (x.hi - x.lo) * i / 4, yv = y.lo + (y.hi - y.lo) * i / 4;
    const double px = x.map(xv, x0, x1), py = y.map(yv, y0, y1);
    svg << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px << "\" y2=\"" << y0 + 4
        << "\" stroke=\"black\"/><text x=\"" << px << "\" y=\"" << y0 + 16
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    svg << "<line x1=\"" << x0 - 4 << "\" y1=\"" << py << "\" x2=\"" << x0 << "\" y2=\"" << py
        << "\" stroke=\"black\"/><text x=\"" << x0 - 6 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (y0 + y1) / 2 << ")\">" << escape(y_label) << "</text>\n";
}

void legend_entry(std::ostringstream& svg, std::size_t i, const std::string& color,
                  const std::string& name) {
  const double lx = kWidth - kRight + 15, ly = kTop + 10 + 16 * static_cast<double>(i);
  svg << "<rect x=\"" << lx << "\" y=\"" << ly - 8 << "\" width=\"10\" height=\"10\" fill=\"" << color
      << "\"/><text x=\"" << lx + 15 << "\" y=\"" << ly + 1 << "\">" << escape(name) << "</text>\n";
}

}  // namespace

std::string render_tradeoff_svg(const std::vector<TradeoffPoint>& points, const std::string& title) {
  std::ostringstream svg;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& p : points) {
    xlo = std::min(xlo, p.rmse_pct);
    xhi = std::max(xhi, p.rmse_pct);
    ylo = std::min(ylo, p.ra);
    yhi = std::max(yhi, p.ra);
  }
  if (points.empty()) xlo = ylo = 0, xhi = yhi = 1;
  const Axis x = padded(xlo, xhi), y = padded(ylo, yhi);
  frame(svg, x, y, title, "TTE RMSE (% of true TTE)", "reward-action ratio");

  std::vector<std::string> order;
  std::map<std::string, std::vector<const TradeoffPoint*>> by_design;
  for (const auto& p : points) {
    if (!by_design.count(p.design)) order.push_back(p.design);
    by_design[p.design].push_back(&p);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::string color = kPalette[i % std::size(kPalette)];
    auto pts = by_design[order[i]];
    std::stable_sort(pts.begin(), pts.end(), [](auto* a, auto* b) {
      return a->alpha.value_or(0.0) < b->alpha.value_or(0.0);
    });
    double amin = 1e300, amax = -1e300;
    for (auto* p : pts) {
      if (p->alpha) {
        amin = std::min(amin, *p->alpha);
        amax = std::max(amax, *p->alpha);
      }
    }
    for (auto* p : pts) {
      double opacity = 1.0;
      if (p->alpha && amax > amin) opacity = 0.2 + 0.8 * (*p->alpha - amin) / (amax - amin);
      const double px = x.map(p->rmse_pct, kLeft, kWidth - kRight);
      const double py = y.map(p->ra, kHeight - kBottom, kTop);
      svg << "<circle class=\"marker\" cx=\"" << num(px) << "\" cy=\"" << num(py)
          << "\" r=\"5\" fill=\"" << color << "\" fill-opacity=\"" << num(opacity)
          << "\" stroke=\"" << color << "\"><title>" << escape(p->design)
          << (p->alpha ? " alpha=" + num(*p->alpha) : std::string()) << "</title></circle>\n";
    }
    legend_entry(svg, i, color, order[i]);
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_trace_svg(const std::vector<TraceSeries>& series, const std::string& title,
                             const std::string& y_label) {
  std::ostringstream svg;
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& s : series) {
    for (const auto& [px, py] : s.points) {
      xlo = std::min(xlo, px);
      xhi = std::max(xhi, px);
      ylo = std::min(ylo, py);
      yhi = std::max(yhi, py);
    }
  }
  if (xlo > xhi) xlo = ylo = 0, xhi = yhi = 1;
  const Axis x{std::min(0.0, xlo), xhi}, y = padded(ylo, yhi);
  frame(svg, x, y, title, "node arrivals", y_label);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string color = kPalette[i % std::size(kPalette)];
    svg << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[i].points.size(); ++k) {
      const auto& [px, py] = series[i].points[k];
      svg << (k ? " " : "") << num(x.map(px, kLeft, kWidth - kRight)) << ','
          << num(y.map(py, kHeight - kBottom, kTop));
    }
    svg << "\"/>\n";
    legend_entry(svg, i, color, series[i].name);
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  out << text;
}

double field(const std::string& s) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw FormatError("bad numeric field '" + s + "'");
  }
}

}  // namespace

std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& input_dir, Figure figure,
                                              const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  std::filesystem::create_directories(out_dir);

  if (figure == Figure::Tradeoff) {
    const auto t = read_csv(input_dir / "sweep.csv");
    std::vector<TradeoffPoint> pts;
    std::string dataset;
    const auto c_ds = t.column("dataset"), c_d = t.column("design"), c_a = t.column("alpha"),
               c_r = t.column("rmse_pct"), c_ra = t.column("mean_ra");
    for (const auto& r : t.rows) {
      if (r[c_r] == "NA") continue;
      dataset = r[c_ds];
      TradeoffPoint p{r[c_d], std::nullopt, field(r[c_r]), field(r[c_ra])};
      if (r[c_a] != "NA") p.alpha = field(r[c_a]);
      pts.push_back(p);
    }
    if (pts.empty()) {
      std::cerr << "warning: " << (input_dir / "sweep.csv").string() << " has no plottable rows\n";
      return written;
    }
    const auto path = out_dir / "tradeoff.svg";
    write_file(path, render_tradeoff_svg(pts, dataset + ": reward-action ratio vs TTE error"));
    written.push_back(path);
    return written;
  }

  const auto t = read_csv(input_dir / "aggregate.csv");
  const auto c_ds = t.column("dataset"), c_d = t.column("design"), c_a = t.column("alpha"),
             c_n = t.column("arrivals"), c_r = t.column("rmse_pct"), c_ra = t.column("mean_ra");
  std::vector<TraceSeries> rmse, ra;
  std::map<std::string, std::size_t> index;
  std::string dataset;
  for (const auto& r : t.rows) {
    dataset = r[c_ds];
    const std::string name = r[c_a] == "NA" ? r[c_d] : r[c_d] + " (alpha=" + r[c_a] + ")";
    auto [it, fresh] = index.emplace(name, rmse.size());
    if (fresh) {
      rmse.push_back({name, {}});
      ra.push_back({name, {}});
    }
    const double n = field(r[c_n]);
    if (r[c_r] != "NA") rmse[it->second].points.emplace_back(n, field(r[c_r]));
    ra[it->second].points.emplace_back(n, field(r[c_ra]));
  }
  if (ra.empty()) {
    std::cerr << "warning: " << (input_dir / "aggregate.csv").string() << " has no rows\n";
    return written;
  }
  written.push_back(out_dir / "trace_rmse.svg");
  write_file(written.back(), render_trace_svg(rmse, dataset + ": TTE RMSE", "RMSE (% of true TTE)"));
  written.push_back(out_dir / "trace_ra.svg");
  write_file(written.back(), render_trace_svg(ra, dataset + ": reward-action ratio", "reward-action ratio"));
  return written;
}

}  // namespace netbandit
