#pragma once

// CSV tables and small SVG plots for experiment output. Column orders are
// fixed; see README for the list.

#include "qswlab/experiments.hpp"
#include "qswlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace qswlab::report {

using io::format_double;

/// Quotes a CSV field when it contains a comma, quote or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_threshold_csv(const std::vector<ThresholdResult>& results, std::ostream& out) {
  out << "graph_id,omega,verdict,omega_t\n";
  for (const ThresholdResult& r : results) {
    const std::string wt = r.omega_t ? format_double(*r.omega_t) : "";
    for (std::size_t i = 0; i < r.omega_grid.size(); ++i) {
      out << csv_field(r.graph_id) << ',' << format_double(r.omega_grid[i]) << ',' << to_string(r.verdicts[i]) << ',' << wt
          << '\n';
    }
  }
}

inline void write_survey_csv(const std::vector<SurveyRow>& rows, std::ostream& out, bool wall_time = false) {
  out << "n,p,graph_index,seed,omega,model,verdict,null_dim";
  if (wall_time) out << ",wall_time_s";
  out << '\n';
  for (const SurveyRow& r : rows) {
    out << r.n << ',' << format_double(r.p) << ',' << r.graph_index << ',' << r.seed << ',' << format_double(r.omega)
        << ',' << to_string(r.model) << ',' << to_string(r.verdict) << ',' << r.null_dim;
    if (wall_time) out << ',' << format_double(r.wall_time_s);
    out << '\n';
  }
}

inline void write_observance_csv(const std::vector<ObservanceMetrics>& rows, std::ostream& out) {
  out << "graph_id,omega,start_vertex,p_sink,mu_sink,time,converged,limit\n";
  for (const ObservanceMetrics& m : rows) {
    out << csv_field(m.graph_id) << ',' << format_double(m.omega) << ',' << m.start_vertex << ',' << format_double(m.p_sink) << ','
        << format_double(m.mu_sink) << ',' << format_double(m.time) << ',' << (m.converged ? 1 : 0) << ','
        << (m.spectral_limit ? "spectral" : "evolved") << '\n';
  }
}

struct HistogramBin {
  double low = 0.0;
  double high = 0.0;
  std::size_t count = 0;
};

/// Bins [k*width, (k+1)*width) covering [0, 1]; a value of exactly 1 lands in the last bin.
inline std::vector<HistogramBin> histogram(const std::vector<double>& values, double width) {
  if (!(width > 0.0 && width <= 1.0)) throw ConfigError("histogram bin width must lie in (0,1]");
  const auto bins = static_cast<std::size_t>(std::ceil(1.0 / width - 1e-9));
  std::vector<HistogramBin> out(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].low = std::round(static_cast<double>(b) * width * 1e12) / 1e12;
    out[b].high = std::round(std::min(1.0, static_cast<double>(b + 1) * width) * 1e12) / 1e12;
  }
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::floor(v / width + 1e-9));
    out[std::min(b, bins - 1)].count++;
  }
  return out;
}

inline void write_histogram_csv(const std::vector<HistogramBin>& bins, std::ostream& out) {
  out << "bin_low,bin_high,count\n";
  for (const HistogramBin& b : bins) out << format_double(b.low) << ',' << format_double(b.high) << ',' << b.count << '\n';
}

inline void write_omega0_csv(const std::vector<ThresholdResult>& results, std::ostream& out) {
  out << "graph_id,omega_0,samples\n";
  for (const ThresholdResult& r : results) {
    out << csv_field(r.graph_id) << ',' << (r.omega_0 ? format_double(*r.omega_0) : "") << ',' << r.observance.size() << '\n';
  }
}

inline void write_periodicity_csv(const std::vector<std::pair<std::string, PeriodicityReport>>& rows,
                                  std::ostream& out) {
  out << "case,period,max_deviation\n";
  for (const auto& [name, r] : rows) {
    out << csv_field(name) << ',' << format_double(r.period) << ',' << format_double(r.max_deviation) << '\n';
  }
}

/// One row per time: t, then the probability of each vertex.
inline void write_distribution_csv(const std::vector<double>& times, const std::vector<std::vector<double>>& dists,
                                   std::ostream& out) {
  out << 't';
  const std::size_t n = dists.empty() ? 0 : dists.front().size();
  for (std::size_t v = 0; v < n; ++v) out << ",P" << v;
  out << '\n';
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << format_double(times[i]);
    for (double p : dists[i]) out << ',' << format_double(p);
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// SVG

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  return colors[i % 6];
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

struct Frame {
  double x0, x1, y0, y1;
  static constexpr double left = 60, right = 20, top = 30, bottom = 45, width = 560, height = 360;
  double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
  double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

inline Frame make_frame(double x0, double x1, double y0, double y1) {
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;
  return {x0, x1, y0, y1};
}

inline void axes(std::ostream& out, const Frame& f, const std::string& title, const std::string& xlabel,
                 const std::string& ylabel) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::width << "\" height=\"" << Frame::height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << Frame::width / 2 << "\" y=\"18\" text-anchor=\"middle\">" << title << "</text>\n";
  const double bx = Frame::left, by = Frame::height - Frame::bottom;
  out << "<line x1=\"" << bx << "\" y1=\"" << by << "\" x2=\"" << Frame::width - Frame::right << "\" y2=\"" << by
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << bx << "\" y1=\"" << by << "\" x2=\"" << bx << "\" y2=\"" << Frame::top
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out << "<text x=\"" << f.px(xv) << "\" y=\"" << by + 15 << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    out << "<text x=\"" << bx - 5 << "\" y=\"" << f.py(yv) + 4 << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
  }
  out << "<text x=\"" << Frame::width / 2 << "\" y=\"" << Frame::height - 8 << "\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
  out << "<text x=\"14\" y=\"" << Frame::height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << Frame::height / 2 << ")\">" << ylabel << "</text>\n";
}

}  // namespace detail

inline void write_line_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                            const std::string& ylabel, std::ostream& out) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const Series& s : series) {
    for (double x : s.x) x0 = std::min(x0, x), x1 = std::max(x1, x);
    for (double y : s.y) y0 = std::min(y0, y), y1 = std::max(y1, y);
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  y0 = std::min(y0, 0.0);
  detail::Frame f = detail::make_frame(x0, x1, y0, y1);
  detail::axes(out, f, title, xlabel, ylabel);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    out << "<polyline fill=\"none\" stroke=\"" << detail::palette(i) << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      out << detail::fmt(f.px(s.x[k])) << ',' << detail::fmt(f.py(s.y[k])) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << detail::Frame::width - 110 << "\" y=\"" << 40 + 15 * i << "\" fill=\"" << detail::palette(i)
        << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

inline void write_histogram_plot(const std::vector<HistogramBin>& bins, const std::string& title,
                                 const std::string& xlabel, std::ostream& out) {
  std::size_t top = 1;
  for (const HistogramBin& b : bins) top = std::max(top, b.count);
  detail::Frame f = detail::make_frame(0.0, 1.0, 0.0, static_cast<double>(top));
  detail::axes(out, f, title, xlabel, "count");
  for (const HistogramBin& b : bins) {
    if (b.count == 0) continue;
    const double x = f.px(b.low), w = f.px(b.high) - x, y = f.py(static_cast<double>(b.count));
    out << "<rect x=\"" << detail::fmt(x) << "\" y=\"" << detail::fmt(y) << "\" width=\"" << detail::fmt(w)
        << "\" height=\"" << detail::fmt(f.py(0.0) - y) << "\" fill=\"#1f77b4\" stroke=\"white\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace qswlab::report
