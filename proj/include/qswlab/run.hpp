#pragma once

// Executes a RunConfig and renders its CSV/SVG artifacts as strings.

#include "qswlab/config.hpp"
#include "qswlab/report.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace qswlab {

struct RunOutcome {
  std::string csv;
  std::string svg;             // empty when the experiment has no plot
  std::string histogram_csv;   // omega0 only
  std::vector<std::string> findings;
};

namespace detail {

struct NamedGraph {
  std::string id;
  Digraph graph;
};

inline std::vector<NamedGraph> config_graphs(const RunConfig& c) {
  std::vector<NamedGraph> out;
  for (const std::string& s : c.graphs) out.push_back({s, resolve_graph_source(s)});
  if (c.er) {
    for (std::size_t n : c.er->n) {
      for (std::size_t i = 0; i < c.er->count; ++i) {
        SampledGraph s = sample_filtered(n, c.er->p, c.er->directed, c.er->filter, derive_seed(c.seed, n), i);
        out.push_back({"er:n=" + std::to_string(n) + ":i=" + std::to_string(i) + ":seed=" + std::to_string(s.seed),
                       std::move(s.graph)});
      }
    }
  }
  return out;
}

}  // namespace detail

inline RunOutcome run_experiment(const RunConfig& c) {
  RunOutcome out;
  std::ostringstream csv, svg;
  switch (c.kind) {
    case ExperimentKind::threshold_scan: {
      std::vector<ThresholdResult> results;
      report::Series wt{"omega_t", {}, {}};
      for (const auto& ng : detail::config_graphs(c)) {
        results.push_back(scan_omega_threshold(ng.graph, c.model, c.omega_grid, c.tol_zero, ng.id));
        const ThresholdResult& r = results.back();
        if (!r.single_threshold) out.findings.push_back(ng.id + ": relaxing omega values do not form a single interval");
        if (r.omega_t) {
          wt.x.push_back(static_cast<double>(ng.graph.size()));
          wt.y.push_back(*r.omega_t);
        }
      }
      report::write_threshold_csv(results, csv);
      report::write_line_plot({wt}, "relaxation threshold", "vertices", "omega_t", svg);
      break;
    }
    case ExperimentKind::er_survey: {
      SurveyConfig s{c.er->n, c.er->p, c.er->count, c.omega_grid, c.model, c.er->filter, c.seed, c.er->directed,
                     c.tol_zero};
      std::vector<SurveyRow> rows = er_survey(s);
      for (const SurveyRow& r : rows) {
        if (r.verdict == Verdict::non_convergent) {
          out.findings.push_back("non-convergent: n=" + std::to_string(r.n) + " seed=" + std::to_string(r.seed) +
                                 " omega=" + io::format_double(r.omega));
        }
      }
      report::write_survey_csv(rows, csv, c.wall_time);
      break;
    }
    case ExperimentKind::periodicity: {
      std::vector<std::pair<std::string, PeriodicityReport>> rows;
      for (const PeriodicityCase& pc : c.cases) {
        const std::string name = pc.kind == PeriodicityKind::circulant
                                     ? "circulant(" + std::to_string(pc.k) + ";" + io::format_double(pc.omega) + ")"
                                     : "nonmoralizing_fig6(" + io::format_double(pc.omega) + ")";
        rows.emplace_back(name, periodicity_demo(pc, {0.0, 1.0, 3.0}));
      }
      report::write_periodicity_csv(rows, csv);
      break;
    }
    case ExperimentKind::observance: {
      ObservanceOptions opts;
      opts.model = c.model;
      opts.start = c.start_vertex;
      std::vector<ObservanceMetrics> rows;
      std::vector<report::Series> p_series;
      for (const auto& ng : detail::config_graphs(c)) {
        auto m = observance_scan(ng.graph, c.omega_grid, opts, ng.id);
        report::Series s{ng.id, {}, {}};
        for (const ObservanceMetrics& x : m) {
          s.x.push_back(x.omega);
          s.y.push_back(x.p_sink);
          if (!x.converged) {
            out.findings.push_back(ng.id + ": stationarity not reached by t=" + io::format_double(x.time) +
                                   " at omega=" + io::format_double(x.omega));
          }
        }
        p_series.push_back(std::move(s));
        rows.insert(rows.end(), m.begin(), m.end());
      }
      report::write_observance_csv(rows, csv);
      report::write_line_plot(p_series, "sink probability", "omega", "p_S", svg);
      break;
    }
    case ExperimentKind::omega0: {
      ObservanceOptions opts;
      opts.model = c.model;
      opts.start = c.start_vertex;
      auto graphs = detail::config_graphs(c);
      std::vector<ThresholdResult> results(graphs.size());
      parallel_for(graphs.size(),
                   [&](std::size_t i) { results[i] = find_omega_0(graphs[i].graph, c.step, opts, graphs[i].id); });
      std::vector<double> values;
      for (const ThresholdResult& r : results) {
        values.push_back(*r.omega_0);
        if (*r.omega_0 > 0.7) out.findings.push_back(r.graph_id + ": omega_0 = " + io::format_double(*r.omega_0) + " > 0.7");
      }
      report::write_omega0_csv(results, csv);
      auto bins = report::histogram(values, c.histogram_bin);
      std::ostringstream hist;
      report::write_histogram_csv(bins, hist);
      out.histogram_csv = hist.str();
      report::write_histogram_plot(bins, "omega_0 histogram", "omega_0", svg);
      break;
    }
  }
  out.csv = csv.str();
  out.svg = svg.str();
  return out;
}

}  // namespace qswlab
