// qswlab command-line frontend: graph, classify, evolve, experiment.

#include "qswlab/qswlab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qswlab;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

/// "a:b:step" or a comma-separated list.
std::vector<double> parse_number_list(const std::string& s, const char* what) {
  std::vector<std::string> parts;
  const char sep = s.find(':') != std::string::npos ? ':' : ',';
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, sep);) parts.push_back(item);
  std::vector<double> values;
  for (const std::string& p : parts) values.push_back(detail::parse_number(p, what));
  if (sep == ':') {
    if (values.size() != 3) throw ConfigError(std::string(what) + " range must be start:stop:step");
    return omega_grid(values[0], values[1], values[2]);
  }
  if (values.empty()) throw ConfigError(std::string(what) + " is empty");
  return values;
}

std::vector<double> omegas(const std::optional<double>& omega, const std::string& grid) {
  std::vector<double> out;
  if (omega) out.push_back(*omega);
  if (!grid.empty()) {
    auto g = parse_number_list(grid, "omega grid");
    out.insert(out.end(), g.begin(), g.end());
  }
  if (out.empty()) throw ConfigError("give --omega or --omega-grid");
  for (double w : out) {
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("omega " + io::format_double(w) + " outside [0,1]");
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

/// Graph source with --seed applied to er: sources that carry no seed.
Digraph load_graph(const std::string& source, const std::optional<std::uint64_t>& seed) {
  if (seed && source.rfind("er:", 0) == 0 && source.find("seed=") == std::string::npos) {
    return resolve_graph_source(source + ",seed=" + std::to_string(*seed));
  }
  return resolve_graph_source(source);
}

Model model_arg(const std::string& s) {
  try {
    return parse_model(s);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------

struct GraphArgs {
  std::optional<std::uint64_t> seed;
  std::string graph;
  std::string out;
  bool json = false;
};

int cmd_graph(const GraphArgs& a) {
  Digraph g = load_graph(a.graph, a.seed);
  Condensation c = condense(g);
  Digraph moral = moral_closure(g);
  const std::size_t added = moral.arc_count() - g.arc_count();

  nlohmann::json j{{"source", a.graph},
                   {"vertices", g.size()},
                   {"arcs", g.arc_count()},
                   {"connectivity", to_string(connectivity(g))},
                   {"components", c.blocks},
                   {"sink_blocks", c.sink_blocks},
                   {"sink_vertices", c.sink_vertices},
                   {"moral_closure_added_arcs", added},
                   {"moral_closure", io::to_edge_list(moral)}};
  if (!a.out.empty()) write_text(a.out, j.dump(2) + "\n");
  if (a.json) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::string kind = to_string(connectivity(g));
  std::replace(kind.begin(), kind.end(), '_', ' ');
  std::cout << kind << ", " << c.blocks.size() << " SCCs, " << c.sink_blocks.size() << " sinks (" << g.size()
            << " vertices, " << g.arc_count() << " arcs)\n";
  std::cout << "sink vertices:";
  for (Vertex v : c.sink_vertices) std::cout << ' ' << v;
  std::cout << "\nmoral closure adds " << added << " arcs\n";
  return 0;
}

struct ClassifyArgs {
  std::optional<std::uint64_t> seed;
  std::string graph;
  std::string model = "local";
  std::optional<double> omega;
  std::string omega_grid;
  double tol = 1e-8;
  bool cross_check = false;
  bool states = false;
  std::string out;
};

int cmd_classify(const ClassifyArgs& a) {
  Digraph g = load_graph(a.graph, a.seed);
  const Model model = model_arg(a.model);
  SpectrumOptions opts{a.tol, a.states, a.cross_check};
  nlohmann::json reports = nlohmann::json::array();
  bool diagnostic_failure = false;
  for (double w : omegas(a.omega, a.omega_grid)) {
    Walk walk = build_walk(g, model, w);
    SpectralReport r = spectrum(walk.superoperator, opts);
    nlohmann::json rj = r.to_json();
    rj["omega"] = w;
    if (a.states) rj["stationary_states"] = r.stationary_basis.size();
    for (const std::string& d : walk.generator.diagnostics()) rj["diagnostics"].push_back(d);
    if (a.cross_check && r.singular_null_dim && *r.singular_null_dim != r.null_dim) diagnostic_failure = true;
    reports.push_back(rj);
    std::cerr << "omega=" << io::format_double(w) << " verdict=" << to_string(r.verdict) << " null_dim=" << r.null_dim
              << "\n";
  }
  nlohmann::json j{{"graph", a.graph}, {"model", to_string(model)}, {"reports", reports}};
  write_text(a.out, j.dump(2) + "\n");
  if (diagnostic_failure) {
    std::cerr << "error: null-space cross-check disagreed\n";
    return kExitNumerical;
  }
  return 0;
}

struct EvolveArgs {
  std::optional<std::uint64_t> seed;
  std::string graph;
  std::string model = "local";
  double omega = 0.5;
  std::optional<std::size_t> start;
  std::string state;
  std::string times = "0";
  std::string out;
  std::string layout;
};

int cmd_evolve(const EvolveArgs& a) {
  Digraph g = load_graph(a.graph, a.seed);
  const Model model = model_arg(a.model);
  if (!(a.omega >= 0.0 && a.omega <= 1.0)) throw ConfigError("omega outside [0,1]");
  Walk walk = build_walk(g, model, a.omega);
  if (a.start.has_value() == !a.state.empty()) throw ConfigError("give exactly one of --start and --state");
  CMatrix rho0;
  if (a.start) {
    if (*a.start >= g.size()) throw ConfigError("start vertex out of range");
    rho0 = DensityMatrix::basis_state(walk.generator.dim(), walk.subspaces()[*a.start].offset).matrix();
  } else {
    rho0 = io::read_matrix_file(a.state);
  }
  DensityMatrix initial(rho0, StateTolerance{1e-10, 1e-8, -1e-8});
  if (initial.dim() != walk.generator.dim()) {
    throw DimensionMismatch("state dimension " + std::to_string(initial.dim()) + " differs from walk dimension " +
                            std::to_string(walk.generator.dim()));
  }
  if (!a.layout.empty() && model == Model::nonmoralizing) write_text(a.layout, enlarge(g).to_json().dump(2) + "\n");

  std::vector<double> times = parse_number_list(a.times, "times");
  std::vector<std::vector<double>> dists;
  for (double t : times) {
    if (t < 0) throw ConfigError("times must be >= 0");
    dists.push_back(walk.distribution(evolve(walk.superoperator, initial, t).matrix()));
  }
  std::ostringstream csv;
  report::write_distribution_csv(times, dists, csv);
  write_text(a.out, csv.str());
  return 0;
}

struct ExperimentArgs {
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string out;
  std::string svg;
};

int cmd_experiment(const ExperimentArgs& a) {
  RunConfig c = load_run_config(a.config);
  if (!a.out.empty()) c.csv_path = a.out;
  if (!a.svg.empty()) c.svg_path = a.svg;
  if (a.seed) c.seed = *a.seed;
  RunOutcome r = run_experiment(c);
  write_text(c.csv_path.value_or("-"), r.csv);
  if (c.svg_path && !r.svg.empty()) write_text(*c.svg_path, r.svg);
  if (c.histogram_path && !r.histogram_csv.empty()) write_text(*c.histogram_path, r.histogram_csv);
  for (const std::string& f : r.findings) std::cerr << "finding: " << f << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum stochastic walks on directed graphs"};
  app.require_subcommand(1);

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Summarize a graph: connectivity, condensation, sinks, moral closure");
  graph->add_option("--graph", ga.graph, "Graph source (name[:size], er:n=..,p=..,seed=.., or edge-list file)")
      ->required();
  graph->add_option("--out", ga.out, "Write the JSON summary to this file");
  graph->add_flag("--json", ga.json, "Print the JSON summary instead of text");

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Spectral classification per omega");
  classify->add_option("--graph", ca.graph, "Graph source")->required();
  classify->add_option("--model", ca.model, "local | global | nonmoralizing");
  classify->add_option("--omega", ca.omega, "Smoothing parameter");
  classify->add_option("--omega-grid", ca.omega_grid, "start:stop:step or comma list");
  classify->add_option("--tol", ca.tol, "Zero tolerance relative to the spectral radius");
  classify->add_flag("--cross-check", ca.cross_check, "Recount the null space by singular values (exit 3 on mismatch)");
  classify->add_flag("--states", ca.states, "Extract stationary states");
  classify->add_option("--out", ca.out, "Write JSON here instead of stdout");

  EvolveArgs ea;
  auto* evolve_cmd = app.add_subcommand("evolve", "Vertex distributions over time (CSV)");
  evolve_cmd->add_option("--graph", ea.graph, "Graph source")->required();
  evolve_cmd->add_option("--model", ea.model, "local | global | nonmoralizing");
  evolve_cmd->add_option("--omega", ea.omega, "Smoothing parameter");
  evolve_cmd->add_option("--start", ea.start, "Start vertex index");
  evolve_cmd->add_option("--state", ea.state, "Initial density matrix file");
  evolve_cmd->add_option("--times", ea.times, "start:stop:step or comma list");
  evolve_cmd->add_option("--out", ea.out, "CSV output path");
  evolve_cmd->add_option("--layout", ea.layout, "Write the enlarged-space layout JSON (nonmoralizing)");

  ExperimentArgs xa;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment from a JSON config");
  experiment->add_option("config", xa.config, "Config path")->required();
  experiment->add_option("--out", xa.out, "CSV output path (overrides the config)");
  experiment->add_option("--svg", xa.svg, "SVG output path (overrides the config)");

  for (auto [cmd, seed] : {std::pair{graph, &ga.seed}, {classify, &ca.seed}, {evolve_cmd, &ea.seed},
                           {experiment, &xa.seed}}) {
    cmd->add_option("--seed", *seed, "Seed for er: graph sources without seed= (experiment: overrides config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*graph) return cmd_graph(ga);
    if (*classify) return cmd_classify(ca);
    if (*evolve_cmd) return cmd_evolve(ea);
    if (*experiment) return cmd_experiment(xa);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalBreakdown& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NotCommuting& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const qswlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
