#pragma once

// Graph-source strings and JSON experiment configs.

#include "qswlab/experiments.hpp"
#include "qswlab/io.hpp"

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qswlab {

namespace detail {

inline std::size_t parse_size(const std::string& s, const std::string& what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("invalid " + what + " '" + s + "'");
  return v;
}

inline double parse_number(const std::string& s, const std::string& what) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError("invalid " + what + " '" + s + "'");
  return v;
}

}  // namespace detail

/// Named graph constructors accepted by graph-source strings.
inline const std::map<std::string, std::function<Digraph(std::optional<std::size_t>)>>& named_graphs() {
  using Arg = std::optional<std::size_t>;
  auto need = [](const char* name, Arg a) {
    if (!a) throw ConfigError(std::string("graph '") + name + "' needs a size parameter, e.g. " + name + ":4");
    return *a;
  };
  auto none = [](const char* name, Arg a) {
    if (a) throw ConfigError(std::string("graph '") + name + "' takes no parameter");
  };
  static const std::map<std::string, std::function<Digraph(Arg)>> table{
      {"star", [=](Arg a) { return graphs::star(need("star", a)); }},
      {"bidirected_path", [=](Arg a) { return graphs::bidirected_path(need("bidirected_path", a)); }},
      {"circulant", [=](Arg a) { return graphs::circulant_chord_graph(need("circulant", a)); }},
      {"path", [=](Arg a) { return graphs::path(need("path", a)); }},
      {"directed_path", [=](Arg a) { return graphs::directed_path(need("directed_path", a)); }},
      {"oriented_path", [=](Arg a) { return graphs::oriented_path(need("oriented_path", a)); }},
      {"cycle", [=](Arg a) { return graphs::cycle(need("cycle", a)); }},
      {"fig5", [=](Arg a) { return none("fig5", a), graphs::fig5_graph(); }},
      {"fig6", [=](Arg a) { return none("fig6", a), graphs::fig6_graph(); }},
      {"fig7", [=](Arg a) { return none("fig7", a), graphs::fig7_graph(); }},
      {"petersen", [=](Arg a) { return none("petersen", a), graphs::petersen(); }},
      {"oriented_petersen", [=](Arg a) { return none("oriented_petersen", a), graphs::oriented_petersen(); }},
      {"apollonian", [=](Arg a) { return none("apollonian", a), graphs::apollonian(); }},
      {"oriented_apollonian", [=](Arg a) { return none("oriented_apollonian", a), graphs::oriented_apollonian(); }},
      {"sierpinski", [=](Arg a) { return none("sierpinski", a), graphs::sierpinski_triangle(); }},
      {"oriented_sierpinski",
       [=](Arg a) { return none("oriented_sierpinski", a), graphs::oriented_sierpinski_triangle(); }},
      {"single", [=](Arg a) { return none("single", a), graphs::single_vertex(); }},
  };
  return table;
}

/// "name[:size]", "er:n=9,p=0.2,seed=3[,directed=0]", or an edge-list path.
inline Digraph resolve_graph_source(const std::string& source) {
  const auto colon = source.find(':');
  const std::string head = source.substr(0, colon);
  const std::optional<std::string> arg =
      colon == std::string::npos ? std::nullopt : std::optional<std::string>(source.substr(colon + 1));
  if (head == "er") {
    if (!arg) throw ConfigError("er source needs parameters, e.g. er:n=9,p=0.2,seed=1");
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos <= arg->size()) {
      const auto comma = arg->find(',', pos);
      const std::string item = arg->substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("er parameter '" + item + "' is not key=value");
      const std::string key = item.substr(0, eq);
      if (key != "n" && key != "p" && key != "seed" && key != "directed") {
        throw ConfigError("unknown er parameter '" + key + "'");
      }
      kv[key] = item.substr(eq + 1);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!kv.count("n") || !kv.count("p")) throw ConfigError("er source needs n and p");
    const std::size_t n = detail::parse_size(kv["n"], "er n");
    const double p = detail::parse_number(kv["p"], "er p");
    const std::uint64_t seed = kv.count("seed") ? detail::parse_size(kv["seed"], "er seed") : 0;
    const bool directed = !kv.count("directed") || kv["directed"] != "0";
    return sample_erdos_renyi(n, p, directed, seed);
  }
  const auto& table = named_graphs();
  if (auto it = table.find(head); it != table.end()) {
    std::optional<std::size_t> size;
    if (arg) size = detail::parse_size(*arg, head + " size");
    return it->second(size);
  }
  if (std::filesystem::exists(source)) return io::read_edge_list_file(source);
  throw ConfigError("unknown graph source '" + source + "' (not a named graph and no such file)");
}

// ---------------------------------------------------------------------------

enum class ExperimentKind { threshold_scan, er_survey, periodicity, observance, omega0 };

inline std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::threshold_scan: return "threshold_scan";
    case ExperimentKind::er_survey: return "er_survey";
    case ExperimentKind::periodicity: return "periodicity";
    case ExperimentKind::observance: return "observance";
    case ExperimentKind::omega0: return "omega0";
  }
  return "unknown";
}

struct ErSource {
  std::vector<std::size_t> n;
  double p = 0.5;
  std::size_t count = 0;
  bool directed = true;
  SurveyFilter filter = SurveyFilter::weakly_connected;
};

struct RunConfig {
  ExperimentKind kind = ExperimentKind::threshold_scan;
  std::vector<std::string> graphs;
  std::optional<ErSource> er;
  /// Defaults to local, or nonmoralizing for observance and omega0.
  Model model = Model::local;
  std::vector<double> omega_grid;
  double step = 0.02;
  double tol_zero = 1e-8;
  std::uint64_t seed = 0;
  std::vector<PeriodicityCase> cases;
  std::optional<Vertex> start_vertex;
  double histogram_bin = 0.02;
  bool wall_time = false;
  std::optional<std::string> csv_path;
  std::optional<std::string> svg_path;
  std::optional<std::string> histogram_path;
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) throw ConfigError("unknown field '" + it.key() + "' in " + where);
  }
}

template <class T>
T get(const nlohmann::json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("field '" + std::string(key) + "' in " + where + ": " + e.what());
  }
}

inline std::vector<double> parse_grid(const nlohmann::json& j) {
  std::vector<double> grid;
  if (j.is_array()) {
    grid = get<std::vector<double>>(nlohmann::json{{"omega_grid", j}}, "omega_grid", "config");
  } else {
    reject_unknown(j, {"start", "stop", "step"}, "omega_grid");
    grid = omega_grid(get<double>(j, "start", "omega_grid"), get<double>(j, "stop", "omega_grid"),
                      get<double>(j, "step", "omega_grid"));
  }
  if (grid.empty()) throw ConfigError("omega grid is empty");
  for (double w : grid) {
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("omega grid value " + std::to_string(w) + " outside [0,1]");
  }
  return grid;
}

}  // namespace detail

inline ExperimentKind parse_experiment_kind(const std::string& s) {
  for (ExperimentKind k : {ExperimentKind::threshold_scan, ExperimentKind::er_survey, ExperimentKind::periodicity,
                           ExperimentKind::observance, ExperimentKind::omega0}) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown experiment '" + s + "'");
}

/// Parses and validates a config; every unknown field is an error.
inline RunConfig parse_run_config(const nlohmann::json& j) {
  using detail::get;
  detail::reject_unknown(j,
                         {"experiment", "graphs", "er", "model", "omega_grid", "step", "tol_zero", "seed", "cases",
                          "start_vertex", "histogram_bin", "wall_time", "output"},
                         "config");
  RunConfig c;
  if (!j.contains("experiment")) throw ConfigError("config needs an 'experiment' field");
  c.kind = parse_experiment_kind(get<std::string>(j, "experiment", "config"));
  if (j.contains("graphs")) c.graphs = get<std::vector<std::string>>(j, "graphs", "config");
  if (j.contains("er")) {
    const auto& e = j.at("er");
    detail::reject_unknown(e, {"n", "p", "count", "directed", "filter"}, "er");
    ErSource s;
    s.n = get<std::vector<std::size_t>>(e, "n", "er");
    s.p = get<double>(e, "p", "er");
    s.count = get<std::size_t>(e, "count", "er");
    if (e.contains("directed")) s.directed = get<bool>(e, "directed", "er");
    if (e.contains("filter")) s.filter = parse_filter(get<std::string>(e, "filter", "er"));
    if (!(s.p >= 0.0 && s.p <= 1.0)) throw ConfigError("er p must lie in [0,1]");
    c.er = s;
  }
  if (j.contains("model")) {
    try {
      c.model = parse_model(get<std::string>(j, "model", "config"));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  } else if (c.kind == ExperimentKind::observance || c.kind == ExperimentKind::omega0) {
    c.model = Model::nonmoralizing;
  }
  if (j.contains("omega_grid")) c.omega_grid = detail::parse_grid(j.at("omega_grid"));
  if (j.contains("step")) c.step = get<double>(j, "step", "config");
  if (j.contains("tol_zero")) c.tol_zero = get<double>(j, "tol_zero", "config");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "config");
  if (j.contains("start_vertex")) c.start_vertex = get<std::size_t>(j, "start_vertex", "config");
  if (j.contains("histogram_bin")) c.histogram_bin = get<double>(j, "histogram_bin", "config");
  if (j.contains("wall_time")) c.wall_time = get<bool>(j, "wall_time", "config");
  if (j.contains("cases")) {
    for (const auto& cj : j.at("cases")) {
      detail::reject_unknown(cj, {"kind", "k", "omega"}, "cases entry");
      PeriodicityCase pc;
      const auto kind = get<std::string>(cj, "kind", "cases entry");
      if (kind == "circulant") {
        pc.kind = PeriodicityKind::circulant;
      } else if (kind == "nonmoralizing_fig6") {
        pc.kind = PeriodicityKind::nonmoralizing_fig6;
      } else {
        throw ConfigError("unknown periodicity case '" + kind + "'");
      }
      if (cj.contains("k")) pc.k = get<std::size_t>(cj, "k", "cases entry");
      pc.omega = get<double>(cj, "omega", "cases entry");
      c.cases.push_back(pc);
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    detail::reject_unknown(o, {"csv", "svg", "histogram_csv"}, "output");
    if (o.contains("csv")) c.csv_path = get<std::string>(o, "csv", "output");
    if (o.contains("svg")) c.svg_path = get<std::string>(o, "svg", "output");
    if (o.contains("histogram_csv")) c.histogram_path = get<std::string>(o, "histogram_csv", "output");
  }

  if (!(c.tol_zero > 0.0)) throw ConfigError("tol_zero must be positive");
  switch (c.kind) {
    case ExperimentKind::threshold_scan:
    case ExperimentKind::er_survey:
    case ExperimentKind::observance:
      if (c.omega_grid.empty()) throw ConfigError(to_string(c.kind) + " needs a non-empty omega_grid");
      break;
    case ExperimentKind::periodicity:
      if (c.cases.empty()) throw ConfigError("periodicity needs at least one case");
      break;
    case ExperimentKind::omega0:
      if (!(c.step > 0.0 && c.step <= 1.0)) throw ConfigError("step must lie in (0,1]");
      break;
  }
  if (c.kind == ExperimentKind::er_survey && !c.er) throw ConfigError("er_survey needs an 'er' block");
  if ((c.kind == ExperimentKind::threshold_scan || c.kind == ExperimentKind::observance) && c.graphs.empty()) {
    throw ConfigError(to_string(c.kind) + " needs a non-empty 'graphs' list");
  }
  if (c.kind == ExperimentKind::omega0 && c.graphs.empty() && !c.er) {
    throw ConfigError("omega0 needs 'graphs' or an 'er' block");
  }
  if (c.kind == ExperimentKind::threshold_scan) {
    for (double w : c.omega_grid) {
      if (w == 0.0) throw ConfigError("threshold scan grid must lie in (0,1]");
    }
  }
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

}  // namespace qswlab
