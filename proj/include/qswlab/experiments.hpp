#pragma once

#include "qswlab/dynamics.hpp"
#include "qswlab/graphs.hpp"
#include "qswlab/nonmoralizing.hpp"
#include "qswlab/parallel.hpp"
#include "qswlab/random_graph.hpp"
#include "qswlab/spectral.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace qswlab {

/// A generator in one of the three models together with its superoperator
/// and the vertex subspaces used for the canonical measurement.
struct Walk {
  QswGenerator generator;
  Superoperator superoperator;

  const std::vector<Subspace>& subspaces() const { return generator.vertex_subspaces(); }
  std::vector<double> distribution(const CMatrix& rho) const {
    return VertexMeasurement(subspaces()).distribution(rho);
  }
};

inline Walk build_walk(const Digraph& g, Model model, double omega,
                       const HamiltonianChoice& h = HamiltonianChoice::underlying_adjacency()) {
  QswGenerator gen = [&] {
    switch (model) {
      case Model::local: return build_local(g, omega, h);
      case Model::global: return build_global(g, omega, h);
      case Model::nonmoralizing: return build_nonmoralizing(g, omega).generator();
    }
    throw InvalidArgument("unknown model");
  }();
  Superoperator f = assemble_superoperator(gen);
  return {std::move(gen), std::move(f)};
}

/// start, start+step, ... up to stop (inclusive within 1e-9 of a step).
/// Values are rounded to 12 digits so grids print cleanly.
inline std::vector<double> omega_grid(double start, double stop, double step) {
  if (step == 0.0 || !std::isfinite(step) || (stop - start) * step < 0.0) {
    throw ConfigError("omega grid step has the wrong sign or is zero");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return grid;
}

struct ObservanceMetrics {
  std::string graph_id;
  double omega = 0.0;
  double p_sink = 0.0;
  double mu_sink = 0.0;
  /// Time horizon of the stationary estimate (0 when no evolution ran).
  double time = 0.0;
  bool converged = true;
  /// True when the state is the unique null vector of F rather than an evolved state.
  bool spectral_limit = false;
  Vertex start_vertex = 0;
};

struct ThresholdResult {
  std::string graph_id;
  std::vector<double> omega_grid;
  std::vector<Verdict> verdicts;
  /// Largest grid value such that it and every smaller grid value are relaxing.
  std::optional<double> omega_t;
  /// True when the relaxing grid points form a prefix of the sorted grid.
  bool single_threshold = false;
  std::optional<double> omega_0;
  std::vector<ObservanceMetrics> observance;
};

inline ThresholdResult scan_omega_threshold(const Digraph& g, Model model, std::vector<double> grid,
                                            double tol_zero = 1e-8, std::string graph_id = {}) {
  for (double w : grid) {
    if (!(w > 0.0 && w <= 1.0)) throw ConfigError("threshold scan grid must lie in (0,1]");
  }
  std::sort(grid.begin(), grid.end());
  ThresholdResult r;
  r.graph_id = std::move(graph_id);
  r.omega_grid = grid;
  r.verdicts.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    Walk walk = build_walk(g, model, grid[i]);
    r.verdicts[i] = spectrum(walk.superoperator, {tol_zero}).verdict;
  });
  std::size_t prefix = 0;
  while (prefix < grid.size() && r.verdicts[prefix] == Verdict::relaxing) ++prefix;
  if (prefix > 0) r.omega_t = grid[prefix - 1];
  r.single_threshold = std::none_of(r.verdicts.begin() + static_cast<std::ptrdiff_t>(prefix), r.verdicts.end(),
                                    [](Verdict v) { return v == Verdict::relaxing; });
  return r;
}

// ---------------------------------------------------------------------------
// Erdos-Renyi surveys

enum class SurveyFilter { none, weakly_connected, strongly_connected, one_sink, multi_sink };

inline std::string to_string(SurveyFilter f) {
  switch (f) {
    case SurveyFilter::none: return "none";
    case SurveyFilter::weakly_connected: return "weakly_connected";
    case SurveyFilter::strongly_connected: return "strongly_connected";
    case SurveyFilter::one_sink: return "one_sink";
    case SurveyFilter::multi_sink: return "multi_sink";
  }
  return "unknown";
}

inline SurveyFilter parse_filter(const std::string& s) {
  for (SurveyFilter f : {SurveyFilter::none, SurveyFilter::weakly_connected, SurveyFilter::strongly_connected,
                         SurveyFilter::one_sink, SurveyFilter::multi_sink}) {
    if (to_string(f) == s) return f;
  }
  throw ConfigError("unknown survey filter '" + s + "'");
}

/// one_sink and multi_sink also require weak connectivity.
inline bool passes_filter(const Digraph& g, SurveyFilter f) {
  switch (f) {
    case SurveyFilter::none: return true;
    case SurveyFilter::weakly_connected: return is_weakly_connected(g);
    case SurveyFilter::strongly_connected: return connectivity(g) == Connectivity::strongly_connected;
    case SurveyFilter::one_sink: return is_weakly_connected(g) && condense(g).sink_blocks.size() == 1;
    case SurveyFilter::multi_sink: return is_weakly_connected(g) && condense(g).sink_blocks.size() >= 2;
  }
  return false;
}

inline constexpr std::size_t kMaxFilterAttempts = 100000;

struct SampledGraph {
  Digraph graph;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

/// Resamples G(n, p) with seeds derive_seed(base, task, attempt) until the
/// filter accepts.
inline SampledGraph sample_filtered(std::size_t n, double p, bool directed, SurveyFilter filter,
                                    std::uint64_t base_seed, std::uint64_t task) {
  for (std::size_t attempt = 0; attempt < kMaxFilterAttempts; ++attempt) {
    const std::uint64_t seed = derive_seed(base_seed, task, attempt);
    Digraph g = sample_erdos_renyi(n, p, directed, seed);
    if (passes_filter(g, filter)) return {std::move(g), seed, attempt + 1};
  }
  throw FilterExhausted("no G(" + std::to_string(n) + ", " + std::to_string(p) + ") sample passed filter '" +
                        to_string(filter) + "' after " + std::to_string(kMaxFilterAttempts) + " attempts");
}

struct SurveyConfig {
  std::vector<std::size_t> n_list;
  double p = 0.5;
  std::size_t count = 0;
  std::vector<double> omega_grid;
  Model model = Model::global;
  SurveyFilter filter = SurveyFilter::weakly_connected;
  std::uint64_t seed = 0;
  bool directed = true;
  double tol_zero = 1e-8;
};

struct SurveyRow {
  std::size_t n = 0;
  double p = 0.0;
  std::size_t graph_index = 0;
  std::uint64_t seed = 0;
  double omega = 0.0;
  Model model = Model::global;
  Verdict verdict = Verdict::relaxing;
  std::size_t null_dim = 0;
  double wall_time_s = 0.0;
};

/// Rows ordered by (n in n_list order, graph index, omega grid order).
inline std::vector<SurveyRow> er_survey(const SurveyConfig& cfg) {
  const std::size_t tasks = cfg.n_list.size() * cfg.count;
  std::vector<std::vector<SurveyRow>> per_task(tasks);
  parallel_for(tasks, [&](std::size_t task) {
    const std::size_t ni = task / cfg.count;
    const std::size_t gi = task % cfg.count;
    const std::size_t n = cfg.n_list[ni];
    SampledGraph s = sample_filtered(n, cfg.p, cfg.directed, cfg.filter, derive_seed(cfg.seed, n), gi);
    for (double w : cfg.omega_grid) {
      const auto start = std::chrono::steady_clock::now();
      Walk walk = build_walk(s.graph, cfg.model, w);
      SpectralReport rep = spectrum(walk.superoperator, {cfg.tol_zero});
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      per_task[task].push_back({n, cfg.p, gi, s.seed, w, cfg.model, rep.verdict, rep.null_dim, elapsed.count()});
    }
  });
  std::vector<SurveyRow> rows;
  for (auto& t : per_task) rows.insert(rows.end(), t.begin(), t.end());
  return rows;
}

// ---------------------------------------------------------------------------
// Periodic (non-convergent) examples

enum class PeriodicityKind { circulant, nonmoralizing_fig6 };

struct PeriodicityCase {
  PeriodicityKind kind = PeriodicityKind::circulant;
  std::size_t k = 2;  // circulant only
  double omega = 0.5;
};

struct PeriodicSetup {
  Walk walk;
  DensityMatrix initial;
  double period = 0.0;
};

/// Builds the walk, the periodic initial state and its period.
inline PeriodicSetup periodicity_setup(const PeriodicityCase& c) {
  if (c.kind == PeriodicityKind::circulant) {
    if (!(c.omega > 0.0 && c.omega < 1.0)) throw InvalidArgument("circulant periodicity needs omega in (0,1)");
    Digraph g = graphs::circulant_chord_graph(c.k);
    const auto n = static_cast<Eigen::Index>(g.size());
    const auto k = static_cast<Eigen::Index>(c.k);
    CVector psi = circulant_eigenvector(n, k) + circulant_eigenvector(n, 2 * k);
    DensityMatrix rho0(0.5 * psi * psi.adjoint());
    return {build_walk(g, Model::global, c.omega), std::move(rho0), std::numbers::pi / (1.0 - c.omega)};
  }
  if (!(c.omega > 0.0 && c.omega <= 1.0)) throw InvalidArgument("fig6 periodicity needs omega in (0,1]");
  Digraph g = graphs::fig6_graph();
  NonMoralizingGenerator nm = build_nonmoralizing(g, c.omega);
  const Subspace hub = nm.space().subspace(0);
  // Eigenvalues come out ascending, so the first and last vectors belong to -sqrt3 and +sqrt3.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rotating_block(hub.dim));
  CVector psi = CVector::Zero(nm.space().total_dim());
  psi.segment(hub.offset, hub.dim) = es.eigenvectors().col(0) + es.eigenvectors().col(hub.dim - 1);
  DensityMatrix rho0(0.5 * psi * psi.adjoint());
  QswGenerator gen = nm.generator();
  Superoperator f = assemble_superoperator(gen);
  return {{std::move(gen), std::move(f)}, std::move(rho0), std::numbers::pi / (std::sqrt(3.0) * c.omega)};
}

struct PeriodicityReport {
  double period = 0.0;
  double max_deviation = 0.0;
  std::vector<double> sample_times;
};

/// max over t in sample_times of ||rho_{t+T} - rho_t||_F.
inline PeriodicityReport periodicity_demo(const PeriodicityCase& c, std::vector<double> sample_times = {0.0}) {
  PeriodicSetup s = periodicity_setup(c);
  PeriodicityReport r{s.period, 0.0, std::move(sample_times)};
  for (double t : r.sample_times) {
    DensityMatrix a = evolve(s.walk.superoperator, s.initial, t);
    DensityMatrix b = evolve(s.walk.superoperator, s.initial, t + s.period);
    r.max_deviation = std::max(r.max_deviation, (b.matrix() - a.matrix()).norm());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Digraph-structure observance

struct ObservanceOptions {
  Model model = Model::nonmoralizing;
  StationarityOptions stationarity{};
  /// When evolution hits the cap and F is relaxing, use its stationary state.
  bool spectral_fallback = true;
  /// Start vertex; defaults to default_start_vertex(g).
  std::optional<Vertex> start;
  /// Target set for p_S and mu_S; empty means every vertex in a sink block.
  std::vector<Vertex> targets;
};

/// Lowest-index vertex outside every sink block, or 0 if there is none.
inline Vertex default_start_vertex(const Digraph& g) {
  Condensation c = condense(g);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!c.is_sink_vertex(v)) return v;
  }
  return 0;
}

struct SinkProfile {
  std::vector<Vertex> targets;
  std::vector<std::size_t> distance;
};

inline SinkProfile sink_profile(const Digraph& g, std::vector<Vertex> targets = {}) {
  if (targets.empty()) targets = condense(g).sink_vertices;
  std::vector<std::size_t> d(g.size());
  auto dist = distances_to(g, targets);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!dist[v]) throw Unreachable("vertex " + std::to_string(v) + " cannot reach the target set");
    d[v] = *dist[v];
  }
  return {std::move(targets), std::move(d)};
}

/// p_S and mu_S of a vertex distribution.
inline std::pair<double, double> observance_of(const std::vector<double>& distribution, const SinkProfile& profile) {
  double p = 0.0;
  double mu = 0.0;
  for (Vertex v = 0; v < distribution.size(); ++v) {
    const auto dv = static_cast<double>(profile.distance.at(v));
    if (profile.distance[v] == 0) p += distribution[v];
    mu += dv * dv * distribution[v];
  }
  return {p, mu};
}

inline ObservanceMetrics observance_at(const Digraph& g, double omega, const ObservanceOptions& opts,
                                       const SinkProfile& profile, const std::string& graph_id = {}) {
  ObservanceMetrics m;
  m.graph_id = graph_id;
  m.omega = omega;
  m.start_vertex = opts.start.value_or(default_start_vertex(g));
  if (m.start_vertex >= g.size()) throw InvalidArgument("start vertex out of range");
  if (std::all_of(profile.distance.begin(), profile.distance.end(), [](std::size_t d) { return d == 0; })) {
    m.p_sink = 1.0;
    m.mu_sink = 0.0;
    return m;
  }
  Walk walk = build_walk(g, opts.model, omega);
  const Subspace s = walk.subspaces().at(m.start_vertex);
  DensityMatrix rho0 = DensityMatrix::basis_state(walk.generator.dim(), s.offset);
  StationaryEstimate est = evolve_to_stationarity(walk.superoperator, rho0, opts.stationarity);
  m.time = est.time;
  m.converged = est.converged;
  if (!est.converged && opts.spectral_fallback) {
    // A relaxing walk has one stationary state and every start converges to it.
    SpectralReport r = spectrum(walk.superoperator, {.stationary_states = true});
    if (r.verdict == Verdict::relaxing && r.stationary_basis.size() == 1) {
      est.state = r.stationary_basis.front();
      m.spectral_limit = true;
      m.converged = true;
    }
  }
  auto [p, mu] = observance_of(walk.distribution(est.state.matrix()), profile);
  m.p_sink = std::clamp(p, 0.0, 1.0);
  m.mu_sink = std::max(mu, 0.0);
  return m;
}

inline std::vector<ObservanceMetrics> observance_scan(const Digraph& g, const std::vector<double>& grid,
                                                      const ObservanceOptions& opts = {},
                                                      const std::string& graph_id = {}) {
  SinkProfile profile = sink_profile(g, opts.targets);
  std::vector<ObservanceMetrics> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out[i] = observance_at(g, grid[i], opts, profile, graph_id); });
  return out;
}

/// Slack on the monotonicity comparisons; well above the stationarity noise.
inline constexpr double kMonotonicityTol = 1e-6;

/// Sweeps omega = 1, 1-step, ... (> 0) and stops at the first sample where
/// p_S increases or mu_S decreases relative to the previous one.
inline ThresholdResult find_omega_0(const Digraph& g, double step = 0.02, const ObservanceOptions& opts = {},
                                    const std::string& graph_id = {}) {
  if (!(step > 0.0 && step <= 1.0)) throw ConfigError("omega_0 step must lie in (0,1]");
  SinkProfile profile = sink_profile(g, opts.targets);
  ThresholdResult r;
  r.graph_id = graph_id;
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double w = std::round((1.0 - static_cast<double>(i) * step) * 1e12) / 1e12;
    if (w <= 1e-12) break;
    grid.push_back(w);
  }
  for (double w : grid) {
    ObservanceMetrics m = observance_at(g, w, opts, profile, graph_id);
    r.omega_grid.push_back(w);
    const bool stop = !r.observance.empty() && (m.p_sink > r.observance.back().p_sink + kMonotonicityTol ||
                                                 m.mu_sink < r.observance.back().mu_sink - kMonotonicityTol);
    r.observance.push_back(m);
    if (stop) {
      r.omega_0 = w;
      return r;
    }
  }
  r.omega_0 = r.omega_grid.back();
  return r;
}

}  // namespace qswlab
