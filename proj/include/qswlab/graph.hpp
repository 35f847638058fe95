#pragma once

#include "qswlab/core.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qswlab {

using Vertex = std::size_t;

struct Arc {
  Vertex from = 0;
  Vertex to = 0;
  Complex weight{1.0, 0.0};

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Simple digraph on vertices 0..n-1. Arcs are kept sorted by (from, to);
/// self-loops and parallel arcs are rejected. Immutable once built.
class Digraph {
 public:
  Digraph() = default;

  explicit Digraph(std::size_t n) : n_(n), out_(n), in_(n) {}

  Digraph(std::size_t n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)), out_(n), in_(n) {
    for (const Arc& a : arcs_) {
      if (a.from >= n_ || a.to >= n_) {
        throw InvalidArgument("arc (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                              ") has an endpoint outside 0.." + std::to_string(n_ == 0 ? 0 : n_ - 1));
      }
      if (a.from == a.to) throw InvalidArgument("self-loop at vertex " + std::to_string(a.from));
      if (a.weight == Complex{0.0, 0.0}) {
        throw InvalidArgument("arc (" + std::to_string(a.from) + "," + std::to_string(a.to) + ") has zero weight");
      }
    }
    std::sort(arcs_.begin(), arcs_.end(),
              [](const Arc& x, const Arc& y) { return std::pair(x.from, x.to) < std::pair(y.from, y.to); });
    for (std::size_t i = 1; i < arcs_.size(); ++i) {
      if (arcs_[i].from == arcs_[i - 1].from && arcs_[i].to == arcs_[i - 1].to) {
        throw InvalidArgument("duplicate arc (" + std::to_string(arcs_[i].from) + "," +
                              std::to_string(arcs_[i].to) + ")");
      }
    }
    for (const Arc& a : arcs_) {
      out_[a.from].push_back(a.to);
      in_[a.to].push_back(a.from);
    }
    for (auto& preds : in_) std::sort(preds.begin(), preds.end());
  }

  Digraph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> arcs)
      : Digraph(n, to_arcs(arcs)) {}

  /// Each edge {u,v} becomes the two arcs (u,v) and (v,u).
  static Digraph undirected(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<Arc> arcs;
    arcs.reserve(2 * edges.size());
    for (auto [u, v] : edges) {
      arcs.push_back({u, v});
      arcs.push_back({v, u});
    }
    return Digraph(n, std::move(arcs));
  }

  std::size_t size() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  const std::vector<Vertex>& successors(Vertex v) const { return out_.at(v); }
  /// Parents of v in ascending order.
  const std::vector<Vertex>& predecessors(Vertex v) const { return in_.at(v); }
  std::size_t outdegree(Vertex v) const { return out_.at(v).size(); }
  std::size_t indegree(Vertex v) const { return in_.at(v).size(); }

  std::optional<Complex> weight(Vertex from, Vertex to) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), std::pair(from, to),
                               [](const Arc& a, const std::pair<Vertex, Vertex>& key) {
                                 return std::pair(a.from, a.to) < key;
                               });
    if (it != arcs_.end() && it->from == from && it->to == to) return it->weight;
    return std::nullopt;
  }
  bool has_arc(Vertex from, Vertex to) const { return weight(from, to).has_value(); }

  bool is_symmetric() const {
    return std::all_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return has_arc(a.to, a.from); });
  }

  bool has_unit_weights() const {
    return std::all_of(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.weight == Complex{1.0, 0.0}; });
  }

  /// Column-indexed by source: entry (w, v) is c_(v,w), so the matrix maps |v> to |w>.
  CMatrix adjacency_matrix() const {
    CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (const Arc& arc : arcs_) a(static_cast<Eigen::Index>(arc.to), static_cast<Eigen::Index>(arc.from)) = arc.weight;
    return a;
  }

  /// Symmetric unit-weight digraph with an edge wherever either direction has an arc.
  Digraph underlying_graph() const {
    std::vector<Arc> arcs;
    for (const Arc& a : arcs_) {
      arcs.push_back({a.from, a.to});
      if (!has_arc(a.to, a.from)) arcs.push_back({a.to, a.from});
    }
    return Digraph(n_, std::move(arcs));
  }

  RMatrix underlying_adjacency() const {
    RMatrix h = RMatrix::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (const Arc& a : arcs_) {
      h(static_cast<Eigen::Index>(a.from), static_cast<Eigen::Index>(a.to)) = 1.0;
      h(static_cast<Eigen::Index>(a.to), static_cast<Eigen::Index>(a.from)) = 1.0;
    }
    return h;
  }

  friend bool operator==(const Digraph& x, const Digraph& y) { return x.n_ == y.n_ && x.arcs_ == y.arcs_; }

 private:
  static std::vector<Arc> to_arcs(std::span<const std::pair<Vertex, Vertex>> pairs) {
    std::vector<Arc> arcs;
    arcs.reserve(pairs.size());
    for (auto [u, v] : pairs) arcs.push_back({u, v});
    return arcs;
  }

  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

struct Condensation {
  /// Strongly connected components; each sorted ascending, blocks ordered by smallest member.
  std::vector<std::vector<Vertex>> blocks;
  std::vector<std::size_t> block_of;
  /// Arcs between distinct blocks, sorted, no duplicates.
  std::vector<std::pair<std::size_t, std::size_t>> block_dag;
  std::vector<std::size_t> sink_blocks;
  /// Union of the sink blocks, ascending.
  std::vector<Vertex> sink_vertices;

  Digraph block_graph() const {
    return Digraph(blocks.size(), std::span<const std::pair<Vertex, Vertex>>(block_dag));
  }

  bool is_sink_vertex(Vertex v) const {
    return std::binary_search(sink_vertices.begin(), sink_vertices.end(), v);
  }
};

namespace detail {

// Iterative Tarjan; returns the component index of each vertex (in Tarjan's
// completion order, re-labelled later).
inline std::vector<std::size_t> tarjan_components(const Digraph& g, std::size_t& count) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack;
  std::vector<std::pair<Vertex, std::size_t>> call;  // (vertex, next successor position)
  std::size_t next_index = 0;
  count = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      const auto& succ = g.successors(v);
      if (pos < succ.size()) {
        Vertex w = succ[pos++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      Vertex done = v;
      call.pop_back();
      if (!call.empty()) {
        Vertex parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return comp;
}

}  // namespace detail

inline Condensation condense(const Digraph& g) {
  std::size_t count = 0;
  std::vector<std::size_t> raw = detail::tarjan_components(g, count);

  // Relabel blocks by their smallest vertex so block IDs are deterministic.
  std::vector<std::size_t> relabel(count, std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (relabel[raw[v]] == std::numeric_limits<std::size_t>::max()) relabel[raw[v]] = next++;
  }

  Condensation c;
  c.blocks.resize(count);
  c.block_of.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    c.block_of[v] = relabel[raw[v]];
    c.blocks[c.block_of[v]].push_back(v);
  }
  for (const Arc& a : g.arcs()) {
    std::size_t b1 = c.block_of[a.from], b2 = c.block_of[a.to];
    if (b1 != b2) c.block_dag.emplace_back(b1, b2);
  }
  std::sort(c.block_dag.begin(), c.block_dag.end());
  c.block_dag.erase(std::unique(c.block_dag.begin(), c.block_dag.end()), c.block_dag.end());

  std::vector<bool> has_out(count, false);
  for (auto [b1, b2] : c.block_dag) has_out[b1] = true;
  for (std::size_t b = 0; b < count; ++b) {
    if (!has_out[b]) {
      c.sink_blocks.push_back(b);
      c.sink_vertices.insert(c.sink_vertices.end(), c.blocks[b].begin(), c.blocks[b].end());
    }
  }
  std::sort(c.sink_vertices.begin(), c.sink_vertices.end());
  return c;
}

enum class Connectivity { strongly_connected, weakly_connected, disconnected };

inline std::string to_string(Connectivity c) {
  switch (c) {
    case Connectivity::strongly_connected: return "strongly_connected";
    case Connectivity::weakly_connected: return "weakly_connected";
    case Connectivity::disconnected: return "disconnected";
  }
  return "unknown";
}

inline bool is_weakly_connected(const Digraph& g) {
  if (g.size() == 0) return true;
  std::vector<std::vector<Vertex>> nbrs(g.size());
  for (const Arc& a : g.arcs()) {
    nbrs[a.from].push_back(a.to);
    nbrs[a.to].push_back(a.from);
  }
  std::vector<bool> seen(g.size(), false);
  std::deque<Vertex> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : nbrs[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == g.size();
}

inline Connectivity connectivity(const Digraph& g) {
  if (condense(g).blocks.size() <= 1) return Connectivity::strongly_connected;
  return is_weakly_connected(g) ? Connectivity::weakly_connected : Connectivity::disconnected;
}

/// Directed moral graph: adds both (v,v') and (v',v) for every pair of
/// distinct parents sharing a child. Added arcs carry unit weight.
inline Digraph moral_closure(const Digraph& g) {
  std::vector<Arc> arcs = g.arcs();
  std::vector<std::pair<Vertex, Vertex>> extra;
  for (Vertex w = 0; w < g.size(); ++w) {
    const auto& parents = g.predecessors(w);
    for (Vertex u : parents) {
      for (Vertex u2 : parents) {
        if (u != u2 && !g.has_arc(u, u2)) extra.emplace_back(u, u2);
      }
    }
  }
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  for (auto [u, u2] : extra) arcs.push_back({u, u2});
  return Digraph(g.size(), std::move(arcs));
}

/// Shortest directed distance from every vertex to the nearest target, via
/// BFS on the reversed graph. nullopt marks vertices that reach no target.
inline std::vector<std::optional<std::size_t>> distances_to(const Digraph& g, std::span<const Vertex> targets) {
  std::vector<std::optional<std::size_t>> dist(g.size());
  std::deque<Vertex> queue;
  for (Vertex t : targets) {
    if (t >= g.size()) throw InvalidArgument("target vertex " + std::to_string(t) + " out of range");
    if (!dist[t]) {
      dist[t] = 0;
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    Vertex w = queue.front();
    queue.pop_front();
    for (Vertex v : g.predecessors(w)) {
      if (!dist[v]) {
        dist[v] = *dist[w] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

/// d(v, S): distance from v to the union of the condensation's sink blocks.
inline std::vector<std::size_t> sink_distances(const Digraph& g) {
  Condensation c = condense(g);
  auto dist = distances_to(g, c.sink_vertices);
  std::vector<std::size_t> out(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!dist[v]) throw Unreachable("vertex " + std::to_string(v) + " reaches no sink block");
    out[v] = *dist[v];
  }
  return out;
}

inline std::size_t sink_distance(const Digraph& g, Vertex v, std::span<const Vertex> targets) {
  if (v >= g.size()) throw InvalidArgument("vertex " + std::to_string(v) + " out of range");
  auto dist = distances_to(g, targets);
  if (!dist[v]) throw Unreachable("vertex " + std::to_string(v) + " reaches none of the target vertices");
  return *dist[v];
}

inline std::size_t sink_distance(const Digraph& g, Vertex v) {
  Condensation c = condense(g);
  return sink_distance(g, v, c.sink_vertices);
}

}  // namespace qswlab
