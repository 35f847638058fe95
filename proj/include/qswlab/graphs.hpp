#pragma once

// Named graph constructors. Figure-specific graphs use 0-based indices; the
// comment on each constructor gives the label mapping.

#include "qswlab/graph.hpp"

#include <array>
#include <map>
#include <vector>

namespace qswlab::graphs {

using Edge = std::pair<Vertex, Vertex>;

/// Vertices labelled -n..n (index = label + n); arcs point away from 0 on
/// both sides, so -n and n are sinks. 2n+1 vertices, 2n arcs.
inline Digraph bidirected_path(std::size_t n) {
  if (n == 0) throw InvalidArgument("bidirected_path needs n >= 1");
  std::vector<Edge> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    arcs.emplace_back(n - i, n - i - 1);  // label -i -> -(i+1)
    arcs.emplace_back(n + i, n + i + 1);  // label i -> i+1
  }
  return Digraph(2 * n + 1, arcs);
}

/// Hub 0 with arcs to leaves 1..k-1.
inline Digraph star(std::size_t k) {
  if (k < 2) throw InvalidArgument("star needs k >= 2 vertices");
  std::vector<Edge> arcs;
  for (Vertex v = 1; v < k; ++v) arcs.emplace_back(0, v);
  return Digraph(k, arcs);
}

/// Circulant digraph on 4k vertices: the cycle traversed in both directions
/// plus the chord arcs i+2 -> i (indices mod 4k).
inline Digraph circulant_chord_graph(std::size_t k) {
  if (k < 2) throw InvalidArgument("circulant_chord_graph needs k >= 2");
  const std::size_t n = 4 * k;
  std::vector<Edge> arcs;
  for (Vertex i = 0; i < n; ++i) {
    arcs.emplace_back(i, (i + 1) % n);
    arcs.emplace_back((i + 1) % n, i);
    arcs.emplace_back((i + 2) % n, i);
  }
  return Digraph(n, arcs);
}

/// v1 -> v3 <- v2, labels v1,v2,v3 mapped to 0,1,2.
inline Digraph fig5_graph() {
  const std::array<Edge, 2> arcs{{{0, 2}, {1, 2}}};
  return Digraph(3, arcs);
}

/// Undirected: hub v0 joined to v1..v5, plus the edge v4 - v5. Label v_i is index i.
inline Digraph fig6_graph() {
  const std::array<Edge, 6> edges{{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {4, 5}}};
  return Digraph::undirected(6, edges);
}

/// Undirected 7-vertex graph, labels v1..v7 mapped to indices 0..6.
inline Digraph fig7_graph() {
  const std::array<Edge, 9> labelled{{{7, 2}, {2, 4}, {4, 1}, {5, 1}, {2, 6}, {1, 3}, {2, 1}, {6, 1}, {2, 3}}};
  std::vector<Edge> edges;
  for (auto [a, b] : labelled) edges.emplace_back(a - 1, b - 1);
  return Digraph::undirected(7, edges);
}

/// 0 -> 1 -> ... -> n-1.
inline Digraph directed_path(std::size_t n) {
  if (n == 0) throw InvalidArgument("directed_path needs n >= 1");
  std::vector<Edge> arcs;
  for (Vertex i = 0; i + 1 < n; ++i) arcs.emplace_back(i, i + 1);
  return Digraph(n, arcs);
}

inline Digraph path(std::size_t n) {
  if (n == 0) throw InvalidArgument("path needs n >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Digraph::undirected(n, edges);
}

inline Digraph cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Digraph::undirected(n, edges);
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i - i+5.
inline Digraph petersen() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Digraph::undirected(10, edges);
}

/// Stacked triangulation on 12 vertices: outer triangle 0,1,2; vertex 3 in
/// its interior; 4..6 in the three faces of that step; 7..11 in the first
/// five faces of the following step (faces enumerated in creation order).
inline Digraph apollonian() {
  using Face = std::array<Vertex, 3>;
  std::vector<Edge> edges{{0, 1}, {1, 2}, {0, 2}};
  std::vector<Face> faces{{0, 1, 2}};
  Vertex next = 3;
  auto insert = [&](const Face& f, std::vector<Face>& out) {
    Vertex c = next++;
    for (Vertex v : f) edges.emplace_back(v, c);
    out.push_back({f[0], f[1], c});
    out.push_back({f[1], f[2], c});
    out.push_back({f[0], f[2], c});
  };
  while (next < 12) {
    std::vector<Face> created;
    for (const Face& f : faces) {
      if (next >= 12) break;
      insert(f, created);
    }
    faces = std::move(created);
  }
  return Digraph::undirected(12, edges);
}

/// Sierpinski gasket graph after two subdivisions (15 vertices, 27 edges).
/// Vertices are numbered by lattice position, row by row from the apex.
inline Digraph sierpinski_triangle() {
  // Lattice coordinates (row, col) with 0 <= col <= row <= 4.
  using Point = std::pair<int, int>;
  std::vector<std::pair<Point, Point>> segments;
  auto triangle = [&](auto&& self, Point apex, int size, int depth) -> void {
    Point left{apex.first + size, apex.second};
    Point right{apex.first + size, apex.second + size};
    if (depth == 0) {
      segments.emplace_back(apex, left);
      segments.emplace_back(apex, right);
      segments.emplace_back(left, right);
      return;
    }
    int half = size / 2;
    self(self, apex, half, depth - 1);
    self(self, Point{apex.first + half, apex.second}, half, depth - 1);
    self(self, Point{apex.first + half, apex.second + half}, half, depth - 1);
  };
  triangle(triangle, Point{0, 0}, 4, 2);
  std::map<Point, Vertex> ids;
  for (const auto& [a, b] : segments) {
    ids.emplace(a, 0);
    ids.emplace(b, 0);
  }
  Vertex next = 0;
  for (auto& [p, id] : ids) id = next++;
  std::vector<Edge> edges;
  for (const auto& [a, b] : segments) edges.emplace_back(ids.at(a), ids.at(b));
  return Digraph::undirected(ids.size(), edges);
}

/// Orients every edge of the underlying graph towards `sink`: an edge goes
/// from the endpoint with larger (distance to sink, index) to the smaller
/// one. The result is acyclic with `sink` as its only sink.
inline Digraph orient_towards(const Digraph& g, Vertex sink) {
  Digraph u = g.underlying_graph();
  if (!is_weakly_connected(u)) throw InvalidArgument("orient_towards needs a connected graph");
  const std::array<Vertex, 1> target{sink};
  auto dist = distances_to(u, target);
  std::vector<Edge> arcs;
  for (const Arc& a : u.arcs()) {
    if (a.from > a.to) continue;
    auto key_from = std::pair(*dist[a.from], a.from);
    auto key_to = std::pair(*dist[a.to], a.to);
    if (key_from > key_to) {
      arcs.emplace_back(a.from, a.to);
    } else {
      arcs.emplace_back(a.to, a.from);
    }
  }
  return Digraph(g.size(), arcs);
}

inline Digraph oriented_path(std::size_t n) { return directed_path(n); }
inline Digraph oriented_petersen() { return orient_towards(petersen(), 0); }
inline Digraph oriented_apollonian() { return orient_towards(apollonian(), 0); }
inline Digraph oriented_sierpinski_triangle() { return orient_towards(sierpinski_triangle(), 0); }

inline Digraph single_vertex() { return Digraph(1); }

}  // namespace qswlab::graphs
