#pragma once

#include "qswlab/graph.hpp"

#include <cstdint>
#include <random>

namespace qswlab {

/// splitmix64 finaliser; used to derive independent per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t task, std::uint64_t attempt = 0) {
  return mix_seed(mix_seed(base + task) ^ (attempt * 0xd1b54a32d192ed03ULL));
}

// Uniform double in [0,1) from the top 53 bits. Spelled out instead of
// std::uniform_real_distribution, whose output is implementation-defined.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// G(n, p). Directed: every ordered pair independently. Undirected: every
/// unordered pair, emitted as two arcs.
inline Digraph sample_erdos_renyi(std::size_t n, double p, bool directed, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v) continue;
      if (unit_uniform(rng) < p) {
        arcs.push_back({u, v});
        if (!directed) arcs.push_back({v, u});
      }
    }
  }
  return Digraph(n, std::move(arcs));
}

}  // namespace qswlab
