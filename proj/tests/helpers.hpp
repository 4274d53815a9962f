#pragma once

// Test-side random instance builders. Deliberately independent of the library
// RNG: raw std::mt19937_64 draws reduced by modulo/shift so every frozen value
// stays platform-stable (std::*_distribution output is implementation
// defined and never used here).

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "hmn/core.hpp"

namespace testutil {

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// G(n, p) with a test-side coin per pair; returns the graph and its edge list.
struct RandomHomogeneous {
  hmn::Hmn g;
  std::vector<std::pair<hmn::NodeId, hmn::NodeId>> edges;
};

inline RandomHomogeneous random_homogeneous(std::uint32_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<hmn::NodeId, hmn::NodeId>> edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (unit(rng) < p) edges.emplace_back(i, j);
  RandomHomogeneous r{hmn::from_homogeneous(n, edges), edges};
  return r;
}

// Small random heterogeneous multi-layered instance: two layers, a few node
// and edge types, nodes spanning one or both layers, random (possibly
// parallel-typed) edges. Weights are multiples of 0.5 so every path-length
// sum is exact in binary floating point.
inline hmn::Hmn random_typed_small(std::uint64_t seed, std::uint32_t max_layered_nodes = 8) {
  std::mt19937_64 rng(seed);
  bool directed = draw(rng, 2) == 1;
  std::uint32_t node_types = 2 + static_cast<std::uint32_t>(draw(rng, 2));
  std::uint32_t edge_types = 2 + static_cast<std::uint32_t>(draw(rng, 2));

  hmn::Hmn g = hmn::Hmn::with_empty_registries(directed);
  g.add_layer("a");
  g.add_layer("b");
  for (std::uint32_t t = 0; t < node_types; ++t) g.add_node_type("nt" + std::to_string(t));
  for (std::uint32_t t = 0; t < edge_types; ++t) g.add_edge_type("et" + std::to_string(t));

  std::uint32_t layered = 0;
  while (layered < max_layered_nodes) {
    std::uint32_t span = (layered + 2 <= max_layered_nodes && draw(rng, 3) == 0) ? 2 : 1;
    std::vector<hmn::LayerId> ls;
    if (span == 2) ls = {0, 1};
    else ls = {static_cast<hmn::LayerId>(draw(rng, 2))};
    g.add_node(static_cast<hmn::TypeId>(draw(rng, node_types)), ls);
    layered += span;
  }

  std::vector<hmn::LayeredNode> all;
  for (hmn::NodeId v = 0; v < g.node_count(); ++v)
    for (hmn::LayerId l : g.r_vl(v)) all.push_back({v, l});

  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (directed ? i == j : j <= i) continue;
      if (all[i] == all[j]) continue;
      for (hmn::TypeId t = 0; t < edge_types; ++t)
        if (unit(rng) < 0.3) {
          double w = 0.5 * static_cast<double>(1 + draw(rng, 4));
          if (!g.has_edge(all[i], all[j], t)) g.add_edge(all[i], all[j], t, w);
        }
    }
  return g;
}

}  // namespace testutil
