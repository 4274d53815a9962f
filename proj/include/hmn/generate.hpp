#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hmn/core.hpp"
#include "hmn/rng.hpp"

namespace hmn {

// Growth-model parameters. m[i][j] is the minimum number of connections a
// node arriving in layer i makes toward layer j (diagonal: within its own
// layer). Attachment weight of an existing candidate is
// floor(alpha * degree + beta * sum of neighbor degrees), evaluated on the
// relevant subgraph (own layer's intra edges for intra connections; the
// destination layer's intra edges plus the layer pair's inter edges for inter
// connections).
struct GenParams {
  std::uint64_t n = 0;
  std::uint32_t layers = 1;
  // Node types drawable per layer. Empty means every layer draws type 0.
  std::vector<std::vector<TypeId>> types_per_layer;
  // layers x layers connection thresholds. Empty means all entries are 2.
  std::vector<std::vector<std::uint32_t>> m;
  double alpha = 1.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  // Integer weights for the per-node layer draw. Empty means uniform.
  std::vector<std::uint64_t> layer_weights;
};

struct GenStats {
  std::uint64_t pool_builds = 0;               // preference-pool constructions
  std::uint64_t max_pool_builds_per_node = 0;  // never exceeds the layer count
  std::uint64_t pending_flushed = 0;           // deferred arrivals later placed
  std::uint64_t pending_left = 0;              // deferred arrivals never placed
  std::vector<std::string> warnings;
};

namespace detail {

// Draws `need` distinct entries of `cands` with probability proportional to
// `weights`, removing each pick. Once all remaining weight is zero the rest
// are drawn uniformly. Preserves candidate order between draws so the result
// depends only on the RNG stream.
inline std::vector<std::uint32_t> sample_distinct(Rng& rng, std::vector<std::uint32_t> cands,
                                                  std::vector<std::uint64_t> weights,
                                                  std::size_t need) {
  std::uint64_t total = 0;
  for (std::uint64_t w : weights) total += w;
  std::vector<std::uint32_t> picks;
  need = std::min(need, cands.size());
  picks.reserve(need);
  while (picks.size() < need) {
    std::size_t at;
    if (total > 0) {
      std::uint64_t r = rng.below(total);
      std::uint64_t acc = 0;
      at = cands.size();
      for (std::size_t i = 0; i < cands.size(); ++i) {
        acc += weights[i];
        if (r < acc) {
          at = i;
          break;
        }
      }
    } else {
      at = static_cast<std::size_t>(rng.below(cands.size()));
    }
    picks.push_back(cands[at]);
    total -= weights[at];
    cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(at));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(at));
  }
  return picks;
}

struct GenState {
  std::uint32_t layers;
  double alpha, beta;
  std::vector<std::vector<std::uint32_t>> m;

  std::vector<std::uint32_t> layer_of, type_of;
  std::vector<std::vector<std::uint32_t>> members;           // per layer, arrival order
  std::vector<std::uint32_t> intra_deg;
  std::vector<std::vector<std::uint32_t>> intra_adj;
  std::vector<std::vector<std::uint32_t>> inter_adj;         // peers in other layers
  std::vector<std::vector<std::uint32_t>> inter_deg_to;      // node x layer
  std::vector<std::vector<std::uint64_t>> pair_edges;        // symmetric counts
  std::vector<std::vector<std::vector<std::uint32_t>>> pending;  // [src][dst] arrivals

  struct Emitted {
    std::uint32_t a, b;
    std::uint32_t la, lb;
  };
  std::vector<Emitted> out_edges;

  GenStats stats;
  std::uint64_t node_pools = 0;

  GenState(std::uint32_t L, double a, double b, std::vector<std::vector<std::uint32_t>> mm)
      : layers(L), alpha(a), beta(b), m(std::move(mm)) {
    members.resize(L);
    pair_edges.assign(L, std::vector<std::uint64_t>(L, 0));
    pending.assign(L, std::vector<std::vector<std::uint32_t>>(L));
  }

  void add_node(std::uint32_t layer, std::uint32_t type) {
    layer_of.push_back(layer);
    type_of.push_back(type);
    intra_deg.push_back(0);
    intra_adj.emplace_back();
    inter_adj.emplace_back();
    inter_deg_to.emplace_back(layers, 0);
    members[layer].push_back(static_cast<std::uint32_t>(layer_of.size() - 1));
  }

  void add_intra(std::uint32_t a, std::uint32_t b) {
    intra_adj[a].push_back(b);
    intra_adj[b].push_back(a);
    ++intra_deg[a];
    ++intra_deg[b];
    out_edges.push_back({a, b, layer_of[a], layer_of[b]});
  }

  void add_inter(std::uint32_t a, std::uint32_t b) {
    inter_adj[a].push_back(b);
    inter_adj[b].push_back(a);
    ++inter_deg_to[a][layer_of[b]];
    ++inter_deg_to[b][layer_of[a]];
    ++pair_edges[layer_of[a]][layer_of[b]];
    ++pair_edges[layer_of[b]][layer_of[a]];
    out_edges.push_back({a, b, layer_of[a], layer_of[b]});
  }

  // Intra attachment for arrival v in its own layer. The layer size check
  // counts v itself: below the threshold nothing happens, exactly at it the
  // layer is wired as a star centered on v, above it v picks m distinct
  // targets by preference weight.
  void connection1(Rng& rng, std::uint32_t v, std::uint32_t li) {
    const std::uint32_t need = m[li][li];
    if (need == 0) return;
    const auto& mem = members[li];
    const std::size_t count = mem.size();  // includes v, appended last
    if (count < need) return;
    if (count == need) {
      for (std::size_t i = 0; i + 1 < count; ++i) add_intra(v, mem[i]);
      return;
    }
    std::vector<std::uint32_t> cands(mem.begin(), mem.end() - 1);
    if (cands.size() <= need) {
      for (std::uint32_t u : cands) add_intra(v, u);
      return;
    }
    std::vector<std::uint64_t> w(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      std::uint32_t u = cands[i];
      double c = alpha * static_cast<double>(intra_deg[u]);
      if (beta > 0) {
        std::uint64_t nd = 0;
        for (std::uint32_t x : intra_adj[u]) nd += intra_deg[x];
        c += beta * static_cast<double>(nd);
      }
      w[i] = static_cast<std::uint64_t>(std::floor(c));
    }
    ++stats.pool_builds;
    ++node_pools;
    for (std::uint32_t u : sample_distinct(rng, std::move(cands), std::move(w), need))
      add_intra(v, u);
  }

  // Uniformly connects p to `need` distinct nodes of layer `dest`, skipping
  // nodes p already reaches there (an opposite-direction bootstrap may have
  // linked them first). Used for bootstrap arrivals and pending flushes.
  void uniform_connect(Rng& rng, std::uint32_t p, std::uint32_t dest, std::uint32_t need) {
    std::vector<std::uint32_t> eligible;
    eligible.reserve(members[dest].size());
    for (std::uint32_t u : members[dest]) {
      bool linked = false;
      for (std::uint32_t q : inter_adj[p])
        if (q == u) {
          linked = true;
          break;
        }
      if (!linked) eligible.push_back(u);
    }
    if (eligible.size() <= need) {
      for (std::uint32_t u : eligible) add_inter(p, u);
      return;
    }
    for (std::uint32_t k = 0; k < need; ++k) {
      std::size_t j = k + static_cast<std::size_t>(rng.below(eligible.size() - k));
      std::swap(eligible[k], eligible[j]);
      add_inter(p, eligible[k]);
    }
  }

  // Flushes pending[src][dst] if the destination layer has reached the
  // threshold.
  void try_drain(Rng& rng, std::uint32_t src, std::uint32_t dst) {
    auto& queue = pending[src][dst];
    if (queue.empty() || members[dst].size() < m[src][dst]) return;
    for (std::uint32_t p : queue) {
      uniform_connect(rng, p, dst, m[src][dst]);
      ++stats.pending_flushed;
    }
    queue.clear();
  }

  // Inter attachment of arrival v (layer li) toward layer lj. While the layer
  // pair has no edges yet, arrivals either wait (destination too small) or
  // bootstrap uniformly; afterwards targets are preference-sampled from the
  // destination layer, weighted on the subgraph of its intra edges plus the
  // pair's inter edges.
  void connection2(Rng& rng, std::uint32_t v, std::uint32_t li, std::uint32_t lj) {
    // v's arrival grew layer li: opposite-direction waiters may be ready
    try_drain(rng, lj, li);
    const std::uint32_t need = m[li][lj];
    if (need == 0) return;
    if (pair_edges[li][lj] == 0) {
      if (members[lj].size() < need) {
        pending[li][lj].push_back(v);
        return;
      }
      try_drain(rng, li, lj);  // waiters flush before v in arrival order
      uniform_connect(rng, v, lj, need);
      return;
    }
    try_drain(rng, li, lj);
    // a drain above may already have linked v from the other side; those
    // nodes must not be offered again
    std::vector<std::uint32_t> cands;
    cands.reserve(members[lj].size());
    for (std::uint32_t u : members[lj]) {
      bool linked = false;
      for (std::uint32_t q : inter_adj[v])
        if (q == u) {
          linked = true;
          break;
        }
      if (!linked) cands.push_back(u);
    }
    if (cands.size() <= need) {
      for (std::uint32_t u : cands) add_inter(v, u);
      return;
    }
    std::vector<std::uint64_t> w(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      std::uint32_t u = cands[i];
      double c = alpha * pool_degree(u, li);
      if (beta > 0) {
        std::uint64_t nd = 0;
        for (std::uint32_t x : intra_adj[u]) nd += pool_degree(x, li);
        for (std::uint32_t x : inter_adj[u])
          if (layer_of[x] == li) nd += inter_deg_to[x][lj];
        c += beta * static_cast<double>(nd);
      }
      w[i] = static_cast<std::uint64_t>(std::floor(c));
    }
    ++stats.pool_builds;
    ++node_pools;
    for (std::uint32_t u : sample_distinct(rng, std::move(cands), std::move(w), need))
      add_inter(v, u);
  }

  // Degree of a destination-layer node within the pool subgraph: its intra
  // edges plus its inter edges toward the source layer.
  double pool_degree(std::uint32_t u, std::uint32_t src_layer) const {
    return static_cast<double>(intra_deg[u]) + static_cast<double>(inter_deg_to[u][src_layer]);
  }
};

}  // namespace detail

// Attachment weights floor(alpha * degree + beta * sum of neighbor degrees)
// for each candidate, evaluated on g's full structure (degree = incident edge
// records; neighbor sums over distinct peers).
inline std::vector<std::uint64_t> node_distribution(const Hmn& g,
                                                    const std::vector<LayeredNode>& candidates,
                                                    double alpha, double beta) {
  if (alpha < 0 || beta < 0) throw Error("node_distribution: negative coefficient");
  auto degree_of = [&](LayeredNode v) {
    return static_cast<double>(g.out_links(v).size() +
                               (g.directed() ? g.in_links(v).size() : 0));
  };
  std::vector<std::uint64_t> out;
  out.reserve(candidates.size());
  for (LayeredNode v : candidates) {
    if (!g.valid_layered(v)) throw Error("node_distribution: not a valid LayeredNode");
    double c = alpha * degree_of(v);
    if (beta > 0) {
      std::vector<LayeredNode> peers;
      for (const Link& lk : g.out_links(v)) peers.push_back(lk.peer);
      if (g.directed())
        for (const Link& lk : g.in_links(v)) peers.push_back(lk.peer);
      detail::sort_unique(peers);
      double nd = 0;
      for (LayeredNode p : peers) nd += degree_of(p);
      c += beta * nd;
    }
    out.push_back(static_cast<std::uint64_t>(std::floor(c)));
  }
  return out;
}

// layers x layers threshold matrix with entries rounded from N(mean, stddev),
// redrawn until >= 1.
inline std::vector<std::vector<std::uint32_t>> sample_m_matrix(std::uint32_t layers, double mean,
                                                               double stddev, Rng& rng) {
  std::vector<std::vector<std::uint32_t>> m(layers, std::vector<std::uint32_t>(layers, 0));
  for (auto& row : m)
    for (auto& cell : row) {
      long long v;
      do {
        v = std::llround(rng.normal(mean, stddev));
      } while (v < 1);
      cell = static_cast<std::uint32_t>(v);
    }
  return m;
}

// Grows an undirected HMN of params.n nodes. Per arrival: draw a layer, draw a
// node type, attach within the layer (connection1), then attach toward every
// other layer in ascending order (connection2). All randomness comes from one
// seeded stream in that documented order, so equal params give byte-identical
// results on every platform.
inline Hmn generate(const GenParams& params, GenStats* stats_out = nullptr) {
  const std::uint32_t L = params.layers;
  if (L == 0) throw Error("generate: need at least one layer");
  if (params.alpha < 0 || params.beta < 0) throw Error("generate: negative coefficient");

  std::vector<std::vector<std::uint32_t>> m = params.m;
  if (m.empty()) m.assign(L, std::vector<std::uint32_t>(L, 2));
  if (m.size() != L) throw Error("generate: m must be layers x layers");
  for (const auto& row : m)
    if (row.size() != L) throw Error("generate: m must be layers x layers");

  std::vector<std::vector<TypeId>> types = params.types_per_layer;
  if (types.empty()) types.assign(L, {0});
  if (types.size() != L) throw Error("generate: types_per_layer must cover every layer");
  TypeId max_type = 0;
  for (const auto& ts : types) {
    if (ts.empty()) throw Error("generate: every layer needs at least one drawable type");
    for (TypeId t : ts) max_type = std::max(max_type, t);
  }

  if (!params.layer_weights.empty()) {
    if (params.layer_weights.size() != L)
      throw Error("generate: layer_weights must cover every layer");
    std::uint64_t tot = 0;
    for (std::uint64_t w : params.layer_weights) tot += w;
    if (tot == 0) throw Error("generate: layer_weights must not all be zero");
  }

  detail::GenState st(L, params.alpha, params.beta, m);
  if (params.alpha == 0 && params.beta == 0)
    st.stats.warnings.push_back("alpha and beta are both zero; attachment is uniform");
  for (std::uint32_t i = 0; i < L; ++i)
    if (m[i][i] == 0)
      st.stats.warnings.push_back("m[" + std::to_string(i) + "][" + std::to_string(i) +
                                  "] is zero; layer " + std::to_string(i) +
                                  " gets no intra edges");

  Rng rng(params.seed);
  std::uint64_t weight_total = 0;
  for (std::uint64_t w : params.layer_weights) weight_total += w;

  for (std::uint64_t step = 0; step < params.n; ++step) {
    std::uint32_t li;
    if (params.layer_weights.empty())
      li = static_cast<std::uint32_t>(rng.below(L));
    else
      li = static_cast<std::uint32_t>(pick_weighted(rng, params.layer_weights, weight_total));
    const auto& ts = types[li];
    TypeId ti = ts[rng.below(ts.size())];
    st.add_node(li, ti);
    std::uint32_t v = static_cast<std::uint32_t>(st.layer_of.size() - 1);
    st.node_pools = 0;
    st.connection1(rng, v, li);
    for (std::uint32_t lj = 0; lj < L; ++lj)
      if (lj != li) st.connection2(rng, v, li, lj);
    st.stats.max_pool_builds_per_node = std::max(st.stats.max_pool_builds_per_node, st.node_pools);
  }

  for (std::uint32_t i = 0; i < L; ++i)
    for (std::uint32_t j = 0; j < L; ++j) st.stats.pending_left += st.pending[i][j].size();

  Hmn g = Hmn::with_empty_registries(false);
  for (std::uint32_t i = 0; i < L; ++i) g.add_layer("layer" + std::to_string(i));
  if (params.types_per_layer.empty()) {
    g.add_node_type("default");
  } else {
    for (TypeId t = 0; t <= max_type; ++t) g.add_node_type("t" + std::to_string(t));
  }
  g.add_edge_type("default");
  for (std::size_t v = 0; v < st.layer_of.size(); ++v)
    g.add_node(st.type_of[v], {st.layer_of[v]});
  for (const auto& e : st.out_edges)
    g.add_edge({e.a, e.la}, {e.b, e.lb});

  if (stats_out) *stats_out = st.stats;
  return g;
}

// ---- Reference generators used for distribution comparisons ----

// Preferential-attachment baseline: m seed nodes, every later arrival links to
// m distinct targets drawn degree-proportionally (first arrival links to all
// seeds).
inline Hmn generate_ba(std::uint64_t n, std::uint32_t m, std::uint64_t seed) {
  if (m == 0) throw Error("generate_ba: m must be positive");
  if (n < m + 1) throw Error("generate_ba: need n > m");
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> repeated;
  std::vector<NodeId> targets;
  for (NodeId t = 0; t < m; ++t) targets.push_back(t);
  for (NodeId v = m; v < n; ++v) {
    for (NodeId t : targets) {
      edges.emplace_back(v, t);
      repeated.push_back(v);
      repeated.push_back(t);
    }
    if (v + 1 == n) break;
    targets.clear();
    while (targets.size() < m) {
      NodeId cand = repeated[rng.below(repeated.size())];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end())
        targets.push_back(cand);
    }
  }
  return from_homogeneous(n, edges);
}

// Bernoulli random graph via geometric gap sampling.
inline Hmn generate_gnp(std::uint64_t n, double p, std::uint64_t seed) {
  if (p < 0 || p > 1) throw Error("generate_gnp: p must be in [0, 1]");
  std::vector<std::pair<NodeId, NodeId>> edges;
  if (p > 0 && n > 1) {
    if (p >= 1.0) {
      for (NodeId a = 0; a < n; ++a)
        for (NodeId b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    } else {
      Rng rng(seed);
      const double logq = std::log(1.0 - p);
      std::int64_t v = 1, w = -1;
      const std::int64_t N = static_cast<std::int64_t>(n);
      while (v < N) {
        double r = 1.0 - rng.unit();  // (0, 1]
        w += 1 + static_cast<std::int64_t>(std::floor(std::log(r) / logq));
        while (w >= v && v < N) {
          w -= v;
          ++v;
        }
        if (v < N) edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(w));
      }
    }
  }
  return from_homogeneous(n, edges);
}

// Uniform random graph with exactly m edges.
inline Hmn generate_gnm(std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t max_edges = n < 2 ? 0 : n * (n - 1) / 2;
  if (m > max_edges) throw Error("generate_gnm: more edges than pairs");
  Rng rng(seed);
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<std::pair<NodeId, NodeId>> edges;
  while (edges.size() < m) {
    NodeId a = static_cast<NodeId>(rng.below(n));
    NodeId b = static_cast<NodeId>(rng.below(n));
    if (a == b) continue;
    auto key = std::minmax(a, b);
    if (seen.insert({key.first, key.second}).second) edges.emplace_back(a, b);
  }
  return from_homogeneous(n, edges);
}

}  // namespace hmn
