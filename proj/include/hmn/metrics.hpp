#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hmn/core.hpp"

namespace hmn {

constexpr double kInfDistance = std::numeric_limits<double>::infinity();

// Layer-set and node-type-set filter applied to every measure. A LayeredNode
// v^l is admissible when l is in `layers` and the node's type is in `types`.
// Both sets must be non-empty and reference declared ids.
struct MetricScope {
  std::vector<LayerId> layers;
  std::vector<TypeId> types;

  static MetricScope full(const Hmn& g) {
    MetricScope s;
    for (LayerId l = 0; l < g.layer_count(); ++l) s.layers.push_back(l);
    for (TypeId t = 0; t < g.node_type_count(); ++t) s.types.push_back(t);
    return s;
  }
};

namespace detail {

struct ScopeMask {
  std::vector<char> layer_ok;
  std::vector<char> type_ok;
  bool admits(const Hmn& g, LayeredNode v) const {
    return layer_ok[v.layer] && type_ok[g.r_vt(v.node)];
  }
};

inline ScopeMask make_mask(const Hmn& g, const MetricScope& scope) {
  if (scope.layers.empty()) throw Error("scope: layer set must be non-empty");
  if (scope.types.empty()) throw Error("scope: type set must be non-empty");
  ScopeMask m;
  m.layer_ok.assign(g.layer_count(), 0);
  m.type_ok.assign(g.node_type_count(), 0);
  for (LayerId l : scope.layers) {
    if (l >= g.layer_count()) throw Error("scope: unknown layer id");
    m.layer_ok[l] = 1;
  }
  for (TypeId t : scope.types) {
    if (t >= g.node_type_count()) throw Error("scope: unknown node type id");
    m.type_ok[t] = 1;
  }
  return m;
}

}  // namespace detail

inline bool admissible(const Hmn& g, const MetricScope& scope, LayeredNode v) {
  if (!g.valid_layered(v)) throw Error("admissible: not a valid LayeredNode");
  return detail::make_mask(g, scope).admits(g, v);
}

// All admissible LayeredNodes, ascending by (node, layer).
inline std::vector<LayeredNode> scoped_nodes(const Hmn& g, const MetricScope& scope) {
  detail::ScopeMask m = detail::make_mask(g, scope);
  std::vector<LayeredNode> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!m.type_ok[g.r_vt(v)]) continue;
    for (LayerId l : g.r_vl(v))
      if (m.layer_ok[l]) out.push_back({v, l});
  }
  return out;
}

namespace detail {

// Distinct admissible peers reachable over the given link list.
inline void collect_peers(const Hmn& g, const ScopeMask& m, const std::vector<Link>& links,
                          std::vector<LayeredNode>& out) {
  for (const Link& lk : links)
    if (m.admits(g, lk.peer)) out.push_back(lk.peer);
}

}  // namespace detail

// Scoped out-neighborhood of v: distinct admissible far endpoints of outgoing
// (undirected: incident) edges.
inline std::vector<LayeredNode> neighbors_out(const Hmn& g, LayeredNode v,
                                              const MetricScope& scope) {
  if (!g.valid_layered(v)) throw Error("neighbors: not a valid LayeredNode");
  detail::ScopeMask m = detail::make_mask(g, scope);
  std::vector<LayeredNode> out;
  detail::collect_peers(g, m, g.out_links(v), out);
  detail::sort_unique(out);
  return out;
}

inline std::vector<LayeredNode> neighbors_in(const Hmn& g, LayeredNode v,
                                             const MetricScope& scope) {
  if (!g.valid_layered(v)) throw Error("neighbors: not a valid LayeredNode");
  detail::ScopeMask m = detail::make_mask(g, scope);
  std::vector<LayeredNode> out;
  detail::collect_peers(g, m, g.in_links(v), out);
  detail::sort_unique(out);
  return out;
}

// Undirected neighborhood (directed graphs: union of in and out).
inline std::vector<LayeredNode> neighbors(const Hmn& g, LayeredNode v, const MetricScope& scope) {
  if (!g.valid_layered(v)) throw Error("neighbors: not a valid LayeredNode");
  detail::ScopeMask m = detail::make_mask(g, scope);
  std::vector<LayeredNode> out;
  detail::collect_peers(g, m, g.out_links(v), out);
  if (g.directed()) detail::collect_peers(g, m, g.in_links(v), out);
  detail::sort_unique(out);
  return out;
}

// |N(v, scope)| over the number of admissible LayeredNodes other than v
// itself. A node present in two scoped layers counts twice in the denominator;
// v's occurrences in other layers also count. Throws UndefinedResult when the
// denominator is zero.
inline double degree_centrality(const Hmn& g, LayeredNode v, const MetricScope& scope) {
  std::vector<LayeredNode> uni = scoped_nodes(g, scope);
  std::size_t denom = uni.size();
  if (std::binary_search(uni.begin(), uni.end(), v)) denom -= 1;
  if (denom == 0)
    throw UndefinedResult("degree_centrality: no admissible nodes besides the target");
  return static_cast<double>(neighbors(g, v, scope).size()) / static_cast<double>(denom);
}

namespace detail {

// Compact view of the admissible subgraph (plus forced extra vertices, used
// for measured-but-unscoped nodes and path endpoints). Parallel edges are kept
// as parallel links; shortest-path counting treats them as distinct paths.
struct ScopedGraph {
  std::vector<LayeredNode> verts;  // sorted unique
  std::unordered_map<LayeredNode, std::uint32_t, LayeredNodeHash> index;
  struct Arc {
    std::uint32_t to;
    double w;
  };
  std::vector<std::vector<Arc>> fwd;  // out-links (undirected: incident)

  std::uint32_t at(LayeredNode v) const { return index.find(v)->second; }
  bool contains(LayeredNode v) const { return index.contains(v); }
};

inline ScopedGraph build_scoped(const Hmn& g, const MetricScope& scope,
                                const std::vector<LayeredNode>& extra) {
  ScopedGraph sg;
  sg.verts = scoped_nodes(g, scope);
  for (LayeredNode v : extra) {
    if (!g.valid_layered(v)) throw Error("scoped graph: not a valid LayeredNode");
    sg.verts.push_back(v);
  }
  sort_unique(sg.verts);
  sg.index.reserve(sg.verts.size() * 2);
  for (std::uint32_t i = 0; i < sg.verts.size(); ++i) sg.index.emplace(sg.verts[i], i);
  sg.fwd.resize(sg.verts.size());
  for (std::uint32_t i = 0; i < sg.verts.size(); ++i)
    for (const Link& lk : g.out_links(sg.verts[i])) {
      auto it = sg.index.find(lk.peer);
      if (it != sg.index.end()) sg.fwd[i].push_back({it->second, lk.weight});
    }
  return sg;
}

struct SsspResult {
  std::vector<double> dist;
  std::vector<double> sigma;                       // shortest-path counts
  std::vector<std::vector<std::uint32_t>> preds;   // predecessor lists
  std::vector<std::uint32_t> order;                // settle order (ascending dist)
};

// Dijkstra with path counting. Ties are detected by exact distance equality;
// integer-valued weights therefore count path multiplicities exactly.
inline SsspResult dijkstra_counted(const ScopedGraph& sg, std::uint32_t s) {
  const std::size_t n = sg.verts.size();
  SsspResult r;
  r.dist.assign(n, kInfDistance);
  r.sigma.assign(n, 0.0);
  r.preds.assign(n, {});
  r.order.reserve(n);
  r.dist[s] = 0.0;
  r.sigma[s] = 1.0;
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  std::vector<char> done(n, 0);
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = 1;
    r.order.push_back(u);
    for (const ScopedGraph::Arc& a : sg.fwd[u]) {
      double nd = d + a.w;
      if (nd < r.dist[a.to]) {
        r.dist[a.to] = nd;
        r.sigma[a.to] = r.sigma[u];
        r.preds[a.to] = {u};
        pq.push({nd, a.to});
      } else if (nd == r.dist[a.to]) {
        r.sigma[a.to] += r.sigma[u];
        r.preds[a.to].push_back(u);
      }
    }
  }
  return r;
}

}  // namespace detail

// Weighted shortest distance from src to dst. Intermediate hops must be
// admissible under the scope; the endpoints themselves are always admitted.
// Returns +infinity when no path exists.
inline double shortest_distance(const Hmn& g, LayeredNode src, LayeredNode dst,
                                const MetricScope& scope) {
  detail::ScopedGraph sg = detail::build_scoped(g, scope, {src, dst});
  detail::SsspResult r = detail::dijkstra_counted(sg, sg.at(src));
  return r.dist[sg.at(dst)];
}

// Sum of reciprocal distances from v to every admissible node other than v;
// unreachable targets contribute 0. v itself is admitted even when unscoped.
inline double closeness(const Hmn& g, LayeredNode v, const MetricScope& scope) {
  detail::ScopedGraph sg = detail::build_scoped(g, scope, {v});
  detail::ScopeMask m = detail::make_mask(g, scope);
  detail::SsspResult r = detail::dijkstra_counted(sg, sg.at(v));
  double sum = 0.0;
  for (std::uint32_t i = 0; i < sg.verts.size(); ++i) {
    if (sg.verts[i] == v || !m.admits(g, sg.verts[i])) continue;
    if (r.dist[i] < kInfDistance && r.dist[i] > 0.0) sum += 1.0 / r.dist[i];
  }
  return sum;
}

namespace detail {

// Brandes accumulation over sources restricted to admissible nodes. Returns
// raw dependency sums per vertex of `sg`; undirected pair double-counting is
// the caller's concern.
inline std::vector<double> brandes_sums(const Hmn& g, const ScopedGraph& sg,
                                        const ScopeMask& m) {
  std::vector<double> bc(sg.verts.size(), 0.0);
  std::vector<double> delta(sg.verts.size(), 0.0);
  for (std::uint32_t s = 0; s < sg.verts.size(); ++s) {
    if (!m.admits(g, sg.verts[s])) continue;
    SsspResult r = dijkstra_counted(sg, s);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
      std::uint32_t w = *it;
      for (std::uint32_t p : r.preds[w])
        delta[p] += r.sigma[p] / r.sigma[w] * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  return bc;
}

}  // namespace detail

// Betweenness of v: sum over admissible pairs (x, y), x != v != y, of the
// fraction of shortest x-y paths passing through v. Undirected graphs count
// unordered pairs; directed graphs count ordered pairs. v is admitted into the
// path universe even when it is outside the scope, so cross-layer variants
// (scope = all layers except v's) are expressible.
inline double betweenness(const Hmn& g, LayeredNode v, const MetricScope& scope) {
  detail::ScopedGraph sg = detail::build_scoped(g, scope, {v});
  detail::ScopeMask m = detail::make_mask(g, scope);
  std::vector<double> bc = detail::brandes_sums(g, sg, m);
  double result = bc[sg.at(v)];
  return g.directed() ? result : result / 2.0;
}

// Betweenness of every admissible node, ascending by (node, layer).
inline std::vector<std::pair<LayeredNode, double>> betweenness_all(const Hmn& g,
                                                                   const MetricScope& scope) {
  detail::ScopedGraph sg = detail::build_scoped(g, scope, {});
  detail::ScopeMask m = detail::make_mask(g, scope);
  std::vector<double> bc = detail::brandes_sums(g, sg, m);
  std::vector<std::pair<LayeredNode, double>> out;
  out.reserve(sg.verts.size());
  for (std::uint32_t i = 0; i < sg.verts.size(); ++i)
    out.emplace_back(sg.verts[i], g.directed() ? bc[i] : bc[i] / 2.0);
  return out;
}

// Local clustering coefficient 2T / (k (k - 1)) over the scoped neighborhood;
// T counts neighbor pairs joined by any edge (any type, either direction).
// Returns 0 when fewer than two scoped neighbors exist.
inline double clustering(const Hmn& g, LayeredNode v, const MetricScope& scope) {
  std::vector<LayeredNode> nb = neighbors(g, v, scope);
  const std::size_t k = nb.size();
  if (k < 2) return 0.0;
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (g.adjacent(nb[i], nb[j])) ++t;
  return 2.0 * static_cast<double>(t) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

// Number of triangles with all three corners admissible.
inline std::uint64_t triangle_count(const Hmn& g, const MetricScope& scope) {
  detail::ScopeMask m = detail::make_mask(g, scope);
  std::vector<LayeredNode> uni = scoped_nodes(g, scope);
  std::uint64_t total = 0;
  for (LayeredNode v : uni) {
    std::vector<LayeredNode> nb;
    detail::collect_peers(g, m, g.out_links(v), nb);
    if (g.directed()) detail::collect_peers(g, m, g.in_links(v), nb);
    detail::sort_unique(nb);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (g.adjacent(nb[i], nb[j])) ++total;
  }
  return total / 3;  // each triangle seen from all three corners
}

struct NetworkSummary {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  double density = 0.0;
  double avg_degree = 0.0;
  std::optional<double> assortativity;  // empty when degree variance is zero
  std::uint64_t triangles = 0;
  double avg_triangles_per_node = 0.0;
  double avg_clustering = 0.0;
  std::uint32_t clique_number = 0;
};

namespace detail {

// Exact maximum clique: degeneracy-ordered outer loop, then branch and bound
// with pivoting on the (small) candidate sets of later neighbors.
class MaxClique {
 public:
  explicit MaxClique(std::vector<std::vector<std::uint32_t>> adj) : adj_(std::move(adj)) {}

  std::uint32_t solve() {
    const std::size_t n = adj_.size();
    if (n == 0) return 0;
    best_ = 1;
    std::vector<std::uint32_t> order = degeneracy_order();
    std::vector<std::uint32_t> pos(n);
    for (std::uint32_t i = 0; i < n; ++i) pos[order[i]] = i;
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t v = order[i];
      std::vector<std::uint32_t> cand;
      for (std::uint32_t u : adj_[v])
        if (pos[u] > i) cand.push_back(u);
      if (cand.size() + 1 <= best_) continue;
      expand(cand, 1);
    }
    return best_;
  }

 private:
  std::vector<std::uint32_t> degeneracy_order() {
    const std::size_t n = adj_.size();
    std::vector<std::uint32_t> deg(n), order;
    std::vector<char> removed(n, 0);
    std::size_t maxd = 0;
    for (std::size_t v = 0; v < n; ++v) {
      deg[v] = static_cast<std::uint32_t>(adj_[v].size());
      maxd = std::max<std::size_t>(maxd, deg[v]);
    }
    std::vector<std::vector<std::uint32_t>> buckets(maxd + 1);
    for (std::size_t v = 0; v < n; ++v) buckets[deg[v]].push_back(static_cast<std::uint32_t>(v));
    std::size_t cur = 0;
    while (order.size() < n) {
      while (cur <= maxd && buckets[cur].empty()) ++cur;
      if (cur > maxd) break;
      std::uint32_t v = buckets[cur].back();
      buckets[cur].pop_back();
      if (removed[v] || deg[v] != cur) continue;  // stale bucket entry
      removed[v] = 1;
      order.push_back(v);
      for (std::uint32_t u : adj_[v])
        if (!removed[u]) {
          --deg[u];
          buckets[deg[u]].push_back(u);
        }
      cur = cur > 0 ? cur - 1 : 0;
    }
    return order;
  }

  bool connected(std::uint32_t a, std::uint32_t b) const {
    const auto& nb = adj_[a].size() < adj_[b].size() ? adj_[a] : adj_[b];
    std::uint32_t key = adj_[a].size() < adj_[b].size() ? b : a;
    return std::binary_search(nb.begin(), nb.end(), key);
  }

  void expand(std::vector<std::uint32_t>& cand, std::uint32_t depth) {
    if (cand.empty()) {
      best_ = std::max(best_, depth);
      return;
    }
    if (depth + cand.size() <= best_) return;
    // pivot: candidate with most neighbors inside cand prunes the most
    std::uint32_t pivot = cand[0];
    std::size_t pivot_deg = 0;
    for (std::uint32_t p : cand) {
      std::size_t d = 0;
      for (std::uint32_t u : cand)
        if (u != p && connected(p, u)) ++d;
      if (d >= pivot_deg) {
        pivot_deg = d;
        pivot = p;
      }
    }
    std::vector<std::uint32_t> branch;
    for (std::uint32_t u : cand)
      if (u == pivot || !connected(pivot, u)) branch.push_back(u);
    for (std::uint32_t u : branch) {
      if (depth + cand.size() <= best_) return;
      std::vector<std::uint32_t> next;
      for (std::uint32_t w : cand)
        if (w != u && connected(u, w)) next.push_back(w);
      expand(next, depth + 1);
      cand.erase(std::find(cand.begin(), cand.end(), u));
    }
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  std::uint32_t best_ = 0;
};

}  // namespace detail

// Whole-scope statistics over the admissible subgraph. Edges are edge records
// with both endpoints admissible; degree counts incident scoped records, so
// the handshake identity sum(deg) = 2 * edges holds. Density and clique use
// the type-collapsed simple view of the same subgraph.
inline NetworkSummary network_summary(const Hmn& g, const MetricScope& scope) {
  detail::ScopeMask m = detail::make_mask(g, scope);
  std::vector<LayeredNode> uni = scoped_nodes(g, scope);
  std::unordered_map<LayeredNode, std::uint32_t, LayeredNodeHash> index;
  index.reserve(uni.size() * 2);
  for (std::uint32_t i = 0; i < uni.size(); ++i) index.emplace(uni[i], i);

  NetworkSummary s;
  s.nodes = uni.size();
  std::vector<std::uint64_t> deg(uni.size(), 0);
  double sum_jk = 0, sum_half = 0, sum_sq = 0;
  std::uint64_t m_edges = 0;
  for (const Edge& e : g.edges()) {
    auto a = index.find(e.src);
    auto b = index.find(e.dst);
    if (a == index.end() || b == index.end()) continue;
    ++m_edges;
    ++deg[a->second];
    ++deg[b->second];
  }
  s.edges = m_edges;
  if (s.nodes > 1) {
    s.density = 2.0 * static_cast<double>(s.edges) /
                (static_cast<double>(s.nodes) * static_cast<double>(s.nodes - 1));
    s.avg_degree = 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes);
  }
  // degree assortativity over scoped edge records (Pearson over endpoint pairs)
  for (const Edge& e : g.edges()) {
    auto a = index.find(e.src);
    auto b = index.find(e.dst);
    if (a == index.end() || b == index.end()) continue;
    double j = static_cast<double>(deg[a->second]);
    double k = static_cast<double>(deg[b->second]);
    sum_jk += j * k;
    sum_half += 0.5 * (j + k);
    sum_sq += 0.5 * (j * j + k * k);
  }
  if (m_edges > 0) {
    double M = static_cast<double>(m_edges);
    double num = sum_jk / M - (sum_half / M) * (sum_half / M);
    double den = sum_sq / M - (sum_half / M) * (sum_half / M);
    if (den > 0) s.assortativity = num / den;
  }

  // triangles and clustering on the type-collapsed simple view
  std::vector<std::vector<std::uint32_t>> adj(uni.size());
  for (std::uint32_t i = 0; i < uni.size(); ++i) {
    std::vector<LayeredNode> nb;
    detail::collect_peers(g, m, g.out_links(uni[i]), nb);
    if (g.directed()) detail::collect_peers(g, m, g.in_links(uni[i]), nb);
    detail::sort_unique(nb);
    for (LayeredNode p : nb) adj[i].push_back(index.find(p)->second);
    std::sort(adj[i].begin(), adj[i].end());
  }
  std::uint64_t tri3 = 0;
  double cc_sum = 0.0;
  for (std::uint32_t i = 0; i < uni.size(); ++i) {
    const auto& nb = adj[i];
    std::uint64_t t = 0;
    for (std::size_t a2 = 0; a2 < nb.size(); ++a2)
      for (std::size_t b2 = a2 + 1; b2 < nb.size(); ++b2)
        if (std::binary_search(adj[nb[a2]].begin(), adj[nb[a2]].end(), nb[b2])) ++t;
    tri3 += t;
    if (nb.size() >= 2)
      cc_sum += 2.0 * static_cast<double>(t) /
                (static_cast<double>(nb.size()) * static_cast<double>(nb.size() - 1));
  }
  s.triangles = tri3 / 3;
  if (s.nodes > 0) {
    s.avg_triangles_per_node = static_cast<double>(tri3) / static_cast<double>(s.nodes);
    s.avg_clustering = cc_sum / static_cast<double>(s.nodes);
  }
  s.clique_number = detail::MaxClique(std::move(adj)).solve();
  return s;
}

enum class EdgeSplit { intra, inter, all };

// Degree histogram over admissible LayeredNodes, counting incident scoped edge
// records filtered by split. Zero-degree scoped nodes appear at degree 0.
inline std::map<std::uint32_t, std::uint64_t> degree_distribution(const Hmn& g,
                                                                  const MetricScope& scope,
                                                                  EdgeSplit split) {
  std::vector<LayeredNode> uni = scoped_nodes(g, scope);
  std::unordered_map<LayeredNode, std::uint32_t, LayeredNodeHash> index;
  index.reserve(uni.size() * 2);
  for (std::uint32_t i = 0; i < uni.size(); ++i) index.emplace(uni[i], i);
  std::vector<std::uint32_t> deg(uni.size(), 0);
  for (const Edge& e : g.edges()) {
    bool intra = e.src.layer == e.dst.layer;
    if (split == EdgeSplit::intra && !intra) continue;
    if (split == EdgeSplit::inter && intra) continue;
    auto a = index.find(e.src);
    auto b = index.find(e.dst);
    if (a == index.end() || b == index.end()) continue;
    ++deg[a->second];
    ++deg[b->second];
  }
  std::map<std::uint32_t, std::uint64_t> hist;
  for (std::uint32_t d : deg) ++hist[d];
  return hist;
}

// Jaccard similarity of the scoped neighborhoods of x and y; 0 when the union
// is empty.
inline double jaccard_score(const Hmn& g, LayeredNode x, LayeredNode y,
                            const MetricScope& scope) {
  std::vector<LayeredNode> nx = neighbors(g, x, scope);
  std::vector<LayeredNode> ny = neighbors(g, y, scope);
  std::vector<LayeredNode> inter, uni;
  std::set_intersection(nx.begin(), nx.end(), ny.begin(), ny.end(), std::back_inserter(inter));
  std::set_union(nx.begin(), nx.end(), ny.begin(), ny.end(), std::back_inserter(uni));
  if (uni.empty()) return 0.0;
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

struct QueryCost {
  std::uint64_t inspected = 0;
};

// Neighbors of x having node type t and living in layer l, answered through
// the (type, layer) index: the cheaper of walking r_tl(t, l) with adjacency
// probes or filtering x's links. Inspects at most |N(x)| + |r_tl(t, l)|
// entries.
inline std::vector<LayeredNode> typed_neighbors(const Hmn& g, LayeredNode x, TypeId t, LayerId l,
                                                QueryCost* cost = nullptr) {
  if (!g.valid_layered(x)) throw Error("typed_neighbors: not a valid LayeredNode");
  const std::vector<NodeId>& idx = g.r_tl(t, l);
  std::size_t degree = g.out_links(x).size() + (g.directed() ? g.in_links(x).size() : 0);
  QueryCost local;
  std::vector<LayeredNode> out;
  if (idx.size() <= degree) {
    for (NodeId u : idx) {
      ++local.inspected;
      LayeredNode cand{u, l};
      if (g.adjacent(x, cand)) out.push_back(cand);
    }
  } else {
    auto scan_links = [&](const std::vector<Link>& links) {
      for (const Link& lk : links) {
        ++local.inspected;
        if (lk.peer.layer == l && g.r_vt(lk.peer.node) == t) out.push_back(lk.peer);
      }
    };
    scan_links(g.out_links(x));
    if (g.directed()) scan_links(g.in_links(x));
    detail::sort_unique(out);
  }
  if (cost) *cost = local;
  return out;
}

// Reference implementation that inspects every node of the graph; used to
// check the indexed path and to quantify its advantage.
inline std::vector<LayeredNode> typed_neighbors_scan(const Hmn& g, LayeredNode x, TypeId t,
                                                     LayerId l, QueryCost* cost = nullptr) {
  if (!g.valid_layered(x)) throw Error("typed_neighbors_scan: not a valid LayeredNode");
  QueryCost local;
  std::vector<LayeredNode> out;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    ++local.inspected;
    if (g.r_vt(u) != t || !g.in_layer(u, l)) continue;
    LayeredNode cand{u, l};
    if (g.adjacent(x, cand)) out.push_back(cand);
  }
  if (cost) *cost = local;
  return out;
}

// Maximum absolute gap between the empirical CDFs of two degree histograms.
inline double ks_distance(const std::map<std::uint32_t, std::uint64_t>& a,
                          const std::map<std::uint32_t, std::uint64_t>& b) {
  std::uint64_t na = 0, nb = 0;
  for (auto [d, c] : a) na += c;
  for (auto [d, c] : b) nb += c;
  if (na == 0 || nb == 0) throw UndefinedResult("ks_distance: empty histogram");
  auto ia = a.begin();
  auto ib = b.begin();
  double ca = 0, cb = 0, best = 0;
  while (ia != a.end() || ib != b.end()) {
    std::uint32_t d;
    if (ib == b.end() || (ia != a.end() && ia->first <= ib->first)) d = ia->first;
    else d = ib->first;
    while (ia != a.end() && ia->first == d) ca += static_cast<double>((ia++)->second) / static_cast<double>(na);
    while (ib != b.end() && ib->first == d) cb += static_cast<double>((ib++)->second) / static_cast<double>(nb);
    best = std::max(best, std::abs(ca - cb));
  }
  return best;
}

struct LogBin {
  double lo = 0, hi = 0, center = 0;
  std::uint64_t count = 0;
  double density = 0;  // count / (width * total)
};

// Multiplicative binning of a degree histogram: bin i covers [base^i,
// base^(i+1)). Degree-0 entries cannot be log-binned and are skipped.
inline std::vector<LogBin> log_bins(const std::map<std::uint32_t, std::uint64_t>& hist,
                                    double base = 2.0) {
  if (!(base > 1.0)) throw Error("log_bins: base must exceed 1");
  std::uint64_t total = 0;
  for (auto [d, c] : hist) total += c;
  std::vector<LogBin> bins;
  for (auto [d, c] : hist) {
    if (d < 1) continue;
    double lo = 1.0, hi = base;
    std::size_t i = 0;
    while (static_cast<double>(d) >= hi) {
      lo = hi;
      hi *= base;
      ++i;
    }
    if (bins.size() <= i) {
      std::size_t old = bins.size();
      bins.resize(i + 1);
      for (std::size_t j = old; j <= i; ++j) {
        bins[j].lo = std::pow(base, static_cast<double>(j));
        bins[j].hi = bins[j].lo * base;
        bins[j].center = std::sqrt(bins[j].lo * bins[j].hi);
      }
    }
    bins[i].count += c;
  }
  for (LogBin& b : bins)
    if (total > 0) b.density = static_cast<double>(b.count) / ((b.hi - b.lo) * static_cast<double>(total));
  return bins;
}

// Least-squares slope of log10(density) against log10(center) over non-empty
// bins. Needs at least two occupied bins.
inline double fit_loglog_slope(const std::vector<LogBin>& bins) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const LogBin& b : bins) {
    if (b.count == 0 || b.density <= 0) continue;
    double x = std::log10(b.center);
    double y = std::log10(b.density);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw UndefinedResult("fit_loglog_slope: fewer than two occupied bins");
  double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

// Per-layer statistics over each layer's ACTIVE intra subgraph (nodes with at
// least one intra-layer edge in that layer). Degree centrality uses the
// active-count-minus-one denominator; betweenness is normalized by
// 2 / ((n-1)(n-2)) for cross-size comparability; closeness is the raw
// reciprocal-distance sum.
struct LayerReport {
  LayerId layer = 0;
  std::uint64_t active_nodes = 0;
  std::uint64_t edges = 0;
  double density = 0;
  double avg_degree = 0;
  double avg_degree_centrality = 0;
  double avg_betweenness = 0;
  double avg_closeness = 0;
  double avg_clustering = 0;
  double avg_triangles_per_node = 0;
  std::uint64_t triangles = 0;
};

inline std::vector<LayerReport> per_layer_report(const Hmn& g) {
  std::vector<LayerReport> reports;
  for (LayerId l = 0; l < g.layer_count(); ++l) {
    LayerReport rep;
    rep.layer = l;
    // collect this layer's intra edges (type-collapsed) and active nodes
    std::unordered_map<NodeId, NodeId> remap;
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const Edge& e : g.edges()) {
      if (e.src.layer != l || e.dst.layer != l) continue;
      for (NodeId v : {e.src.node, e.dst.node})
        if (!remap.contains(v)) {
          NodeId next = static_cast<NodeId>(remap.size());
          remap.emplace(v, next);
        }
      NodeId a = remap[e.src.node];
      NodeId b = remap[e.dst.node];
      if (seen.insert({std::min(a, b), std::max(a, b)}).second) edges.emplace_back(a, b);
    }
    rep.active_nodes = remap.size();
    rep.edges = edges.size();
    if (rep.active_nodes == 0) {
      reports.push_back(rep);
      continue;
    }
    Hmn sub = from_homogeneous(remap.size(), edges, g.directed());
    MetricScope full = MetricScope::full(sub);
    NetworkSummary s = network_summary(sub, full);
    rep.density = s.density;
    rep.avg_degree = s.avg_degree;
    rep.avg_clustering = s.avg_clustering;
    rep.avg_triangles_per_node = s.avg_triangles_per_node;
    rep.triangles = s.triangles;
    const double n = static_cast<double>(rep.active_nodes);
    if (rep.active_nodes > 1) {
      double dc = 0;
      for (NodeId v = 0; v < sub.node_count(); ++v)
        dc += static_cast<double>(sub.out_links({v, 0}).size()) / (n - 1.0);
      rep.avg_degree_centrality = dc / n;
      double cl = 0;
      for (NodeId v = 0; v < sub.node_count(); ++v) cl += closeness(sub, {v, 0}, full);
      rep.avg_closeness = cl / n;
    }
    if (rep.active_nodes > 2) {
      double norm = 2.0 / ((n - 1.0) * (n - 2.0));
      double bc = 0;
      for (const auto& [v, val] : betweenness_all(sub, full)) bc += val * norm;
      rep.avg_betweenness = bc / n;
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace hmn
