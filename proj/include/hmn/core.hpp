#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hmn {

using NodeId = std::uint32_t;
using LayerId = std::uint32_t;
using TypeId = std::uint32_t;  // node-type and edge-type registries are independent id spaces

// Reserved default ("bottom") type in default-constructed graphs.
inline constexpr TypeId kDefaultType = 0;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a measure's value does not exist (e.g. a centrality denominator
// is zero), as opposed to being computable-but-trivial.
class UndefinedResult : public Error {
 public:
  using Error::Error;
};

// A node occurrence in one specific layer: the unit every structural measure
// works on. The same NodeId in two layers is two distinct LayeredNodes.
struct LayeredNode {
  NodeId node{};
  LayerId layer{};
  friend auto operator<=>(const LayeredNode&, const LayeredNode&) = default;
};

struct LayeredNodeHash {
  std::size_t operator()(const LayeredNode& v) const noexcept {
    std::uint64_t x = (static_cast<std::uint64_t>(v.node) << 32) | v.layer;
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(x ^ (x >> 31));
  }
};

// One adjacency entry: the far endpoint plus the edge annotation.
struct Link {
  LayeredNode peer{};
  TypeId etype{};
  double weight{1.0};
};

struct Edge {
  LayeredNode src{};
  LayeredNode dst{};
  TypeId etype{};
  double weight{1.0};
};

namespace detail {

struct EdgeKey {
  LayeredNode a, b;
  TypeId etype;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const noexcept {
    LayeredNodeHash h;
    std::size_t s = h(k.a);
    s ^= h(k.b) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    s ^= std::hash<TypeId>{}(k.etype) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    return s;
  }
};

struct PairKey {
  LayeredNode a, b;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    LayeredNodeHash h;
    std::size_t s = h(k.a);
    s ^= h(k.b) + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    return s;
  }
};

inline void sort_unique(std::vector<LayeredNode>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

// Heterogeneous multi-layered network: typed nodes living in one or more
// layers, typed weighted edges between layer-specific node occurrences.
//
// Construction is append-only: layers, types, nodes and edges can be added but
// never removed, so NodeIds are dense 0..n-1 and all iteration orders are
// deterministic. After construction the structure is immutable through the
// const interface and safe for concurrent reads.
class Hmn {
 public:
  // Registers a "default" node type and edge type as id 0.
  explicit Hmn(bool directed = false) : directed_(directed) {
    node_types_.push_back("default");
    edge_types_.push_back("default");
  }

  // For builders (embeddings, parsers) that declare their own type registries.
  static Hmn with_empty_registries(bool directed) {
    Hmn g(directed);
    g.node_types_.clear();
    g.edge_types_.clear();
    return g;
  }

  bool directed() const { return directed_; }

  LayerId add_layer(std::string name) {
    layers_.push_back(std::move(name));
    layer_nodes_.emplace_back();
    return static_cast<LayerId>(layers_.size() - 1);
  }

  TypeId add_node_type(std::string name) {
    node_types_.push_back(std::move(name));
    return static_cast<TypeId>(node_types_.size() - 1);
  }

  TypeId add_edge_type(std::string name) {
    edge_types_.push_back(std::move(name));
    return static_cast<TypeId>(edge_types_.size() - 1);
  }

  std::size_t layer_count() const { return layers_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t node_type_count() const { return node_types_.size(); }
  std::size_t edge_type_count() const { return edge_types_.size(); }

  const std::string& layer_name(LayerId l) const {
    check_layer(l);
    return layers_[l];
  }
  const std::string& node_type_name(TypeId t) const {
    if (t >= node_types_.size()) throw Error("unknown node type id");
    return node_types_[t];
  }
  const std::string& edge_type_name(TypeId t) const {
    if (t >= edge_types_.size()) throw Error("unknown edge type id");
    return edge_types_[t];
  }

  // `layers` is the node's layer set; it is sorted and deduplicated here.
  // Every node must live in at least one layer.
  NodeId add_node(TypeId vtype, std::vector<LayerId> layers) {
    if (vtype >= node_types_.size()) throw Error("add_node: undeclared node type");
    if (layers.empty()) throw Error("add_node: node must belong to at least one layer");
    std::sort(layers.begin(), layers.end());
    layers.erase(std::unique(layers.begin(), layers.end()), layers.end());
    for (LayerId l : layers) check_layer(l);
    NodeId id = static_cast<NodeId>(nodes_.size());
    NodeRec rec;
    rec.vtype = vtype;
    rec.layers = std::move(layers);
    rec.adj.resize(rec.layers.size());
    for (LayerId l : rec.layers) {
      layer_nodes_[l].push_back(id);
      tl_index_[tl_key(vtype, l)].push_back(id);
    }
    nodes_.push_back(std::move(rec));
    return id;
  }

  // Adds one edge between two LayeredNodes. Self-loops (identical endpoint,
  // same layer) are rejected; the same node in two different layers is a valid
  // pair. Duplicate (endpoints, etype) edges are rejected; parallel edges of
  // distinct types are allowed. Weights must be positive and finite.
  void add_edge(LayeredNode a, LayeredNode b, TypeId etype = kDefaultType,
                double weight = 1.0) {
    check_layered(a);
    check_layered(b);
    if (etype >= edge_types_.size()) throw Error("add_edge: undeclared edge type");
    if (a == b) throw Error("add_edge: self-loop rejected");
    if (!(weight > 0.0) || !std::isfinite(weight))
      throw Error("add_edge: weight must be positive and finite");
    detail::EdgeKey key = directed_ ? detail::EdgeKey{a, b, etype}
                                    : detail::EdgeKey{std::min(a, b), std::max(a, b), etype};
    if (!edge_keys_.insert(key).second) throw Error("add_edge: duplicate edge");
    detail::PairKey pk{std::min(a, b), std::max(a, b)};
    pair_keys_.insert(pk);
    edges_.push_back(Edge{a, b, etype, weight});
    if (directed_) {
      slot(a).out.push_back(Link{b, etype, weight});
      slot(b).in.push_back(Link{a, etype, weight});
    } else {
      slot(a).out.push_back(Link{b, etype, weight});
      slot(b).out.push_back(Link{a, etype, weight});
    }
  }

  bool has_edge(LayeredNode a, LayeredNode b, TypeId etype) const {
    detail::EdgeKey key = directed_ ? detail::EdgeKey{a, b, etype}
                                    : detail::EdgeKey{std::min(a, b), std::max(a, b), etype};
    return edge_keys_.contains(key);
  }

  // True when any edge of any type and either direction joins the pair.
  bool adjacent(LayeredNode a, LayeredNode b) const {
    return pair_keys_.contains(detail::PairKey{std::min(a, b), std::max(a, b)});
  }

  TypeId r_vt(NodeId v) const {
    check_node(v);
    return nodes_[v].vtype;
  }

  const std::vector<LayerId>& r_vl(NodeId v) const {
    check_node(v);
    return nodes_[v].layers;
  }

  bool in_layer(NodeId v, LayerId l) const {
    check_node(v);
    const auto& ls = nodes_[v].layers;
    return std::binary_search(ls.begin(), ls.end(), l);
  }

  bool valid_layered(LayeredNode v) const {
    return v.node < nodes_.size() && in_layer(v.node, v.layer);
  }

  // All nodes of type t present in layer l, ascending. Backed by an index that
  // is maintained on insertion, so lookup cost is independent of |V|.
  const std::vector<NodeId>& r_tl(TypeId t, LayerId l) const {
    if (t >= node_types_.size()) throw Error("r_tl: unknown node type id");
    check_layer(l);
    auto it = tl_index_.find(tl_key(t, l));
    return it == tl_index_.end() ? empty_nodes_ : it->second;
  }

  // All nodes present in layer l, ascending.
  const std::vector<NodeId>& r_l(LayerId l) const {
    check_layer(l);
    return layer_nodes_[l];
  }

  // Outgoing adjacency of one LayeredNode. For undirected graphs this is the
  // full incident list.
  const std::vector<Link>& out_links(LayeredNode v) const {
    check_layered(v);
    return find_slot(v).out;
  }

  // Incoming adjacency. For undirected graphs identical to out_links.
  const std::vector<Link>& in_links(LayeredNode v) const {
    check_layered(v);
    const Slot& s = find_slot(v);
    return directed_ ? s.in : s.out;
  }

  // Edges in insertion order.
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  struct Slot {
    std::vector<Link> out;
    std::vector<Link> in;  // unused when undirected
  };
  struct NodeRec {
    TypeId vtype{};
    std::vector<LayerId> layers;  // sorted unique
    std::vector<Slot> adj;        // parallel to layers
  };

  static std::uint64_t tl_key(TypeId t, LayerId l) {
    return (static_cast<std::uint64_t>(t) << 32) | l;
  }

  void check_layer(LayerId l) const {
    if (l >= layers_.size()) throw Error("unknown layer id");
  }
  void check_node(NodeId v) const {
    if (v >= nodes_.size()) throw Error("unknown node id");
  }
  void check_layered(LayeredNode v) const {
    check_node(v.node);
    if (!in_layer(v.node, v.layer))
      throw Error("node " + std::to_string(v.node) + " is not in layer " +
                  std::to_string(v.layer));
  }

  Slot& slot(LayeredNode v) {
    const auto& ls = nodes_[v.node].layers;
    auto it = std::lower_bound(ls.begin(), ls.end(), v.layer);
    return nodes_[v.node].adj[static_cast<std::size_t>(it - ls.begin())];
  }
  const Slot& find_slot(LayeredNode v) const {
    const auto& ls = nodes_[v.node].layers;
    auto it = std::lower_bound(ls.begin(), ls.end(), v.layer);
    return nodes_[v.node].adj[static_cast<std::size_t>(it - ls.begin())];
  }

  bool directed_;
  std::vector<std::string> layers_;
  std::vector<std::string> node_types_;
  std::vector<std::string> edge_types_;
  std::vector<NodeRec> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> layer_nodes_;
  std::unordered_map<std::uint64_t, std::vector<NodeId>> tl_index_;
  std::unordered_set<detail::EdgeKey, detail::EdgeKeyHash> edge_keys_;
  std::unordered_set<detail::PairKey, detail::PairKeyHash> pair_keys_;
  inline static const std::vector<NodeId> empty_nodes_{};
};

// Restriction to a layer subset. Nodes keep their full type registry; layer
// ids and names are preserved; a node's layer set is intersected with `layers`
// and nodes left with no layer are dropped (surviving nodes are renumbered
// densely in ascending original-id order). Edges survive iff both endpoint
// layers are kept.
inline Hmn induced_subhmn(const Hmn& g, std::vector<LayerId> layers) {
  if (layers.empty()) throw Error("induced_subhmn: layer set must be non-empty");
  std::sort(layers.begin(), layers.end());
  layers.erase(std::unique(layers.begin(), layers.end()), layers.end());
  for (LayerId l : layers)
    if (l >= g.layer_count()) throw Error("induced_subhmn: unknown layer id");

  Hmn out = Hmn::with_empty_registries(g.directed());
  for (LayerId l = 0; l < g.layer_count(); ++l) out.add_layer(g.layer_name(l));
  for (TypeId t = 0; t < g.node_type_count(); ++t) out.add_node_type(g.node_type_name(t));
  for (TypeId t = 0; t < g.edge_type_count(); ++t) out.add_edge_type(g.edge_type_name(t));

  std::vector<NodeId> remap(g.node_count(), UINT32_MAX);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::vector<LayerId> kept;
    for (LayerId l : g.r_vl(v))
      if (std::binary_search(layers.begin(), layers.end(), l)) kept.push_back(l);
    if (!kept.empty()) remap[v] = out.add_node(g.r_vt(v), std::move(kept));
  }
  for (const Edge& e : g.edges()) {
    bool src_ok = std::binary_search(layers.begin(), layers.end(), e.src.layer);
    bool dst_ok = std::binary_search(layers.begin(), layers.end(), e.dst.layer);
    if (src_ok && dst_ok)
      out.add_edge({remap[e.src.node], e.src.layer}, {remap[e.dst.node], e.dst.layer},
                   e.etype, e.weight);
  }
  return out;
}

// ---- Embeddings of the classic network families ----

// Plain graph: one layer, one node type, one edge type.
inline Hmn from_homogeneous(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                            bool directed = false) {
  Hmn g(directed);
  LayerId l = g.add_layer("layer0");
  for (std::size_t i = 0; i < n; ++i) g.add_node(kDefaultType, {l});
  for (auto [a, b] : edges) g.add_edge({a, l}, {b, l});
  return g;
}

struct TypedEdge {
  NodeId src{};
  NodeId dst{};
  TypeId etype{};
  double weight{1.0};
};

// Typed graph without layers: one layer, caller-declared type registries.
// node_types[i] is the type of node i; all referenced types must be declared
// by the registry sizes.
inline Hmn from_heterogeneous(std::size_t num_node_types, std::size_t num_edge_types,
                              const std::vector<TypeId>& node_types,
                              const std::vector<TypedEdge>& edges, bool directed = false) {
  if (num_node_types == 0 || num_edge_types == 0)
    throw Error("from_heterogeneous: type registries must be non-empty");
  Hmn g = Hmn::with_empty_registries(directed);
  LayerId l = g.add_layer("layer0");
  for (std::size_t t = 0; t < num_node_types; ++t) g.add_node_type("t" + std::to_string(t));
  for (std::size_t t = 0; t < num_edge_types; ++t) g.add_edge_type("e" + std::to_string(t));
  for (TypeId t : node_types) {
    if (t >= num_node_types) throw Error("from_heterogeneous: undeclared node type");
    g.add_node(t, {l});
  }
  for (const TypedEdge& e : edges) {
    if (e.etype >= num_edge_types) throw Error("from_heterogeneous: undeclared edge type");
    g.add_edge({e.src, l}, {e.dst, l}, e.etype, e.weight);
  }
  return g;
}

// Multi-layered network: k disjoint node sets with intra-layer edge lists and
// bipartite inter-layer edge lists. Node ids in the inputs are layer-local
// (0..count-1 per layer); each layer's node set gets its own node type, intra
// edges get a per-layer edge type, inter edges a per-pair edge type.
struct InterEdges {
  LayerId layer_a{};
  LayerId layer_b{};
  std::vector<std::pair<NodeId, NodeId>> edges;  // (node in a, node in b), layer-local ids
};

inline Hmn from_multilayered(const std::vector<std::size_t>& layer_node_counts,
                             const std::vector<std::vector<std::pair<NodeId, NodeId>>>& intra,
                             const std::vector<InterEdges>& inter) {
  const std::size_t k = layer_node_counts.size();
  if (k == 0) throw Error("from_multilayered: need at least one layer");
  if (intra.size() != k) throw Error("from_multilayered: intra edge lists must match layer count");
  Hmn g = Hmn::with_empty_registries(false);
  for (std::size_t i = 0; i < k; ++i) g.add_layer("layer" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) g.add_node_type("t_layer" + std::to_string(i));
  for (std::size_t i = 0; i < k; ++i) g.add_edge_type("e_layer" + std::to_string(i));
  std::vector<NodeId> base(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    base[i] = static_cast<NodeId>(g.node_count());
    for (std::size_t v = 0; v < layer_node_counts[i]; ++v)
      g.add_node(static_cast<TypeId>(i), {static_cast<LayerId>(i)});
  }
  for (std::size_t i = 0; i < k; ++i) {
    LayerId li = static_cast<LayerId>(i);
    for (auto [a, b] : intra[i]) {
      if (a >= layer_node_counts[i] || b >= layer_node_counts[i])
        throw Error("from_multilayered: intra edge references unknown node");
      g.add_edge({base[i] + a, li}, {base[i] + b, li}, static_cast<TypeId>(i));
    }
  }
  for (const InterEdges& ie : inter) {
    if (ie.layer_a >= k || ie.layer_b >= k || ie.layer_a == ie.layer_b)
      throw Error("from_multilayered: bad inter-layer pair");
    TypeId et = g.add_edge_type("e_inter" + std::to_string(ie.layer_a) + "_" +
                                std::to_string(ie.layer_b));
    for (auto [a, b] : ie.edges) {
      if (a >= layer_node_counts[ie.layer_a] || b >= layer_node_counts[ie.layer_b])
        throw Error("from_multilayered: inter edge references unknown node");
      g.add_edge({base[ie.layer_a] + a, ie.layer_a}, {base[ie.layer_b] + b, ie.layer_b}, et);
    }
  }
  return g;
}

// Multiplex network: one shared vertex set present in every layer, per-layer
// edge lists, no inter-layer edges. One node type; one edge type per layer.
inline Hmn from_multiplex(std::size_t n,
                          const std::vector<std::vector<std::pair<NodeId, NodeId>>>& layer_edges) {
  const std::size_t k = layer_edges.size();
  if (k == 0) throw Error("from_multiplex: need at least one layer");
  Hmn g = Hmn::with_empty_registries(false);
  std::vector<LayerId> all_layers;
  for (std::size_t i = 0; i < k; ++i) all_layers.push_back(g.add_layer("layer" + std::to_string(i)));
  g.add_node_type("default");
  for (std::size_t i = 0; i < k; ++i) g.add_edge_type("e_layer" + std::to_string(i));
  for (std::size_t v = 0; v < n; ++v) g.add_node(kDefaultType, all_layers);
  for (std::size_t i = 0; i < k; ++i) {
    LayerId li = static_cast<LayerId>(i);
    for (auto [a, b] : layer_edges[i]) {
      if (a >= n || b >= n) throw Error("from_multiplex: edge references unknown node");
      g.add_edge({a, li}, {b, li}, static_cast<TypeId>(i));
    }
  }
  return g;
}

}  // namespace hmn
