#include <catch2/catch_amalgamated.hpp>

#include "hmn/core.hpp"

using hmn::Edge;
using hmn::Error;
using hmn::Hmn;
using hmn::LayeredNode;

TEST_CASE("registries hand out sequential ids and keep names") {
  Hmn g = Hmn::with_empty_registries(false);
  REQUIRE(g.add_layer("ground") == 0);
  REQUIRE(g.add_layer("air") == 1);
  REQUIRE(g.add_node_type("person") == 0);
  REQUIRE(g.add_edge_type("knows") == 0);
  REQUIRE(g.add_edge_type("pays") == 1);
  REQUIRE(g.layer_count() == 2);
  REQUIRE(g.node_type_count() == 1);
  REQUIRE(g.edge_type_count() == 2);
  REQUIRE(g.layer_name(1) == "air");
  REQUIRE(g.node_type_name(0) == "person");
  REQUIRE(g.edge_type_name(1) == "pays");
  REQUIRE_THROWS_AS(g.layer_name(2), Error);
}

TEST_CASE("default construction provides one node and edge type but no layers") {
  Hmn g;
  REQUIRE(g.node_type_count() == 1);
  REQUIRE(g.edge_type_count() == 1);
  REQUIRE(g.layer_count() == 0);
  REQUIRE_THROWS_AS(g.add_node(0, {0}), Error);
}

TEST_CASE("node layer sets are sorted, deduplicated, and validated") {
  Hmn g;
  g.add_layer("a");
  g.add_layer("b");
  g.add_layer("c");
  hmn::NodeId v = g.add_node(0, {2, 0, 2});
  REQUIRE(g.r_vl(v) == std::vector<hmn::LayerId>{0, 2});
  REQUIRE(g.r_vt(v) == 0);
  REQUIRE(g.in_layer(v, 0));
  REQUIRE_FALSE(g.in_layer(v, 1));
  REQUIRE(g.valid_layered({v, 2}));
  REQUIRE_FALSE(g.valid_layered({v, 1}));

  REQUIRE_THROWS_AS(g.add_node(5, {0}), Error);   // undeclared type
  REQUIRE_THROWS_AS(g.add_node(0, {}), Error);    // empty layer set
  REQUIRE_THROWS_AS(g.add_node(0, {9}), Error);   // unknown layer
}

TEST_CASE("type and layer indexes answer membership queries") {
  Hmn g = Hmn::with_empty_registries(false);
  g.add_layer("l0");
  g.add_layer("l1");
  g.add_node_type("a");
  g.add_node_type("b");
  g.add_edge_type("e");
  hmn::NodeId v0 = g.add_node(0, {0});
  hmn::NodeId v1 = g.add_node(1, {0, 1});
  hmn::NodeId v2 = g.add_node(0, {1});

  REQUIRE(g.r_tl(0, 0) == std::vector<hmn::NodeId>{v0});
  REQUIRE(g.r_tl(0, 1) == std::vector<hmn::NodeId>{v2});
  REQUIRE(g.r_tl(1, 0) == std::vector<hmn::NodeId>{v1});
  REQUIRE(g.r_tl(1, 1) == std::vector<hmn::NodeId>{v1});
  REQUIRE(g.r_l(0) == std::vector<hmn::NodeId>{v0, v1});
  REQUIRE(g.r_l(1) == std::vector<hmn::NodeId>{v1, v2});
}

TEST_CASE("undirected edges are visible from both endpoints") {
  Hmn g;
  g.add_layer("l");
  hmn::NodeId a = g.add_node(0, {0});
  hmn::NodeId b = g.add_node(0, {0});
  g.add_edge({a, 0}, {b, 0}, 0, 2.5);

  REQUIRE(g.edge_count() == 1);
  REQUIRE(g.has_edge({a, 0}, {b, 0}, 0));
  REQUIRE(g.has_edge({b, 0}, {a, 0}, 0));
  REQUIRE(g.adjacent({a, 0}, {b, 0}));
  REQUIRE(g.out_links({a, 0}).size() == 1);
  REQUIRE(g.out_links({a, 0})[0].peer == LayeredNode{b, 0});
  REQUIRE(g.out_links({a, 0})[0].weight == 2.5);
  REQUIRE(g.in_links({a, 0}).size() == 1);  // undirected: same incident set
  const Edge& e = g.edges()[0];
  REQUIRE(e.src == LayeredNode{a, 0});
  REQUIRE(e.dst == LayeredNode{b, 0});
  REQUIRE(e.weight == 2.5);
}

TEST_CASE("directed edges keep their orientation") {
  Hmn g(true);
  g.add_layer("l");
  hmn::NodeId a = g.add_node(0, {0});
  hmn::NodeId b = g.add_node(0, {0});
  g.add_edge({a, 0}, {b, 0});

  REQUIRE(g.out_links({a, 0}).size() == 1);
  REQUIRE(g.out_links({b, 0}).empty());
  REQUIRE(g.in_links({b, 0}).size() == 1);
  REQUIRE(g.in_links({a, 0}).empty());
  REQUIRE(g.adjacent({a, 0}, {b, 0}));
  REQUIRE(g.adjacent({b, 0}, {a, 0}));  // adjacency ignores direction

  g.add_edge({b, 0}, {a, 0});  // the reverse is a distinct edge
  REQUIRE(g.edge_count() == 2);
}

TEST_CASE("edge validation rejects malformed input") {
  Hmn g;
  g.add_layer("l0");
  g.add_layer("l1");
  hmn::NodeId a = g.add_node(0, {0});
  hmn::NodeId b = g.add_node(0, {0, 1});
  g.add_edge({a, 0}, {b, 0});

  REQUIRE_THROWS_AS(g.add_edge({a, 0}, {a, 0}), Error);        // self-loop
  REQUIRE_THROWS_AS(g.add_edge({a, 1}, {b, 1}), Error);        // a is not in layer 1
  REQUIRE_THROWS_AS(g.add_edge({a, 0}, {b, 1}, 7), Error);     // undeclared edge type
  REQUIRE_THROWS_AS(g.add_edge({a, 0}, {b, 1}, 0, 0.0), Error);
  REQUIRE_THROWS_AS(g.add_edge({a, 0}, {b, 1}, 0, -1.0), Error);
  REQUIRE_THROWS_AS(g.add_edge({a, 0}, {b, 1}, 0, 1.0 / 0.0), Error);
  REQUIRE_THROWS_AS(g.add_edge({a, 0}, {b, 0}), Error);        // duplicate
  REQUIRE_THROWS_AS(g.add_edge({b, 0}, {a, 0}), Error);        // duplicate, swapped
}

TEST_CASE("parallel edges of distinct types between the same endpoints coexist") {
  Hmn g = Hmn::with_empty_registries(false);
  g.add_layer("l");
  g.add_node_type("t");
  g.add_edge_type("e0");
  g.add_edge_type("e1");
  hmn::NodeId a = g.add_node(0, {0});
  hmn::NodeId b = g.add_node(0, {0});
  g.add_edge({a, 0}, {b, 0}, 0);
  g.add_edge({a, 0}, {b, 0}, 1);
  REQUIRE(g.edge_count() == 2);
  REQUIRE(g.out_links({a, 0}).size() == 2);
  REQUIRE(g.adjacent({a, 0}, {b, 0}));
}

TEST_CASE("the same vertex may be linked across two of its layers") {
  Hmn g;
  g.add_layer("l0");
  g.add_layer("l1");
  hmn::NodeId v = g.add_node(0, {0, 1});
  g.add_edge({v, 0}, {v, 1});
  REQUIRE(g.edge_count() == 1);
  REQUIRE(g.adjacent({v, 0}, {v, 1}));
}

TEST_CASE("homogeneous construction yields one layer and one type") {
  Hmn g = hmn::from_homogeneous(4, {{0, 1}, {1, 2}, {2, 3}});
  REQUIRE(g.node_count() == 4);
  REQUIRE(g.edge_count() == 3);
  REQUIRE(g.layer_count() == 1);
  REQUIRE(g.node_type_count() == 1);
  for (hmn::NodeId v = 0; v < 4; ++v) {
    REQUIRE(g.r_vt(v) == 0);
    REQUIRE(g.r_vl(v) == std::vector<hmn::LayerId>{0});
  }
  REQUIRE(g.has_edge({1, 0}, {2, 0}, 0));
}

TEST_CASE("heterogeneous construction applies node and edge types") {
  std::vector<hmn::TypeId> nt = {0, 1, 2, 1};
  std::vector<hmn::TypedEdge> edges = {{0, 1, 0}, {1, 2, 1}, {2, 3, 0}};
  Hmn g = hmn::from_heterogeneous(3, 2, nt, edges);
  REQUIRE(g.node_count() == 4);
  REQUIRE(g.node_type_count() == 3);
  REQUIRE(g.edge_type_count() == 2);
  REQUIRE(g.r_vt(2) == 2);
  REQUIRE(g.has_edge({1, 0}, {2, 0}, 1));
  REQUIRE(g.r_tl(1, 0) == std::vector<hmn::NodeId>{1, 3});

  REQUIRE_THROWS_AS(hmn::from_heterogeneous(1, 1, {0, 7}, {}), Error);
}

TEST_CASE("multi-layered construction builds a disjoint union with typed layers") {
  std::vector<std::size_t> counts = {3, 2};
  std::vector<std::vector<std::pair<hmn::NodeId, hmn::NodeId>>> intra = {
      {{0, 1}, {1, 2}},  // within layer 0
      {{0, 1}},          // within layer 1
  };
  std::vector<hmn::InterEdges> inter = {{0, 1, {{2, 0}}}};
  Hmn g = hmn::from_multilayered(counts, intra, inter);

  REQUIRE(g.node_count() == 5);
  REQUIRE(g.layer_count() == 2);
  REQUIRE(g.node_type_count() == 2);  // one per layer
  REQUIRE(g.r_vl(0) == std::vector<hmn::LayerId>{0});
  REQUIRE(g.r_vl(3) == std::vector<hmn::LayerId>{1});
  REQUIRE(g.r_vt(0) == 0);
  REQUIRE(g.r_vt(3) == 1);
  REQUIRE(g.edge_count() == 4);
  // layer-1 node 0 is global node 3; the inter edge joins layer-0 node 2 to it
  REQUIRE(g.adjacent({2, 0}, {3, 1}));
}

TEST_CASE("multiplex construction replicates the vertex set into every layer") {
  std::vector<std::vector<std::pair<hmn::NodeId, hmn::NodeId>>> layer_edges = {
      {{0, 1}},
      {{1, 2}, {0, 2}},
  };
  Hmn g = hmn::from_multiplex(3, layer_edges);
  REQUIRE(g.node_count() == 3);
  REQUIRE(g.layer_count() == 2);
  REQUIRE(g.edge_type_count() == 2);  // one per layer
  for (hmn::NodeId v = 0; v < 3; ++v)
    REQUIRE(g.r_vl(v) == std::vector<hmn::LayerId>{0, 1});
  REQUIRE(g.has_edge({0, 0}, {1, 0}, 0));
  REQUIRE(g.has_edge({1, 1}, {2, 1}, 1));
  REQUIRE_FALSE(g.adjacent({0, 1}, {1, 1}));  // layer-0 tie only
}

TEST_CASE("layer-induced subnetworks intersect layer sets and renumber densely") {
  Hmn g = Hmn::with_empty_registries(false);
  g.add_layer("a");
  g.add_layer("b");
  g.add_layer("c");
  g.add_node_type("t");
  g.add_edge_type("e");
  hmn::NodeId v0 = g.add_node(0, {0});        // dropped: only layer 0
  hmn::NodeId v1 = g.add_node(0, {0, 1});     // kept as layer {1}
  hmn::NodeId v2 = g.add_node(0, {1, 2});     // kept as {1, 2}
  hmn::NodeId v3 = g.add_node(0, {2});        // kept as {2}
  g.add_edge({v0, 0}, {v1, 0});               // dropped with layer 0
  g.add_edge({v1, 1}, {v2, 1});               // kept
  g.add_edge({v2, 2}, {v3, 2});               // kept
  g.add_edge({v1, 0}, {v2, 2});               // dropped: one endpoint in layer 0

  Hmn sub = hmn::induced_subhmn(g, {1, 2});
  REQUIRE(sub.node_count() == 3);
  REQUIRE(sub.layer_count() == 3);  // registries carry over unchanged
  REQUIRE(sub.r_vl(0) == std::vector<hmn::LayerId>{1});     // old v1
  REQUIRE(sub.r_vl(1) == std::vector<hmn::LayerId>{1, 2});  // old v2
  REQUIRE(sub.edge_count() == 2);
  REQUIRE(sub.adjacent({0, 1}, {1, 1}));
  REQUIRE(sub.adjacent({1, 2}, {2, 2}));

  REQUIRE_THROWS_AS(hmn::induced_subhmn(g, {}), Error);
  REQUIRE_THROWS_AS(hmn::induced_subhmn(g, {9}), Error);
}

TEST_CASE("layered node ordering is lexicographic on node then layer") {
  LayeredNode a{0, 1};
  LayeredNode b{1, 0};
  LayeredNode c{0, 2};
  REQUIRE(a < b);
  REQUIRE(a < c);
  REQUIRE(c < b);
  REQUIRE(a == LayeredNode{0, 1});
}
