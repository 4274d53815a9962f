#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hmn/core.hpp"
#include "hmn/generate.hpp"
#include "hmn/metrics.hpp"
#include "hmn/rng.hpp"
#include "json.hpp"

namespace hmn {

// Parse failure with the 1-based input line it occurred on.
class ParseError : public Error {
 public:
  ParseError(std::size_t line_no, const std::string& msg)
      : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
  std::size_t line;
};

namespace detail {

// Shortest decimal that round-trips the exact double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline bool parse_u32(std::string_view s, std::uint32_t& out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

// Split on any run of blanks (spaces/tabs); no empty fields.
inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// Iterates significant lines: strips \r, skips blanks and '#' comments,
// reports 1-based line numbers.
template <typename F>
void for_each_line(std::string_view text, F&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') fn(line_no, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

inline void check_name(const std::string& name) {
  if (name.empty()) throw Error("serialize: empty registry name");
  for (char c : name)
    if (c == '\t' || c == '\n' || c == '\r')
      throw Error("serialize: registry name contains separator characters");
  if (name.front() == '#') throw Error("serialize: registry name starts with '#'");
}

}  // namespace detail

// ---- HMNF: the canonical line-oriented serialization ----
//
// Tab-separated UTF-8 text. '#' lines are comments. Sections: [layers],
// [node_types], [edge_types] list id/name pairs; [nodes] lists
// id/type/comma-joined layer set; [edges] lists src node, src layer, dst node,
// dst layer, edge type, weight. Output is canonical: fixed section order, ids
// ascending, undirected edges endpoint-normalized and sorted, weights printed
// as shortest round-trip decimals. Equal graphs serialize to equal bytes.

inline std::string write_hmnf(const Hmn& g) {
  if (g.layer_count() == 0) throw Error("serialize: network needs at least one layer");
  std::string out;
  out += "hmnf\t1\n";
  out += g.directed() ? "directed\t1\n" : "directed\t0\n";
  out += "[layers]\n";
  for (LayerId l = 0; l < g.layer_count(); ++l) {
    detail::check_name(g.layer_name(l));
    out += std::to_string(l) + "\t" + g.layer_name(l) + "\n";
  }
  out += "[node_types]\n";
  for (TypeId t = 0; t < g.node_type_count(); ++t) {
    detail::check_name(g.node_type_name(t));
    out += std::to_string(t) + "\t" + g.node_type_name(t) + "\n";
  }
  out += "[edge_types]\n";
  for (TypeId t = 0; t < g.edge_type_count(); ++t) {
    detail::check_name(g.edge_type_name(t));
    out += std::to_string(t) + "\t" + g.edge_type_name(t) + "\n";
  }
  out += "[nodes]\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out += std::to_string(v) + "\t" + std::to_string(g.r_vt(v)) + "\t";
    const auto& ls = g.r_vl(v);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(ls[i]);
    }
    out += "\n";
  }
  std::vector<Edge> edges = g.edges();
  if (!g.directed())
    for (Edge& e : edges)
      if (e.dst < e.src) std::swap(e.src, e.dst);
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.etype < b.etype;
  });
  out += "[edges]\n";
  for (const Edge& e : edges) {
    out += std::to_string(e.src.node) + "\t" + std::to_string(e.src.layer) + "\t" +
           std::to_string(e.dst.node) + "\t" + std::to_string(e.dst.layer) + "\t" +
           std::to_string(e.etype) + "\t" + detail::format_double(e.weight) + "\n";
  }
  return out;
}

inline Hmn read_hmnf(std::string_view text) {
  struct Row {
    std::size_t line;
    std::vector<std::string_view> fields;
  };
  enum Section { none, layers, node_types, edge_types, nodes, edges };
  std::map<int, std::vector<Row>> rows;
  std::vector<char> seen(6, 0);
  bool got_version = false;
  bool directed = false;
  bool got_directed = false;
  Section cur = none;

  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (!got_version) {
      auto f = detail::split(line, '\t');
      if (f.size() != 2 || f[0] != "hmnf")
        throw ParseError(line_no, "expected 'hmnf<TAB>version' header");
      if (f[1] != "1") throw ParseError(line_no, "unsupported format version");
      got_version = true;
      return;
    }
    if (line.front() == '[') {
      Section s;
      if (line == "[layers]") s = layers;
      else if (line == "[node_types]") s = node_types;
      else if (line == "[edge_types]") s = edge_types;
      else if (line == "[nodes]") s = nodes;
      else if (line == "[edges]") s = edges;
      else throw ParseError(line_no, "unknown section " + std::string(line));
      if (seen[s]) throw ParseError(line_no, "duplicate section " + std::string(line));
      seen[s] = 1;
      cur = s;
      return;
    }
    auto f = detail::split(line, '\t');
    if (cur == none) {
      if (f.size() == 2 && f[0] == "directed" && !got_directed) {
        if (f[1] != "0" && f[1] != "1") throw ParseError(line_no, "directed flag must be 0 or 1");
        directed = f[1] == "1";
        got_directed = true;
        return;
      }
      throw ParseError(line_no, "content before any section");
    }
    rows[cur].push_back({line_no, std::move(f)});
  });
  if (!got_version) throw ParseError(1, "empty input; expected 'hmnf<TAB>version' header");

  // registry sections: id/name pairs forming a dense 0..k-1 id space
  auto read_registry = [&](Section s, const char* what) {
    std::vector<std::string> names;
    std::vector<std::pair<std::uint32_t, std::string>> items;
    for (const Row& r : rows[s]) {
      if (r.fields.size() != 2)
        throw ParseError(r.line, std::string(what) + " row needs id and name");
      std::uint32_t id;
      if (!detail::parse_u32(r.fields[0], id))
        throw ParseError(r.line, std::string(what) + " id is not an integer");
      if (r.fields[1].empty()) throw ParseError(r.line, std::string(what) + " name is empty");
      items.emplace_back(id, std::string(r.fields[1]));
    }
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].first != i)
        throw ParseError(rows[s].empty() ? 1 : rows[s].front().line,
                         std::string(what) + " ids must cover 0..k-1 without gaps");
      names.push_back(std::move(items[i].second));
    }
    return names;
  };

  std::vector<std::string> layer_names = read_registry(layers, "layer");
  if (layer_names.empty()) throw ParseError(1, "network needs at least one layer");
  std::vector<std::string> vtype_names = read_registry(node_types, "node type");
  std::vector<std::string> etype_names = read_registry(edge_types, "edge type");

  Hmn g = Hmn::with_empty_registries(directed);
  for (auto& n : layer_names) g.add_layer(std::move(n));
  for (auto& n : vtype_names) g.add_node_type(std::move(n));
  for (auto& n : etype_names) g.add_edge_type(std::move(n));

  struct NodeRow {
    std::size_t line;
    std::uint32_t id;
    std::uint32_t type;
    std::vector<LayerId> ls;
  };
  std::vector<NodeRow> node_rows;
  for (const Row& r : rows[nodes]) {
    if (r.fields.size() != 3) throw ParseError(r.line, "node row needs id, type, layers");
    NodeRow nr;
    nr.line = r.line;
    if (!detail::parse_u32(r.fields[0], nr.id))
      throw ParseError(r.line, "node id is not an integer");
    if (!detail::parse_u32(r.fields[1], nr.type))
      throw ParseError(r.line, "node type is not an integer");
    if (nr.type >= g.node_type_count()) throw ParseError(r.line, "node references unknown type");
    for (std::string_view part : detail::split(r.fields[2], ',')) {
      std::uint32_t l;
      if (!detail::parse_u32(part, l)) throw ParseError(r.line, "bad layer list");
      if (l >= g.layer_count()) throw ParseError(r.line, "node references unknown layer");
      nr.ls.push_back(l);
    }
    if (nr.ls.empty()) throw ParseError(r.line, "node must belong to at least one layer");
    node_rows.push_back(std::move(nr));
  }
  std::sort(node_rows.begin(), node_rows.end(),
            [](const NodeRow& a, const NodeRow& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < node_rows.size(); ++i) {
    if (node_rows[i].id != i)
      throw ParseError(node_rows[i].line, "node ids must cover 0..n-1 without gaps");
    g.add_node(node_rows[i].type, std::move(node_rows[i].ls));
  }

  for (const Row& r : rows[edges]) {
    if (r.fields.size() != 6)
      throw ParseError(r.line,
                       "edge row needs src node, src layer, dst node, dst layer, type, weight");
    std::uint32_t sn, sl, dn, dl, et;
    double w;
    if (!detail::parse_u32(r.fields[0], sn) || !detail::parse_u32(r.fields[1], sl) ||
        !detail::parse_u32(r.fields[2], dn) || !detail::parse_u32(r.fields[3], dl) ||
        !detail::parse_u32(r.fields[4], et))
      throw ParseError(r.line, "edge fields must be integers");
    if (!detail::parse_double(r.fields[5], w)) throw ParseError(r.line, "bad edge weight");
    if (sn >= g.node_count() || dn >= g.node_count())
      throw ParseError(r.line, "edge references undeclared node");
    if (sl >= g.layer_count() || dl >= g.layer_count())
      throw ParseError(r.line, "edge references unknown layer");
    if (!g.in_layer(sn, sl) || !g.in_layer(dn, dl))
      throw ParseError(r.line, "edge endpoint is not in the named layer");
    if (et >= g.edge_type_count()) throw ParseError(r.line, "edge references unknown type");
    try {
      g.add_edge({sn, sl}, {dn, dl}, et, w);
    } catch (const Error& e) {
      throw ParseError(r.line, e.what());
    }
  }
  return g;
}

// ---- Plain interchange readers ----

// Multiplex edge list: "layer src dst [weight]" per line, whitespace
// separated. Node ids form one shared universe (densified preserving numeric
// order; original numbers kept as nothing beyond order). Every node is present
// in every layer; layers keep their original numbers as names; each layer gets
// its own edge type.
inline Hmn read_multiplex(std::string_view text) {
  struct Rec {
    std::size_t line;
    std::uint64_t layer, src, dst;
    double w;
  };
  std::vector<Rec> recs;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto f = detail::split_ws(line);
    if (f.size() != 3 && f.size() != 4)
      throw ParseError(line_no, "expected 'layer src dst [weight]'");
    Rec r;
    r.line = line_no;
    if (!detail::parse_u64(f[0], r.layer) || !detail::parse_u64(f[1], r.src) ||
        !detail::parse_u64(f[2], r.dst))
      throw ParseError(line_no, "layer and node ids must be non-negative integers");
    r.w = 1.0;
    if (f.size() == 4) {
      if (!detail::parse_double(f[3], r.w) || !(r.w > 0))
        throw ParseError(line_no, "weight must be a positive number");
    }
    if (r.src == r.dst) throw ParseError(line_no, "self-loop rejected");
    recs.push_back(r);
  });
  if (recs.empty()) throw ParseError(1, "empty multiplex input");

  std::vector<std::uint64_t> layer_ids, node_ids;
  for (const Rec& r : recs) {
    layer_ids.push_back(r.layer);
    node_ids.push_back(r.src);
    node_ids.push_back(r.dst);
  }
  std::sort(layer_ids.begin(), layer_ids.end());
  layer_ids.erase(std::unique(layer_ids.begin(), layer_ids.end()), layer_ids.end());
  std::sort(node_ids.begin(), node_ids.end());
  node_ids.erase(std::unique(node_ids.begin(), node_ids.end()), node_ids.end());

  std::map<std::uint64_t, LayerId> lmap;
  std::map<std::uint64_t, NodeId> nmap;
  for (std::size_t i = 0; i < layer_ids.size(); ++i)
    lmap[layer_ids[i]] = static_cast<LayerId>(i);
  for (std::size_t i = 0; i < node_ids.size(); ++i) nmap[node_ids[i]] = static_cast<NodeId>(i);

  Hmn g = Hmn::with_empty_registries(false);
  std::vector<LayerId> all_layers;
  for (std::uint64_t orig : layer_ids) all_layers.push_back(g.add_layer(std::to_string(orig)));
  g.add_node_type("default");
  for (std::uint64_t orig : layer_ids) g.add_edge_type("e_" + std::to_string(orig));
  for (std::size_t i = 0; i < node_ids.size(); ++i) g.add_node(kDefaultType, all_layers);
  for (const Rec& r : recs) {
    LayerId l = lmap[r.layer];
    try {
      g.add_edge({nmap[r.src], l}, {nmap[r.dst], l}, static_cast<TypeId>(l), r.w);
    } catch (const Error& e) {
      throw ParseError(r.line, e.what());
    }
  }
  return g;
}

// Plain edge list: "src dst [weight]" per line. One layer, default types.
// Node ids are densified preserving numeric order.
inline Hmn read_edgelist(std::string_view text, bool directed = false) {
  struct Rec {
    std::size_t line;
    std::uint64_t src, dst;
    double w;
  };
  std::vector<Rec> recs;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto f = detail::split_ws(line);
    if (f.size() != 2 && f.size() != 3)
      throw ParseError(line_no, "expected 'src dst [weight]'");
    Rec r;
    r.line = line_no;
    if (!detail::parse_u64(f[0], r.src) || !detail::parse_u64(f[1], r.dst))
      throw ParseError(line_no, "node ids must be non-negative integers");
    r.w = 1.0;
    if (f.size() == 3) {
      if (!detail::parse_double(f[2], r.w) || !(r.w > 0))
        throw ParseError(line_no, "weight must be a positive number");
    }
    if (r.src == r.dst) throw ParseError(line_no, "self-loop rejected");
    recs.push_back(r);
  });

  std::vector<std::uint64_t> node_ids;
  for (const Rec& r : recs) {
    node_ids.push_back(r.src);
    node_ids.push_back(r.dst);
  }
  std::sort(node_ids.begin(), node_ids.end());
  node_ids.erase(std::unique(node_ids.begin(), node_ids.end()), node_ids.end());
  std::map<std::uint64_t, NodeId> nmap;
  for (std::size_t i = 0; i < node_ids.size(); ++i) nmap[node_ids[i]] = static_cast<NodeId>(i);

  Hmn g(directed);
  LayerId l = g.add_layer("layer0");
  for (std::size_t i = 0; i < node_ids.size(); ++i) g.add_node(kDefaultType, {l});
  for (const Rec& r : recs) {
    try {
      g.add_edge({nmap[r.src], l}, {nmap[r.dst], l}, kDefaultType, r.w);
    } catch (const Error& e) {
      throw ParseError(r.line, e.what());
    }
  }
  return g;
}

// ---- Report writers ----

struct CentralityAverages {
  double avg_degree_centrality = 0;
  double avg_betweenness = 0;  // normalized by 2/((n-1)(n-2))
  double avg_closeness = 0;
};

namespace detail {

inline std::string opt_str(const std::optional<double>& v) {
  return v ? format_double(*v) : "nan";
}

}  // namespace detail

// One header line plus one data row. Column order is stable; undefined values
// print as "nan".
inline std::string summary_csv(const NetworkSummary& s,
                               const CentralityAverages* extras = nullptr) {
  std::string head =
      "Nodes,Edges,Density,AvgDegree,Assortativity,Triangles,AvgTrianglesPerNode,"
      "AvgClustering,CliqueNumber";
  std::string row = std::to_string(s.nodes) + "," + std::to_string(s.edges) + "," +
                    detail::format_double(s.density) + "," + detail::format_double(s.avg_degree) +
                    "," + detail::opt_str(s.assortativity) + "," + std::to_string(s.triangles) +
                    "," + detail::format_double(s.avg_triangles_per_node) + "," +
                    detail::format_double(s.avg_clustering) + "," +
                    std::to_string(s.clique_number);
  if (extras) {
    head += ",AvgDegreeCentrality,AvgBetweenness,AvgCloseness";
    row += "," + detail::format_double(extras->avg_degree_centrality) + "," +
           detail::format_double(extras->avg_betweenness) + "," +
           detail::format_double(extras->avg_closeness);
  }
  return head + "\n" + row + "\n";
}

inline std::string summary_json(const NetworkSummary& s,
                                const CentralityAverages* extras = nullptr) {
  nlohmann::ordered_json j;
  j["nodes"] = s.nodes;
  j["edges"] = s.edges;
  j["density"] = s.density;
  j["avg_degree"] = s.avg_degree;
  if (s.assortativity) j["assortativity"] = *s.assortativity;
  else j["assortativity"] = nullptr;
  j["triangles"] = s.triangles;
  j["avg_triangles_per_node"] = s.avg_triangles_per_node;
  j["avg_clustering"] = s.avg_clustering;
  j["clique_number"] = s.clique_number;
  if (extras) {
    j["avg_degree_centrality"] = extras->avg_degree_centrality;
    j["avg_betweenness"] = extras->avg_betweenness;
    j["avg_closeness"] = extras->avg_closeness;
  }
  return j.dump(2) + "\n";
}

inline std::string layer_report_json(const std::vector<LayerReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const LayerReport& r : reports) {
    nlohmann::ordered_json j;
    j["layer"] = r.layer;
    j["active_nodes"] = r.active_nodes;
    j["edges"] = r.edges;
    j["density"] = r.density;
    j["avg_degree"] = r.avg_degree;
    j["avg_degree_centrality"] = r.avg_degree_centrality;
    j["avg_betweenness"] = r.avg_betweenness;
    j["avg_closeness"] = r.avg_closeness;
    j["avg_clustering"] = r.avg_clustering;
    j["avg_triangles_per_node"] = r.avg_triangles_per_node;
    j["triangles"] = r.triangles;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

inline std::string histogram_json(const std::map<std::uint32_t, std::uint64_t>& hist,
                                  const std::vector<LogBin>* smoothed = nullptr) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (auto [d, c] : hist) rows.push_back({d, c});
  j["degrees"] = std::move(rows);
  if (smoothed) {
    nlohmann::ordered_json bins = nlohmann::ordered_json::array();
    for (const LogBin& b : *smoothed) {
      nlohmann::ordered_json bj;
      bj["lo"] = b.lo;
      bj["hi"] = b.hi;
      bj["center"] = b.center;
      bj["count"] = b.count;
      bj["density"] = b.density;
      bins.push_back(std::move(bj));
    }
    j["log_binned"] = std::move(bins);
  }
  return j.dump(2) + "\n";
}

inline std::string layer_report_csv(const std::vector<LayerReport>& reports) {
  std::string out =
      "Layer,ActiveNodes,Edges,Density,AvgDegree,AvgDegreeCentrality,AvgBetweenness,"
      "AvgCloseness,AvgClustering,AvgTrianglesPerNode,Triangles\n";
  auto row = [&](const std::string& label, const LayerReport& r) {
    out += label + "," + std::to_string(r.active_nodes) + "," + std::to_string(r.edges) + "," +
           detail::format_double(r.density) + "," + detail::format_double(r.avg_degree) + "," +
           detail::format_double(r.avg_degree_centrality) + "," +
           detail::format_double(r.avg_betweenness) + "," +
           detail::format_double(r.avg_closeness) + "," +
           detail::format_double(r.avg_clustering) + "," +
           detail::format_double(r.avg_triangles_per_node) + "," + std::to_string(r.triangles) +
           "\n";
  };
  for (const LayerReport& r : reports) row(std::to_string(r.layer), r);
  if (!reports.empty()) {
    LayerReport mean;
    double n = static_cast<double>(reports.size());
    double an = 0, ed = 0;
    for (const LayerReport& r : reports) {
      an += static_cast<double>(r.active_nodes);
      ed += static_cast<double>(r.edges);
      mean.density += r.density;
      mean.avg_degree += r.avg_degree;
      mean.avg_degree_centrality += r.avg_degree_centrality;
      mean.avg_betweenness += r.avg_betweenness;
      mean.avg_closeness += r.avg_closeness;
      mean.avg_clustering += r.avg_clustering;
      mean.avg_triangles_per_node += r.avg_triangles_per_node;
      mean.triangles += r.triangles;
    }
    mean.active_nodes = static_cast<std::uint64_t>(an / n + 0.5);
    mean.edges = static_cast<std::uint64_t>(ed / n + 0.5);
    mean.density /= n;
    mean.avg_degree /= n;
    mean.avg_degree_centrality /= n;
    mean.avg_betweenness /= n;
    mean.avg_closeness /= n;
    mean.avg_clustering /= n;
    mean.avg_triangles_per_node /= n;
    mean.triangles = static_cast<std::uint64_t>(
        static_cast<double>(mean.triangles) / n + 0.5);
    row("mean", mean);
  }
  return out;
}

// Two-column degree histogram, optionally followed by a log-binned block.
inline std::string histogram_csv(const std::map<std::uint32_t, std::uint64_t>& hist,
                                 const std::vector<LogBin>* smoothed = nullptr) {
  std::string out = "degree,count\n";
  for (auto [d, c] : hist) out += std::to_string(d) + "," + std::to_string(c) + "\n";
  if (smoothed) {
    out += "\n# log_binned\n";
    out += "bin_lo,bin_hi,center,count,density\n";
    for (const LogBin& b : *smoothed)
      out += detail::format_double(b.lo) + "," + detail::format_double(b.hi) + "," +
             detail::format_double(b.center) + "," + std::to_string(b.count) + "," +
             detail::format_double(b.density) + "\n";
  }
  return out;
}

// Reads the two-column block of histogram_csv (header optional); stops at a
// blank line. Comment lines are skipped.
inline std::map<std::uint32_t, std::uint64_t> read_histogram_csv(std::string_view text) {
  std::map<std::uint32_t, std::uint64_t> hist;
  bool stopped = false;
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size() && !stopped) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    std::size_t next = end == text.size() ? text.size() + 1 : end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (!hist.empty()) stopped = true;  // blank line ends the histogram block
    } else if (line.front() != '#') {
      auto f = detail::split(line, ',');
      if (f.size() != 2) throw ParseError(line_no, "expected 'degree,count'");
      std::uint32_t d;
      std::uint64_t c;
      if (!detail::parse_u32(f[0], d) || !detail::parse_u64(f[1], c)) {
        if (line_no == 1 && f[0] == "degree" && f[1] == "count") {
          pos = next;
          continue;  // header row
        }
        throw ParseError(line_no, "degree and count must be non-negative integers");
      }
      if (hist.contains(d)) throw ParseError(line_no, "duplicate degree row");
      hist[d] = c;
    }
    pos = next;
  }
  if (hist.empty()) throw ParseError(1, "empty histogram");
  return hist;
}

// ---- Generator configuration ----
//
// Flat key-value text (one "key value" or "key = value" pair per line, '#'
// comments). Keys: nodes, layers, types_per_layer, m, alpha, beta, seed,
// layer_choice.
//   types_per_layer: "3" (all layers share types 0..2) or explicit per-layer
//                    id lists "0,1;1,2"
//   m:               "const K" | "normal MEAN,STD" | "file PATH" |
//                    "matrix r00,r01;r10,r11"
//   layer_choice:    "uniform" | integer weights "3,1"

struct GenConfig {
  GenParams params;  // params.m is filled only by the matrix form
  enum class MKind { constant, normal, file, matrix } m_kind = MKind::constant;
  std::uint32_t m_const = 2;
  double m_mean = 2.0, m_std = 1.0;
  std::string m_file;
};

namespace detail {

inline std::pair<std::string_view, std::string_view> key_value(std::string_view line) {
  std::size_t eq = line.find('=');
  std::string_view key, val;
  if (eq != std::string_view::npos) {
    key = line.substr(0, eq);
    val = line.substr(eq + 1);
  } else {
    std::size_t sp = line.find_first_of(" \t");
    if (sp == std::string_view::npos) {
      key = line;
      val = {};
    } else {
      key = line.substr(0, sp);
      val = line.substr(sp + 1);
    }
  }
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  return {trim(key), trim(val)};
}

inline std::vector<std::vector<std::uint32_t>> parse_matrix_rows(std::string_view s,
                                                                 std::size_t line_no) {
  std::vector<std::vector<std::uint32_t>> m;
  for (std::string_view row : split(s, ';')) {
    std::vector<std::uint32_t> r;
    for (std::string_view cell : split(row, ',')) {
      std::uint32_t v;
      if (!parse_u32(cell, v)) throw ParseError(line_no, "matrix entries must be integers");
      r.push_back(v);
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace detail

inline GenConfig read_gen_config(std::string_view text) {
  GenConfig cfg;
  detail::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto [key, val] = detail::key_value(line);
    if (val.empty()) throw ParseError(line_no, "expected 'key value'");
    if (key == "nodes") {
      if (!detail::parse_u64(val, cfg.params.n)) throw ParseError(line_no, "bad nodes value");
    } else if (key == "layers") {
      if (!detail::parse_u32(val, cfg.params.layers) || cfg.params.layers == 0)
        throw ParseError(line_no, "layers must be a positive integer");
    } else if (key == "alpha") {
      if (!detail::parse_double(val, cfg.params.alpha))
        throw ParseError(line_no, "bad alpha value");
    } else if (key == "beta") {
      if (!detail::parse_double(val, cfg.params.beta)) throw ParseError(line_no, "bad beta value");
    } else if (key == "seed") {
      if (!detail::parse_u64(val, cfg.params.seed)) throw ParseError(line_no, "bad seed value");
    } else if (key == "types_per_layer") {
      cfg.params.types_per_layer.clear();
      if (val.find(';') == std::string_view::npos &&
          val.find(',') == std::string_view::npos) {
        std::uint32_t k;
        if (!detail::parse_u32(val, k) || k == 0)
          throw ParseError(line_no, "types_per_layer count must be positive");
        std::vector<TypeId> shared;
        for (TypeId t = 0; t < k; ++t) shared.push_back(t);
        // single entry marks the shared form; expanded per layer on resolve
        cfg.params.types_per_layer.push_back(std::move(shared));
      } else {
        auto parts = detail::split(val, ';');
        if (parts.size() > 1 && parts.back().empty()) parts.pop_back();  // trailing terminator
        for (std::string_view part : parts) {
          std::vector<TypeId> ts;
          for (std::string_view cell : detail::split(part, ',')) {
            std::uint32_t t;
            if (!detail::parse_u32(cell, t)) throw ParseError(line_no, "bad type id list");
            ts.push_back(t);
          }
          if (ts.empty()) throw ParseError(line_no, "empty type list");
          cfg.params.types_per_layer.push_back(std::move(ts));
        }
      }
    } else if (key == "m") {
      auto f = detail::split_ws(val);
      if (f.empty()) throw ParseError(line_no, "bad m value");
      if (f[0] == "const" && f.size() == 2) {
        if (!detail::parse_u32(f[1], cfg.m_const)) throw ParseError(line_no, "bad m constant");
        cfg.m_kind = GenConfig::MKind::constant;
      } else if (f[0] == "normal" && f.size() == 2) {
        auto mm = detail::split(f[1], ',');
        if (mm.size() != 2 || !detail::parse_double(mm[0], cfg.m_mean) ||
            !detail::parse_double(mm[1], cfg.m_std))
          throw ParseError(line_no, "normal form needs MEAN,STD");
        cfg.m_kind = GenConfig::MKind::normal;
      } else if (f[0] == "file" && f.size() == 2) {
        cfg.m_file = std::string(f[1]);
        cfg.m_kind = GenConfig::MKind::file;
      } else if (f[0] == "matrix" && f.size() == 2) {
        cfg.params.m = detail::parse_matrix_rows(f[1], line_no);
        cfg.m_kind = GenConfig::MKind::matrix;
      } else {
        throw ParseError(line_no, "m must be 'const K', 'normal MEAN,STD', 'file PATH' or "
                                  "'matrix ROWS'");
      }
    } else if (key == "layer_choice") {
      if (val == "uniform") {
        cfg.params.layer_weights.clear();
      } else {
        cfg.params.layer_weights.clear();
        for (std::string_view cell : detail::split(val, ',')) {
          std::uint64_t w;
          if (!detail::parse_u64(cell, w))
            throw ParseError(line_no, "layer_choice must be 'uniform' or integer weights");
          cfg.params.layer_weights.push_back(w);
        }
      }
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  });
  return cfg;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing " + path);
}

// Expands the config into concrete GenParams: resolves the m matrix (sampling
// normal entries from the seed-derived stream when asked) and broadcasts a
// shared type pool over all layers.
inline GenParams resolve_gen_config(const GenConfig& cfg) {
  GenParams p = cfg.params;
  const std::uint32_t L = p.layers;
  // a single type list means "shared by every layer"
  if (p.types_per_layer.size() == 1 && L > 1)
    p.types_per_layer.assign(L, p.types_per_layer.front());
  switch (cfg.m_kind) {
    case GenConfig::MKind::constant:
      p.m.assign(L, std::vector<std::uint32_t>(L, cfg.m_const));
      break;
    case GenConfig::MKind::normal: {
      Rng mrng(p.seed ^ 0x6d2d6d61747269ULL);  // m draws come from a side stream
      p.m = sample_m_matrix(L, cfg.m_mean, cfg.m_std, mrng);
      break;
    }
    case GenConfig::MKind::file: {
      std::string body = read_text_file(cfg.m_file);
      std::vector<std::vector<std::uint32_t>> m;
      detail::for_each_line(body, [&](std::size_t line_no, std::string_view line) {
        std::vector<std::uint32_t> row;
        for (std::string_view cell : detail::split_ws(line)) {
          std::uint32_t v;
          if (!detail::parse_u32(cell, v))
            throw ParseError(line_no, "matrix entries must be integers");
          row.push_back(v);
        }
        if (!row.empty()) m.push_back(std::move(row));
      });
      p.m = std::move(m);
      break;
    }
    case GenConfig::MKind::matrix:
      p.m = cfg.params.m;
      break;
  }
  return p;
}

// Flat key-value manifest of fully resolved parameters; itself a valid
// generator config, so a run can be repeated from its manifest.
inline std::string write_manifest(const GenParams& p) {
  std::string out;
  out += "# generation manifest: resolved parameters\n";
  out += "nodes " + std::to_string(p.n) + "\n";
  out += "layers " + std::to_string(p.layers) + "\n";
  if (!p.types_per_layer.empty()) {
    // count form when every layer shares the pool {0..k-1}; otherwise explicit
    // per-layer lists, each closed by ';' so a bare id never reads as a count
    const auto& first = p.types_per_layer.front();
    bool shared_prefix = true;
    for (std::size_t i = 0; i < first.size(); ++i)
      if (first[i] != i) shared_prefix = false;
    for (const auto& pool : p.types_per_layer)
      if (pool != first) shared_prefix = false;
    out += "types_per_layer ";
    if (shared_prefix && !first.empty()) {
      out += std::to_string(first.size());
    } else {
      for (const auto& pool : p.types_per_layer) {
        for (std::size_t j = 0; j < pool.size(); ++j) {
          if (j) out += ",";
          out += std::to_string(pool[j]);
        }
        out += ";";
      }
    }
    out += "\n";
  }
  if (!p.m.empty()) {
    out += "m matrix ";
    for (std::size_t i = 0; i < p.m.size(); ++i) {
      if (i) out += ";";
      for (std::size_t j = 0; j < p.m[i].size(); ++j) {
        if (j) out += ",";
        out += std::to_string(p.m[i][j]);
      }
    }
    out += "\n";
  }
  out += "alpha " + detail::format_double(p.alpha) + "\n";
  out += "beta " + detail::format_double(p.beta) + "\n";
  out += "seed " + std::to_string(p.seed) + "\n";
  if (p.layer_weights.empty()) {
    out += "layer_choice uniform\n";
  } else {
    out += "layer_choice ";
    for (std::size_t i = 0; i < p.layer_weights.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(p.layer_weights[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace hmn
