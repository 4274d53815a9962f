// Command-line frontend: generation, statistics, degree distributions,
// distribution comparison, and format conversion.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 comparison failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hmn/hmn.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kCompareFailed = 3;

[[noreturn]] void usage_fail(const std::string& msg) {
  throw CLI::ValidationError(msg);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    hmn::write_text_file(out_path, content);
  }
}

hmn::Hmn load_graph(const std::string& path, const std::string& from, bool directed) {
  std::string body = hmn::read_text_file(path);
  if (from == "hmnf") return hmn::read_hmnf(body);
  if (from == "multiplex") return hmn::read_multiplex(body);
  if (from == "edgelist") return hmn::read_edgelist(body, directed);
  usage_fail("--from must be hmnf, multiplex or edgelist");
}

std::vector<std::uint32_t> parse_id_list(const std::string& s, const char* what) {
  std::vector<std::uint32_t> out;
  for (std::string_view part : hmn::detail::split(s, ',')) {
    std::uint32_t v;
    if (!hmn::detail::parse_u32(part, v))
      usage_fail(std::string(what) + " must be a comma list of ids");
    out.push_back(v);
  }
  if (out.empty()) usage_fail(std::string(what) + " must name at least one id");
  return out;
}

hmn::MetricScope build_scope(const hmn::Hmn& g, const std::string& layers,
                             const std::string& types) {
  hmn::MetricScope scope = hmn::MetricScope::full(g);
  if (!layers.empty()) scope.layers = parse_id_list(layers, "--layers");
  if (!types.empty()) scope.types = parse_id_list(types, "--types");
  return scope;
}

// Scope-wide averages of the three node measures. Degree centrality is NaN
// when the scope holds a single node (denominator vanishes for every node).
hmn::CentralityAverages centrality_averages(const hmn::Hmn& g, const hmn::MetricScope& scope) {
  hmn::CentralityAverages avg;
  std::vector<hmn::LayeredNode> uni = hmn::scoped_nodes(g, scope);
  const double n = static_cast<double>(uni.size());
  if (uni.size() < 2) {
    avg.avg_degree_centrality = std::numeric_limits<double>::quiet_NaN();
  } else {
    double sum = 0;
    for (hmn::LayeredNode v : uni) sum += hmn::degree_centrality(g, v, scope);
    avg.avg_degree_centrality = sum / n;
  }
  double cc = 0;
  for (hmn::LayeredNode v : uni) cc += hmn::closeness(g, v, scope);
  avg.avg_closeness = uni.empty() ? 0.0 : cc / n;
  if (uni.size() >= 3) {
    double norm = (g.directed() ? 1.0 : 2.0) / ((n - 1.0) * (n - 2.0));
    double sum = 0;
    for (const auto& [v, raw] : hmn::betweenness_all(g, scope)) sum += raw * norm;
    avg.avg_betweenness = sum / n;
  }
  return avg;
}

// ---- generate ----

struct GenerateArgs {
  std::string preset, config, types_spec, m_spec, weights_spec, out, manifest;
  std::uint64_t nodes = 0, seed = 0;
  std::uint32_t layers = 0;
  double alpha = 0, beta = 0;
  CLI::App* cmd = nullptr;
};

void apply_preset(const std::string& name, hmn::GenConfig& cfg) {
  auto shared = [](std::uint32_t k) {
    std::vector<hmn::TypeId> t;
    for (hmn::TypeId i = 0; i < k; ++i) t.push_back(i);
    return t;
  };
  if (name == "homogeneous") {
    cfg.params.layers = 1;
    cfg.params.types_per_layer = {shared(1)};
  } else if (name == "heterogeneous") {
    cfg.params.layers = 1;
    cfg.params.types_per_layer = {shared(3)};
  } else if (name == "multilayer") {
    cfg.params.layers = 3;
    cfg.params.types_per_layer = {{0}, {1}, {2}};
  } else if (name == "hmn") {
    cfg.params.layers = 3;
    cfg.params.types_per_layer = {{0, 1}, {1, 2}, {0, 2}};
  } else {
    usage_fail("unknown preset '" + name + "'");
  }
}

int cmd_generate(const GenerateArgs& a) {
  hmn::GenConfig cfg;
  if (!a.config.empty() && !a.preset.empty())
    usage_fail("--config and --preset cannot be combined");
  if (!a.config.empty()) cfg = hmn::read_gen_config(hmn::read_text_file(a.config));
  if (!a.preset.empty()) apply_preset(a.preset, cfg);

  // flag values reuse the config-file grammar, so they validate identically
  auto overlay = [&](const char* key, const std::string& value) {
    try {
      hmn::GenConfig one = hmn::read_gen_config(std::string(key) + " " + value);
      return one;
    } catch (const hmn::ParseError& e) {
      usage_fail(std::string("--") + key + ": " + e.what());
    }
  };
  if (a.cmd->count("--nodes")) cfg.params.n = a.nodes;
  if (a.cmd->count("--layers")) cfg.params.layers = a.layers;
  if (a.cmd->count("--alpha")) cfg.params.alpha = a.alpha;
  if (a.cmd->count("--beta")) cfg.params.beta = a.beta;
  if (a.cmd->count("--seed")) cfg.params.seed = a.seed;
  if (a.cmd->count("--types-per-layer"))
    cfg.params.types_per_layer = overlay("types_per_layer", a.types_spec).params.types_per_layer;
  if (a.cmd->count("--m")) {
    hmn::GenConfig one = overlay("m", a.m_spec);
    cfg.m_kind = one.m_kind;
    cfg.m_const = one.m_const;
    cfg.m_mean = one.m_mean;
    cfg.m_std = one.m_std;
    cfg.m_file = one.m_file;
    cfg.params.m = one.params.m;
  }
  if (a.cmd->count("--layer-weights"))
    cfg.params.layer_weights = overlay("layer_choice", a.weights_spec).params.layer_weights;

  hmn::GenParams p = hmn::resolve_gen_config(cfg);
  if (p.types_per_layer.empty())
    p.types_per_layer.assign(p.layers, std::vector<hmn::TypeId>{0});
  if (p.types_per_layer.size() == 1 && p.layers > 1)
    p.types_per_layer.assign(p.layers, p.types_per_layer.front());

  hmn::GenStats stats;
  hmn::Hmn g = hmn::generate(p, &stats);
  for (const std::string& w : stats.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());

  emit(a.out, hmn::write_hmnf(g));
  std::string manifest_path = a.manifest;
  if (manifest_path.empty() && !a.out.empty()) manifest_path = a.out + ".manifest";
  if (!manifest_path.empty()) hmn::write_text_file(manifest_path, hmn::write_manifest(p));
  return kOk;
}

// ---- stats ----

int cmd_stats(const hmn::Hmn& g, const std::string& layers, const std::string& types,
              bool per_layer, const std::string& format, const std::string& out) {
  if (per_layer) {
    if (!layers.empty() || !types.empty())
      usage_fail("--per-layer does not combine with scope flags");
    std::vector<hmn::LayerReport> reports = hmn::per_layer_report(g);
    emit(out, format == "json" ? hmn::layer_report_json(reports)
                               : hmn::layer_report_csv(reports));
    return kOk;
  }
  hmn::MetricScope scope = build_scope(g, layers, types);
  if (hmn::scoped_nodes(g, scope).empty()) throw hmn::Error("scope excludes every node");
  hmn::NetworkSummary s = hmn::network_summary(g, scope);
  hmn::CentralityAverages extras = centrality_averages(g, scope);
  emit(out, format == "json" ? hmn::summary_json(s, &extras) : hmn::summary_csv(s, &extras));
  return kOk;
}

// ---- dist ----

int cmd_dist(const hmn::Hmn& g, const std::string& layers, const std::string& types,
             const std::string& split_name, std::uint32_t smooth, const std::string& format,
             const std::string& out) {
  hmn::EdgeSplit split;
  if (split_name == "intra") split = hmn::EdgeSplit::intra;
  else if (split_name == "inter") split = hmn::EdgeSplit::inter;
  else if (split_name == "all") split = hmn::EdgeSplit::all;
  else usage_fail("--split must be intra, inter or all");

  hmn::MetricScope scope = build_scope(g, layers, types);
  auto hist = hmn::degree_distribution(g, scope, split);

  std::vector<hmn::LogBin> bins;
  bool smoothed = smooth > 0;
  if (smoothed) {
    std::uint32_t dmax = 0;
    for (auto [d, c] : hist)
      if (c > 0) dmax = std::max(dmax, d);
    double base = dmax >= 1 ? std::pow(static_cast<double>(dmax) + 1.0,
                                       1.0 / static_cast<double>(smooth))
                            : 2.0;
    if (!(base > 1.0001)) base = 1.0001;
    bins = hmn::log_bins(hist, base);
  }
  const std::vector<hmn::LogBin>* bp = smoothed ? &bins : nullptr;
  emit(out, format == "json" ? hmn::histogram_json(hist, bp) : hmn::histogram_csv(hist, bp));
  return kOk;
}

// ---- compare ----

int cmd_compare(const std::string& a, const std::string& b, std::optional<double> threshold) {
  auto ha = hmn::read_histogram_csv(hmn::read_text_file(a));
  auto hb = hmn::read_histogram_csv(hmn::read_text_file(b));
  double ks = hmn::ks_distance(ha, hb);
  bool pass = !threshold || ks <= *threshold;
  std::printf("ks %s\nverdict %s\n", hmn::detail::format_double(ks).c_str(),
              pass ? "pass" : "fail");
  return pass ? kOk : kCompareFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous multi-layered network toolkit"};
  app.require_subcommand(1);

  GenerateArgs ga;
  CLI::App* gen = app.add_subcommand("generate", "Grow a network by preferential attachment");
  ga.cmd = gen;
  gen->add_option("--preset", ga.preset, "homogeneous|heterogeneous|multilayer|hmn");
  gen->add_option("--config", ga.config, "key-value parameter file (e.g. a run manifest)");
  gen->add_option("--nodes", ga.nodes, "number of nodes to grow");
  gen->add_option("--layers", ga.layers, "number of layers");
  gen->add_option("--types-per-layer", ga.types_spec,
                  "type pool: count K shared by all layers, or per-layer lists '0,1;1,2'");
  gen->add_option("--m", ga.m_spec, "'const K' | 'normal MEAN,STD' | 'file PATH' | 'matrix ROWS'");
  gen->add_option("--alpha", ga.alpha, "degree weight in the attachment score");
  gen->add_option("--beta", ga.beta, "neighbor-degree weight in the attachment score");
  gen->add_option("--seed", ga.seed, "RNG seed; equal seeds give byte-identical output");
  gen->add_option("--layer-weights", ga.weights_spec, "'uniform' or integer weights '3,1'");
  gen->add_option("--out", ga.out, "output HMNF path")->required();
  gen->add_option("--manifest", ga.manifest, "manifest path (default: OUT.manifest)");

  std::string st_in, st_from = "hmnf", st_layers, st_types, st_format = "csv", st_out;
  bool st_per_layer = false, st_directed = false;
  CLI::App* st = app.add_subcommand("stats", "Summary statistics of a network");
  st->add_option("--in", st_in, "input file")->required();
  st->add_option("--from", st_from, "hmnf|multiplex|edgelist (default hmnf)");
  st->add_flag("--directed", st_directed, "treat edgelist input as directed");
  st->add_option("--layers", st_layers, "restrict scope to these layer ids");
  st->add_option("--types", st_types, "restrict scope to these node type ids");
  st->add_flag("--per-layer", st_per_layer, "one row per layer plus a mean row");
  st->add_option("--format", st_format, "csv|json (default csv)");
  st->add_option("--out", st_out, "output path (default stdout)");

  std::string d_in, d_from = "hmnf", d_layers, d_types, d_split = "all", d_format = "csv", d_out;
  bool d_directed = false;
  std::uint32_t d_smooth = 0;
  CLI::App* ds = app.add_subcommand("dist", "Degree distribution of a network");
  ds->add_option("--in", d_in, "input file")->required();
  ds->add_option("--from", d_from, "hmnf|multiplex|edgelist (default hmnf)");
  ds->add_flag("--directed", d_directed, "treat edgelist input as directed");
  ds->add_option("--layers", d_layers, "restrict scope to these layer ids");
  ds->add_option("--types", d_types, "restrict scope to these node type ids");
  ds->add_option("--split", d_split, "count intra|inter|all edges (default all)");
  ds->add_option("--smooth", d_smooth, "append a log-binned series with N bins");
  ds->add_option("--format", d_format, "csv|json (default csv)");
  ds->add_option("--out", d_out, "output path (default stdout)");

  std::string c_a, c_b;
  double c_threshold = 0;
  CLI::App* cp = app.add_subcommand("compare", "KS distance between two degree histograms");
  cp->add_option("--a", c_a, "first histogram CSV")->required();
  cp->add_option("--b", c_b, "second histogram CSV")->required();
  CLI::Option* thr = cp->add_option("--threshold", c_threshold,
                                    "fail (exit 3) when the KS distance exceeds this");

  std::string v_in, v_from, v_out;
  bool v_directed = false;
  CLI::App* cv = app.add_subcommand("convert", "Convert a network to canonical HMNF");
  cv->add_option("--from", v_from, "multiplex|edgelist|hmnf")->required();
  cv->add_option("--in", v_in, "input file")->required();
  cv->add_option("--out", v_out, "output path (default stdout)");
  cv->add_flag("--directed", v_directed, "treat edgelist input as directed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_generate(ga);
    if (*st) {
      if (st_format != "csv" && st_format != "json") usage_fail("--format must be csv or json");
      return cmd_stats(load_graph(st_in, st_from, st_directed), st_layers, st_types, st_per_layer,
                       st_format, st_out);
    }
    if (*ds) {
      if (d_format != "csv" && d_format != "json") usage_fail("--format must be csv or json");
      return cmd_dist(load_graph(d_in, d_from, d_directed), d_layers, d_types, d_split, d_smooth,
                      d_format, d_out);
    }
    if (*cp) {
      std::optional<double> threshold;
      if (thr->count()) threshold = c_threshold;
      return cmd_compare(c_a, c_b, threshold);
    }
    if (*cv) {
      emit(v_out, hmn::write_hmnf(load_graph(v_in, v_from, v_directed)));
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  } catch (const hmn::ParseError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const hmn::Error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kData;
  }
  return kUsage;
}
