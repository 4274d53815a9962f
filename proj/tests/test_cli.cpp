#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "hmn/core.hpp"
#include "hmn/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

// run the installed binary, capture stdout, discard stderr
RunResult run(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

// per-process scratch directory
const fs::path& scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hmn_cli_test_" + std::to_string(getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string file(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("generate writes deterministic canonical files plus a manifest") {
  std::string out = file("g.hmnf");
  REQUIRE(run("generate --preset homogeneous --nodes 80 --seed 7 --out " + out).code == 0);
  std::string first = hmn::read_text_file(out);
  REQUIRE(run("generate --preset homogeneous --nodes 80 --seed 7 --out " + out).code == 0);
  REQUIRE(hmn::read_text_file(out) == first);

  hmn::Hmn g = hmn::read_hmnf(first);
  REQUIRE(g.node_count() == 80);
  REQUIRE(g.layer_count() == 1);
  REQUIRE(g.node_type_count() == 1);

  // the manifest next door replays to the same bytes
  std::string replay = file("replay.hmnf");
  REQUIRE(run("generate --config " + out + ".manifest --out " + replay).code == 0);
  REQUIRE(hmn::read_text_file(replay) == first);
}

TEST_CASE("presets realize the four network classes") {
  std::string out = file("p.hmnf");
  REQUIRE(run("generate --preset heterogeneous --nodes 50 --seed 1 --out " + out).code == 0);
  hmn::Hmn het = hmn::read_hmnf(hmn::read_text_file(out));
  REQUIRE(het.layer_count() == 1);
  REQUIRE(het.node_type_count() == 3);

  REQUIRE(run("generate --preset multilayer --nodes 60 --seed 1 --out " + out).code == 0);
  hmn::Hmn ml = hmn::read_hmnf(hmn::read_text_file(out));
  REQUIRE(ml.layer_count() == 3);
  REQUIRE(ml.node_type_count() == 3);
  for (hmn::NodeId v = 0; v < ml.node_count(); ++v)
    REQUIRE(ml.r_vt(v) == ml.r_vl(v)[0]);  // each layer owns one type

  REQUIRE(run("generate --preset hmn --nodes 60 --seed 1 --out " + out).code == 0);
  hmn::Hmn full = hmn::read_hmnf(hmn::read_text_file(out));
  REQUIRE(full.layer_count() == 3);

  REQUIRE(run("generate --preset nope --nodes 10 --out " + out).code == 1);
  REQUIRE(run("generate --nodes 10").code == 1);  // --out is required
}

TEST_CASE("stats emits one summary row and honors scopes") {
  std::string tri = file("tri.el");
  hmn::write_text_file(tri, "0 1\n1 2\n2 0\n");
  std::string g = file("tri.hmnf");
  REQUIRE(run("convert --from edgelist --in " + tri + " --out " + g).code == 0);

  RunResult r = run("stats --in " + g);
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("Nodes,Edges,Density") == 0);
  REQUIRE(r.out.find("\n3,3,1,2,nan,1,1,1,3,1,0,2\n") != std::string::npos);

  RunResult j = run("stats --in " + g + " --format json");
  auto parsed = nlohmann::json::parse(j.out);
  REQUIRE(parsed["density"] == 1.0);
  REQUIRE(parsed["avg_closeness"] == 2.0);

  REQUIRE(run("stats --in " + g + " --layers 7").code == 2);      // unknown layer
  REQUIRE(run("stats --in " + g + " --types 1").code == 2);       // unknown type
  REQUIRE(run("stats --in " + file("absent.hmnf")).code == 2);
  REQUIRE(run("stats --in " + g + " --format yaml").code == 1);
  REQUIRE(run("stats --in " + g + " --wat").code == 1);
}

TEST_CASE("per-layer stats append a mean row") {
  std::string out = file("ml.hmnf");
  REQUIRE(run("generate --preset multilayer --nodes 90 --seed 3 --out " + out).code == 0);
  RunResult r = run("stats --in " + out + " --per-layer");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("Layer,ActiveNodes,") == 0);
  REQUIRE(r.out.find("\nmean,") != std::string::npos);
  std::size_t rows = std::count(r.out.begin(), r.out.end(), '\n');
  REQUIRE(rows == 1 + 3 + 1);  // header, three layers, mean

  REQUIRE(run("stats --in " + out + " --per-layer --layers 0").code == 1);
}

TEST_CASE("dist reports histograms whose mass matches the graph") {
  std::string out = file("d.hmnf");
  REQUIRE(run("generate --nodes 200 --seed 9 --out " + out).code == 0);
  RunResult r = run("dist --in " + out);
  REQUIRE(r.code == 0);
  auto hist = hmn::read_histogram_csv(r.out);
  hmn::Hmn g = hmn::read_hmnf(hmn::read_text_file(out));
  std::uint64_t nodes = 0, stubs = 0;
  for (auto [d, c] : hist) {
    nodes += c;
    stubs += static_cast<std::uint64_t>(d) * c;
  }
  REQUIRE(nodes == g.node_count());
  REQUIRE(stubs == 2 * g.edge_count());  // handshake identity

  RunResult sm = run("dist --in " + out + " --smooth 5");
  REQUIRE(sm.code == 0);
  REQUIRE(sm.out.find("# log_binned") != std::string::npos);
  REQUIRE(hmn::read_histogram_csv(sm.out) == hist);

  // a star graph distribution, straight off an edge list
  std::string star = file("star.el");
  hmn::write_text_file(star, "0 1\n0 2\n0 3\n");
  RunResult sr = run("dist --in " + star + " --from edgelist");
  REQUIRE(sr.out == "degree,count\n1,3\n3,1\n");
}

TEST_CASE("inter-edge split of a multiplex sees only zero degrees") {
  std::string mp = file("mp.txt");
  hmn::write_text_file(mp, "1 0 1\n1 1 2\n2 0 2\n");
  std::string g = file("mp.hmnf");
  REQUIRE(run("convert --from multiplex --in " + mp + " --out " + g).code == 0);
  hmn::Hmn parsed = hmn::read_hmnf(hmn::read_text_file(g));
  REQUIRE(parsed.layer_count() == 2);
  REQUIRE(parsed.node_count() == 3);

  RunResult r = run("dist --in " + g + " --split inter");
  auto hist = hmn::read_histogram_csv(r.out);
  REQUIRE(hist == std::map<std::uint32_t, std::uint64_t>{{0, 6}});

  REQUIRE(run("dist --in " + g + " --split sideways").code == 1);
}

TEST_CASE("compare measures distribution distance and gates on a threshold") {
  std::string a = file("a.csv"), b = file("b.csv");
  hmn::write_text_file(a, "degree,count\n1,5\n2,5\n");
  hmn::write_text_file(b, "degree,count\n9,10\n");

  RunResult self = run("compare --a " + a + " --b " + a);
  REQUIRE(self.code == 0);
  REQUIRE(self.out == "ks 0\nverdict pass\n");

  RunResult far = run("compare --a " + a + " --b " + b + " --threshold 0.5");
  REQUIRE(far.code == 3);
  REQUIRE(far.out == "ks 1\nverdict fail\n");

  // without a threshold the verdict is informational
  REQUIRE(run("compare --a " + a + " --b " + b).code == 0);

  hmn::write_text_file(b, "not,a,histogram\n");
  REQUIRE(run("compare --a " + a + " --b " + b).code == 2);
}

TEST_CASE("conversion to the canonical format is idempotent") {
  std::string mp = file("mp2.txt");
  hmn::write_text_file(mp, "5 1 2\n6 2 3\n");
  std::string g1 = file("c1.hmnf"), g2 = file("c2.hmnf");
  REQUIRE(run("convert --from multiplex --in " + mp + " --out " + g1).code == 0);
  REQUIRE(run("convert --from hmnf --in " + g1 + " --out " + g2).code == 0);
  REQUIRE(hmn::read_text_file(g1) == hmn::read_text_file(g2));

  std::string bad = file("bad.txt");
  hmn::write_text_file(bad, "1 2 2\n");  // self-loop
  REQUIRE(run("convert --from multiplex --in " + bad + " --out " + g1).code == 2);
  REQUIRE(run("convert --from carrier --in " + mp + " --out " + g1).code == 1);
}

TEST_CASE("identical invocations produce identical bytes") {
  std::string out = file("det.hmnf");
  REQUIRE(run("generate --layers 2 --nodes 120 --m 'normal 2,1' --seed 31 --out " + out).code ==
          0);
  std::string once = hmn::read_text_file(out);
  RunResult s1 = run("stats --in " + out);
  RunResult d1 = run("dist --in " + out + " --smooth 4 --format json");
  REQUIRE(run("generate --layers 2 --nodes 120 --m 'normal 2,1' --seed 31 --out " + out).code ==
          0);
  REQUIRE(hmn::read_text_file(out) == once);
  REQUIRE(run("stats --in " + out).out == s1.out);
  REQUIRE(run("dist --in " + out + " --smooth 4 --format json").out == d1.out);
}

TEST_CASE("bare or unknown subcommands are usage errors") {
  REQUIRE(run("").code == 1);
  REQUIRE(run("frobnicate").code == 1);
}
