#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "graphs.hpp"
#include "nlsg/cli.hpp"
#include "nlsg/formats.hpp"
#include "nlsg/graph_ops.hpp"

using namespace nlsg;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nlsg");
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "nlsg_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("spectrum of a graph file") {
  auto path = scratch() / "triangle.graph";
  save_graph(path.string(), fixture::triangle());
  Run r = run({"spectrum", path.string()});
  REQUIRE(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "graph,n,d,lambda2,lambda,gamma,gamma_plus");
  // lambda2 is -1/2 up to rounding; lambda and the constants are exact.
  CHECK(rows[1].rfind(path.string() + ",3,2,-0.49999999999999", 0) == 0);
  CHECK(rows[1].find(",0.5,0.6666666666666666,2") != std::string::npos);
}

TEST_CASE("generators and exit codes") {
  Run r = run({"spectrum", "cycle:6", "complete-loops:4"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 3);
  CHECK(run({"spectrum", "no-such-graph"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"gamma", "cycle:4", "--kernel", "bogus"}).code == 2);
  Run capped = run({"gamma", "random:40:3:1", "--kernel", "uniform:3", "--exact", "--cap", "1000"});
  CHECK(capped.code == 1);
  CHECK(capped.err.find("EnumerationTooLarge") != std::string::npos);
}

TEST_CASE("gamma rows") {
  Run r = run({"gamma", "corpus:triangle", "--kernel", "two-point"});
  REQUIRE(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "graph,kernel,kind,value,seconds,witness_hash");
  CHECK(rows[1].rfind("corpus:triangle,", 0) == 0);
  // f = (0,0,1), g = (1,1,0) attains 5/3.
  CHECK(rows[1].find(",2-point,exact,1.6666666666666667,,") != std::string::npos);
}

TEST_CASE("outputs are deterministic for a fixed seed") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"cotype", "--count", "20", "--seed", "7"},
           {"gamma", "random:12:3", "--search", "--kernel", "line:3", "--seed", "4"},
           {"product", "zigzag", "cycle-loops:5", "corpus:triangle"}}) {
    Run a = run(args);
    Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("products write readable graphs") {
  auto path = scratch() / "zz.graph";
  Run r = run({"product", "zigzag", "cycle-loops:5", "corpus:triangle", "--out", path.string()});
  REQUIRE(r.code == 0);
  Multigraph g = load_graph(path.string());
  CHECK(g == zigzag(cycle_with_loops(5), cycle(3)));
}

TEST_CASE("construction plans") {
  auto dir = scratch();
  std::ofstream(dir / "finish.plan") << "mode = finish9\nbase = corpus:triangle\nexport = " << (dir / "f.graph").string()
                                     << "\n";
  Run r = run({"construct", (dir / "finish.plan").string()});
  CHECK(r.code == 0);
  CHECK(load_graph((dir / "f.graph").string()).degree() == 9);
  std::ofstream(dir / "bad.plan") << "mode = finish9\nbase = corpus:triangle\ncolour = red\n";
  CHECK(run({"construct", (dir / "bad.plan").string()}).code == 2);
}

TEST_CASE("shipped plans run") {
  auto dir = std::filesystem::path(NLSG_DATA_DIR) / "plans";
  std::size_t count = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    CAPTURE(e.path().string());
    Run r = run({"construct", e.path().string()});
    CHECK(r.code == 0);
    ++count;
  }
  CHECK(count > 0);
}

TEST_CASE("verify suite on the shipped corpus") {
  Run r = run({"verify", "--suite", "zigzag", "--corpus", (std::filesystem::path(NLSG_DATA_DIR) / "corpus").string(),
               "--instances", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run({"verify", "--suite", "nonsense"}).code == 2);
}
