#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "graphs.hpp"
#include "nlsg/errors.hpp"
#include "nlsg/formats.hpp"
#include "nlsg/graph_ops.hpp"
#include "nlsg/spectral.hpp"
#include "nlsg/verify.hpp"

using namespace nlsg;

namespace {

Multigraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

Multigraph parse_edges(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace

TEST_CASE("graph files round-trip") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    Multigraph g = random_regular(2 + rng.below(20), 1 + rng.below(6), rng);
    std::stringstream s;
    write_graph(s, g);
    CHECK(read_graph(s) == g);
    std::stringstream e;
    write_edge_list(e, g);
    Multigraph back = read_edge_list(e);
    CHECK(normalized_adjacency(back) == normalized_adjacency(g));
  }
}

TEST_CASE("graph file parsing") {
  Multigraph g = parse_graph("nlsg-graph v1\n# a loop and an edge\nvertices 2\ndegree 2\n"
                             "0 0 -> 0 0\n0 1 -> 1 1\n1 0 -> 1 0\n1 1 -> 0 1\n");
  CHECK(g.rotate(0, 0) == Port{0, 0});
  CHECK(g.rotate(0, 1) == Port{1, 1});
  CHECK_THROWS_AS(parse_graph("nlsg-graph v2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("nlsg-graph v1\nvertices 2\ndegree 1\n0 0 -> 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("nlsg-graph v1\nvertices 2\ndegree 1\n0 0 -> 1 0\n0 0 -> 1 0\n1 0 -> 0 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_graph("nlsg-graph v1\nvertices 2\ndegree 1\n0 0 -> 1 0\n1 0 -> 1 0\n"), InvalidGraph);
  CHECK_THROWS_AS(parse_graph("nlsg-graph v1\nvertices 2\ndegree 1\n0 0 -> 2 0\n1 0 -> 0 0\n"), ParseError);
}

TEST_CASE("edge list parsing") {
  Multigraph t = parse_edges("0 1\n1 2\n2 0\n");
  CHECK(t.vertices() == 3);
  CHECK(t.degree() == 2);
  Multigraph l = parse_edges("vertices 2\n0 1\nloop 0\nloop 1\n");
  CHECK(l.degree() == 2);
  CHECK_THROWS_AS(parse_edges("0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_edges("vertices 2\n0 5\n"), ParseError);
  CHECK_THROWS_AS(parse_edges("0 1 2\n"), ParseError);
}

TEST_CASE("code files") {
  BinaryCode c(6, {0b000111, 0b111000});
  std::stringstream s;
  write_code(s, c);
  CHECK(s.str().find("111000") != std::string::npos);
  CHECK(read_code(s) == c);
  std::istringstream dep("nlsg-code v1\nn 3\nk 2\n110\n110\n");
  CHECK_THROWS_AS(read_code(dep), ParseError);
  std::istringstream bits("nlsg-code v1\nn 3\nk 1\n100\n");
  // Character j is coordinate j.
  CHECK(read_code(bits).generator() == std::vector<std::uint64_t>{1});
}

TEST_CASE("key-value files") {
  std::istringstream in("# plan\nmode = classical\n t0=2 \n\n");
  KeyValues kv = read_key_values(in);
  CHECK(kv.at("mode") == "classical");
  CHECK(kv.at("t0") == "2");
  std::stringstream out;
  write_key_values(out, kv);
  CHECK(read_key_values(out) == kv);
  std::istringstream dup("a = 1\na = 2\n");
  CHECK_THROWS_AS(read_key_values(dup), ParseError);
}

TEST_CASE("lists and numbers") {
  CHECK(parse_list("1,2,4") == std::vector<double>{1, 2, 4});
  CHECK(parse_list("6..8") == std::vector<double>{6, 7, 8});
  CHECK_THROWS_AS(parse_list("1,x"), UsageError);
  CHECK_THROWS_AS(parse_list("5..2"), UsageError);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(kInfinity) == "inf");
  CHECK(format_number(std::nan("")) == "nan");
  double x = 1.0 / 3.0;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("csv writer") {
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  w << "x,y" << 1.5;
  w.end_row();
  w << std::string("say \"hi\"") << true;
  w.end_row();
  CHECK(out.str() == "a,b\n\"x,y\",1.5\n\"say \"\"hi\"\"\",true\n");
  w << "only";
  CHECK_THROWS_AS(w.end_row(), Error);
}

TEST_CASE("shipped corpus matches the built-in corpus") {
  std::filesystem::path dir = std::filesystem::path(NLSG_DATA_DIR) / "corpus";
  for (const auto& [name, g] : default_corpus()) {
    CAPTURE(name);
    Multigraph file = load_graph((dir / (name + ".graph")).string());
    CHECK(file == g);
    CHECK(is_connected(g));
  }
}

TEST_CASE("files on disk") {
  auto dir = std::filesystem::temp_directory_path() / "nlsg_formats_test";
  std::filesystem::create_directories(dir);
  Multigraph g = fixture::connected_random(12, 3, 12);
  save_graph((dir / "g.graph").string(), g);
  save_graph((dir / "g.edges").string(), g, true);
  CHECK(load_graph((dir / "g.graph").string()) == g);
  CHECK(normalized_adjacency(load_graph((dir / "g.edges").string())) == normalized_adjacency(g));
  BinaryCode c(5, {0b10101});
  save_code((dir / "c.code").string(), c);
  CHECK(load_code((dir / "c.code").string()) == c);
  CHECK_THROWS_AS(load_graph((dir / "missing").string()), UsageError);
  std::filesystem::remove_all(dir);
}
