#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <map>

using namespace qwalk;

TEST_CASE("tube fullerenes satisfy the fullerene invariants for every supported size") {
  for (int n = 30; n <= 130; n += 10) {
    CAPTURE(n);
    const Graph g = build_tube_fullerene(n);
    CHECK(g.n_nodes() == n);
    CHECK(g.n_edges() == static_cast<std::size_t>(3 * n / 2));
    for (int d : g.degrees()) CHECK(d == 3);
    CHECK_NOTHROW(validate_fullerene(g));
  }
}

TEST_CASE("F30 has 30 vertices and 45 edges") {
  const Graph g = build_tube_fullerene(30);
  CHECK(g.n_nodes() == 30);
  CHECK(g.n_edges() == 45);
}

TEST_CASE("F60 degree histogram is all threes") {
  const Graph g = build_tube_fullerene(60);
  std::map<int, int> histogram;
  for (int d : g.degrees()) ++histogram[d];
  CHECK(histogram.size() == 1);
  CHECK(histogram[3] == 60);
  CHECK(g.n_edges() == 90);
}

TEST_CASE("tube generator rejects sizes outside its index arithmetic") {
  CHECK_THROWS_AS(build_tube_fullerene(25), ValidationError);
  CHECK_THROWS_AS(build_tube_fullerene(20), ValidationError);
  CHECK_THROWS_AS(build_tube_fullerene(0), ValidationError);
  CHECK_THROWS_WITH_AS(build_tube_fullerene(35), doctest::Contains("multiple of 10"), ValidationError);
}

TEST_CASE("tube fullerenes keep the cap pentagon on nodes 1..5") {
  for (int n : {30, 60, 130}) {
    const Graph g = build_tube_fullerene(n);
    for (int v = 1; v <= 5; ++v) CHECK(g.has_edge(v, v % 5 + 1));
  }
}

TEST_CASE("blocked C60 is a centrosymmetric 3-regular graph with 90 edges") {
  const Graph g = build_c60_blocked();
  CHECK(g.n_nodes() == 60);
  CHECK(g.n_edges() == 90);
  for (int d : g.degrees()) CHECK(d == 3);

  const Eigen::MatrixXd a = adjacency(g);
  for (int x = 1; x <= 60; ++x)
    for (int y = 1; y <= 60; ++y) REQUIRE(a(x - 1, y - 1) == a(60 - x, 60 - y));
  CHECK(a(0, 5) == a(59, 54));
}

TEST_CASE("blocked C60 nodes 1..5 form the pentagon circulant") {
  const Eigen::MatrixXd a = adjacency(build_c60_blocked());
  Eigen::MatrixXd c5(5, 5);
  c5 << 0, 1, 0, 0, 1,  //
      1, 0, 1, 0, 0,    //
      0, 1, 0, 1, 0,    //
      0, 0, 1, 0, 1,    //
      1, 0, 0, 1, 0;
  CHECK(a.topLeftCorner(5, 5) == c5);
}

TEST_CASE("adjacency of small graphs") {
  const Eigen::MatrixXd k2 = adjacency(Graph(2, {{1, 2}}));
  CHECK(k2(0, 0) == 0);
  CHECK(k2(0, 1) == 1);
  CHECK(k2(1, 0) == 1);
  CHECK(k2(1, 1) == 0);

  const Eigen::MatrixXd c5 = adjacency(testing::cycle_graph(5));
  const int first_row[5] = {0, 1, 0, 0, 1};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(c5(i, j) == first_row[((j - i) % 5 + 5) % 5]);

  const Eigen::MatrixXd f30 = adjacency(build_tube_fullerene(30));
  CHECK((f30.rowwise().sum().array() == 3.0).all());
  CHECK((f30 - f30.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(f30.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph construction rejects malformed edge sets") {
  CHECK_THROWS_AS(Graph(3, {{1, 1}, {1, 2}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{1, 2}, {2, 1}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{0, 2}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{1, 4}, {2, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph(4, {{1, 2}, {3, 4}}), ValidationError);  // disconnected
  CHECK_THROWS_AS(Graph(0, {}), ValidationError);
}

TEST_CASE("fullerene validation catches a non-cubic graph") {
  CHECK_THROWS_AS(validate_fullerene(testing::cycle_graph(6)), ValidationError);
}

TEST_CASE("edge-list files round-trip") {
  const auto dir = std::filesystem::temp_directory_path() / "qwalk_graph_test";
  std::filesystem::create_directories(dir);
  for (const Graph& g : {build_tube_fullerene(30), build_c60_blocked()}) {
    const auto path = dir / "g.graph";
    save_graph(g, path);
    CHECK(load_graph(path) == g);
  }
}

TEST_CASE("edge-list parser") {
  SUBCASE("comments and blank lines are ignored") {
    const Graph g = parse_graph("# header\n\n3  # three nodes\n1 2\n# mid\n2 3\n");
    CHECK(g.n_nodes() == 3);
    CHECK(g.n_edges() == 2);
  }
  SUBCASE("labels are 1-based") {
    CHECK_THROWS_AS(parse_graph("3\n0 3\n1 2\n"), ValidationError);
  }
  SUBCASE("duplicate edges are rejected") {
    CHECK_THROWS_WITH_AS(parse_graph("3\n1 2\n2 3\n2 1\n"), doctest::Contains("duplicate"), ValidationError);
  }
  SUBCASE("malformed lines are rejected") {
    CHECK_THROWS_AS(parse_graph("3\n1 2 3\n"), ValidationError);
    CHECK_THROWS_AS(parse_graph("3\n1 x\n"), ValidationError);
    CHECK_THROWS_AS(parse_graph("3 4\n1 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_graph(""), ValidationError);
    CHECK_THROWS_AS(parse_graph("2\n1 2.5\n"), ValidationError);
  }
}

TEST_CASE("checksum ignores edge order but sees edge changes") {
  const Graph a(4, {{1, 2}, {2, 3}, {3, 4}});
  const Graph b(4, {{4, 3}, {1, 2}, {3, 2}});
  const Graph c(4, {{1, 2}, {2, 3}, {2, 4}});
  CHECK(graph_checksum(a) == graph_checksum(b));
  CHECK(graph_checksum(a) != graph_checksum(c));
  CHECK(graph_checksum(a).size() == 16);
}
