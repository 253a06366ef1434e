#include "doctest.h"
#include "oracles.hpp"

#include "manigraph/error.hpp"
#include "manigraph/graph.hpp"
#include "manigraph/io.hpp"
#include "manigraph/sparse.hpp"

#include <random>
#include <sstream>

using namespace manigraph;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace

TEST_CASE("edge list: two lines give a 3-node path") {
  const Graph g = parse("0 1\n1 2");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(2, 1) == 1.0);
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("edge list: optional weight") {
  const Graph g = parse("0 1 2.5");
  CHECK(g.num_nodes() == 2);
  CHECK(g.weight(1, 0) == 2.5);
}

TEST_CASE("edge list: comments and blank lines are skipped") {
  const Graph g = parse("# header\n\n0 1\n# mid\n1 2 3\n");
  CHECK(g.num_edges() == 2);
  CHECK(g.weight(1, 2) == 3.0);
}

TEST_CASE("edge list: rejected inputs") {
  CHECK_THROWS_AS(parse("0 0"), InputError);
  CHECK_THROWS_AS(parse("0 1\n1 0"), InputError);
  CHECK_THROWS_AS(parse("0 1 -1"), InputError);
  CHECK_THROWS_AS(parse("0 1 0"), InputError);
  CHECK_THROWS_AS(parse("0 x"), InputError);
  CHECK_THROWS_AS(parse("0 1 2 3"), InputError);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/graph.tsv"), InputError);
}

TEST_CASE("edge list: parse errors carry the line number") {
  try {
    parse("0 1\n1 2\n2 two\n");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("edge list: write then read is the identity") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = oracle::reweighted(oracle::random_connected_graph(gen, 5 + trial, 0.3), gen, 0.1, 10.0);
    std::stringstream s;
    write_edge_list(s, g);
    CHECK(read_edge_list(s) == g);
  }
}

TEST_CASE("neighbour lists are sorted and symmetric") {
  std::mt19937_64 gen(11);
  const Graph g = oracle::random_connected_graph(gen, 40, 0.15);
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    const auto nb = g.neighbors(i);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (std::size_t j : nb) {
      CHECK(j != i);
      CHECK(g.weight(j, i) == g.weight(i, j));
    }
  }
}

TEST_CASE("generators") {
  SUBCASE("path-5") {
    const Graph g = generate(GraphKind::path, 5);
    const auto e = g.edges();
    REQUIRE(e.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(e[i].u == i);
      CHECK(e[i].v == i + 1);
    }
  }
  SUBCASE("ring-5 is the path plus {4,0}") {
    const Graph g = generate(GraphKind::ring, 5);
    CHECK(g.num_edges() == 5);
    CHECK(g.has_edge(4, 0));
    for (std::size_t i = 0; i < 4; ++i) CHECK(g.has_edge(i, i + 1));
  }
  SUBCASE("trimesh with 4 rows has 10 nodes and 18 edges") {
    const Graph g = generate(GraphKind::trimesh, 4);
    CHECK(g.num_nodes() == 10);
    CHECK(g.num_edges() == 18);
  }
  SUBCASE("star-4") {
    const Graph g = generate(GraphKind::star, 4);
    CHECK(g.degree(0) == 3);
    CHECK(g.num_edges() == 3);
  }
  SUBCASE("grid 3x4") {
    const Graph g = generate(GraphKind::grid, 3, 4);
    CHECK(g.num_nodes() == 12);
    CHECK(g.num_edges() == 3 * 3 + 2 * 4);
  }
  SUBCASE("ring degrees are all 2, path has exactly two leaves") {
    for (std::size_t n = 3; n < 30; ++n) {
      const Graph ring = generate(GraphKind::ring, n);
      for (std::size_t i = 0; i < n; ++i) CHECK(ring.degree(i) == 2);
      const Graph path = generate(GraphKind::path, n);
      std::size_t leaves = 0;
      for (std::size_t i = 0; i < n; ++i) leaves += path.degree(i) == 1;
      CHECK(leaves == 2);
    }
  }
  SUBCASE("invalid sizes") {
    CHECK_THROWS_AS(generate(GraphKind::path, 1), InputError);
    CHECK_THROWS_AS(generate(GraphKind::ring, 2), InputError);
    CHECK_THROWS_AS(generate(GraphKind::grid, 1, 3), InputError);
    CHECK_THROWS_AS(parse_graph_kind("torus"), InputError);
  }
}

TEST_CASE("knn: collinear points give a path") {
  const FeatureMatrix x(3, 1, {0.0, 1.0, 2.0});
  const Graph g = knn_graph(x, 1, false);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
}

TEST_CASE("knn: unit-square corners with k=1 give a 4-cycle") {
  // Corners in order (0,0), (1,0), (1,1), (0,1). Brute force: each corner has
  // two nearest neighbours at distance 1 and keeps the lower-indexed one.
  // 0 -> 1, 1 -> 0, 2 -> 1, 3 -> 0; the union is {0,1}, {1,2}, {0,3}.
  const FeatureMatrix x(4, 2, {0, 0, 1, 0, 1, 1, 0, 1});
  const Graph g = knn_graph(x, 1, false);
  std::vector<std::vector<std::size_t>> expected_nn(4);
  for (std::size_t i = 0; i < 4; ++i) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == i) continue;
      const double dx = x.row(i)[0] - x.row(j)[0], dy = x.row(i)[1] - x.row(j)[1];
      const double d = dx * dx + dy * dy;
      if (d < best) best = d, arg = j;
    }
    expected_nn[i].push_back(arg);
  }
  for (std::size_t i = 0; i < 4; ++i) CHECK(g.has_edge(i, expected_nn[i][0]));
  CHECK(g.num_edges() == 3);
  // With k=2 both unit-distance neighbours are kept: the 4-cycle.
  const Graph c4 = knn_graph(x, 2, false);
  CHECK(c4.num_edges() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(c4.degree(i) == 2);
}

TEST_CASE("knn: k = n-1 gives the complete graph") {
  const FeatureMatrix x(5, 2, {0, 0, 3, 1, 2, 7, -1, 4, 5, 5});
  const Graph g = knn_graph(x, 4, true);
  CHECK(g.num_edges() == 10);
}

TEST_CASE("knn: weights follow the self-tuned Gaussian kernel") {
  const FeatureMatrix x(3, 1, {0.0, 1.0, 3.0});
  const Graph g = knn_graph(x, 1, true);
  // Kept edges {0,1} (d^2 = 1) and {1,2} (d^2 = 4): sigma^2 = 2.5.
  CHECK(g.weight(0, 1) == doctest::Approx(std::exp(-1.0 / 2.5)).epsilon(1e-15));
  CHECK(g.weight(1, 2) == doctest::Approx(std::exp(-4.0 / 2.5)).epsilon(1e-15));
}

TEST_CASE("knn: duplicate points are allowed") {
  const FeatureMatrix x(3, 1, {1.0, 1.0, 2.0});
  const Graph g = knn_graph(x, 1, true);
  CHECK(g.weight(0, 1) == 1.0);
}

TEST_CASE("knn: k out of range") {
  const FeatureMatrix x(3, 1, {0.0, 1.0, 2.0});
  CHECK_THROWS_AS(knn_graph(x, 0, false), InputError);
  CHECK_THROWS_AS(knn_graph(x, 3, false), InputError);
}

TEST_CASE("knn: every node keeps at least k neighbours") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> z;
  for (std::size_t k : {1u, 3u, 7u}) {
    std::vector<double> v(60 * 3);
    for (auto& e : v) e = z(gen);
    const Graph g = knn_graph(FeatureMatrix(60, 3, v), k, true);
    for (std::size_t i = 0; i < 60; ++i) CHECK(g.degree(i) >= k);
  }
}

TEST_CASE("feature matrix validation") {
  CHECK_THROWS_AS(FeatureMatrix(1, 2, {1, 2}), InputError);
  CHECK_THROWS_AS(FeatureMatrix(2, 2, {1, 2, 3}), InputError);
  CHECK_THROWS_AS(FeatureMatrix(2, 1, {1, std::nan("")}), InputError);
}

TEST_CASE("laplacian examples") {
  SUBCASE("path-3") {
    const auto l = laplacian(generate(GraphKind::path, 3)).to_dense();
    Eigen::Matrix3d expected;
    expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK(l.isApprox(expected));
  }
  SUBCASE("single weighted edge") {
    const std::vector<Edge> e{{0, 1, 2.5}};
    const auto l = laplacian(Graph::from_edges(2, e)).to_dense();
    CHECK(l(0, 0) == 2.5);
    CHECK(l(0, 1) == -2.5);
  }
  SUBCASE("edgeless graph") {
    const auto l = laplacian(Graph::from_edges(3, {})).to_dense();
    CHECK(l.isZero());
  }
}

TEST_CASE("laplacian properties on random graphs") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = oracle::reweighted(oracle::random_connected_graph(gen, 8 + 3 * trial, 0.2), gen, 0.1, 5.0);
    const auto l = laplacian(g);
    CHECK(l.to_dense().isApprox(oracle::dense_laplacian(g), 1e-14));
    for (std::size_t i = 0; i < g.num_nodes(); ++i) {
      CHECK(std::abs(l.row_sum(i)) <= 1e-12 * l.diagonal(i));
      CHECK(l.diagonal(i) == doctest::Approx(g.weighted_degree(i)).epsilon(1e-14));
    }
    CHECK(std::abs(l.min_disc_left_end()) <= 1e-12 * l.frobenius_norm());
  }
}

TEST_CASE("glr examples") {
  const Graph p3 = generate(GraphKind::path, 3);
  const std::vector<double> ones{1, 1, 1};
  const std::vector<double> ramp{0, 1, 2};
  CHECK(glr(p3, ones) == 0.0);
  CHECK(glr(p3, ramp) == 2.0);
  const std::vector<Edge> e{{0, 1, 2.5}};
  const std::vector<double> x{0, 2};
  CHECK(glr(Graph::from_edges(2, e), x) == 10.0);
  CHECK_THROWS_AS(glr(p3, x), InputError);
}

TEST_CASE("glr equals the Laplacian quadratic form") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::reweighted(oracle::random_connected_graph(gen, 5 + trial, 0.25), gen, 0.01, 3.0);
    std::vector<double> x(g.num_nodes());
    for (auto& v : x) v = z(gen);
    const double q = laplacian(g).quadratic_form(x);
    CHECK(glr(g, x) == doctest::Approx(q).epsilon(1e-10));
  }
}

TEST_CASE("components") {
  const std::vector<Edge> e{{0, 1}, {2, 3}, {3, 4}};
  const Graph g = Graph::from_edges(6, e);
  CHECK(g.num_components() == 3);
  const auto c = g.component_labels();
  CHECK(c == std::vector<std::size_t>{0, 0, 1, 1, 1, 2});
}
