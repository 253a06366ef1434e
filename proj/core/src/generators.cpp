#include "manigraph/error.hpp"
#include "manigraph/graph.hpp"

#include <string>
#include <vector>

namespace manigraph {

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "path") return GraphKind::path;
  if (name == "ring") return GraphKind::ring;
  if (name == "star") return GraphKind::star;
  if (name == "grid") return GraphKind::grid;
  if (name == "trimesh") return GraphKind::trimesh;
  throw InputError("unknown graph kind `" + name + "`");
}

namespace {

Graph triangle_of_rows(std::size_t rows) {
  // Row r holds r + 1 nodes; node (r, j) touches (r, j+1), (r+1, j), (r+1, j+1).
  std::vector<std::size_t> first(rows);
  std::size_t n = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    first[r] = n;
    n += r + 1;
  }
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j <= r; ++j) {
      const std::size_t v = first[r] + j;
      if (j < r) edges.push_back({v, v + 1});
      if (r + 1 < rows) {
        edges.push_back({v, first[r + 1] + j});
        edges.push_back({v, first[r + 1] + j + 1});
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph lattice(std::size_t rows, std::size_t cols, bool diagonal) {
  std::vector<Edge> edges;
  const auto id = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
      if (diagonal && r + 1 < rows && c + 1 < cols) edges.push_back({id(r, c), id(r + 1, c + 1)});
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

}  // namespace

Graph generate(GraphKind kind, std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  switch (kind) {
    case GraphKind::path:
      if (a < 2) throw InputError("path needs n >= 2");
      for (std::size_t i = 0; i + 1 < a; ++i) edges.push_back({i, i + 1});
      return Graph::from_edges(a, edges);
    case GraphKind::ring:
      if (a < 3) throw InputError("ring needs n >= 3");
      for (std::size_t i = 0; i < a; ++i) edges.push_back({i, (i + 1) % a});
      return Graph::from_edges(a, edges);
    case GraphKind::star:
      if (a < 2) throw InputError("star needs n >= 2");
      for (std::size_t i = 1; i < a; ++i) edges.push_back({0, i});
      return Graph::from_edges(a, edges);
    case GraphKind::grid:
      if (a < 2 || b < 2) throw InputError("grid needs rows x cols >= 2 x 2");
      return lattice(a, b, false);
    case GraphKind::trimesh:
      if (b == 0) {
        if (a < 2) throw InputError("trimesh needs at least 2 rows");
        return triangle_of_rows(a);
      }
      if (a < 2 || b < 2) throw InputError("trimesh needs rows x cols >= 2 x 2");
      return lattice(a, b, true);
  }
  throw InputError("unknown graph kind");
}

}  // namespace manigraph
