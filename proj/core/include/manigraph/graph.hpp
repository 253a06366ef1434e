#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace manigraph {

class SparseSymMatrix;

/// One undirected edge {u, v} with u != v.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

/// Undirected, positively weighted graph in CSR form.
///
/// Every edge {i, j} is stored in both rows with the same weight; neighbor
/// lists are sorted by id and self-loops are absent. Immutable once built.
class Graph {
public:
  Graph() = default;

  /// Builds a graph on `n` nodes. Throws InputError on self-loops,
  /// non-positive or non-finite weights, out-of-range ids, or an unordered
  /// pair listed twice.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

  std::span<const std::size_t> neighbors(std::size_t i) const {
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const double> weights(std::size_t i) const {
    return {weights_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  std::size_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
  /// Weighted degree D_ii.
  double weighted_degree(std::size_t i) const;

  bool has_edge(std::size_t i, std::size_t j) const;
  /// Weight of {i, j}, or 0 when absent.
  double weight(std::size_t i, std::size_t j) const;

  /// Canonical edge list (u < v, lexicographic).
  std::vector<Edge> edges() const;

  /// Component id per node; ids are assigned in order of smallest member.
  std::vector<std::size_t> component_labels() const;
  std::size_t num_components() const;

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> neighbors_;
  std::vector<double> weights_;
};

/// Dense row-major sample matrix used as kNN input.
class FeatureMatrix {
public:
  FeatureMatrix() = default;
  /// Throws InputError unless rows >= 2, cols >= 1, size matches and all
  /// values are finite.
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> values() const noexcept { return values_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// ---- ingestion --------------------------------------------------------------

/// Parses `i j [w]` lines; '#' starts a comment line. Node count is max id + 1.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::filesystem::path& path);

/// Writes `i<TAB>j<TAB>w` for every canonical edge with 17 significant digits.
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::filesystem::path& path, const Graph& g);

// ---- synthetic graphs -------------------------------------------------------

enum class GraphKind { path, ring, star, grid, trimesh };

GraphKind parse_graph_kind(const std::string& name);

/// Unit-weight generator.
///
///   path(n), ring(n), star(n): `a` = node count (ring needs n >= 3).
///   grid(a, b): a x b 4-neighbour lattice.
///   trimesh(a): triangular arrangement with rows of 1, 2, ..., a nodes
///     (a = 4 gives 10 nodes and 18 edges).
///   trimesh(a, b): a x b lattice with one diagonal per cell.
Graph generate(GraphKind kind, std::size_t a, std::size_t b = 0);

// ---- kNN construction -------------------------------------------------------

/// Union-symmetrized k-nearest-neighbour graph under Euclidean distance.
/// Ties at equal distance go to the lower index. When `weighted`, edges get
/// exp(-d^2 / sigma^2) with sigma^2 the mean squared length of the kept edges.
Graph knn_graph(const FeatureMatrix& x, std::size_t k, bool weighted);

// ---- spectral basics --------------------------------------------------------

/// Combinatorial Laplacian L = D - W.
SparseSymMatrix laplacian(const Graph& g);

/// Graph Laplacian regularizer sum_{(i,j)} w_ij (x_i - x_j)^2.
double glr(const Graph& g, std::span<const double> x);

}  // namespace manigraph
