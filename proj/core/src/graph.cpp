#include "manigraph/graph.hpp"

#include "manigraph/error.hpp"
#include "manigraph/io.hpp"
#include "manigraph/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

namespace manigraph {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> counts(n + 1, 0);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InputError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} references a node outside [0, " + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw InputError("self-loop on node " + std::to_string(e.u));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InputError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} has non-positive weight");
    }
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  Graph g;
  g.offsets_.assign(n + 1, 0);
  std::partial_sum(counts.begin(), counts.end(), g.offsets_.begin());
  g.neighbors_.resize(g.offsets_[n]);
  g.weights_.resize(g.offsets_[n]);

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges) {
    g.neighbors_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.weight;
    g.neighbors_[cursor[e.v]] = e.u;
    g.weights_[cursor[e.v]++] = e.weight;
  }

  std::vector<std::size_t> order;
  std::vector<std::size_t> nb;
  std::vector<double> wt;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = g.offsets_[i];
    const std::size_t len = g.offsets_[i + 1] - lo;
    order.resize(len);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return g.neighbors_[lo + a] < g.neighbors_[lo + b];
    });
    nb.resize(len);
    wt.resize(len);
    for (std::size_t p = 0; p < len; ++p) {
      nb[p] = g.neighbors_[lo + order[p]];
      wt[p] = g.weights_[lo + order[p]];
    }
    for (std::size_t p = 0; p < len; ++p) {
      if (p > 0 && nb[p] == nb[p - 1]) {
        throw InputError("duplicate edge {" + std::to_string(std::min(i, nb[p])) + "," +
                         std::to_string(std::max(i, nb[p])) + "}");
      }
      g.neighbors_[lo + p] = nb[p];
      g.weights_[lo + p] = wt[p];
    }
  }
  return g;
}

double Graph::weighted_degree(std::size_t i) const {
  double d = 0.0;
  for (double w : weights(i)) d += w;
  return d;
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

double Graph::weight(std::size_t i, std::size_t j) const {
  const auto nb = neighbors(i);
  const auto it = std::lower_bound(nb.begin(), nb.end(), j);
  if (it == nb.end() || *it != j) return 0.0;
  return weights(i)[static_cast<std::size_t>(it - nb.begin())];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t i = 0; i < num_nodes(); ++i) {
    const auto nb = neighbors(i);
    const auto wt = weights(i);
    for (std::size_t p = 0; p < nb.size(); ++p) {
      if (nb[p] > i) out.push_back({i, nb[p], wt[p]});
    }
  }
  return out;
}

std::vector<std::size_t> Graph::component_labels() const {
  const std::size_t n = num_nodes();
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, unset);
  std::vector<std::size_t> stack;
  std::size_t next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : neighbors(v)) {
        if (label[u] == unset) {
          label[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t Graph::num_components() const {
  const auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ < 2) throw InputError("feature matrix needs at least 2 samples");
  if (cols_ < 1) throw InputError("feature matrix needs at least 1 column");
  if (values_.size() != rows_ * cols_) throw InputError("feature matrix size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw InputError("non-finite feature at row " + std::to_string(i / cols_ + 1));
    }
  }
}

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    if (!(fields >> u >> v) || u < 0 || v < 0) {
      throw InputError("line " + std::to_string(line_no) + ": expected `i j [w]` with non-negative ids");
    }
    double w = 1.0;
    std::string rest;
    if (fields >> rest) {
      std::size_t used = 0;
      try {
        w = std::stod(rest, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != rest.size()) {
        throw InputError("line " + std::to_string(line_no) + ": bad weight `" + rest + "`");
      }
      if (fields >> rest) throw InputError("line " + std::to_string(line_no) + ": trailing fields");
    }
    if (u == v) throw InputError("line " + std::to_string(line_no) + ": self-loop on node " + std::to_string(u));
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InputError("line " + std::to_string(line_no) + ": non-positive weight");
    }
    edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), w});
    max_id = std::max({max_id, static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
    any = true;
  }
  return Graph::from_edges(any ? max_id + 1 : 0, edges);
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) {
    out << e.u << '\t' << e.v << '\t' << format_double(e.weight) << '\n';
  }
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_edge_list(out, g);
}

SparseSymMatrix laplacian(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> columns;
  std::vector<double> values;
  columns.reserve(2 * g.num_edges() + n);
  values.reserve(2 * g.num_edges() + n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = g.neighbors(i);
    const auto wt = g.weights(i);
    bool placed = false;
    for (std::size_t p = 0; p < nb.size(); ++p) {
      if (!placed && nb[p] > i) {
        columns.push_back(i);
        values.push_back(g.weighted_degree(i));
        placed = true;
      }
      columns.push_back(nb[p]);
      values.push_back(-wt[p]);
    }
    if (!placed) {
      columns.push_back(i);
      values.push_back(g.weighted_degree(i));
    }
    offsets[i + 1] = columns.size();
  }
  return SparseSymMatrix::from_csr(n, std::move(offsets), std::move(columns), std::move(values));
}

double glr(const Graph& g, std::span<const double> x) {
  if (x.size() != g.num_nodes()) {
    throw InputError("signal length " + std::to_string(x.size()) + " does not match " +
                     std::to_string(g.num_nodes()) + " nodes");
  }
  double total = 0.0;
  for (const auto& e : g.edges()) {
    const double d = x[e.u] - x[e.v];
    total += e.weight * d * d;
  }
  return total;
}

}  // namespace manigraph
