#include "manigraph/error.hpp"
#include "manigraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace manigraph {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double d = a[t] - b[t];
    s += d * d;
  }
  return s;
}

}  // namespace

Graph knn_graph(const FeatureMatrix& x, std::size_t k, bool weighted) {
  const std::size_t n = x.rows();
  if (k < 1 || k >= n) {
    throw InputError("k = " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "]");
  }

  // nearest[i] holds i's k neighbours as (squared distance, index).
  std::vector<std::vector<std::pair<double, std::size_t>>> nearest(n);
  const auto signed_n = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long si = 0; si < signed_n; ++si) {
    const auto i = static_cast<std::size_t>(si);
    std::vector<std::pair<double, std::size_t>> cand;
    cand.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) cand.emplace_back(squared_distance(x.row(i), x.row(j)), j);
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    cand.resize(k);
    nearest[i] = std::move(cand);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> dist2;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [d2, j] : nearest[i]) {
      pairs.emplace_back(std::min(i, j), std::max(i, j));
      dist2.push_back(d2);
    }
  }
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pairs[a] < pairs[b]; });

  std::vector<Edge> edges;
  std::vector<double> kept_d2;
  for (std::size_t p = 0; p < order.size(); ++p) {
    const auto& pr = pairs[order[p]];
    if (!edges.empty() && edges.back().u == pr.first && edges.back().v == pr.second) continue;
    edges.push_back({pr.first, pr.second, 1.0});
    kept_d2.push_back(dist2[order[p]]);
  }

  if (weighted) {
    double sigma2 = 0.0;
    for (double d2 : kept_d2) sigma2 += d2;
    sigma2 /= static_cast<double>(kept_d2.size());
    if (sigma2 > 0.0) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        // exp underflows to 0 only for absurd outliers; keep the edge positive.
        edges[e].weight = std::max(std::exp(-kept_d2[e] / sigma2), 1e-300);
      }
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace manigraph
