#include "manigraph/centrality.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace manigraph {

namespace {

/// Dependencies delta_s(v) of one BFS source (Brandes accumulation).
void accumulate_source(const Graph& g, std::size_t s, std::vector<double>& delta,
                       std::vector<std::size_t>& order, std::vector<long long>& dist,
                       std::vector<double>& sigma) {
  std::fill(dist.begin(), dist.end(), -1);
  std::fill(sigma.begin(), sigma.end(), 0.0);
  std::fill(delta.begin(), delta.end(), 0.0);
  order.clear();

  dist[s] = 0;
  sigma[s] = 1.0;
  order.push_back(s);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t v = order[head];
    for (std::size_t w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        order.push_back(w);
      }
      if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
    }
  }
  // Reverse BFS order: predecessors of w are neighbours one layer closer.
  for (std::size_t t = order.size(); t-- > 1;) {
    const std::size_t w = order[t];
    const double coeff = (1.0 + delta[w]) / sigma[w];
    for (std::size_t v : g.neighbors(w)) {
      if (dist[v] == dist[w] - 1) delta[v] += sigma[v] * coeff;
    }
  }
  delta[s] = 0.0;
}

}  // namespace

CentralityReport betweenness(const Graph& g, PairConvention convention) {
  const std::size_t n = g.num_nodes();
  CentralityReport report;
  report.scores.assign(n, 0.0);
  if (n == 0) return report;

  // Sources are processed in fixed-size chunks; each chunk's dependency
  // vectors are added in source order, so the sum does not depend on how
  // many threads ran the chunk.
  constexpr std::size_t kChunk = 64;
  std::vector<double> chunk(kChunk * n);
  for (std::size_t base = 0; base < n; base += kChunk) {
    const std::size_t count = std::min(kChunk, n - base);
    const auto signed_count = static_cast<long long>(count);
#pragma omp parallel
    {
      std::vector<std::size_t> order;
      order.reserve(n);
      std::vector<long long> dist(n);
      std::vector<double> sigma(n);
      std::vector<double> delta(n);
#pragma omp for schedule(dynamic, 1)
      for (long long t = 0; t < signed_count; ++t) {
        const auto ut = static_cast<std::size_t>(t);
        accumulate_source(g, base + ut, delta, order, dist, sigma);
        std::copy(delta.begin(), delta.end(), chunk.begin() + static_cast<std::ptrdiff_t>(ut * n));
      }
    }
    for (std::size_t t = 0; t < count; ++t) {
      for (std::size_t v = 0; v < n; ++v) report.scores[v] += chunk[t * n + v];
    }
  }

  // Summing over all sources counts every unordered pair twice.
  if (convention == PairConvention::unordered) {
    for (double& c : report.scores) c *= 0.5;
  }

  double sum = 0.0;
  for (double c : report.scores) sum += c;
  report.mean = sum / static_cast<double>(n);
  double var = 0.0;
  for (double c : report.scores) var += (c - report.mean) * (c - report.mean);
  report.vbc = var / static_cast<double>(n);
  report.min = *std::min_element(report.scores.begin(), report.scores.end());
  report.max = *std::max_element(report.scores.begin(), report.scores.end());
  return report;
}

double vbc(const Graph& g, PairConvention convention) { return betweenness(g, convention).vbc; }

}  // namespace manigraph
