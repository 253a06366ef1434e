#pragma once

#include "manigraph/graph.hpp"

#include <vector>

namespace manigraph {

enum class PairConvention {
  /// Each unordered pair {s, t} counted once.
  unordered,
  /// (s, t) and (t, s) both counted; scores double, variance quadruples.
  ordered,
};

struct CentralityReport {
  std::vector<double> scores;
  /// Population variance of `scores`.
  double vbc = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

/// Brandes betweenness over hop-count shortest paths. Edge weights are
/// ignored and scores are not normalized.
CentralityReport betweenness(const Graph& g, PairConvention convention = PairConvention::unordered);

/// Variance of betweenness centrality.
double vbc(const Graph& g, PairConvention convention = PairConvention::unordered);

}  // namespace manigraph
