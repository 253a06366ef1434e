#include "manigraph/clustering.hpp"
#include "manigraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace manigraph {

namespace {

std::uint64_t choose2(std::uint64_t m) { return m * (m - (m > 0 ? 1 : 0)) / 2; }

struct Contingency {
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> cells;
  std::vector<std::uint64_t> pred_sizes;
  std::vector<std::uint64_t> truth_sizes;
  std::uint64_t n = 0;
};

Contingency contingency(const ClusterLabels& pred, const ClusterLabels& truth) {
  if (pred.size() != truth.size()) throw InputError("label vectors differ in length");
  Contingency t;
  t.n = pred.size();
  t.pred_sizes.assign(pred.num_clusters(), 0);
  t.truth_sizes.assign(truth.num_clusters(), 0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++t.cells[{pred[i], truth[i]}];
    ++t.pred_sizes[pred[i]];
    ++t.truth_sizes[truth[i]];
  }
  return t;
}

double entropy(const std::vector<std::uint64_t>& sizes, double n) {
  double h = 0.0;
  for (auto s : sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

PairCounts pair_counts(const ClusterLabels& pred, const ClusterLabels& truth) {
  const Contingency t = contingency(pred, truth);
  std::uint64_t same_both = 0;
  for (const auto& [cell, count] : t.cells) same_both += choose2(count);
  std::uint64_t same_pred = 0;
  for (auto s : t.pred_sizes) same_pred += choose2(s);
  std::uint64_t same_truth = 0;
  for (auto s : t.truth_sizes) same_truth += choose2(s);
  PairCounts pc;
  pc.tp = same_both;
  pc.fp = same_pred - same_both;
  pc.fn = same_truth - same_both;
  pc.tn = choose2(t.n) - pc.tp - pc.fp - pc.fn;
  return pc;
}

MetricsReport evaluate(const ClusterLabels& pred, const ClusterLabels& truth, NmiNorm norm) {
  const Contingency t = contingency(pred, truth);
  const PairCounts pc = pair_counts(pred, truth);
  MetricsReport m;
  const std::uint64_t pairs = choose2(t.n);
  m.rand_index = pairs == 0 ? 1.0 : static_cast<double>(pc.tp + pc.tn) / static_cast<double>(pairs);
  m.precision = pc.tp + pc.fp == 0 ? 1.0 : static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fp);

  std::vector<std::uint64_t> best(pred.num_clusters(), 0);
  for (const auto& [cell, count] : t.cells) best[cell.first] = std::max(best[cell.first], count);
  std::uint64_t hits = 0;
  for (auto b : best) hits += b;
  m.purity = t.n == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(t.n);

  const double n = static_cast<double>(t.n);
  const double h_pred = t.n == 0 ? 0.0 : entropy(t.pred_sizes, n);
  const double h_truth = t.n == 0 ? 0.0 : entropy(t.truth_sizes, n);
  double mi = 0.0;
  for (const auto& [cell, count] : t.cells) {
    const double nij = static_cast<double>(count);
    const double a = static_cast<double>(t.pred_sizes[cell.first]);
    const double b = static_cast<double>(t.truth_sizes[cell.second]);
    mi += nij / n * std::log(n * nij / (a * b));
  }
  if (h_pred == 0.0 && h_truth == 0.0) {
    m.nmi = 1.0;
  } else if (h_pred == 0.0 || h_truth == 0.0) {
    m.nmi = 0.0;
  } else {
    const double denom = norm == NmiNorm::arithmetic ? 0.5 * (h_pred + h_truth) : std::sqrt(h_pred * h_truth);
    m.nmi = std::clamp(mi / denom, 0.0, 1.0);
  }
  return m;
}

}  // namespace manigraph
