#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace manigraph {

/// Hard cluster assignment with labels in [0, C).
class ClusterLabels {
public:
  ClusterLabels() = default;
  /// Throws InputError if some label is >= num_clusters or num_clusters == 0.
  ClusterLabels(std::vector<std::size_t> labels, std::size_t num_clusters);

  /// Compacts arbitrary integer ids to 0..C-1 in order of first appearance.
  static ClusterLabels from_ids(std::span<const long long> ids);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t num_clusters() const noexcept { return num_clusters_; }
  std::size_t operator[](std::size_t i) const { return labels_[i]; }
  std::span<const std::size_t> values() const noexcept { return labels_; }

  friend bool operator==(const ClusterLabels&, const ClusterLabels&) = default;

private:
  std::vector<std::size_t> labels_;
  std::size_t num_clusters_ = 0;
};

struct KMeansOptions {
  std::size_t restarts = 20;
  std::uint64_t seed = 42;
  std::size_t max_iter = 300;
};

struct KMeansResult {
  ClusterLabels labels;
  Eigen::MatrixXd centroids;
  double wcss = 0.0;
  std::size_t best_restart = 0;
};

/// Lloyd iterations from k-means++ seeds; the restart with the lowest
/// within-cluster sum of squares wins (lowest restart index on ties).
/// Rows of `points` are samples. Throws InputError unless 1 <= c <= N.
KMeansResult kmeans(const Eigen::MatrixXd& points, std::size_t c, const KMeansOptions& options = {});

struct PairCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;
};

/// Pair confusion counts over all unordered pairs, via the contingency table.
PairCounts pair_counts(const ClusterLabels& pred, const ClusterLabels& truth);

enum class NmiNorm { arithmetic, geometric };

struct MetricsReport {
  double rand_index = 0.0;
  double precision = 0.0;
  double purity = 0.0;
  double nmi = 0.0;
};

/// RI, pairwise precision, purity (of `pred` against `truth`) and NMI with
/// natural logarithms.
MetricsReport evaluate(const ClusterLabels& pred, const ClusterLabels& truth,
                       NmiNorm norm = NmiNorm::arithmetic);

}  // namespace manigraph
