#include "manigraph/clustering.hpp"
#include "manigraph/error.hpp"
#include "manigraph/rng.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace manigraph {

using Eigen::Index;
using Eigen::MatrixXd;

ClusterLabels::ClusterLabels(std::vector<std::size_t> labels, std::size_t num_clusters)
    : labels_(std::move(labels)), num_clusters_(num_clusters) {
  if (num_clusters_ == 0) throw InputError("cluster count must be positive");
  for (std::size_t l : labels_) {
    if (l >= num_clusters_) throw InputError("label " + std::to_string(l) + " >= cluster count");
  }
}

ClusterLabels ClusterLabels::from_ids(std::span<const long long> ids) {
  std::unordered_map<long long, std::size_t> remap;
  std::vector<std::size_t> labels;
  labels.reserve(ids.size());
  for (long long id : ids) {
    const auto [it, inserted] = remap.emplace(id, remap.size());
    labels.push_back(it->second);
  }
  return ClusterLabels(std::move(labels), std::max<std::size_t>(remap.size(), 1));
}

namespace {

double squared_distance(const MatrixXd& points, Index i, const MatrixXd& centroids, Index c) {
  return (points.row(i) - centroids.row(c)).squaredNorm();
}

/// k-means++: first centre uniform, then proportional to squared distance
/// to the nearest chosen centre.
MatrixXd seed_centroids(const MatrixXd& points, Index c, Rng& rng) {
  const Index n = points.rows();
  MatrixXd centroids(c, points.cols());
  std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  Index chosen = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  for (Index t = 0; t < c; ++t) {
    centroids.row(t) = points.row(chosen);
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      auto& d = nearest[static_cast<std::size_t>(i)];
      d = std::min(d, squared_distance(points, i, centroids, t));
      total += d;
    }
    if (t + 1 == c) break;
    if (total <= 0.0) {
      chosen = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
      continue;
    }
    const double target = rng.uniform() * total;
    double acc = 0.0;
    chosen = n - 1;
    for (Index i = 0; i < n; ++i) {
      acc += nearest[static_cast<std::size_t>(i)];
      if (acc > target && nearest[static_cast<std::size_t>(i)] > 0.0) {
        chosen = i;
        break;
      }
    }
  }
  return centroids;
}

struct Run {
  std::vector<std::size_t> labels;
  MatrixXd centroids;
  double wcss = 0.0;
};

Run lloyd(const MatrixXd& points, Index c, Rng& rng, std::size_t max_iter) {
  const Index n = points.rows();
  Run run;
  run.centroids = seed_centroids(points, c, rng);
  run.labels.assign(static_cast<std::size_t>(n), 0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(c));

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Index t = 0; t < c; ++t) {
        const double d = squared_distance(points, i, run.centroids, t);
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::size_t>(t);
        }
      }
      if (iter == 0 || run.labels[static_cast<std::size_t>(i)] != best) changed = true;
      run.labels[static_cast<std::size_t>(i)] = best;
    }

    // Empty clusters take the point farthest from its own centroid.
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t l : run.labels) ++counts[l];
    for (Index t = 0; t < c; ++t) {
      if (counts[static_cast<std::size_t>(t)] > 0) continue;
      Index far = -1;
      double far_d = -1.0;
      for (Index i = 0; i < n; ++i) {
        const std::size_t own = run.labels[static_cast<std::size_t>(i)];
        if (counts[own] <= 1) continue;
        const double d = squared_distance(points, i, run.centroids, static_cast<Index>(own));
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) break;
      --counts[run.labels[static_cast<std::size_t>(far)]];
      run.labels[static_cast<std::size_t>(far)] = static_cast<std::size_t>(t);
      counts[static_cast<std::size_t>(t)] = 1;
      changed = true;
    }

    run.centroids.setZero();
    for (Index i = 0; i < n; ++i) run.centroids.row(static_cast<Index>(run.labels[static_cast<std::size_t>(i)])) += points.row(i);
    for (Index t = 0; t < c; ++t) {
      if (counts[static_cast<std::size_t>(t)] > 0) run.centroids.row(t) /= static_cast<double>(counts[static_cast<std::size_t>(t)]);
    }
    if (!changed) break;
  }

  run.wcss = 0.0;
  for (Index i = 0; i < n; ++i) {
    run.wcss += squared_distance(points, i, run.centroids, static_cast<Index>(run.labels[static_cast<std::size_t>(i)]));
  }
  return run;
}

}  // namespace

KMeansResult kmeans(const MatrixXd& points, std::size_t c, const KMeansOptions& options) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (c < 1 || c > n) {
    throw InputError("cluster count " + std::to_string(c) + " outside [1, " + std::to_string(n) + "]");
  }
  if (options.restarts < 1) throw InputError("restarts must be >= 1");

  std::vector<Run> runs(options.restarts);
  const auto signed_restarts = static_cast<long long>(options.restarts);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long r = 0; r < signed_restarts; ++r) {
    Rng rng(options.seed, static_cast<std::uint64_t>(r));
    runs[static_cast<std::size_t>(r)] = lloyd(points, static_cast<Index>(c), rng, options.max_iter);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].wcss < runs[best].wcss) best = r;
  }
  KMeansResult out;
  out.labels = ClusterLabels(std::move(runs[best].labels), c);
  out.centroids = std::move(runs[best].centroids);
  out.wcss = runs[best].wcss;
  out.best_restart = best;
  return out;
}

}  // namespace manigraph
