#pragma once

#include "manigraph/graph.hpp"
#include "manigraph/sparse.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace manigraph {

/// Disconnected two-hop neighbourhoods: j is in set(i) iff j != i, {i, j}
/// is not an edge, and some m is adjacent to both. Sets are sorted and the
/// relation is symmetric.
class TwoHopSets {
public:
  explicit TwoHopSets(std::vector<std::vector<std::size_t>> sets);

  std::size_t size() const noexcept { return sets_.size(); }
  std::span<const std::size_t> set(std::size_t i) const { return sets_[i]; }
  /// T_i = |set(i)|.
  std::size_t count(std::size_t i) const { return sets_[i].size(); }
  std::size_t total() const;

private:
  std::vector<std::vector<std::size_t>> sets_;
};

TwoHopSets two_hop_sets(const Graph& g);

/// How the per-node repulsion blocks Theta_i are assembled into Q.
enum class ThetaMode {
  /// Theta_i is the Laplacian of the star {i} -> set(i) with edge weights
  /// 1/T_i, so Q is a Laplacian with zero row sums.
  laplacian,
  /// Diagnostic: the hub diagonal entry of Theta_i is 1/T_i instead of 1.
  /// Q is then generally not PSD and its rows do not sum to zero.
  literal,
};

/// Q = sum_i Theta_i. In laplacian mode this is the Laplacian of the
/// two-hop graph with edge weights 1/T_i + 1/T_j.
SparseSymMatrix build_q(const TwoHopSets& sets, ThetaMode mode = ThetaMode::laplacian);

/// Dimension up to which epsilon_from_q uses a dense eigendecomposition.
inline constexpr std::size_t kDenseEpsilonLimit = 512;

/// Smallest eigenvalue of Q above 1e-8 * trace(Q) / N, or 0 when there is
/// none. Dense for N <= kDenseEpsilonLimit, otherwise LOBPCG with the
/// constant vector deflated. Throws InputError if Q is not symmetric.
double epsilon_from_q(const SparseSymMatrix& q);

/// Weight mu and the row that attains it.
struct MuChoice {
  double mu = 0.0;
  /// Row whose disc left-end is driven to exactly zero; empty when no row
  /// of Q has a positive disc denominator.
  std::optional<std::size_t> binding_row;
};

/// Largest mu keeping every Gershgorin left-end of L - mu Q + eps I
/// non-negative. Per row: mu_i = (L_ii + sum_{j!=i} L_ij + eps) /
/// (Q_ii - sum_{j!=i} Q_ij); rows with non-positive denominator are skipped.
/// Throws InputError on negative epsilon or size mismatch.
MuChoice compute_mu(const SparseSymMatrix& l, const SparseSymMatrix& q, double epsilon);

/// A = L - mu Q + eps I.
SparseSymMatrix assemble_a(const SparseSymMatrix& l, const SparseSymMatrix& q, double mu,
                           double epsilon);

/// Diagonal B = diag(b) with unit geometric mean and equal generalized
/// degrees r_i / b_i.
class DiagonalScaling {
public:
  DiagonalScaling() = default;
  /// Throws InputError unless every entry is finite and > 0.
  explicit DiagonalScaling(std::vector<double> b);

  static DiagonalScaling identity(std::size_t n) { return DiagonalScaling(std::vector<double>(n, 1.0)); }

  std::size_t size() const noexcept { return b_.size(); }
  double operator[](std::size_t i) const { return b_[i]; }
  std::span<const double> values() const noexcept { return b_; }
  double max() const;
  bool is_uniform() const;

private:
  std::vector<double> b_;
};

/// b_i = r_i / exp(mean_j log r_j) with r_i the Gershgorin radius of row i
/// of A. Throws GraphPreconditionError when some r_i is zero.
DiagonalScaling compute_b(const SparseSymMatrix& a);

/// Everything needed for the generalized eigenproblem (A, B).
struct OperatorPair {
  SparseSymMatrix a;
  DiagonalScaling b;
  double mu = 0.0;
  double epsilon = 0.0;
  SparseSymMatrix q;
  std::optional<std::size_t> binding_row;
  double min_disc_left_end = 0.0;
};

struct OperatorOptions {
  ThetaMode theta = ThetaMode::laplacian;
};

/// two_hop_sets -> build_q -> epsilon_from_q -> compute_mu -> assemble_a -> compute_b.
OperatorPair build_operator_pair(const Graph& g, const OperatorOptions& options = {});

}  // namespace manigraph
