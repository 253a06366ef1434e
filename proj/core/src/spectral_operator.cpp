#include "manigraph/spectral_operator.hpp"

#include "manigraph/eigensolver.hpp"
#include "manigraph/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace manigraph {

TwoHopSets::TwoHopSets(std::vector<std::vector<std::size_t>> sets) : sets_(std::move(sets)) {}

std::size_t TwoHopSets::total() const {
  std::size_t t = 0;
  for (const auto& s : sets_) t += s.size();
  return t;
}

TwoHopSets two_hop_sets(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::size_t>> sets(n);
  const auto signed_n = static_cast<long long>(n);
#pragma omp parallel
  {
    // Per-thread stamp array: mark[j] == i + 1 means j was already seen from i.
    std::vector<std::size_t> mark(n, 0);
#pragma omp for schedule(dynamic, 64)
    for (long long si = 0; si < signed_n; ++si) {
      const auto i = static_cast<std::size_t>(si);
      const std::size_t stamp = i + 1;
      mark[i] = stamp;
      for (std::size_t m : g.neighbors(i)) mark[m] = stamp;
      std::vector<std::size_t> found;
      for (std::size_t m : g.neighbors(i)) {
        for (std::size_t j : g.neighbors(m)) {
          if (mark[j] != stamp) {
            mark[j] = stamp;
            found.push_back(j);
          }
        }
      }
      std::sort(found.begin(), found.end());
      sets[i] = std::move(found);
    }
  }
  return TwoHopSets(std::move(sets));
}

SparseSymMatrix build_q(const TwoHopSets& sets, ThetaMode mode) {
  const std::size_t n = sets.size();
  std::vector<double> inv(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (sets.count(i) > 0) inv[i] = 1.0 / static_cast<double>(sets.count(i));
  }

  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + sets.count(i) + 1;
  std::vector<std::size_t> columns(offsets[n]);
  std::vector<double> values(offsets[n]);

  const auto signed_n = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long si = 0; si < signed_n; ++si) {
    const auto i = static_cast<std::size_t>(si);
    const auto set = sets.set(i);
    // Theta_j contributes inv[j] to (i, i) for every j with i in set(j),
    // i.e. every j in set(i) by symmetry.
    double diag = 0.0;
    for (std::size_t j : set) diag += inv[j];
    if (mode == ThetaMode::laplacian) {
      diag += static_cast<double>(set.size()) * inv[i];
    } else {
      diag += inv[i];
    }
    std::size_t p = offsets[i];
    bool placed = false;
    for (std::size_t j : set) {
      if (!placed && j > i) {
        columns[p] = i;
        values[p++] = diag;
        placed = true;
      }
      columns[p] = j;
      values[p++] = -(inv[i] + inv[j]);
    }
    if (!placed) {
      columns[p] = i;
      values[p] = diag;
    }
  }
  return SparseSymMatrix::from_csr(n, std::move(offsets), std::move(columns), std::move(values));
}

double epsilon_from_q(const SparseSymMatrix& q) {
  const std::size_t n = q.size();
  if (n == 0) return 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = q.row_columns(i);
    const auto vals = q.row_values(i);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      if (q.at(cols[p], i) != vals[p]) throw InputError("epsilon_from_q: Q is not symmetric");
    }
  }
  const double tau = 1e-8 * q.trace() / static_cast<double>(n);
  if (!(q.trace() > 0.0)) return 0.0;

  if (n <= kDenseEpsilonLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.to_dense(), Eigen::EigenvaluesOnly);
    for (Eigen::Index t = 0; t < es.eigenvalues().size(); ++t) {
      if (es.eigenvalues()(t) > tau) return es.eigenvalues()(t);
    }
    return 0.0;
  }
  return fiedler_value(q);
}

MuChoice compute_mu(const SparseSymMatrix& l, const SparseSymMatrix& q, double epsilon) {
  if (!(epsilon >= 0.0)) throw InputError("epsilon must be non-negative");
  if (l.size() != q.size()) throw InputError("L and Q differ in size");
  MuChoice best;
  double best_mu = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double q_diag = q.diagonal(i);
    const double denom = q_diag - (q.row_sum(i) - q_diag);
    if (!(denom > 0.0)) continue;
    const double numer = l.row_sum(i) + epsilon;
    const double mu_i = numer / denom;
    if (mu_i < 0.0) continue;
    if (mu_i < best_mu) {
      best_mu = mu_i;
      best.binding_row = i;
    }
  }
  best.mu = best.binding_row ? best_mu : 0.0;
  return best;
}

SparseSymMatrix assemble_a(const SparseSymMatrix& l, const SparseSymMatrix& q, double mu,
                           double epsilon) {
  if (l.size() != q.size()) throw InputError("L and Q differ in size");
  return l.combine(1.0, q, -mu, epsilon);
}

DiagonalScaling::DiagonalScaling(std::vector<double> b) : b_(std::move(b)) {
  for (double v : b_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("scaling entries must be finite and positive");
  }
}

double DiagonalScaling::max() const {
  return b_.empty() ? 0.0 : *std::max_element(b_.begin(), b_.end());
}

bool DiagonalScaling::is_uniform() const {
  return std::all_of(b_.begin(), b_.end(), [&](double v) { return v == b_.front(); });
}

DiagonalScaling compute_b(const SparseSymMatrix& a) {
  const std::size_t n = a.size();
  std::vector<double> r(n);
  double log_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = a.disc_radius(i);
    if (!(r[i] > 0.0)) {
      throw GraphPreconditionError("node " + std::to_string(i) +
                                   " has no neighbours in A (isolated); extract the largest "
                                   "connected component first");
    }
    log_sum += std::log(r[i]);
  }
  const double log_mean = log_sum / static_cast<double>(n);
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = std::exp(std::log(r[i]) - log_mean);
  // All radii equal: return exact ones so the pair stays in standard form.
  if (std::all_of(r.begin(), r.end(), [&](double v) { return v == r.front(); })) {
    std::fill(b.begin(), b.end(), 1.0);
  }
  return DiagonalScaling(std::move(b));
}

OperatorPair build_operator_pair(const Graph& g, const OperatorOptions& options) {
  const std::size_t components = g.num_components();
  if (components > 1) {
    throw GraphPreconditionError("graph has " + std::to_string(components) +
                                     " connected components; embed each component separately",
                                 components);
  }
  if (g.num_nodes() < 2) throw InputError("graph needs at least 2 nodes");

  OperatorPair op;
  const SparseSymMatrix l = laplacian(g);
  op.q = build_q(two_hop_sets(g), options.theta);
  op.epsilon = epsilon_from_q(op.q);
  const MuChoice choice = compute_mu(l, op.q, op.epsilon);
  op.mu = choice.mu;
  op.binding_row = choice.binding_row;
  op.a = assemble_a(l, op.q, op.mu, op.epsilon);
  op.min_disc_left_end = op.a.min_disc_left_end();
  op.b = compute_b(op.a);
  return op;
}

}  // namespace manigraph
