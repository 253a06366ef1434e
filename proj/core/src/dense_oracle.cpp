#include "manigraph/eigensolver.hpp"
#include "manigraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace manigraph {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

JacobiResult jacobi_eigensolver(MatrixXd m) {
  const Index n = m.rows();
  if (m.cols() != n) throw InputError("jacobi_eigensolver needs a square matrix");
  MatrixXd v = MatrixXd::Identity(n, n);
  const double norm = m.norm();
  JacobiResult out;

  const auto off_norm = [&]() {
    double s = 0.0;
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        if (i != j) s += m(i, j) * m(i, j);
      }
    }
    return std::sqrt(s);
  };

  constexpr std::size_t kMaxSweeps = 100;
  while (norm > 0.0 && off_norm() > 1e-12 * norm && out.sweeps < kMaxSweeps) {
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double mrp = m(r, p);
          const double mrq = m(r, q);
          m(r, p) = m(p, r) = c * mrp - s * mrq;
          m(r, q) = m(q, r) = s * mrp + c * mrq;
        }
        m(p, p) -= t * apq;
        m(q, q) += t * apq;
        m(p, q) = m(q, p) = 0.0;
        for (Index r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
    ++out.sweeps;
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return m(a, a) < m(b, b); });
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Index t = 0; t < n; ++t) {
    out.eigenvalues(t) = m(order[static_cast<std::size_t>(t)], order[static_cast<std::size_t>(t)]);
    out.eigenvectors.col(t) = v.col(order[static_cast<std::size_t>(t)]);
  }
  return out;
}

EigenResult dense_oracle(const SparseSymMatrix& a, const DiagonalScaling& b, std::size_t k) {
  const std::size_t n = a.size();
  if (n > kDenseOracleLimit) {
    throw InputError("dense_oracle refuses N = " + std::to_string(n) + " > " + std::to_string(kDenseOracleLimit));
  }
  if (b.size() != n) throw InputError("B size mismatch");
  if (k < 1 || k > n) throw InputError("k outside [1, N]");
  const Index nn = static_cast<Index>(n);

  VectorXd inv_sqrt_b(nn);
  for (Index i = 0; i < nn; ++i) inv_sqrt_b(i) = 1.0 / std::sqrt(b[static_cast<std::size_t>(i)]);
  const MatrixXd c = inv_sqrt_b.asDiagonal() * a.to_dense() * inv_sqrt_b.asDiagonal();
  const JacobiResult jr = jacobi_eigensolver(c);

  EigenResult out;
  const Index kk = static_cast<Index>(k);
  out.eigenvalues = jr.eigenvalues.head(kk);
  out.eigenvectors = inv_sqrt_b.asDiagonal() * jr.eigenvectors.leftCols(kk);
  normalize_signs(out.eigenvectors);
  out.iterations = jr.sweeps;

  const double a_scale = a.frobenius_norm() / std::sqrt(static_cast<double>(n));
  const double b_max = b.max();
  const MatrixXd ax = a.multiply(out.eigenvectors);
  for (Index col = 0; col < kk; ++col) {
    VectorXd r = ax.col(col);
    for (Index i = 0; i < nn; ++i) r(i) -= out.eigenvalues(col) * b[static_cast<std::size_t>(i)] * out.eigenvectors(i, col);
    const double denom = (a_scale + std::abs(out.eigenvalues(col)) * b_max) * out.eigenvectors.col(col).norm();
    out.residual_norms.push_back(denom > 0.0 ? r.norm() / denom : r.norm());
    out.converged.push_back(true);
  }
  return out;
}

}  // namespace manigraph
