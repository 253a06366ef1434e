#include "manigraph/eigensolver.hpp"

#include "manigraph/error.hpp"
#include "manigraph/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace manigraph {

Preconditioner parse_preconditioner(const std::string& name) {
  if (name == "none") return Preconditioner::none;
  if (name == "jacobi") return Preconditioner::jacobi;
  if (name == "ldlt") return Preconditioner::ldlt;
  throw InputError("unknown preconditioner `" + name + "`");
}

const char* to_string(Preconditioner p) {
  switch (p) {
    case Preconditioner::none: return "none";
    case Preconditioner::jacobi: return "jacobi";
    case Preconditioner::ldlt: return "ldlt";
  }
  return "?";
}

bool EigenResult::all_converged() const {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

void normalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const double peak = vectors.col(c).cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    // First entry within rounding of the peak magnitude decides the sign.
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      if (std::abs(vectors(r, c)) >= peak * (1.0 - 1e-12)) {
        if (vectors(r, c) < 0.0) vectors.col(c) = -vectors.col(c);
        break;
      }
    }
  }
}

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

class PreconditionerOp {
public:
  PreconditionerOp(const SparseSymMatrix& a, const VectorXd& b, Preconditioner kind) : kind_(kind) {
    const std::size_t n = a.size();
    if (kind_ == Preconditioner::jacobi) {
      inv_diag_.resize(static_cast<Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const double d = a.diagonal(i);
        inv_diag_(static_cast<Index>(i)) = d > 0.0 ? 1.0 / d : 1.0;
      }
    } else if (kind_ == Preconditioner::ldlt) {
      double shift = 1e-10 * std::abs(a.trace()) / static_cast<double>(n);
      if (!(shift > 0.0)) shift = 1e-10;
      std::vector<Eigen::Triplet<double>> trips;
      trips.reserve(a.nnz() + n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto cols = a.row_columns(i);
        const auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
          if (cols[p] <= i) trips.emplace_back(static_cast<int>(i), static_cast<int>(cols[p]), vals[p]);
        }
        trips.emplace_back(static_cast<int>(i), static_cast<int>(i), shift * b(static_cast<Index>(i)));
      }
      Eigen::SparseMatrix<double> m(static_cast<Index>(n), static_cast<Index>(n));
      m.setFromTriplets(trips.begin(), trips.end());
      ldlt_ = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower>>(m);
      if (ldlt_->info() != Eigen::Success) {
        // Indefinite input: fall back to the diagonal.
        ldlt_.reset();
        kind_ = Preconditioner::jacobi;
        inv_diag_.resize(static_cast<Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
          const double d = a.diagonal(i);
          inv_diag_(static_cast<Index>(i)) = d > 0.0 ? 1.0 / d : 1.0;
        }
      }
    }
  }

  MatrixXd apply(const MatrixXd& r) const {
    switch (kind_) {
      case Preconditioner::none: return r;
      case Preconditioner::jacobi: return inv_diag_.asDiagonal() * r;
      case Preconditioner::ldlt: return ldlt_->solve(r);
    }
    return r;
  }

private:
  Preconditioner kind_;
  VectorXd inv_diag_;
  std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower>> ldlt_;
};

double b_dot(const VectorXd& b, const VectorXd& x, const VectorXd& y) {
  return (x.array() * b.array() * y.array()).sum();
}

/// Appends the columns of `candidates` to the B-orthonormal `basis`, after
/// orthogonalizing against it. Each candidate is first scaled to unit
/// B-norm; a direction is dropped when what survives orthogonalization is
/// below `drop_tol`. Returns the number of columns appended.
Index extend_basis(MatrixXd& basis, Index used, const MatrixXd& candidates, const VectorXd& b,
                   double drop_tol) {
  Index added = 0;
  for (Index c = 0; c < candidates.cols(); ++c) {
    VectorXd v = candidates.col(c);
    double norm = std::sqrt(b_dot(b, v, v));
    if (!(norm > 0.0) || !std::isfinite(norm)) continue;
    v /= norm;
    norm = 1.0;
    const Index m = used + added;
    for (int pass = 0; pass < 4 && m > 0; ++pass) {
      const VectorXd bv = b.cwiseProduct(v);
      const VectorXd coeff = basis.leftCols(m).transpose() * bv;
      v.noalias() -= basis.leftCols(m) * coeff;
      const double next = std::sqrt(b_dot(b, v, v));
      const bool settled = next > 0.5 * norm;
      norm = next;
      if (settled || norm < drop_tol) break;
    }
    if (norm < drop_tol) continue;
    basis.col(m) = v / norm;
    ++added;
  }
  return added;
}

struct Residuals {
  MatrixXd r;
  std::vector<double> rel;
};

Residuals residuals(const MatrixXd& ax, const MatrixXd& x, const VectorXd& lambda, const VectorXd& b,
                    double a_scale, double b_max) {
  Residuals out;
  out.r = ax - b.asDiagonal() * x * lambda.asDiagonal();
  out.rel.resize(static_cast<std::size_t>(x.cols()));
  for (Index c = 0; c < x.cols(); ++c) {
    const double denom = (a_scale + std::abs(lambda(c)) * b_max) * x.col(c).norm();
    out.rel[static_cast<std::size_t>(c)] = denom > 0.0 ? out.r.col(c).norm() / denom : out.r.col(c).norm();
  }
  return out;
}

}  // namespace

EigenResult lobpcg_smallest(const SparseSymMatrix& a, const DiagonalScaling& scaling,
                            const SolverConfig& cfg, const std::optional<MatrixXd>& constraints) {
  const std::size_t n = a.size();
  if (scaling.size() != n) throw InputError("B has " + std::to_string(scaling.size()) + " entries, A is " + std::to_string(n));
  if (!(cfg.tol > 0.0)) throw InputError("tolerance must be positive");
  const Index nn = static_cast<Index>(n);
  const Index ny = constraints ? constraints->cols() : 0;
  if (constraints && constraints->rows() != nn) throw InputError("constraint block has wrong row count");
  const Index k = static_cast<Index>(cfg.k);
  if (k < 1 || k > nn - ny) {
    throw InputError("k = " + std::to_string(cfg.k) + " outside [1, " + std::to_string(nn - ny) + "]");
  }

  VectorXd b(nn);
  for (Index i = 0; i < nn; ++i) b(i) = scaling[static_cast<std::size_t>(i)];
  const double b_max = b.maxCoeff();
  const double a_scale = a.frobenius_norm() / std::sqrt(static_cast<double>(n));
  constexpr double kDropTol = 1e-12;

  // Constraint block, B-orthonormalized, sits at the front of every basis.
  MatrixXd y(nn, ny);
  Index y_cols = 0;
  if (ny > 0) {
    y_cols = extend_basis(y, 0, *constraints, b, kDropTol);
    y.conservativeResize(nn, y_cols);
  }

  const PreconditionerOp precond(a, b, cfg.preconditioner);

  Rng rng(cfg.seed);
  MatrixXd x0(nn, k);
  for (Index c = 0; c < k; ++c) {
    for (Index i = 0; i < nn; ++i) x0(i, c) = rng.uniform(-1.0, 1.0);
  }

  // Work basis: [Y | X | W | P].
  MatrixXd basis(nn, y_cols + 3 * k);
  if (y_cols > 0) basis.leftCols(y_cols) = y;
  Index x_cols = extend_basis(basis, y_cols, x0, b, kDropTol);
  if (x_cols < k) throw InputError("could not build an independent starting block");

  EigenResult result;
  MatrixXd x = basis.middleCols(y_cols, k);
  MatrixXd ax = a.multiply(x);
  {
    MatrixXd g = x.transpose() * ax;
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
    x = x * es.eigenvectors();
    ax = ax * es.eigenvectors();
    result.eigenvalues = es.eigenvalues();
    result.ritz_sum_history.push_back(es.eigenvalues().sum());
  }

  MatrixXd p(nn, 0);
  std::vector<bool> locked(static_cast<std::size_t>(k), false);
  Residuals res = residuals(ax, x, result.eigenvalues, b, a_scale, b_max);

  std::size_t iter = 0;
  for (; iter < cfg.max_iter; ++iter) {
    std::vector<Index> active;
    for (Index c = 0; c < k; ++c) {
      auto lk = locked[static_cast<std::size_t>(c)];
      if (res.rel[static_cast<std::size_t>(c)] <= cfg.tol) lk = true;
      if (!lk) active.push_back(c);
    }
    if (active.empty()) break;

    MatrixXd r_active(nn, static_cast<Index>(active.size()));
    for (std::size_t t = 0; t < active.size(); ++t) r_active.col(static_cast<Index>(t)) = res.r.col(active[t]);
    const MatrixXd w = precond.apply(r_active);

    MatrixXd p_active(nn, 0);
    if (p.cols() == k) {
      p_active.resize(nn, static_cast<Index>(active.size()));
      for (std::size_t t = 0; t < active.size(); ++t) p_active.col(static_cast<Index>(t)) = p.col(active[t]);
    }

    basis.middleCols(y_cols, k) = x;
    const Index w_cols = extend_basis(basis, y_cols + k, w, b, kDropTol);
    const Index p_cols = extend_basis(basis, y_cols + k + w_cols, p_active, b, kDropTol);
    const Index m = k + w_cols + p_cols;
    if (w_cols + p_cols == 0) break;  // nothing new to search

    const MatrixXd s = basis.middleCols(y_cols, m);
    const MatrixXd as = a.multiply(s);
    MatrixXd g = s.transpose() * as;
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
    const MatrixXd c = es.eigenvectors().leftCols(k);

    x = s * c;
    ax = as * c;
    p = s.rightCols(m - k) * c.bottomRows(m - k);
    result.eigenvalues = es.eigenvalues().head(k);
    result.ritz_sum_history.push_back(result.eigenvalues.sum());
    res = residuals(ax, x, result.eigenvalues, b, a_scale, b_max);
  }
  result.iterations = iter;

  // Restore exact B-orthonormality lost to rounding, then re-derive the
  // Ritz pairs so eigenvalues match the returned vectors.
  {
    MatrixXd gram = x.transpose() * b.asDiagonal() * x;
    gram = 0.5 * (gram + gram.transpose()).eval();
    if ((gram - MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() > 1e-12) {
      Eigen::LLT<MatrixXd> llt(gram);
      const MatrixXd inv_lt = llt.matrixU().solve(MatrixXd::Identity(k, k));
      x = x * inv_lt;
      ax = ax * inv_lt;
      MatrixXd g = x.transpose() * ax;
      g = 0.5 * (g + g.transpose()).eval();
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
      x = x * es.eigenvectors();
      ax = ax * es.eigenvectors();
      result.eigenvalues = es.eigenvalues();
    }
  }

  normalize_signs(x);
  ax = a.multiply(x);
  res = residuals(ax, x, result.eigenvalues, b, a_scale, b_max);
  result.residual_norms = res.rel;
  result.converged.resize(static_cast<std::size_t>(k));
  for (Index c = 0; c < k; ++c) {
    result.converged[static_cast<std::size_t>(c)] = res.rel[static_cast<std::size_t>(c)] <= cfg.tol;
  }
  result.eigenvectors = std::move(x);
  return result;
}

double fiedler_value(const SparseSymMatrix& m, const SolverConfig& base) {
  const std::size_t n = m.size();
  if (n < 2) return 0.0;
  const double trace = m.trace();
  if (!(trace > 0.0)) return 0.0;
  const double tau = 1e-8 * trace / static_cast<double>(n);

  // Near-null vectors found so far are deflated instead of growing the block.
  MatrixXd basis = MatrixXd::Constant(static_cast<Index>(n), 1, 1.0 / std::sqrt(static_cast<double>(n)));
  const DiagonalScaling identity = DiagonalScaling::identity(n);
  SolverConfig cfg = base;
  cfg.tol = std::min(base.tol, 1e-10);
  while (static_cast<std::size_t>(basis.cols()) < n) {
    cfg.k = std::min<std::size_t>(2, n - static_cast<std::size_t>(basis.cols()));
    const EigenResult r = lobpcg_smallest(m, identity, cfg, basis);
    if (!r.all_converged()) {
      throw ConvergenceError("fiedler_value: LOBPCG did not converge with " +
                             std::to_string(basis.cols()) + " deflated vectors");
    }
    for (Index t = 0; t < r.eigenvalues.size(); ++t) {
      if (r.eigenvalues(t) > tau) return r.eigenvalues(t);
    }
    MatrixXd grown(basis.rows(), basis.cols() + r.eigenvectors.cols());
    grown << basis, r.eigenvectors;
    const Eigen::HouseholderQR<MatrixXd> qr(grown);
    basis = qr.householderQ() * MatrixXd::Identity(grown.rows(), grown.cols());
  }
  return 0.0;
}

}  // namespace manigraph
