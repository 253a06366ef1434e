#pragma once

#include "manigraph/sparse.hpp"
#include "manigraph/spectral_operator.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace manigraph {

enum class Preconditioner {
  none,
  /// diag(A)^-1.
  jacobi,
  /// Sparse LDL^T factorization of A + delta B, delta = 1e-10 trace(A) / N.
  ldlt,
};

Preconditioner parse_preconditioner(const std::string& name);
const char* to_string(Preconditioner p);

struct SolverConfig {
  std::size_t k = 1;
  double tol = 1e-8;
  std::size_t max_iter = 500;
  std::uint64_t seed = 42;
  Preconditioner preconditioner = Preconditioner::ldlt;
};

struct EigenResult {
  /// Ascending.
  Eigen::VectorXd eigenvalues;
  /// N x k, columns B-orthonormal.
  Eigen::MatrixXd eigenvectors;
  std::size_t iterations = 0;
  /// Relative residuals ||A q - lambda B q|| / ((||A||_F / sqrt(N) + |lambda| max b) ||q||).
  std::vector<double> residual_norms;
  std::vector<bool> converged;
  /// Sum of the Ritz values after every Rayleigh-Ritz step.
  std::vector<double> ritz_sum_history;

  bool all_converged() const;
};

/// K smallest generalized eigenpairs of (A, B) by LOBPCG.
///
/// `constraints` (N x m, B-orthonormal) spans a subspace the iteration is
/// kept B-orthogonal to. Non-convergence is reported through the
/// `converged` flags, never thrown. Throws InputError on size mismatch or
/// k outside [1, N - m].
EigenResult lobpcg_smallest(const SparseSymMatrix& a, const DiagonalScaling& b,
                            const SolverConfig& cfg,
                            const std::optional<Eigen::MatrixXd>& constraints = std::nullopt);

/// Largest N accepted by dense_oracle.
inline constexpr std::size_t kDenseOracleLimit = 2048;

/// Reference solver: cyclic Jacobi on B^-1/2 A B^-1/2, mapped back through
/// B^-1/2. Returns the k smallest pairs with the same sign convention as
/// lobpcg_smallest.
EigenResult dense_oracle(const SparseSymMatrix& a, const DiagonalScaling& b, std::size_t k);

/// Full symmetric eigendecomposition by cyclic Jacobi rotations, ascending.
/// Sweeps until the off-diagonal Frobenius norm drops below 1e-12 ||M||_F.
struct JacobiResult {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::size_t sweeps = 0;
};
JacobiResult jacobi_eigensolver(Eigen::MatrixXd m);

/// Smallest eigenvalue above 1e-8 trace(M) / N of a Laplacian-like PSD
/// matrix, with the constant vector deflated. Eigenvectors found at or below
/// the threshold are deflated in turn. Throws ConvergenceError.
double fiedler_value(const SparseSymMatrix& m, const SolverConfig& base = {});

/// Flips each column so its largest-magnitude entry (lowest index on ties)
/// is positive.
void normalize_signs(Eigen::MatrixXd& vectors);

}  // namespace manigraph
