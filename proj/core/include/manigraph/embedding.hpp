#pragma once

#include "manigraph/eigensolver.hpp"
#include "manigraph/graph.hpp"
#include "manigraph/spectral_operator.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <string>

namespace manigraph {

enum class EmbeddingMethod { proposed, le };

EmbeddingMethod parse_embedding_method(const std::string& name);
const char* to_string(EmbeddingMethod m);

struct EmbeddingDiagnostics {
  // Only set for the proposed method.
  std::optional<double> mu;
  std::optional<double> epsilon;
  std::optional<double> min_disc_left_end;
  std::optional<std::size_t> q_nnz;
  std::optional<std::size_t> binding_row;
  /// The pair (A, B) had the constant vector as an exact eigenvector and it
  /// was deflated (happens when B = I, e.g. on vertex-transitive graphs).
  bool constant_deflated = false;

  Eigen::VectorXd eigenvalues;
  std::size_t iterations = 0;
  std::vector<double> residual_norms;
  std::vector<bool> converged;
  double solve_ms = 0.0;
  double total_ms = 0.0;
};

/// N x K latent coordinates: row i is node i, column k the k-th eigenvector.
struct Embedding {
  Eigen::MatrixXd coords;
  EmbeddingMethod method = EmbeddingMethod::proposed;
  /// Orthonormality weights (all ones for LE).
  DiagonalScaling b;
  EmbeddingDiagnostics diagnostics;

  std::size_t num_nodes() const { return static_cast<std::size_t>(coords.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(coords.cols()); }
};

struct EmbedOptions {
  OperatorOptions operators;
  /// Fail with ConvergenceError when a pair misses the tolerance. When
  /// false the best-effort result is returned with converged flags.
  bool require_convergence = true;
};

/// First K generalized eigenvectors of (A, B) = (L - mu Q + eps I, B).
///
/// If the constant vector is itself an eigenvector of the pair it carries no
/// positional information and is deflated; otherwise nothing is discarded.
/// Throws InputError for k outside [1, N], GraphPreconditionError for a
/// disconnected graph, ConvergenceError on solver failure.
Embedding embed(const Graph& g, std::size_t k, const SolverConfig& cfg,
                const EmbedOptions& options = {});

/// Laplacian eigenmaps: eigenvectors 2..K+1 of L with B = I.
Embedding embed_le(const Graph& g, std::size_t k, const SolverConfig& cfg,
                   const EmbedOptions& options = {});

}  // namespace manigraph
