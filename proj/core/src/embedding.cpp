#include "manigraph/embedding.hpp"

#include "manigraph/error.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace manigraph {

EmbeddingMethod parse_embedding_method(const std::string& name) {
  if (name == "proposed") return EmbeddingMethod::proposed;
  if (name == "le") return EmbeddingMethod::le;
  throw InputError("unknown method `" + name + "` (expected proposed|le)");
}

const char* to_string(EmbeddingMethod m) {
  return m == EmbeddingMethod::proposed ? "proposed" : "le";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_graph(const Graph& g, std::size_t k, std::size_t k_max) {
  if (g.num_nodes() < 2) throw InputError("graph needs at least 2 nodes");
  if (k < 1 || k > k_max) {
    throw InputError("embedding dimension " + std::to_string(k) + " outside [1, " + std::to_string(k_max) + "]");
  }
  const std::size_t components = g.num_components();
  if (components > 1) {
    throw GraphPreconditionError("graph has " + std::to_string(components) + " connected components", components);
  }
}

/// True when A 1 = lambda B 1 to rounding, i.e. the constant vector is an
/// eigenvector of the pair.
bool constant_is_eigenvector(const SparseSymMatrix& a, const DiagonalScaling& b) {
  const std::size_t n = a.size();
  const std::vector<double> ones(n, 1.0);
  const std::vector<double> a1 = a.multiply(ones);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += a1[i];
    den += b[i];
  }
  const double lambda = num / den;
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = a1[i] - lambda * b[i];
    r2 += r * r;
  }
  const double scale = (a.frobenius_norm() / std::sqrt(static_cast<double>(n)) + std::abs(lambda) * b.max()) *
                       std::sqrt(static_cast<double>(n));
  return std::sqrt(r2) <= 1e-12 * scale;
}

void fill_solver_stats(EmbeddingDiagnostics& d, const EigenResult& r) {
  d.eigenvalues = r.eigenvalues;
  d.iterations = r.iterations;
  d.residual_norms = r.residual_norms;
  d.converged = r.converged;
}

void require_converged(const EigenResult& r, const EmbedOptions& options) {
  if (!options.require_convergence || r.all_converged()) return;
  double worst = 0.0;
  for (double v : r.residual_norms) worst = std::max(worst, v);
  throw ConvergenceError("LOBPCG stopped after " + std::to_string(r.iterations) +
                         " iterations with relative residual " + std::to_string(worst));
}

}  // namespace

Embedding embed(const Graph& g, std::size_t k, const SolverConfig& cfg, const EmbedOptions& options) {
  const auto t0 = Clock::now();
  check_graph(g, k, g.num_nodes());

  OperatorPair op = build_operator_pair(g, options.operators);

  Embedding out;
  out.method = EmbeddingMethod::proposed;
  auto& d = out.diagnostics;
  d.mu = op.mu;
  d.epsilon = op.epsilon;
  d.min_disc_left_end = op.min_disc_left_end;
  d.q_nnz = op.q.nnz();
  if (op.binding_row) d.binding_row = *op.binding_row;

  std::optional<Eigen::MatrixXd> deflate;
  if (constant_is_eigenvector(op.a, op.b)) {
    if (k > g.num_nodes() - 1) {
      throw InputError("embedding dimension must be < N when the constant vector is deflated");
    }
    double mass = 0.0;
    for (double v : op.b.values()) mass += v;
    deflate = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(g.num_nodes()), 1, 1.0 / std::sqrt(mass));
    d.constant_deflated = true;
  }

  SolverConfig solver = cfg;
  solver.k = k;
  const auto t_solve = Clock::now();
  EigenResult r = lobpcg_smallest(op.a, op.b, solver, deflate);
  d.solve_ms = ms_since(t_solve);
  fill_solver_stats(d, r);
  require_converged(r, options);

  out.coords = std::move(r.eigenvectors);
  out.b = std::move(op.b);
  d.total_ms = ms_since(t0);
  return out;
}

Embedding embed_le(const Graph& g, std::size_t k, const SolverConfig& cfg, const EmbedOptions& options) {
  const auto t0 = Clock::now();
  check_graph(g, k, g.num_nodes() - 1);

  const SparseSymMatrix l = laplacian(g);
  const std::size_t n = g.num_nodes();
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), 1, 1.0 / std::sqrt(static_cast<double>(n)));

  Embedding out;
  out.method = EmbeddingMethod::le;
  out.b = DiagonalScaling::identity(n);
  out.diagnostics.constant_deflated = true;

  SolverConfig solver = cfg;
  solver.k = k;
  const auto t_solve = Clock::now();
  EigenResult r = lobpcg_smallest(l, out.b, solver, ones);
  out.diagnostics.solve_ms = ms_since(t_solve);
  fill_solver_stats(out.diagnostics, r);
  require_converged(r, options);

  out.coords = std::move(r.eigenvectors);
  out.diagnostics.total_ms = ms_since(t0);
  return out;
}

}  // namespace manigraph
