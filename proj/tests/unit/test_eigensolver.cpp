#include "doctest.h"
#include "oracles.hpp"

#include "manigraph/eigensolver.hpp"
#include "manigraph/error.hpp"
#include "manigraph/spectral_operator.hpp"

#include <cmath>
#include <random>

using namespace manigraph;

namespace {

SparseSymMatrix diagonal_matrix(const std::vector<double>& d) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return SparseSymMatrix::from_triplets(d.size(), t);
}

double b_orthonormality_error(const Eigen::MatrixXd& q, const DiagonalScaling& b) {
  Eigen::VectorXd bv(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) bv(static_cast<Eigen::Index>(i)) = b[i];
  const Eigen::MatrixXd g = q.transpose() * bv.asDiagonal() * q;
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

/// Groups indices of ascending values into clusters of (relatively) equal eigenvalues.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const Eigen::VectorXd& v, double rel) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= v.size(); ++i) {
    if (i == v.size() || v(i) - v(i - 1) > rel * std::max(1.0, std::abs(v(i)))) {
      out.emplace_back(start, i - start);
      start = i;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("lobpcg: diagonal matrix") {
  SolverConfig cfg;
  cfg.k = 1;
  const auto r = lobpcg_smallest(diagonal_matrix({1, 2, 3}), DiagonalScaling::identity(3), cfg);
  REQUIRE(r.all_converged());
  CHECK(r.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.eigenvectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.eigenvectors(0, 0) > 0.0);
}

TEST_CASE("lobpcg: identity against a diagonal B") {
  SolverConfig cfg;
  cfg.k = 1;
  const auto r = lobpcg_smallest(SparseSymMatrix::identity(3), DiagonalScaling({1, 2, 4}), cfg);
  REQUIRE(r.all_converged());
  CHECK(r.eigenvalues(0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.eigenvectors(2, 0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(r.eigenvectors(0, 0)) < 1e-8);
}

TEST_CASE("lobpcg: random sparse PSD matrix against the dense oracle") {
  std::mt19937_64 gen(1);
  const Graph g = oracle::random_connected_graph(gen, 100, 0.05);
  const auto a = laplacian(g).combine(1.0, SparseSymMatrix::identity(100), 0.0, 0.1);
  const auto b = compute_b(a);
  SolverConfig cfg;
  cfg.k = 4;
  for (auto p : {Preconditioner::none, Preconditioner::jacobi, Preconditioner::ldlt}) {
    cfg.preconditioner = p;
    cfg.max_iter = 2000;
    const auto r = lobpcg_smallest(a, b, cfg);
    const auto d = dense_oracle(a, b, 4);
    INFO("preconditioner " << to_string(p));
    REQUIRE(r.all_converged());
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(r.eigenvalues(i) == doctest::Approx(d.eigenvalues(i)).epsilon(1e-8));
    CHECK(b_orthonormality_error(r.eigenvectors, b) < 1e-8);
  }
}

TEST_CASE("dense oracle examples") {
  const auto d = dense_oracle(diagonal_matrix({1, 2, 3}), DiagonalScaling::identity(3), 1);
  CHECK(d.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(d.eigenvectors(0, 0) == doctest::Approx(1.0));

  const auto ring = dense_oracle(laplacian(generate(GraphKind::ring, 4)), DiagonalScaling::identity(4), 1);
  CHECK(std::abs(ring.eigenvalues(0)) < 1e-14);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(ring.eigenvectors(i, 0) == doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = build_operator_pair(oracle::random_connected_graph(gen, 15 + 5 * trial, 0.2));
    const auto full = dense_oracle(op.a, op.b, op.a.size());
    double expected = 0.0;
    for (std::size_t i = 0; i < op.a.size(); ++i) expected += op.a.diagonal(i) / op.b[i];
    CHECK(full.eigenvalues.sum() == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK_THROWS_AS(dense_oracle(SparseSymMatrix::identity(kDenseOracleLimit + 1),
                               DiagonalScaling::identity(kDenseOracleLimit + 1), 1),
                  InputError);
}

TEST_CASE("dense oracle agrees with an independent generalized solver") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 15; ++trial) {
    const Graph g = oracle::reweighted(oracle::random_connected_graph(gen, 10 + 6 * trial, 0.15), gen, 0.3, 3.0);
    const auto op = build_operator_pair(g);
    const std::vector<double> b(op.b.values().begin(), op.b.values().end());
    const auto ref = oracle::generalized(op.a.to_dense(), b);
    const auto mine = dense_oracle(op.a, op.b, op.a.size());
    const double scale = ref.eigenvalues().cwiseAbs().maxCoeff();
    CHECK((mine.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-11 * scale);
    CHECK(b_orthonormality_error(mine.eigenvectors, op.b) < 1e-10);
  }
}

TEST_CASE("cyclic Jacobi against Eigen on random symmetric matrices") {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> z;
  for (int n : {1, 2, 5, 17, 40}) {
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = z(gen);
    m = (m + m.transpose()).eval();
    const auto j = jacobi_eigensolver(m);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    CHECK((j.eigenvalues - es.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-12 * m.norm());
    CHECK((m * j.eigenvectors - j.eigenvectors * j.eigenvalues.asDiagonal()).norm() <= 1e-11 * m.norm());
  }
}

TEST_CASE("fiedler value examples") {
  CHECK(fiedler_value(laplacian(generate(GraphKind::path, 2))) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fiedler_value(laplacian(generate(GraphKind::ring, 4))) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fiedler_value(build_q(two_hop_sets(generate(GraphKind::path, 5)))) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("fiedler value skips a multi-dimensional near-null space") {
  // Three disjoint triangles: eigenvalue 0 has multiplicity 3, next is 3.
  std::vector<Edge> e;
  for (std::size_t c = 0; c < 3; ++c) {
    e.push_back({3 * c, 3 * c + 1});
    e.push_back({3 * c + 1, 3 * c + 2});
    e.push_back({3 * c, 3 * c + 2});
  }
  CHECK(fiedler_value(laplacian(Graph::from_edges(9, e))) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("oracle equivalence on random connected graphs") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<std::size_t> size(10, 120);
  std::uniform_real_distribution<double> c(3.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = size(gen);
    const auto op = build_operator_pair(oracle::random_connected_graph(gen, n, c(gen) / static_cast<double>(n)));
    SolverConfig cfg;
    cfg.k = 4;
    // Vector error scales like residual / gap, and gaps here go down to ~1e-2,
    // so the angle bound needs a residual two orders below the default.
    cfg.tol = 1e-10;
    const auto r = lobpcg_smallest(op.a, op.b, cfg);
    const auto d = dense_oracle(op.a, op.b, std::min<std::size_t>(n, 5));
    REQUIRE(r.all_converged());
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(r.eigenvalues(i) == doctest::Approx(d.eigenvalues(i)).epsilon(1e-8));
    CHECK(b_orthonormality_error(r.eigenvectors, op.b) < 1e-8);

    // Compare spans per eigenvalue cluster, skipping a cluster cut off by k.
    const std::vector<double> b(op.b.values().begin(), op.b.values().end());
    for (const auto& [start, len] : clusters(d.eigenvalues, 1e-6)) {
      if (start + len > 4) break;
      const double angle = oracle::max_subspace_angle(r.eigenvectors.middleCols(start, len),
                                                      d.eigenvectors.middleCols(start, len), b);
      CHECK(angle < 1e-6);
    }
  }
}

TEST_CASE("residual norms meet the tolerance") {
  std::mt19937_64 gen(6);
  const auto op = build_operator_pair(oracle::random_connected_graph(gen, 150, 0.04));
  SolverConfig cfg;
  cfg.k = 6;
  const auto r = lobpcg_smallest(op.a, op.b, cfg);
  REQUIRE(r.all_converged());
  const Eigen::MatrixXd aq = op.a.multiply(r.eigenvectors);
  const double a_scale = op.a.frobenius_norm() / std::sqrt(150.0);
  for (Eigen::Index k = 0; k < 6; ++k) {
    Eigen::VectorXd res = aq.col(k);
    for (Eigen::Index i = 0; i < 150; ++i) res(i) -= r.eigenvalues(k) * op.b[static_cast<std::size_t>(i)] * r.eigenvectors(i, k);
    const double rel = res.norm() / ((a_scale + std::abs(r.eigenvalues(k)) * op.b.max()) * r.eigenvectors.col(k).norm());
    CHECK(rel <= cfg.tol);
    CHECK(rel == doctest::Approx(r.residual_norms[static_cast<std::size_t>(k)]).epsilon(1e-3));
  }
  for (Eigen::Index k = 1; k < 6; ++k) CHECK(r.eigenvalues(k - 1) <= r.eigenvalues(k));
}

TEST_CASE("Ritz value sums are non-increasing") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto op = build_operator_pair(oracle::random_connected_graph(gen, 60 + 20 * trial, 0.06));
    for (auto p : {Preconditioner::jacobi, Preconditioner::ldlt}) {
      SolverConfig cfg;
      cfg.k = 4;
      cfg.preconditioner = p;
      const auto r = lobpcg_smallest(op.a, op.b, cfg);
      for (std::size_t i = 1; i < r.ritz_sum_history.size(); ++i) {
        CHECK(r.ritz_sum_history[i] <= r.ritz_sum_history[i - 1] + 1e-12);
      }
    }
  }
}

TEST_CASE("determinism and thread independence") {
  std::mt19937_64 gen(8);
  const auto op = build_operator_pair(oracle::random_connected_graph(gen, 2500, 0.002));
  SolverConfig cfg;
  cfg.k = 4;
  set_num_threads(1);
  const auto a = lobpcg_smallest(op.a, op.b, cfg);
  const auto b = lobpcg_smallest(op.a, op.b, cfg);
  set_num_threads(4);
  const auto c = lobpcg_smallest(op.a, op.b, cfg);
  set_num_threads(0);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(c.eigenvalues(i) == doctest::Approx(a.eigenvalues(i)).epsilon(1e-10));
}

TEST_CASE("constraints keep the iteration off a subspace") {
  const auto l = laplacian(generate(GraphKind::ring, 12));
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(12, 1, 1.0 / std::sqrt(12.0));
  SolverConfig cfg;
  cfg.k = 2;
  const auto r = lobpcg_smallest(l, DiagonalScaling::identity(12), cfg, ones);
  REQUIRE(r.all_converged());
  const double fiedler = 2.0 - 2.0 * std::cos(2.0 * M_PI / 12.0);
  CHECK(r.eigenvalues(0) == doctest::Approx(fiedler).epsilon(1e-10));
  CHECK(r.eigenvalues(1) == doctest::Approx(fiedler).epsilon(1e-10));
  CHECK((ones.transpose() * r.eigenvectors).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("non-convergence is reported, not thrown") {
  const auto l = laplacian(generate(GraphKind::ring, 400)).combine(1.0, SparseSymMatrix::identity(400), 0.0, 1e-3);
  SolverConfig cfg;
  cfg.k = 4;
  cfg.max_iter = 3;
  cfg.preconditioner = Preconditioner::none;
  const auto r = lobpcg_smallest(l, DiagonalScaling::identity(400), cfg);
  CHECK_FALSE(r.all_converged());
  CHECK(r.iterations == 3);
}

TEST_CASE("argument checks and sign convention") {
  SolverConfig cfg;
  cfg.k = 0;
  CHECK_THROWS_AS(lobpcg_smallest(SparseSymMatrix::identity(3), DiagonalScaling::identity(3), cfg), InputError);
  cfg.k = 4;
  CHECK_THROWS_AS(lobpcg_smallest(SparseSymMatrix::identity(3), DiagonalScaling::identity(3), cfg), InputError);
  cfg.k = 1;
  CHECK_THROWS_AS(lobpcg_smallest(SparseSymMatrix::identity(3), DiagonalScaling::identity(4), cfg), InputError);
  CHECK_THROWS_AS(parse_preconditioner("ilu"), InputError);
  CHECK(parse_preconditioner("jacobi") == Preconditioner::jacobi);

  Eigen::MatrixXd v(3, 2);
  v << 0.5, 0.5, -0.7, -0.5, 0.1, 0.2;
  normalize_signs(v);
  CHECK(v(1, 0) == 0.7);
  CHECK(v(0, 1) == 0.5);  // tie between rows 0 and 1 goes to row 0
}
