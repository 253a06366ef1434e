#include "doctest.h"
#include "oracles.hpp"

#include "manigraph/clustering.hpp"
#include "manigraph/error.hpp"

#include <random>

using namespace manigraph;

namespace {

ClusterLabels labels(const std::vector<int>& v) {
  std::vector<long long> ids(v.begin(), v.end());
  return ClusterLabels::from_ids(ids);
}

std::vector<int> random_labels(std::mt19937_64& gen, std::size_t n, int c) {
  std::uniform_int_distribution<int> pick(0, c - 1);
  std::vector<int> v(n);
  for (auto& x : v) x = pick(gen);
  return v;
}

std::vector<int> relabel(const std::vector<int>& v, std::mt19937_64& gen) {
  std::vector<int> map(64);
  std::iota(map.begin(), map.end(), 100);
  std::shuffle(map.begin(), map.end(), gen);
  std::vector<int> out;
  for (int x : v) out.push_back(map[static_cast<std::size_t>(x)]);
  return out;
}

}  // namespace

TEST_CASE("labels") {
  const auto l = labels({7, 7, -3, 9, -3});
  CHECK(l.num_clusters() == 3);
  CHECK(std::vector<std::size_t>(l.values().begin(), l.values().end()) == std::vector<std::size_t>{0, 0, 1, 2, 1});
  CHECK_THROWS_AS(ClusterLabels({0, 2}, 2), InputError);
  CHECK_THROWS_AS(ClusterLabels({}, 0), InputError);
}

TEST_CASE("pair counts: worked example") {
  const auto p = pair_counts(labels({1, 1, 2, 2}), labels({1, 1, 1, 2}));
  CHECK(p.tp == 1);
  CHECK(p.fp == 1);
  CHECK(p.fn == 2);
  CHECK(p.tn == 2);
}

TEST_CASE("pair counts: extremes") {
  const auto same = pair_counts(labels({0, 1, 1, 2, 0}), labels({0, 1, 1, 2, 0}));
  CHECK(same.fp == 0);
  CHECK(same.fn == 0);
  const auto p = pair_counts(labels({0, 0, 0, 0, 0}), labels({0, 1, 2, 3, 4}));
  CHECK(p.tp == 0);
  CHECK(p.fp == 10);
  CHECK_THROWS_AS(pair_counts(labels({0, 1}), labels({0, 1, 1})), InputError);
}

TEST_CASE("pair counts match brute-force enumeration") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 60);
    const auto a = random_labels(gen, n, 1 + trial % 7);
    const auto b = random_labels(gen, n, 1 + trial % 5);
    const auto p = pair_counts(labels(a), labels(b));
    const auto q = oracle::brute_pairs(a, b);
    CHECK(p.tp == q.tp);
    CHECK(p.fp == q.fp);
    CHECK(p.fn == q.fn);
    CHECK(p.tn == q.tn);
  }
}

TEST_CASE("evaluate: worked example") {
  const auto m = evaluate(labels({1, 1, 2, 2}), labels({1, 1, 1, 2}));
  CHECK(m.rand_index == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.precision == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.purity == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(m.nmi == doctest::Approx(0.3437110184854508).epsilon(1e-12));
  const auto swapped = evaluate(labels({1, 1, 1, 2}), labels({1, 1, 2, 2}));
  CHECK(swapped.precision == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(swapped.rand_index == m.rand_index);
  CHECK(swapped.nmi == doctest::Approx(m.nmi).epsilon(1e-15));
}

TEST_CASE("evaluate: degenerate entropies") {
  const auto both = evaluate(labels({0, 0, 0}), labels({5, 5, 5}));
  CHECK(both.nmi == 1.0);
  CHECK(both.precision == 1.0);
  const auto one = evaluate(labels({0, 0, 0}), labels({0, 1, 1}));
  CHECK(one.nmi == 0.0);
  const auto none = evaluate(labels({0, 1, 2}), labels({0, 1, 2}));
  CHECK(none.precision == 1.0);
  CHECK(none.rand_index == 1.0);
}

TEST_CASE("evaluate: geometric normalization") {
  const auto m = evaluate(labels({1, 1, 2, 2}), labels({1, 1, 1, 2}), NmiNorm::geometric);
  const std::vector<int> a{1, 1, 2, 2}, b{1, 1, 1, 2};
  const double arith = oracle::direct_nmi(a, b);
  const double ha = std::log(2.0);
  const double hb = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  const double info = arith * (ha + hb) / 2.0;
  CHECK(m.nmi == doctest::Approx(info / std::sqrt(ha * hb)).epsilon(1e-12));
}

TEST_CASE("metric properties on random label pairs") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 50);
    const auto a = random_labels(gen, n, 1 + trial % 6);
    const auto b = random_labels(gen, n, 1 + (trial / 6) % 6);
    const auto m = evaluate(labels(a), labels(b));
    for (double v : {m.rand_index, m.precision, m.purity, m.nmi}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
    CHECK(m.nmi == doctest::Approx(oracle::direct_nmi(a, b)).epsilon(1e-10));

    const auto r = evaluate(labels(relabel(a, gen)), labels(relabel(b, gen)));
    CHECK(r.rand_index == m.rand_index);
    CHECK(r.precision == m.precision);
    CHECK(r.purity == m.purity);
    CHECK(r.nmi == doctest::Approx(m.nmi).epsilon(1e-12));

    const auto s = evaluate(labels(b), labels(a));
    CHECK(s.rand_index == m.rand_index);
    CHECK(s.nmi == doctest::Approx(m.nmi).epsilon(1e-12));

    const auto self = evaluate(labels(a), labels(relabel(a, gen)));
    CHECK(self.rand_index == 1.0);
    CHECK(self.precision == 1.0);
    CHECK(self.purity == 1.0);
    CHECK(self.nmi == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("kmeans: two separated blobs") {
  std::mt19937_64 gen(43);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(100, 2);
  for (Eigen::Index i = 0; i < 100; ++i) {
    const double cx = i < 50 ? 0.0 : 10.0;
    x(i, 0) = cx + z(gen);
    x(i, 1) = z(gen);
  }
  const auto r = kmeans(x, 2);
  for (Eigen::Index i = 1; i < 100; ++i) CHECK((r.labels[static_cast<std::size_t>(i)] == r.labels[0]) == (i < 50));
}

TEST_CASE("kmeans: c = N and c = 1") {
  Eigen::MatrixXd x(5, 1);
  x << 0, 1, 3, 7, 15;
  const auto all = kmeans(x, 5);
  CHECK(all.wcss == 0.0);
  CHECK(all.labels.num_clusters() == 5);
  std::set<std::size_t> seen(all.labels.values().begin(), all.labels.values().end());
  CHECK(seen.size() == 5);
  const auto one = kmeans(x, 1);
  for (std::size_t i = 0; i < 5; ++i) CHECK(one.labels[i] == 0);
  CHECK_THROWS_AS(kmeans(x, 0), InputError);
  CHECK_THROWS_AS(kmeans(x, 6), InputError);
}

TEST_CASE("kmeans: wcss is consistent and determinism holds across thread counts") {
  std::mt19937_64 gen(44);
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(300, 3);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = z(gen) + (i % 5);
  set_num_threads(1);
  const auto a = kmeans(x, 4);
  set_num_threads(4);
  const auto b = kmeans(x, 4);
  set_num_threads(0);
  CHECK(a.labels == b.labels);
  CHECK(a.wcss == b.wcss);
  CHECK(a.best_restart == b.best_restart);

  double wcss = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    wcss += (x.row(i) - a.centroids.row(static_cast<Eigen::Index>(a.labels[static_cast<std::size_t>(i)]))).squaredNorm();
  }
  CHECK(a.wcss == doctest::Approx(wcss).epsilon(1e-12));

  KMeansOptions other;
  other.seed = 7;
  const auto c = kmeans(x, 4, other);
  CHECK(c.wcss >= 0.0);
}

TEST_CASE("kmeans: duplicate points never leave a cluster empty") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(6, 2);
  x(5, 0) = 1.0;
  const auto r = kmeans(x, 3);
  std::vector<int> count(3, 0);
  for (std::size_t i = 0; i < 6; ++i) ++count[r.labels[i]];
  for (int c : count) CHECK(c > 0);
}
