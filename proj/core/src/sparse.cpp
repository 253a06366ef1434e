#include "manigraph/sparse.hpp"

#include "manigraph/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace manigraph {

namespace {

void check_symmetric(const SparseSymMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto cols = m.row_columns(i);
    const auto vals = m.row_values(i);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      if (cols[p] <= i) continue;
      if (m.at(cols[p], i) != vals[p]) {
        throw InputError("matrix is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(cols[p]) + ")");
      }
    }
  }
}

}  // namespace

SparseSymMatrix SparseSymMatrix::from_triplets(std::size_t n, std::span<const Triplet> entries) {
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const auto& t : sorted) {
    if (t.row >= n || t.col >= n) throw InputError("triplet outside matrix bounds");
  }
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<std::size_t> columns;
  std::vector<double> values;
  for (std::size_t p = 0; p < sorted.size();) {
    const auto& t = sorted[p];
    double v = 0.0;
    std::size_t q = p;
    for (; q < sorted.size() && sorted[q].row == t.row && sorted[q].col == t.col; ++q) v += sorted[q].value;
    columns.push_back(t.col);
    values.push_back(v);
    ++offsets[t.row + 1];
    p = q;
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  return from_csr(n, std::move(offsets), std::move(columns), std::move(values));
}

SparseSymMatrix SparseSymMatrix::from_csr(std::size_t n, std::vector<std::size_t> offsets,
                                          std::vector<std::size_t> columns, std::vector<double> values) {
  if (offsets.size() != n + 1 || offsets.front() != 0 || offsets.back() != columns.size() ||
      columns.size() != values.size()) {
    throw InputError("inconsistent CSR arrays");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (offsets[i] > offsets[i + 1]) throw InputError("CSR offsets not monotone");
    for (std::size_t p = offsets[i]; p < offsets[i + 1]; ++p) {
      if (columns[p] >= n) throw InputError("CSR column out of range");
      if (p > offsets[i] && columns[p] <= columns[p - 1]) throw InputError("CSR columns not increasing");
    }
  }
  SparseSymMatrix m;
  m.n_ = n;
  m.offsets_ = std::move(offsets);
  m.columns_ = std::move(columns);
  m.values_ = std::move(values);
  check_symmetric(m);
  return m;
}

SparseSymMatrix SparseSymMatrix::identity(std::size_t n, double scale) {
  std::vector<std::size_t> offsets(n + 1);
  std::vector<std::size_t> columns(n);
  for (std::size_t i = 0; i <= n; ++i) offsets[i] = i;
  for (std::size_t i = 0; i < n; ++i) columns[i] = i;
  return from_csr(n, std::move(offsets), std::move(columns), std::vector<double>(n, scale));
}

double SparseSymMatrix::at(std::size_t i, std::size_t j) const {
  const auto cols = row_columns(i);
  const auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

double SparseSymMatrix::disc_radius(std::size_t i) const {
  const auto cols = row_columns(i);
  const auto vals = row_values(i);
  double r = 0.0;
  for (std::size_t p = 0; p < cols.size(); ++p) {
    if (cols[p] != i) r += std::abs(vals[p]);
  }
  return r;
}

double SparseSymMatrix::disc_left_end(std::size_t i) const { return disc_center(i) - disc_radius(i); }

double SparseSymMatrix::min_disc_left_end() const {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i) lo = std::min(lo, disc_left_end(i));
  return n_ == 0 ? 0.0 : lo;
}

double SparseSymMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (double v : row_values(i)) s += v;
  return s;
}

double SparseSymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

double SparseSymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n_ || y.size() != n_) throw InputError("matvec size mismatch");
  const auto n = static_cast<long long>(n_);
#pragma omp parallel for schedule(static) if (n_ > 4096)
  for (long long si = 0; si < n; ++si) {
    const auto i = static_cast<std::size_t>(si);
    double s = 0.0;
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) s += values_[p] * x[columns_[p]];
    y[i] = s;
  }
}

std::vector<double> SparseSymMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

Eigen::MatrixXd SparseSymMatrix::multiply(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.rows()) != n_) throw InputError("block matvec size mismatch");
  Eigen::MatrixXd y(x.rows(), x.cols());
  const auto n = static_cast<long long>(n_);
  const Eigen::Index k = x.cols();
#pragma omp parallel for schedule(static) if (n_ > 2048)
  for (long long si = 0; si < n; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (Eigen::Index c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
        s += values_[p] * x(static_cast<Eigen::Index>(columns_[p]), c);
      }
      y(static_cast<Eigen::Index>(i), c) = s;
    }
  }
  return y;
}

double SparseSymMatrix::quadratic_form(std::span<const double> x) const {
  const auto y = multiply(x);
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += x[i] * y[i];
  return s;
}

SparseSymMatrix SparseSymMatrix::combine(double a, const SparseSymMatrix& other, double b,
                                         double shift) const {
  if (other.n_ != n_) throw InputError("dimension mismatch in matrix sum");
  std::vector<std::size_t> offsets(n_ + 1, 0);
  std::vector<std::size_t> columns;
  std::vector<double> values;
  columns.reserve(nnz() + other.nnz() + n_);
  values.reserve(nnz() + other.nnz() + n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto ca = row_columns(i);
    const auto va = row_values(i);
    const auto cb = other.row_columns(i);
    const auto vb = other.row_values(i);
    std::size_t p = 0;
    std::size_t q = 0;
    bool diag_done = false;
    while (p < ca.size() || q < cb.size() || !diag_done) {
      const std::size_t next_a = p < ca.size() ? ca[p] : n_;
      const std::size_t next_b = q < cb.size() ? cb[q] : n_;
      std::size_t col = std::min(next_a, next_b);
      if (!diag_done && i <= col) col = i;
      double v = 0.0;
      if (next_a == col) v += a * va[p++];
      if (next_b == col) v += b * vb[q++];
      if (col == i) {
        v += shift;
        diag_done = true;
      }
      columns.push_back(col);
      values.push_back(v);
    }
    offsets[i + 1] = columns.size();
  }
  SparseSymMatrix m;
  m.n_ = n_;
  m.offsets_ = std::move(offsets);
  m.columns_ = std::move(columns);
  m.values_ = std::move(values);
  return m;
}

Eigen::MatrixXd SparseSymMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    const auto cols = row_columns(i);
    const auto vals = row_values(i);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[p])) = vals[p];
    }
  }
  return d;
}

}  // namespace manigraph
