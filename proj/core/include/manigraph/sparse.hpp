#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace manigraph {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Symmetric matrix in CSR form with strictly increasing columns per row.
///
/// Both triangles are stored. Construction sums duplicate coordinates and
/// rejects structural or numerical asymmetry.
class SparseSymMatrix {
public:
  SparseSymMatrix() = default;

  /// Throws InputError on out-of-range coordinates or when the summed
  /// entries are not exactly symmetric.
  static SparseSymMatrix from_triplets(std::size_t n, std::span<const Triplet> entries);

  /// Adopts CSR arrays. Columns must already be sorted and unique per row;
  /// symmetry is verified.
  static SparseSymMatrix from_csr(std::size_t n, std::vector<std::size_t> offsets,
                                  std::vector<std::size_t> columns, std::vector<double> values);

  static SparseSymMatrix identity(std::size_t n, double scale = 1.0);

  std::size_t size() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_columns(std::size_t i) const {
    return {columns_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  double at(std::size_t i, std::size_t j) const;
  double diagonal(std::size_t i) const { return at(i, i); }
  std::vector<double> diagonal() const;

  /// Gershgorin center c_i = M_ii.
  double disc_center(std::size_t i) const { return at(i, i); }
  /// Gershgorin radius r_i = sum_{j != i} |M_ij|.
  double disc_radius(std::size_t i) const;
  /// c_i - r_i.
  double disc_left_end(std::size_t i) const;
  double min_disc_left_end() const;
  double row_sum(std::size_t i) const;

  double trace() const;
  double frobenius_norm() const;

  /// y = M x. Row-parallel; the result is independent of the thread count.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;
  /// Y = M X for a dense block (column-major).
  Eigen::MatrixXd multiply(const Eigen::MatrixXd& x) const;

  /// x^T M x.
  double quadratic_form(std::span<const double> x) const;

  /// Entry-wise a*this + b*other + shift*I on the merged sparsity pattern.
  SparseSymMatrix combine(double a, const SparseSymMatrix& other, double b, double shift) const;

  Eigen::MatrixXd to_dense() const;

  friend bool operator==(const SparseSymMatrix&, const SparseSymMatrix&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> columns_;
  std::vector<double> values_;
};

}  // namespace manigraph
