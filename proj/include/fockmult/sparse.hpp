#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace fockmult {

using Complex = std::complex<double>;

/// Compressed sparse column complex matrix. Row indices are sorted inside each
/// column and exact zeros are not stored.
class SparseMatrix {
 public:
  using Column = std::vector<std::pair<std::size_t, Complex>>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  /// Builds from per-column (row, value) lists; duplicates are summed.
  static SparseMatrix from_columns(std::size_t rows, std::vector<Column> columns);
  static SparseMatrix from_dense(std::size_t rows, std::size_t cols, std::span<const Complex> row_major);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> column_rows(std::size_t j) const;
  std::span<const Complex> column_values(std::size_t j) const;
  Complex entry(std::size_t i, std::size_t j) const;

  /// y = A x
  void apply(std::span<const Complex> x, std::span<Complex> y) const;
  /// y = A^H x
  void apply_adjoint(std::span<const Complex> x, std::span<Complex> y) const;

  SparseMatrix adjoint() const;
  SparseMatrix conjugate() const;
  SparseMatrix scaled(Complex s) const;
  std::vector<Complex> to_dense() const;  // row-major

  double max_abs() const;
  bool operator==(const SparseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<std::size_t> row_idx_;
  std::vector<Complex> values_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);

/// Largest entrywise |a - b|; shapes must agree.
double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace fockmult
