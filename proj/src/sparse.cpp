#include "fockmult/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "fockmult/error.hpp"

namespace fockmult {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, std::vector<Column> columns) {
  SparseMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    Column& col = columns[j];
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < col.size();) {
      const std::size_t row = col[k].first;
      if (row >= rows) throw Error(ErrorCode::Shape, "row index out of range");
      Complex sum{};
      for (; k < col.size() && col[k].first == row; ++k) sum += col[k].second;
      if (sum != Complex{}) {
        m.row_idx_.push_back(row);
        m.values_.push_back(sum);
      }
    }
    m.col_ptr_[j + 1] = m.values_.size();
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(std::size_t rows, std::size_t cols, std::span<const Complex> row_major) {
  if (row_major.size() != rows * cols) throw Error(ErrorCode::Shape, "dense data does not match the shape");
  std::vector<Column> columns(cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (row_major[i * cols + j] != Complex{}) columns[j].emplace_back(i, row_major[i * cols + j]);
  return from_columns(rows, std::move(columns));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Column> columns(n);
  for (std::size_t j = 0; j < n; ++j) columns[j].emplace_back(j, Complex(1.0));
  return from_columns(n, std::move(columns));
}

std::span<const std::size_t> SparseMatrix::column_rows(std::size_t j) const {
  return {row_idx_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
}

std::span<const Complex> SparseMatrix::column_values(std::size_t j) const {
  return {values_.data() + col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]};
}

Complex SparseMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw Error(ErrorCode::Shape, "entry index out of range");
  const auto rows = column_rows(j);
  const auto it = std::lower_bound(rows.begin(), rows.end(), i);
  if (it == rows.end() || *it != i) return {};
  return column_values(j)[static_cast<std::size_t>(it - rows.begin())];
}

void SparseMatrix::apply(std::span<const Complex> x, std::span<Complex> y) const {
  std::fill(y.begin(), y.end(), Complex{});
  for (std::size_t j = 0; j < cols_; ++j) {
    const Complex xj = x[j];
    if (xj == Complex{}) continue;
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) y[row_idx_[k]] += values_[k] * xj;
  }
}

void SparseMatrix::apply_adjoint(std::span<const Complex> x, std::span<Complex> y) const {
  for (std::size_t j = 0; j < cols_; ++j) {
    Complex sum{};
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) sum += std::conj(values_[k]) * x[row_idx_[k]];
    y[j] = sum;
  }
}

SparseMatrix SparseMatrix::adjoint() const {
  std::vector<Column> columns(rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k)
      columns[row_idx_[k]].emplace_back(j, std::conj(values_[k]));
  return from_columns(cols_, std::move(columns));
}

SparseMatrix SparseMatrix::conjugate() const {
  SparseMatrix m = *this;
  for (auto& v : m.values_) v = std::conj(v);
  return m;
}

SparseMatrix SparseMatrix::scaled(Complex s) const {
  if (s == Complex{}) return SparseMatrix(rows_, cols_);
  SparseMatrix m = *this;
  for (auto& v : m.values_) v *= s;
  return m;
}

std::vector<Complex> SparseMatrix::to_dense() const {
  std::vector<Complex> out(rows_ * cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) out[row_idx_[k] * cols_ + j] = values_[k];
  return out;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::Shape, "matrix product shape mismatch");
  std::vector<Complex> acc(a.rows());
  std::vector<bool> touched(a.rows(), false);
  std::vector<std::size_t> hit;
  std::vector<SparseMatrix::Column> columns(b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    hit.clear();
    const auto brows = b.column_rows(j);
    const auto bvals = b.column_values(j);
    for (std::size_t t = 0; t < brows.size(); ++t) {
      const auto arows = a.column_rows(brows[t]);
      const auto avals = a.column_values(brows[t]);
      for (std::size_t s = 0; s < arows.size(); ++s) {
        if (!touched[arows[s]]) {
          touched[arows[s]] = true;
          hit.push_back(arows[s]);
        }
        acc[arows[s]] += avals[s] * bvals[t];
      }
    }
    for (std::size_t r : hit) {
      columns[j].emplace_back(r, acc[r]);
      acc[r] = Complex{};
      touched[r] = false;
    }
  }
  return SparseMatrix::from_columns(a.rows(), std::move(columns));
}

namespace {

SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, double sign) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::Shape, "matrix sum shape mismatch");
  std::vector<SparseMatrix::Column> columns(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const auto ar = a.column_rows(j);
    const auto av = a.column_values(j);
    const auto br = b.column_rows(j);
    const auto bv = b.column_values(j);
    for (std::size_t k = 0; k < ar.size(); ++k) columns[j].emplace_back(ar[k], av[k]);
    for (std::size_t k = 0; k < br.size(); ++k) columns[j].emplace_back(br[k], sign * bv[k]);
  }
  return SparseMatrix::from_columns(a.rows(), std::move(columns));
}

}  // namespace

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, 1.0); }
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, -1.0); }

double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) { return (a - b).max_abs(); }

}  // namespace fockmult
