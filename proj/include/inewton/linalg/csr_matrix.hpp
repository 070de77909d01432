#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "inewton/error.hpp"
#include "inewton/linalg/dense_vector.hpp"

namespace inewton {

/// One (row, col, value) entry used to assemble a CsrMatrix.
struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within each row; immutable after construction.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Takes ownership of raw CSR arrays and validates them.
  CsrMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> row_offsets,
            std::vector<std::size_t> col_indices, std::vector<double> values)
      : n_rows_(n_rows),
        n_cols_(n_cols),
        row_offsets_(std::move(row_offsets)),
        col_indices_(std::move(col_indices)),
        values_(std::move(values)) {
    validate();
  }

  /// Assembles from unordered triplets; duplicate (row, col) entries are summed.
  static CsrMatrix from_triplets(std::size_t n_rows, std::size_t n_cols,
                                 std::vector<Triplet> entries) {
    for (const auto& t : entries) {
      if (t.row >= n_rows || t.col >= n_cols) {
        throw DimensionMismatch("csr: triplet (" + std::to_string(t.row) + ", " +
                                std::to_string(t.col) + ") outside " + std::to_string(n_rows) +
                                "x" + std::to_string(n_cols));
      }
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    std::vector<std::size_t> offsets(n_rows + 1, 0);
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    cols.reserve(entries.size());
    vals.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& t = entries[k];
      if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
        vals.back() += t.value;
        continue;
      }
      cols.push_back(t.col);
      vals.push_back(t.value);
      ++offsets[t.row + 1];
    }
    for (std::size_t i = 0; i < n_rows; ++i) offsets[i + 1] += offsets[i];
    return CsrMatrix(n_rows, n_cols, std::move(offsets), std::move(cols), std::move(vals));
  }

  /// Row-major dense input; exact zeros are not stored.
  static CsrMatrix from_dense(std::size_t n_rows, std::size_t n_cols,
                              const std::vector<double>& dense) {
    if (dense.size() != n_rows * n_cols) throw DimensionMismatch("csr: dense size mismatch");
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < n_rows; ++i) {
      for (std::size_t j = 0; j < n_cols; ++j) {
        const double v = dense[i * n_cols + j];
        if (v != 0.0) entries.push_back({i, j, v});
      }
    }
    return from_triplets(n_rows, n_cols, std::move(entries));
  }

  static CsrMatrix identity(std::size_t n) {
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < n; ++i) entries.push_back({i, i, 1.0});
    return from_triplets(n, n, std::move(entries));
  }

  [[nodiscard]] std::size_t rows() const noexcept { return n_rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return n_cols_; }
  [[nodiscard]] std::size_t nnz() const noexcept { return values_.size(); }
  [[nodiscard]] bool square() const noexcept { return n_rows_ == n_cols_; }

  [[nodiscard]] const std::vector<std::size_t>& row_offsets() const noexcept { return row_offsets_; }
  [[nodiscard]] const std::vector<std::size_t>& col_indices() const noexcept { return col_indices_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  /// Entry lookup by binary search; zero when not stored.
  [[nodiscard]] double at(std::size_t i, std::size_t j) const {
    const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
    const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return values_[static_cast<std::size_t>(it - col_indices_.begin())];
  }

  /// y = A x
  void multiply(const DenseVector& x, DenseVector& y) const {
    if (x.size() != n_cols_) {
      throw DimensionMismatch("spmv: matrix has " + std::to_string(n_cols_) +
                              " columns, vector has length " + std::to_string(x.size()));
    }
    if (y.size() != n_rows_) y = DenseVector(n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) {
      double s = 0.0;
      for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
        s += values_[k] * x[col_indices_[k]];
      }
      y[i] = s;
    }
  }

 private:
  void validate() const {
    if (n_rows_ == 0 || n_cols_ == 0) throw DimensionMismatch("csr: empty dimension");
    if (row_offsets_.size() != n_rows_ + 1) throw DimensionMismatch("csr: row_offsets length");
    if (row_offsets_.front() != 0 || row_offsets_.back() != col_indices_.size() ||
        col_indices_.size() != values_.size()) {
      throw DimensionMismatch("csr: inconsistent nnz");
    }
    for (std::size_t i = 0; i < n_rows_; ++i) {
      if (row_offsets_[i] > row_offsets_[i + 1]) throw DimensionMismatch("csr: row_offsets decrease");
      for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
        if (col_indices_[k] >= n_cols_) throw DimensionMismatch("csr: column index out of range");
        if (k > row_offsets_[i] && col_indices_[k] <= col_indices_[k - 1]) {
          throw DimensionMismatch("csr: columns not strictly increasing in row " +
                                  std::to_string(i));
        }
      }
    }
  }

  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

[[nodiscard]] inline DenseVector spmv(const CsrMatrix& a, const DenseVector& x) {
  DenseVector y(a.rows());
  a.multiply(x, y);
  return y;
}

}  // namespace inewton
