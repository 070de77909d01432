#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "inewton/error.hpp"
#include "inewton/linalg/csr_matrix.hpp"
#include "inewton/linalg/dense_vector.hpp"

namespace inewton {

/// Zero fill-in incomplete LU factors stored on the pattern of the source
/// matrix. The strictly lower part holds L (unit diagonal implied), the
/// diagonal and upper part hold U.
class Ilu0Factors {
 public:
  Ilu0Factors(CsrMatrix lu, std::vector<std::size_t> diag_pos)
      : lu_(std::move(lu)), diag_pos_(std::move(diag_pos)) {}

  [[nodiscard]] std::size_t size() const noexcept { return lu_.rows(); }
  [[nodiscard]] const CsrMatrix& combined() const noexcept { return lu_; }

  [[nodiscard]] double lower(std::size_t i, std::size_t j) const {
    if (i == j) return 1.0;
    return i > j ? lu_.at(i, j) : 0.0;
  }
  [[nodiscard]] double upper(std::size_t i, std::size_t j) const {
    return i <= j ? lu_.at(i, j) : 0.0;
  }

  /// z with L U z = r.
  void apply(const DenseVector& r, DenseVector& z) const {
    const std::size_t n = lu_.rows();
    if (r.size() != n) throw DimensionMismatch("ilu0_apply: length mismatch");
    if (z.size() != n) z = DenseVector(n);
    const auto& off = lu_.row_offsets();
    const auto& col = lu_.col_indices();
    const auto& val = lu_.values();
    for (std::size_t i = 0; i < n; ++i) {
      double s = r[i];
      for (std::size_t k = off[i]; k < diag_pos_[i]; ++k) s -= val[k] * z[col[k]];
      z[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = z[ii];
      for (std::size_t k = diag_pos_[ii] + 1; k < off[ii + 1]; ++k) s -= val[k] * z[col[k]];
      z[ii] = s / val[diag_pos_[ii]];
    }
  }

 private:
  CsrMatrix lu_;
  std::vector<std::size_t> diag_pos_;
};

/// ILU(0) in the IKJ ordering. Throws SingularPivot naming the row when a
/// diagonal entry is structurally missing or becomes zero.
[[nodiscard]] inline Ilu0Factors ilu0_factorize(const CsrMatrix& a) {
  if (!a.square()) throw DimensionMismatch("ilu0: matrix not square");
  const std::size_t n = a.rows();
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  std::vector<double> val = a.values();

  std::vector<std::size_t> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = off[i];
    while (k < off[i + 1] && col[k] < i) ++k;
    if (k == off[i + 1] || col[k] != i) throw SingularPivot(i, "structurally missing diagonal");
    diag[i] = k;
  }

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> where(n, none);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) where[col[k]] = k;
    for (std::size_t k = off[i]; k < diag[i]; ++k) {
      const std::size_t piv_row = col[k];
      val[k] /= val[diag[piv_row]];
      const double lik = val[k];
      for (std::size_t kk = diag[piv_row] + 1; kk < off[piv_row + 1]; ++kk) {
        const std::size_t pos = where[col[kk]];
        if (pos != none) val[pos] -= lik * val[kk];
      }
    }
    const double d = val[diag[i]];
    if (d == 0.0 || !std::isfinite(d)) throw SingularPivot(i, "zero pivot");
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) where[col[k]] = none;
  }
  return Ilu0Factors(CsrMatrix(n, n, off, col, std::move(val)), std::move(diag));
}

[[nodiscard]] inline DenseVector ilu0_apply(const Ilu0Factors& f, const DenseVector& r) {
  DenseVector z(f.size());
  f.apply(r, z);
  return z;
}

}  // namespace inewton
