#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "inewton/error.hpp"

namespace inewton {

/// Fixed-length vector of doubles. Holds iterates, updates and residuals.
class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t n, double value = 0.0) : values_(n, value) {}
  DenseVector(std::initializer_list<double> values) : values_(values) {}
  explicit DenseVector(std::vector<double> values) : values_(std::move(values)) {}

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  [[nodiscard]] std::span<double> span() noexcept { return values_; }
  [[nodiscard]] std::span<const double> span() const noexcept { return values_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  [[nodiscard]] bool all_finite() const noexcept {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  void fill(double value) noexcept {
    for (double& v : values_) v = value;
  }

  /// this += alpha * x
  DenseVector& axpy(double alpha, const DenseVector& x) {
    check_same_size(x, "axpy");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += alpha * x.values_[i];
    return *this;
  }

  DenseVector& operator*=(double alpha) noexcept {
    for (double& v : values_) v *= alpha;
    return *this;
  }
  DenseVector& operator+=(const DenseVector& x) { return axpy(1.0, x); }
  DenseVector& operator-=(const DenseVector& x) { return axpy(-1.0, x); }

  friend DenseVector operator+(DenseVector a, const DenseVector& b) { return a += b; }
  friend DenseVector operator-(DenseVector a, const DenseVector& b) { return a -= b; }
  friend DenseVector operator*(double alpha, DenseVector a) { return a *= alpha; }
  friend DenseVector operator-(DenseVector a) { return a *= -1.0; }

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

  void check_same_size(const DenseVector& x, const char* where) const {
    if (x.size() != size()) {
      throw DimensionMismatch(std::string(where) + ": length " + std::to_string(size()) +
                              " vs " + std::to_string(x.size()));
    }
  }

 private:
  std::vector<double> values_;
};

[[nodiscard]] inline double dot(const DenseVector& x, const DenseVector& y) {
  x.check_same_size(y, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

/// Euclidean norm. Scaled accumulation so that very large or very small
/// entries do not overflow or underflow the sum of squares.
[[nodiscard]] inline double norm2(const DenseVector& x) noexcept {
  double scale = 0.0;
  double ssq = 1.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double a = std::abs(v);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

}  // namespace inewton
