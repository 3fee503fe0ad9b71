#pragma once

// Dense kernels over row-major storage. Summation order is fixed, so results
// are reproducible bit-for-bit for a given build.

#include <cstddef>
#include <span>

namespace hdvar::linalg {

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t m = a.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t j = 0;
  for (; j + 4 <= m; j += 4) {
    s0 += a[j] * b[j];
    s1 += a[j + 1] * b[j + 1];
    s2 += a[j + 2] * b[j + 2];
    s3 += a[j + 3] * b[j + 3];
  }
  for (; j < m; ++j) s0 += a[j] * b[j];
  return (s0 + s1) + (s2 + s3);
}

inline double squared_norm(std::span<const double> a) noexcept { return dot(a, a); }

/// out = A x, A is rows x cols row-major.
inline void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
                 std::span<const double> x, std::span<double> out) noexcept {
  for (std::size_t i = 0; i < rows; ++i) out[i] = dot(a.subspan(i * cols, cols), x);
}

/// out = A^T y, A is rows x cols row-major.
inline void gemv_transposed(std::span<const double> a, std::size_t rows,
                            std::size_t cols, std::span<const double> y,
                            std::span<double> out) noexcept {
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double yi = y[i];
    const double* row = a.data() + i * cols;
    double* o = out.data();
    for (std::size_t j = 0; j < cols; ++j) o[j] += yi * row[j];
  }
}

}  // namespace hdvar::linalg
