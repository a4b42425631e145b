#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace spreadfft {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;
using CVec2 = std::array<cplx, 2>;

template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;

using Mat2 = Matrix<2>;
using Mat3 = Matrix<3>;
using Mat4 = Matrix<4>;

/// Lower-triangular Cholesky factor of a symmetric matrix. Pivots in
/// [-tol, 0] are treated as zero (rank-deficient but PSD); a pivot below
/// -tol returns false and leaves `out` unspecified.
template <std::size_t N>
bool cholesky_lower(const Matrix<N>& a, Matrix<N>& out, double tol = 1e-12) {
  out = {};
  for (std::size_t j = 0; j < N; ++j) {
    double pivot = a[j][j];
    for (std::size_t k = 0; k < j; ++k) pivot -= out[j][k] * out[j][k];
    if (pivot < -tol) return false;
    const double d = pivot > 0.0 ? std::sqrt(pivot) : 0.0;
    out[j][j] = d;
    for (std::size_t i = j + 1; i < N; ++i) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= out[i][k] * out[j][k];
      out[i][j] = d > 0.0 ? s / d : 0.0;
    }
  }
  return true;
}

}  // namespace spreadfft
