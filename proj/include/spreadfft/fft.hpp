#pragma once

#include <cstddef>
#include <vector>

#include "spreadfft/types.hpp"

namespace spreadfft {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n, cplx fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }
  cplx& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }
  cplx* row(std::size_t r) { return data_.data() + r * n_; }
  const std::vector<cplx>& data() const { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

inline bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place radix-2 transform of a contiguous or strided sequence:
/// x[l] <- sum_k exp(sign 2 pi i k l / n) x[k]  (unnormalised).
void fft_radix2(cplx* data, std::size_t n, std::size_t stride, int sign);

/// (1/n^2) sum_k exp(sign 2 pi i k.l / n) m(k) for every l. `sign` is +1 or -1.
/// Rows and columns are transformed in parallel over `threads` workers; the
/// result does not depend on the thread count.
ComplexMatrix inverse_dft2(ComplexMatrix m, int sign, unsigned threads = 1);

}  // namespace spreadfft
