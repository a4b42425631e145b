#include "spreadfft/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "spreadfft/parallel.hpp"

namespace spreadfft {

namespace {

std::vector<cplx> twiddles(std::size_t n, int sign) {
  std::vector<cplx> w(n / 2);
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return w;
}

void radix2(cplx* data, std::size_t n, std::size_t stride, const std::vector<cplx>& w) {
  auto at = [&](std::size_t i) -> cplx& { return data[i * stride]; };
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(at(i), at(j));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx& a = at(start + k);
        cplx& b = at(start + k + half);
        const cplx t = w[k * step] * b;
        b = a - t;
        a += t;
      }
    }
  }
}

void transpose(ComplexMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) std::swap(m(r, c), m(c, r));
  }
}

}  // namespace

void fft_radix2(cplx* data, std::size_t n, std::size_t stride, int sign) {
  if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: length must be a power of two");
  radix2(data, n, stride, twiddles(n, sign));
}

ComplexMatrix inverse_dft2(ComplexMatrix m, int sign, unsigned threads) {
  const std::size_t n = m.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("inverse_dft2: size must be a power of two");
  if (sign != 1 && sign != -1) throw std::invalid_argument("inverse_dft2: sign must be +1 or -1");
  const std::vector<cplx> w = twiddles(n, sign);
  for (int pass = 0; pass < 2; ++pass) {
    parallel_for(n, threads, [&](std::size_t r) { radix2(m.row(r), n, 1, w); });
    transpose(m);
  }
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t r = 0; r < n; ++r) {
    cplx* row = m.row(r);
    for (std::size_t c = 0; c < n; ++c) row[c] *= scale;
  }
  return m;
}

}  // namespace spreadfft
