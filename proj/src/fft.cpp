#include "papr/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace papr {

Fft::Fft(int size) : size_(size) {
  if (size < 2 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("Fft: size must be a power of two >= 2");
  }
  log2_size_ = 0;
  while ((1 << log2_size_) < size) ++log2_size_;

  bit_rev_.resize(size);
  for (int i = 0; i < size; ++i) {
    int r = 0;
    for (int b = 0; b < log2_size_; ++b) r |= ((i >> b) & 1) << (log2_size_ - 1 - b);
    bit_rev_[i] = r;
  }

  twiddle_.resize(size / 2);
  for (int k = 0; k < size / 2; ++k) {
    double ang = -2.0 * M_PI * k / size;
    twiddle_[k] = cplx(std::cos(ang), std::sin(ang));
  }
}

void Fft::transform(std::vector<cplx>& x, bool inverse) const {
  if (static_cast<int>(x.size()) != size_) {
    throw std::invalid_argument("Fft: buffer length does not match plan size");
  }
  for (int i = 0; i < size_; ++i) {
    int j = bit_rev_[i];
    if (i < j) std::swap(x[i], x[j]);
  }
  for (int len = 2; len <= size_; len <<= 1) {
    int half = len / 2;
    int stride = size_ / len;
    for (int start = 0; start < size_; start += len) {
      for (int k = 0; k < half; ++k) {
        cplx w = twiddle_[k * stride];
        if (inverse) w = std::conj(w);
        cplx u = x[start + k];
        cplx v = x[start + k + half] * w;
        x[start + k] = u + v;
        x[start + k + half] = u - v;
      }
    }
  }
}

}  // namespace papr
