#pragma once

#include <vector>

#include "papr/common.hpp"

namespace papr {

// Iterative radix-2 transform with precomputed twiddles. Table construction
// happens once per size; the transform methods are const and safe to share
// across threads. Both directions are unnormalized:
//   forward:  X_k = sum_n x_n e^{-j 2 pi n k / S}
//   inverse:  x_n = sum_k X_k e^{+j 2 pi n k / S}
// Callers apply whatever scaling their convention needs.
class Fft {
 public:
  explicit Fft(int size);  // size must be a power of two >= 2

  int size() const { return size_; }

  void forward(std::vector<cplx>& x) const { transform(x, false); }
  void inverse(std::vector<cplx>& x) const { transform(x, true); }

 private:
  void transform(std::vector<cplx>& x, bool inverse) const;

  int size_;
  int log2_size_;
  std::vector<cplx> twiddle_;   // e^{-j 2 pi k / size}, k in [0, size/2)
  std::vector<int> bit_rev_;
};

}  // namespace papr
