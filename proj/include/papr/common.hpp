#pragma once

#include <complex>
#include <vector>

namespace papr {

using cplx = std::complex<double>;

// Discrete-time baseband signal at the oversampled rate.
using TimeSignal = std::vector<cplx>;

// Wraps an index onto [0, size) for cyclic addressing.
inline int wrap_index(int i, int size) {
  int r = i % size;
  return r < 0 ? r + size : r;
}

}  // namespace papr
