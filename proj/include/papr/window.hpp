#pragma once

#include <vector>

namespace papr {

// Truncated cancellation pulse, sampled on the oversampled grid. The shape is
// the band-limited impulse sinc(n / oversample): its spectrum is flat across
// the data band, so subtracting a scaled copy perturbs every data bin
// equally instead of concentrating distortion. Zeros fall on multiples of
// the oversampling factor; the truncation to n_s taps is what leaks energy
// out of band and drives the residual regrowth after filtering.
//
// Support is the n_s offsets [-n_s/2 + 1, n_s/2] around the peak, applied
// cyclically. Center tap is exactly 1.
struct WindowFn {
  std::vector<double> taps;
  int n_s = 0;
  int oversample = 1;

  int min_offset() const { return -n_s / 2 + 1; }
  int max_offset() const { return n_s / 2; }

  double at(int offset) const { return taps[offset + n_s / 2 - 1]; }
};

// n_s must be even and >= 2 (callers additionally bound it by the signal
// length at the point of use).
WindowFn make_window(int oversample, int n_s);

}  // namespace papr
