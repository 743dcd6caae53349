#include "papr/window.hpp"

#include <cmath>
#include <stdexcept>

namespace papr {

WindowFn make_window(int oversample, int n_s) {
  if (oversample < 1) {
    throw std::invalid_argument("make_window: oversample factor must be >= 1");
  }
  if (n_s < 2 || n_s % 2 != 0) {
    throw std::invalid_argument("make_window: tap count must be even and >= 2");
  }
  WindowFn w;
  w.n_s = n_s;
  w.oversample = oversample;
  w.taps.resize(n_s);
  for (int i = 0; i < n_s; ++i) {
    int n = i - (n_s / 2 - 1);
    if (n == 0) {
      w.taps[i] = 1.0;
    } else {
      double x = M_PI * n / oversample;
      w.taps[i] = std::sin(x) / x;
    }
  }
  return w;
}

}  // namespace papr
