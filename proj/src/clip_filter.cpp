#include "papr/clip_filter.hpp"

#include <cmath>
#include <stdexcept>

namespace papr {

double clip_threshold(double rms, double a_db) {
  if (rms <= 0.0) throw std::invalid_argument("clip_threshold: rms must be positive");
  return rms * std::pow(10.0, a_db / 20.0);
}

TimeSignal clip(const TimeSignal& signal, double a_linear) {
  if (a_linear <= 0.0) throw std::invalid_argument("clip: threshold must be positive");
  TimeSignal out = signal;
  double a2 = a_linear * a_linear;
  for (cplx& s : out) {
    double p = std::norm(s);
    if (p <= a2) continue;
    s *= a_linear / std::sqrt(p);
    // Rounding can leave |s| an ulp above the threshold, which would make a
    // second clip rescale again; walk it down so clip is exactly idempotent.
    // Multiplying a positive normal double by (1 - 2^-53) strictly
    // decreases it, so this terminates after at most a few steps.
    while (std::norm(s) > a2) s *= 0x1.fffffffffffffp-1;
  }
  return out;
}

TimeSignal rcf(const Ofdm& ofdm, const FreqSymbol& symbol, const ClipConfig& cfg) {
  if (cfg.v_iterations < 1) {
    throw std::invalid_argument("rcf: iteration count must be >= 1");
  }
  TimeSignal s = ofdm.oversampled_ifft(symbol);
  double a = clip_threshold(rms_amplitude(s), cfg.a_db);
  for (int v = 0; v < cfg.v_iterations; ++v) {
    s = clip(s, a);
    s = ofdm.lowpass_filter(s);
  }
  return s;
}

namespace {

// Calibrated noise-scale knots (see README): chosen by sweeping the fixed
// scale at each threshold until the simulated distortion level matches the
// deeply iterated clip-and-filter chain the one-shot scheme stands in for.
// Linear in a_db between knots, clamped outside the calibrated range.
constexpr struct {
  double a_db;
  double beta;
} kBetaTable[] = {
    {4.00, 1.3880},
    {5.25, 1.5298},
    {5.50, 1.5716},
    {6.00, 1.6400},
};

}  // namespace

ScfFactor scf_beta(double a_db, int /*v_iterations*/) {
  constexpr int n = static_cast<int>(sizeof(kBetaTable) / sizeof(kBetaTable[0]));
  if (a_db <= kBetaTable[0].a_db) return {kBetaTable[0].beta};
  for (int i = 0; i + 1 < n; ++i) {
    if (a_db <= kBetaTable[i + 1].a_db) {
      double t = (a_db - kBetaTable[i].a_db) / (kBetaTable[i + 1].a_db - kBetaTable[i].a_db);
      return {kBetaTable[i].beta + t * (kBetaTable[i + 1].beta - kBetaTable[i].beta)};
    }
  }
  return {kBetaTable[n - 1].beta};
}

namespace {

// Peak-minimizing noise scale: |s_n + b v_n|^2 is an upward parabola in b
// for every sample, so the envelope max_n(...) is unimodal and a golden
// section search finds its minimizer.
double minimax_beta(const TimeSignal& s, const TimeSignal& v) {
  const std::size_t size = s.size();
  std::vector<double> p(size), q(size), r(size);
  for (std::size_t n = 0; n < size; ++n) {
    p[n] = std::norm(s[n]);
    q[n] = 2.0 * (s[n].real() * v[n].real() + s[n].imag() * v[n].imag());
    r[n] = std::norm(v[n]);
  }
  auto peak = [&](double b) {
    double m = 0.0;
    for (std::size_t n = 0; n < size; ++n) {
      double val = p[n] + b * (q[n] + b * r[n]);
      if (val > m) m = val;
    }
    return m;
  };
  constexpr double kGolden = 0.6180339887498949;
  double lo = 0.0, hi = kScfBetaSearchMax;
  double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
  double f1 = peak(x1), f2 = peak(x2);
  for (int it = 0; it < kScfGoldenIters; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = peak(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = peak(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TimeSignal scf(const Ofdm& ofdm, const FreqSymbol& symbol, const ClipConfig& cfg,
               ScfFactor factor, double* beta_used) {
  if (!factor.adaptive && !(factor.beta >= 0.0)) {
    throw std::invalid_argument("scf: fixed beta must be nonnegative");
  }
  TimeSignal s = ofdm.oversampled_ifft(symbol);
  double a = clip_threshold(rms_amplitude(s), cfg.a_db);
  TimeSignal clipped = clip(s, a);

  // Clipping correction c_n = clipped - s (zero wherever the limiter was
  // inactive). Only its in-band image is usable; beta = 1 applied to it
  // reproduces one clip-and-filter round exactly, larger values extrapolate
  // deeper iteration counts.
  TimeSignal noise(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) noise[i] = clipped[i] - s[i];
  FreqSymbol noise_bins = ofdm.forward_fft(noise);

  FreqSymbol shaped = noise_bins;
  for (int k = 0; k < ofdm.jn(); ++k) {
    if (!ofdm.in_band(k)) shaped.bins[k] = cplx(0.0, 0.0);
  }
  TimeSignal band_noise = ofdm.oversampled_ifft(shaped);

  double beta = factor.adaptive ? minimax_beta(s, band_noise) : factor.beta;
  if (beta_used != nullptr) *beta_used = beta;
  TimeSignal out(s.size());
  for (std::size_t n = 0; n < s.size(); ++n) out[n] = s[n] + beta * band_noise[n];
  return out;
}

}  // namespace papr
