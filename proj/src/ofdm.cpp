#include "papr/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace papr {

namespace {

constexpr double kQamScale = 0.31622776601683794;  // 1/sqrt(10)

// Gray code on one axis: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
double axis_level(unsigned two_bits) {
  switch (two_bits & 3u) {
    case 0u: return -3.0;
    case 1u: return -1.0;
    case 3u: return +1.0;
    default: return +3.0;  // 2u
  }
}

unsigned axis_bits(double value) {
  if (value < -2.0) return 0u;
  if (value < 0.0) return 1u;
  if (value < 2.0) return 3u;
  return 2u;
}

}  // namespace

PowerStats power_stats(const TimeSignal& signal) {
  if (signal.empty()) throw std::invalid_argument("power_stats: empty signal");
  PowerStats st;
  for (const cplx& s : signal) {
    double p = std::norm(s);
    st.mean_power += p;
    st.peak_power = std::max(st.peak_power, p);
  }
  st.mean_power /= static_cast<double>(signal.size());
  return st;
}

double mean_power(const TimeSignal& signal) { return power_stats(signal).mean_power; }

double rms_amplitude(const TimeSignal& signal) { return std::sqrt(mean_power(signal)); }

double papr_db(const TimeSignal& signal) {
  PowerStats st = power_stats(signal);
  if (st.peak_power <= 0.0) {
    throw std::domain_error("papr_db: undefined for an all-zero signal");
  }
  return 10.0 * std::log10(st.peak_power / st.mean_power);
}

TimeSignal normalize_power(const TimeSignal& signal, double target_power) {
  if (target_power <= 0.0) {
    throw std::invalid_argument("normalize_power: target power must be positive");
  }
  double mp = mean_power(signal);
  if (mp <= 0.0) {
    throw std::domain_error("normalize_power: cannot scale an all-zero signal");
  }
  double scale = std::sqrt(target_power / mp);
  TimeSignal out(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) out[i] = signal[i] * scale;
  return out;
}

cplx qam16_point(unsigned nibble) {
  double re = axis_level(nibble >> 2) * kQamScale;
  double im = axis_level(nibble) * kQamScale;
  return {re, im};
}

unsigned qam16_demap(cplx received) {
  unsigned hi = axis_bits(received.real() / kQamScale);
  unsigned lo = axis_bits(received.imag() / kQamScale);
  return (hi << 2) | lo;
}

Ofdm::Ofdm(int n_carriers, int oversample)
    : n_(n_carriers),
      j_(oversample),
      jn_(n_carriers * oversample),
      fft_(n_carriers * oversample) {
  if (n_ < 2 || n_ % 2 != 0) {
    throw std::invalid_argument("Ofdm: carrier count must be even and >= 2");
  }
  if (j_ < 1) throw std::invalid_argument("Ofdm: oversample factor must be >= 1");
  // fft_ already rejected a non power-of-two JN.
}

FreqSymbol Ofdm::map_qam16(const std::vector<std::uint8_t>& bits) const {
  if (bits.size() != static_cast<std::size_t>(4 * n_)) {
    throw std::invalid_argument("map_qam16: need exactly 4 bits per carrier");
  }
  FreqSymbol sym;
  sym.bins.assign(jn_, cplx(0.0, 0.0));
  sym.n_carriers = n_;
  sym.oversample = j_;
  for (int d = 0; d < n_; ++d) {
    unsigned nibble = (unsigned(bits[4 * d]) << 3) | (unsigned(bits[4 * d + 1]) << 2) |
                      (unsigned(bits[4 * d + 2]) << 1) | unsigned(bits[4 * d + 3]);
    int bin = d < n_ / 2 ? d : jn_ - n_ + d;
    sym.bins[bin] = qam16_point(nibble);
  }
  return sym;
}

TimeSignal Ofdm::oversampled_ifft(const FreqSymbol& symbol) const {
  if (symbol.size() != jn_) {
    throw std::invalid_argument("oversampled_ifft: symbol length does not match geometry");
  }
  TimeSignal x = symbol.bins;
  fft_.inverse(x);
  double scale = 1.0 / std::sqrt(static_cast<double>(n_));
  for (cplx& v : x) v *= scale;
  return x;
}

FreqSymbol Ofdm::forward_fft(const TimeSignal& signal) const {
  if (static_cast<int>(signal.size()) != jn_) {
    throw std::invalid_argument("forward_fft: signal length does not match geometry");
  }
  FreqSymbol sym;
  sym.bins = signal;
  sym.n_carriers = n_;
  sym.oversample = j_;
  fft_.forward(sym.bins);
  double scale = std::sqrt(static_cast<double>(n_)) / static_cast<double>(jn_);
  for (cplx& v : sym.bins) v *= scale;
  return sym;
}

TimeSignal Ofdm::lowpass_filter(const TimeSignal& signal) const {
  FreqSymbol sym = forward_fft(signal);
  for (int k = 0; k < jn_; ++k) {
    if (!in_band(k)) sym.bins[k] = cplx(0.0, 0.0);
  }
  return oversampled_ifft(sym);
}

}  // namespace papr
