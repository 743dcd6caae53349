#pragma once

#include <cstdint>
#include <vector>

#include "papr/common.hpp"
#include "papr/fft.hpp"

namespace papr {

// Frequency-domain symbol on the oversampled JN-point grid. Data occupies the
// spectrally centered band (low bins 0..N/2-1 plus high bins JN-N/2..JN-1);
// everything in between is the oversampling guard and stays zero.
struct FreqSymbol {
  std::vector<cplx> bins;
  int n_carriers = 0;
  int oversample = 1;

  int size() const { return static_cast<int>(bins.size()); }
};

struct PowerStats {
  double mean_power = 0.0;  // average of |s_n|^2
  double peak_power = 0.0;  // max of |s_n|^2
};

PowerStats power_stats(const TimeSignal& signal);
double mean_power(const TimeSignal& signal);
double rms_amplitude(const TimeSignal& signal);

// Peak-to-average power ratio in dB against the signal's own empirical mean.
// Throws on an all-zero signal (PAPR undefined).
double papr_db(const TimeSignal& signal);

// Rescales by a positive real factor so the mean power equals target_power.
TimeSignal normalize_power(const TimeSignal& signal, double target_power);

// Gray-mapped 16QAM with unit average power. Per axis the two bits map
// 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3 (scaled by 1/sqrt(10)); the first
// two bits of a nibble drive I, the last two drive Q.
cplx qam16_point(unsigned nibble);
unsigned qam16_demap(cplx received);

// Transform engine for one (n_carriers, oversample) geometry. Immutable after
// construction and safe to share across threads.
class Ofdm {
 public:
  Ofdm(int n_carriers, int oversample);

  int n_carriers() const { return n_; }
  int oversample() const { return j_; }
  int jn() const { return jn_; }

  // True for bins that carry data (the centered band).
  bool in_band(int bin) const { return bin < n_ / 2 || bin >= jn_ - n_ / 2; }

  // bits.size() must be exactly 4 * n_carriers.
  FreqSymbol map_qam16(const std::vector<std::uint8_t>& bits) const;

  // s_n = (1/sqrt(N)) * sum_k X_k e^{+j 2 pi n k / JN}; exact inverse pair.
  TimeSignal oversampled_ifft(const FreqSymbol& symbol) const;
  FreqSymbol forward_fft(const TimeSignal& signal) const;

  // Transform, zero the out-of-band bins, transform back.
  TimeSignal lowpass_filter(const TimeSignal& signal) const;

 private:
  int n_;
  int j_;
  int jn_;
  Fft fft_;
};

}  // namespace papr
