#pragma once

#include <cstdint>
#include <vector>

#include "papr/common.hpp"
#include "papr/ofdm.hpp"

namespace papr {

// Empirical complementary CDF of per-symbol PAPR samples over a fixed
// threshold grid. probabilities[i] is the fraction of samples strictly above
// thresholds_db[i]; nonincreasing by construction.
struct CcdfCurve {
  std::vector<double> thresholds_db;
  std::vector<double> probabilities;
  long long n_symbols = 0;
};

// Uniform grid covering [min - margin, max + margin] of the samples.
std::vector<double> ccdf_grid(const std::vector<double>& samples_db, double step_db = 0.02);

CcdfCurve ccdf_estimate(const std::vector<double>& samples_db,
                        const std::vector<double>& grid_db);

// Threshold (dB) where the CCDF crosses probability p, interpolating
// linearly in (dB, log10 p). Throws std::out_of_range when p lies outside
// the observed support (caller should raise n_symbols).
double papr_at_ccdf(const CcdfCurve& curve, double p);

// In-band signal-to-distortion accumulator: sums reference-bin energy and
// error-bin energy across symbols, so the final ratio weights every symbol
// by its actual energy. Merging partial accumulators is associative.
struct SdrAccumulator {
  double signal_energy = 0.0;
  double distortion_energy = 0.0;

  void add(const FreqSymbol& reference, const FreqSymbol& processed);
  void merge(const SdrAccumulator& o) {
    signal_energy += o.signal_energy;
    distortion_energy += o.distortion_energy;
  }
  // +inf when no distortion was accumulated.
  double sdr_db() const;
};

struct BerPoint {
  double snr_db = 0.0;  // per-bit Eb/N0
  double ber = 0.0;
  long long bits_tested = 0;
  long long bit_errors = 0;
};

}  // namespace papr
