#pragma once

#include "papr/common.hpp"
#include "papr/ofdm.hpp"

namespace papr {

// Threshold-and-iteration settings shared by the clipping-family schemes.
// a_db is the clipping ratio in dB relative to the RMS amplitude of the
// unprocessed oversampled signal; the linear threshold is evaluated per
// symbol from that symbol's own RMS.
struct ClipConfig {
  double a_db = 6.0;
  int v_iterations = 1;
};

double clip_threshold(double rms, double a_db);

// Soft envelope limiter: samples with |s| <= a pass through bit-identically,
// everything else keeps its phase and has its magnitude set to a.
TimeSignal clip(const TimeSignal& signal, double a_linear);

// Repeated clipping and filtering: V rounds of clip followed by the in-band
// projection. The threshold is fixed once from the unprocessed signal.
TimeSignal rcf(const Ofdm& ofdm, const FreqSymbol& symbol, const ClipConfig& cfg);

// Noise-scaling factor for the one-shot simplified scheme. With
// adaptive == false the fixed nonnegative `beta` scales the in-band clipping
// noise as-is: 0 leaves the signal untouched, 1 reproduces a single
// clip-and-filter round, larger values extrapolate deeper iteration counts.
// With adaptive == true, `beta` is ignored and each symbol gets the scale in
// [0, kScfBetaSearchMax] that minimizes that symbol's peak magnitude.
struct ScfFactor {
  double beta = 1.0;
  bool adaptive = false;
};

// Upper end of the adaptive scale search. Past this point the scaled noise
// dominates the signal and peaks regrow for every operating threshold of
// interest, so a wider bracket only costs search resolution.
inline constexpr double kScfBetaSearchMax = 4.0;

// Golden-section iterations used by the peak-minimizing scale search. Fixed
// so the evaluation count (kScfGoldenIters + 2) is deterministic and the
// operation accounting can mirror it exactly.
inline constexpr int kScfGoldenIters = 18;

// Default fixed factor for a given operating point. The values are
// calibrated so the one-shot scheme reproduces the distortion level of
// deeply iterated clipping at each threshold (the calibration sweep and the
// resulting knots are documented in the README); linear in a_db between
// knots, clamped outside. v_iterations is accepted for interface symmetry.
ScfFactor scf_beta(double a_db, int v_iterations);

// Simplified clip-and-filter: one clip, one transform of the clipping noise,
// one scaled in-band subtraction. Exactly three JN-point transforms total.
// When `beta_used` is non-null it receives the scale actually applied
// (factor.beta in fixed mode, the per-symbol search result in adaptive mode).
TimeSignal scf(const Ofdm& ofdm, const FreqSymbol& symbol, const ClipConfig& cfg,
               ScfFactor factor, double* beta_used = nullptr);

}  // namespace papr
