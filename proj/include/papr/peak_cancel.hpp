#pragma once

#include <cstdint>

#include "papr/common.hpp"
#include "papr/op_counter.hpp"
#include "papr/window.hpp"

namespace papr {

// Scaling coefficient that pulls a peak sample exactly onto the threshold:
// alpha = -(1 - a/|s|) * s, so s + alpha has magnitude a and unchanged
// phase. Requires |s| >= a (equality gives alpha = 0).
cplx scale_factor(cplx peak_sample, double a_linear);

// Mutable cancellation pass over one signal. iteration counts applied steps.
struct SpcState {
  TimeSignal signal;
  long long iteration = 0;
  double threshold = 0.0;
};

// Applies one cancellation at sample index m: adds alpha * window cyclically
// around m. Requires |signal[m]| > threshold. Samples outside the window
// support are untouched bit-for-bit. When ops is non-null, charges the
// per-cancellation cost (tap scaling, alpha, signal update).
void spc_step(SpcState& state, int m, const WindowFn& window, OpCounter* ops);

struct CancelReport {
  long long iterations_used = 0;
  long long peaks_cancelled = 0;
  OpCounter ops;
};

struct CancelResult {
  TimeSignal signal;
  CancelReport report;
};

// Parallel peak cancellation: detects every sample above the threshold in
// the input, then applies all scaled windows computed from the *original*
// sample values. Overlapping windows interact unchecked, which is exactly
// the regrowth failure mode the serial variants fix.
CancelResult cpc(const TimeSignal& signal, double a_linear, const WindowFn& window);

// Serial cancellation, largest peak first: repeatedly cancels the global
// argmax until no sample exceeds the threshold or i_max steps were applied.
// Deterministic: ties pick the lowest index.
CancelResult spc_algorithm1(const TimeSignal& signal, double a_linear,
                            const WindowFn& window, long long i_max);

// Serial cancellation in seeded random order: one pass over a random
// permutation of all sample indices, cancelling any index whose *current*
// value exceeds the threshold. Exactly JN magnitude checks.
CancelResult spc_algorithm2(const TimeSignal& signal, double a_linear,
                            const WindowFn& window, std::uint64_t rng_seed);

// Expected number of over-threshold samples for a complex Gaussian signal
// with RMS amplitude sigma: jn * exp(-a^2 / sigma^2).
double expected_peak_count(int jn, double a_linear, double sigma);

// Closed-form operation counts charged by the instrumented algorithms, as a
// function of the average cancellation rate. i_bar / p_bar are the mean
// applied steps per symbol. complexity_alg1 assumes i_bar >= 1 (the first
// search always scans all jn magnitudes).
OpCounts complexity_alg1(int jn, int n_s, double i_bar);
OpCounts complexity_alg2(int jn, int n_s, double p_bar);

}  // namespace papr
