#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "papr/clip_filter.hpp"
#include "papr/metrics.hpp"
#include "papr/ofdm.hpp"
#include "papr/op_counter.hpp"
#include "papr/peak_cancel.hpp"
#include "papr/window.hpp"

namespace papr {

enum class Scheme { kNone, kCpc, kAlg1, kAlg2, kRcf, kScf };

struct SchemeConfig {
  Scheme scheme = Scheme::kNone;
  double a_db = 6.0;
  int v_iterations = 1;        // rcf rounds; for scf the regime the default
                               // beta calibration stands in for
  int window_taps = 0;         // 0 -> experiment default
  long long i_max = 0;         // 0 -> sized from the expected peak count
  double beta_override = 0.0;  // scf noise scale: 0 -> calibrated default,
                               // > 0 -> that fixed value, < 0 -> per-symbol
                               // peak-minimizing adaptive mode

  // Stable row/file identifier: "none", "cpc", "alg1", "alg2", "scf",
  // "rcf_v3", ...
  std::string label() const;
};

// Parses a label as produced by SchemeConfig::label() (e.g. "alg2",
// "rcf_v5"). Throws on unknown names.
SchemeConfig parse_scheme(const std::string& name);

// Transforms attributed to a scheme in reports. The shared output filter
// stage is excluded by convention, which is why rcf reports 2V-1 rather
// than 2V+1.
int reported_transforms(const SchemeConfig& sc);

struct ExperimentConfig {
  int n_carriers = 1024;
  int oversample = 4;
  long long n_symbols = 20000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: all available; 1: serial reference path
  double ccdf_target = 1e-3;
  double ccdf_step_db = 0.02;
  int window_taps = 64;
  std::vector<SchemeConfig> schemes;

  // BER mode only:
  std::vector<double> snr_grid_db;  // per-bit Eb/N0
  long long min_bits = 1000000;
};

// Throws std::invalid_argument describing the first violated constraint.
// The tail-depth requirement (n_symbols >= 10 / ccdf_target) only applies
// when a CCDF estimate is part of the run; BER-only runs size themselves
// from min_bits instead.
void validate(const ExperimentConfig& cfg, bool require_ccdf_depth = true);

struct SchemeResult {
  SchemeConfig config;
  int window_taps = 0;       // resolved
  long long i_max = 0;       // resolved (0 where unused)
  double beta = 0.0;         // resolved scf scale: the fixed value, or the
                             // realized per-symbol mean in adaptive mode
                             // (0 where unused)
  bool adaptive_beta = false;
  std::vector<double> papr_samples_db;
  CcdfCurve ccdf;
  double papr_at_target_db = 0.0;  // NaN when the target is unreachable
  bool ccdf_unreachable = false;
  SdrAccumulator sdr;
  OpCounter total_ops;
  double mean_iterations = 0.0;
  double mean_peaks = 0.0;
  double mean_initial_over = 0.0;  // over-threshold count in the raw signal
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SchemeResult> schemes;
  std::vector<std::string> warnings;
};

// Runs the PAPR / SDR / complexity measurement for every configured scheme.
// Fully deterministic for a fixed (config, seed): the parallel and serial
// paths produce identical results because all randomness is indexed by
// symbol and reductions happen in index order.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Per-scheme BER sweep over cfg.snr_grid_db, at least cfg.min_bits data bits
// per point. Outer index matches cfg.schemes, inner matches snr_grid_db.
std::vector<std::vector<BerPoint>> run_ber(const ExperimentConfig& cfg);

}  // namespace papr
