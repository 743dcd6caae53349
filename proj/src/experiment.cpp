#include "papr/experiment.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "papr/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace papr {

namespace {

bool is_pow2(long long v) { return v > 0 && (v & (v - 1)) == 0; }

struct ResolvedScheme {
  SchemeConfig cfg;
  WindowFn window;            // cancellation schemes only
  long long i_max = 0;        // alg1 only
  double beta = 0.0;          // scf only
  bool adaptive_beta = false; // scf only
  int window_taps = 0;
};

bool uses_window(Scheme s) {
  return s == Scheme::kCpc || s == Scheme::kAlg1 || s == Scheme::kAlg2;
}

ResolvedScheme resolve_scheme(const ExperimentConfig& cfg, const SchemeConfig& sc,
                              const Ofdm& ofdm) {
  ResolvedScheme r;
  r.cfg = sc;
  r.window_taps = sc.window_taps > 0 ? sc.window_taps : cfg.window_taps;
  if (uses_window(sc.scheme)) {
    if (r.window_taps > ofdm.jn()) {
      throw std::invalid_argument("scheme window support exceeds the signal length");
    }
    r.window = make_window(ofdm.oversample(), r.window_taps);
  }
  if (sc.scheme == Scheme::kAlg1) {
    if (sc.i_max > 0) {
      r.i_max = sc.i_max;
    } else {
      // Headroom over the expected over-threshold count so the iteration cap
      // is effectively never the terminator at sane thresholds.
      double expected = ofdm.jn() * std::exp(-std::pow(10.0, sc.a_db / 10.0));
      r.i_max = std::max<long long>(16, static_cast<long long>(std::ceil(4.0 * expected)));
    }
  }
  if (sc.scheme == Scheme::kScf) {
    if (sc.beta_override < 0.0) {
      r.adaptive_beta = true;
    } else if (sc.beta_override > 0.0) {
      r.beta = sc.beta_override;
    } else {
      r.beta = scf_beta(sc.a_db, sc.v_iterations).beta;
    }
  }
  return r;
}

struct SymbolOutcome {
  double papr_db = 0.0;
  double signal_energy = 0.0;
  double distortion_energy = 0.0;
  OpCounter ops;
  long long iterations = 0;
  long long peaks = 0;
  long long initial_over = 0;
  double beta_used = 0.0;
};

// One symbol through one scheme: modulate, process, filter, renormalize,
// measure. Deterministic in (master_seed, index) alone.
SymbolOutcome process_symbol(const Ofdm& ofdm, const ResolvedScheme& rs,
                             std::uint64_t master_seed, long long index) {
  Rng bit_rng(derive_seed(master_seed, kStreamSymbolBits,
                          static_cast<std::uint64_t>(index)));
  std::vector<std::uint8_t> bits;
  bits.reserve(4 * ofdm.n_carriers());
  bit_rng.fill_bits(bits, 4 * ofdm.n_carriers());

  FreqSymbol sym = ofdm.map_qam16(bits);
  TimeSignal s = ofdm.oversampled_ifft(sym);
  PowerStats st = power_stats(s);

  SymbolOutcome out;
  const Scheme scheme = rs.cfg.scheme;
  double a = 0.0;
  if (scheme != Scheme::kNone) {
    a = clip_threshold(std::sqrt(st.mean_power), rs.cfg.a_db);
    double a2 = a * a;
    for (const cplx& v : s) {
      if (std::norm(v) > a2) ++out.initial_over;
    }
  }

  TimeSignal y;
  switch (scheme) {
    case Scheme::kNone: {
      y = s;
      out.ops.transform(ofdm.jn());
      break;
    }
    case Scheme::kCpc: {
      CancelResult r = cpc(s, a, rs.window);
      y = std::move(r.signal);
      out.ops = r.report.ops;
      out.iterations = r.report.iterations_used;
      out.peaks = r.report.peaks_cancelled;
      break;
    }
    case Scheme::kAlg1: {
      CancelResult r = spc_algorithm1(s, a, rs.window, rs.i_max);
      y = std::move(r.signal);
      out.ops = r.report.ops;
      out.iterations = r.report.iterations_used;
      out.peaks = r.report.peaks_cancelled;
      break;
    }
    case Scheme::kAlg2: {
      CancelResult r = spc_algorithm2(
          s, a, rs.window,
          derive_seed(master_seed, kStreamPermutation, static_cast<std::uint64_t>(index)));
      y = std::move(r.signal);
      out.ops = r.report.ops;
      out.iterations = r.report.iterations_used;
      out.peaks = r.report.peaks_cancelled;
      break;
    }
    case Scheme::kRcf: {
      ClipConfig cc{rs.cfg.a_db, rs.cfg.v_iterations};
      y = rcf(ofdm, sym, cc);
      // Attributed cost: 2V-1 transforms (the final round's filter pair is
      // the shared output stage) plus V clip passes of JN magnitude checks.
      out.ops.transform(ofdm.jn());
      for (int v = 1; v < 2 * cc.v_iterations - 1; ++v) out.ops.transform(ofdm.jn());
      out.ops.complex_mults(static_cast<long long>(cc.v_iterations) * ofdm.jn());
      out.ops.comparisons(static_cast<long long>(cc.v_iterations) * ofdm.jn());
      break;
    }
    case Scheme::kScf: {
      ClipConfig cc{rs.cfg.a_db, rs.cfg.v_iterations};
      y = scf(ofdm, sym, cc, ScfFactor{rs.beta, rs.adaptive_beta}, &out.beta_used);
      // Three transforms, one clip pass, the correction signal, and the
      // scaled in-band combine.
      for (int t = 0; t < 3; ++t) out.ops.transform(ofdm.jn());
      out.ops.complex_mults(ofdm.jn());
      out.ops.comparisons(ofdm.jn());
      out.ops.complex_adds(ofdm.jn());
      out.ops.real_complex_mults(ofdm.n_carriers());
      out.ops.complex_adds(ofdm.n_carriers());
      if (rs.adaptive_beta) {
        // Peak-minimizing scale search: per-sample quadratic coefficients
        // (8 mults, 3 adds), then a fixed number of envelope evaluations at
        // 2 mults, 2 adds and 1 comparison per sample each.
        const long long jn = ofdm.jn();
        const long long evals = kScfGoldenIters + 2;
        out.ops.real_mults_only(8 * jn);
        out.ops.real_adds_only(3 * jn);
        out.ops.real_mults_only(2 * evals * jn);
        out.ops.real_adds_only(2 * evals * jn);
        out.ops.comparisons(evals * jn);
      }
      break;
    }
  }

  TimeSignal filtered = ofdm.lowpass_filter(y);
  TimeSignal restored = normalize_power(filtered, st.mean_power);
  out.papr_db = papr_db(restored);

  FreqSymbol demod = ofdm.forward_fft(restored);
  const int jn = ofdm.jn();
  const int n = ofdm.n_carriers();
  for (int k = 0; k < jn; ++k) {
    bool in_band = k < n / 2 || k >= jn - n / 2;
    if (!in_band) continue;
    out.signal_energy += std::norm(sym.bins[k]);
    out.distortion_energy += std::norm(demod.bins[k] - sym.bins[k]);
  }
  return out;
}

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

}  // namespace

std::string SchemeConfig::label() const {
  switch (scheme) {
    case Scheme::kNone: return "none";
    case Scheme::kCpc: return "cpc";
    case Scheme::kAlg1: return "alg1";
    case Scheme::kAlg2: return "alg2";
    case Scheme::kScf: return "scf";
    case Scheme::kRcf: return "rcf_v" + std::to_string(v_iterations);
  }
  return "unknown";
}

SchemeConfig parse_scheme(const std::string& name) {
  SchemeConfig sc;
  if (name == "none") {
    sc.scheme = Scheme::kNone;
  } else if (name == "cpc") {
    sc.scheme = Scheme::kCpc;
  } else if (name == "alg1") {
    sc.scheme = Scheme::kAlg1;
  } else if (name == "alg2") {
    sc.scheme = Scheme::kAlg2;
  } else if (name == "scf") {
    sc.scheme = Scheme::kScf;
    sc.v_iterations = 100;
  } else if (name.rfind("rcf_v", 0) == 0) {
    sc.scheme = Scheme::kRcf;
    sc.v_iterations = std::stoi(name.substr(5));
    if (sc.v_iterations < 1) throw std::invalid_argument("parse_scheme: bad rcf rounds");
  } else if (name == "rcf") {
    sc.scheme = Scheme::kRcf;
  } else {
    throw std::invalid_argument("parse_scheme: unknown scheme '" + name + "'");
  }
  return sc;
}

int reported_transforms(const SchemeConfig& sc) {
  switch (sc.scheme) {
    case Scheme::kRcf: return 2 * sc.v_iterations - 1;
    case Scheme::kScf: return 3;
    default: return 1;
  }
}

void validate(const ExperimentConfig& cfg, bool require_ccdf_depth) {
  if (cfg.n_carriers < 2 || cfg.n_carriers % 2 != 0) {
    throw std::invalid_argument("config: carrier count must be even and >= 2");
  }
  if (cfg.oversample < 1 || !is_pow2(static_cast<long long>(cfg.n_carriers) * cfg.oversample)) {
    throw std::invalid_argument("config: carriers x oversample must be a power of two");
  }
  if (cfg.n_symbols < 1) throw std::invalid_argument("config: symbol count must be >= 1");
  if (!(cfg.ccdf_target > 0.0) || cfg.ccdf_target > 1.0) {
    throw std::invalid_argument("config: ccdf target must be in (0, 1]");
  }
  if (require_ccdf_depth && cfg.n_symbols * cfg.ccdf_target < 10.0) {
    throw std::invalid_argument(
        "config: need at least 10 / ccdf_target symbols for a stable tail estimate");
  }
  if (cfg.ccdf_step_db <= 0.0) throw std::invalid_argument("config: ccdf step must be positive");
  if (cfg.window_taps < 2 || cfg.window_taps % 2 != 0 ||
      cfg.window_taps > cfg.n_carriers * cfg.oversample) {
    throw std::invalid_argument("config: window taps must be even, >= 2 and <= JN");
  }
  if (cfg.threads < 0) throw std::invalid_argument("config: threads must be >= 0");
  if (!cfg.snr_grid_db.empty() && cfg.min_bits < 100000) {
    throw std::invalid_argument("config: need at least 1e5 bits per BER point");
  }
  for (const SchemeConfig& sc : cfg.schemes) {
    if (sc.scheme != Scheme::kNone && !(sc.a_db == sc.a_db)) {
      throw std::invalid_argument("config: scheme threshold is NaN");
    }
    if (sc.scheme == Scheme::kRcf && sc.v_iterations < 1) {
      throw std::invalid_argument("config: rcf rounds must be >= 1");
    }
    if (sc.window_taps != 0 &&
        (sc.window_taps < 2 || sc.window_taps % 2 != 0 ||
         sc.window_taps > cfg.n_carriers * cfg.oversample)) {
      throw std::invalid_argument("config: scheme window taps must be even, >= 2 and <= JN");
    }
    if (!(sc.beta_override == sc.beta_override)) {
      throw std::invalid_argument("config: beta override is NaN");
    }
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  Ofdm ofdm(cfg.n_carriers, cfg.oversample);
  ExperimentResult result;
  result.config = cfg;

  const long long n = cfg.n_symbols;
  const int threads = resolve_threads(cfg.threads);

  for (const SchemeConfig& sc : cfg.schemes) {
    ResolvedScheme rs = resolve_scheme(cfg, sc, ofdm);
    std::vector<SymbolOutcome> outcomes(static_cast<std::size_t>(n));

    if (cfg.threads == 1) {
      // Serial reference path: kept separate so the parallel loop always has
      // a bitwise-comparable baseline.
      for (long long i = 0; i < n; ++i) {
        outcomes[static_cast<std::size_t>(i)] = process_symbol(ofdm, rs, cfg.seed, i);
      }
    } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
#endif
      for (long long i = 0; i < n; ++i) {
        outcomes[static_cast<std::size_t>(i)] = process_symbol(ofdm, rs, cfg.seed, i);
      }
    }

    SchemeResult sr;
    sr.config = sc;
    sr.window_taps = uses_window(sc.scheme) ? rs.window_taps : 0;
    sr.i_max = rs.i_max;
    sr.beta = rs.beta;
    sr.adaptive_beta = rs.adaptive_beta;
    sr.papr_samples_db.reserve(static_cast<std::size_t>(n));
    // Index-order reduction keeps floating-point sums independent of the
    // thread schedule.
    double beta_sum = 0.0;
    for (const SymbolOutcome& o : outcomes) {
      sr.papr_samples_db.push_back(o.papr_db);
      sr.sdr.signal_energy += o.signal_energy;
      sr.sdr.distortion_energy += o.distortion_energy;
      sr.total_ops += o.ops;
      sr.mean_iterations += static_cast<double>(o.iterations);
      sr.mean_peaks += static_cast<double>(o.peaks);
      sr.mean_initial_over += static_cast<double>(o.initial_over);
      beta_sum += o.beta_used;
    }
    sr.mean_iterations /= static_cast<double>(n);
    sr.mean_peaks /= static_cast<double>(n);
    sr.mean_initial_over /= static_cast<double>(n);
    // In adaptive mode report the realized mean scale; a fixed scale is
    // reported exactly as configured.
    if (rs.adaptive_beta) sr.beta = beta_sum / static_cast<double>(n);

    sr.ccdf = ccdf_estimate(sr.papr_samples_db, ccdf_grid(sr.papr_samples_db, cfg.ccdf_step_db));
    try {
      sr.papr_at_target_db = papr_at_ccdf(sr.ccdf, cfg.ccdf_target);
    } catch (const std::out_of_range&) {
      sr.papr_at_target_db = std::numeric_limits<double>::quiet_NaN();
      sr.ccdf_unreachable = true;
      result.warnings.push_back("scheme " + sc.label() +
                                ": ccdf target below the observed support; papr reported as nan");
    }
    result.schemes.push_back(std::move(sr));
  }
  return result;
}

std::vector<std::vector<BerPoint>> run_ber(const ExperimentConfig& cfg) {
  validate(cfg, /*require_ccdf_depth=*/false);
  if (cfg.snr_grid_db.empty()) {
    throw std::invalid_argument("run_ber: snr grid is empty");
  }
  Ofdm ofdm(cfg.n_carriers, cfg.oversample);
  const int bits_per_symbol = 4 * cfg.n_carriers;
  const long long symbols_per_point =
      (cfg.min_bits + bits_per_symbol - 1) / bits_per_symbol;
  const int threads = resolve_threads(cfg.threads);

  std::vector<std::vector<BerPoint>> all;
  all.reserve(cfg.schemes.size());

  for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
    ResolvedScheme rs = resolve_scheme(cfg, cfg.schemes[si], ofdm);
    std::vector<BerPoint> points;
    for (std::size_t pi = 0; pi < cfg.snr_grid_db.size(); ++pi) {
      const double snr_db = cfg.snr_grid_db[pi];
      const double gamma_b = std::pow(10.0, snr_db / 10.0);
      // Per-bin complex noise variance N0 = 1/(4 gamma_b) for unit-energy
      // 16QAM; time-domain variance is J times that under the transform
      // scaling in use.
      const double nu = cfg.oversample / (4.0 * gamma_b);
      const double sigma_axis = std::sqrt(nu / 2.0);

      std::vector<long long> errors(static_cast<std::size_t>(symbols_per_point), 0);

      auto run_one = [&](long long i) {
        Rng bit_rng(derive_seed(cfg.seed, kStreamSymbolBits, static_cast<std::uint64_t>(i)));
        std::vector<std::uint8_t> bits;
        bits.reserve(bits_per_symbol);
        bit_rng.fill_bits(bits, bits_per_symbol);
        FreqSymbol sym = ofdm.map_qam16(bits);
        TimeSignal s = ofdm.oversampled_ifft(sym);
        PowerStats st = power_stats(s);

        TimeSignal y;
        switch (rs.cfg.scheme) {
          case Scheme::kNone:
            y = s;
            break;
          case Scheme::kCpc: {
            double a = clip_threshold(std::sqrt(st.mean_power), rs.cfg.a_db);
            y = cpc(s, a, rs.window).signal;
            break;
          }
          case Scheme::kAlg1: {
            double a = clip_threshold(std::sqrt(st.mean_power), rs.cfg.a_db);
            y = spc_algorithm1(s, a, rs.window, rs.i_max).signal;
            break;
          }
          case Scheme::kAlg2: {
            double a = clip_threshold(std::sqrt(st.mean_power), rs.cfg.a_db);
            y = spc_algorithm2(s, a, rs.window,
                               derive_seed(cfg.seed, kStreamPermutation,
                                           static_cast<std::uint64_t>(i)))
                    .signal;
            break;
          }
          case Scheme::kRcf:
            y = rcf(ofdm, sym, ClipConfig{rs.cfg.a_db, rs.cfg.v_iterations});
            break;
          case Scheme::kScf:
            y = scf(ofdm, sym, ClipConfig{rs.cfg.a_db, rs.cfg.v_iterations},
                    ScfFactor{rs.beta, rs.adaptive_beta});
            break;
        }

        TimeSignal tx = normalize_power(ofdm.lowpass_filter(y), st.mean_power);

        std::uint64_t noise_index = (static_cast<std::uint64_t>(si) << 48) |
                                    (static_cast<std::uint64_t>(pi) << 32) |
                                    static_cast<std::uint64_t>(i);
        Rng noise_rng(derive_seed(cfg.seed, kStreamNoise, noise_index));
        for (cplx& v : tx) {
          auto [g1, g2] = noise_rng.gaussian_pair();
          v += cplx(sigma_axis * g1, sigma_axis * g2);
        }

        FreqSymbol rx = ofdm.forward_fft(tx);
        long long errs = 0;
        const int jn = ofdm.jn();
        const int nc = ofdm.n_carriers();
        for (int d = 0; d < nc; ++d) {
          int bin = d < nc / 2 ? d : jn - nc + d;
          unsigned sent = (unsigned(bits[4 * d]) << 3) | (unsigned(bits[4 * d + 1]) << 2) |
                          (unsigned(bits[4 * d + 2]) << 1) | unsigned(bits[4 * d + 3]);
          unsigned got = qam16_demap(rx.bins[bin]);
          errs += std::popcount(sent ^ got);
        }
        errors[static_cast<std::size_t>(i)] = errs;
      };

      if (cfg.threads == 1) {
        for (long long i = 0; i < symbols_per_point; ++i) run_one(i);
      } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
#endif
        for (long long i = 0; i < symbols_per_point; ++i) run_one(i);
      }

      BerPoint pt;
      pt.snr_db = snr_db;
      pt.bits_tested = symbols_per_point * bits_per_symbol;
      for (long long e : errors) pt.bit_errors += e;
      pt.ber = static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits_tested);
      points.push_back(pt);
    }
    all.push_back(std::move(points));
  }
  return all;
}

}  // namespace papr
