// papr_benchmark — times the symbol-parallel Monte-Carlo loop against the
// serial reference path on an identical workload and verifies that both
// produce bit-identical results, which is the contract that makes the
// parallel path safe to use for reported numbers.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "papr/emit.hpp"
#include "papr/experiment.hpp"
#include "papr/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double run_timed(papr::ExperimentConfig cfg, papr::ExperimentResult& out) {
  auto t0 = std::chrono::steady_clock::now();
  out = papr::run_experiment(cfg);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

bool same_samples(const papr::ExperimentResult& a, const papr::ExperimentResult& b) {
  if (a.schemes.size() != b.schemes.size()) return false;
  for (std::size_t k = 0; k < a.schemes.size(); ++k) {
    const auto& sa = a.schemes[k].papr_samples_db;
    const auto& sb = b.schemes[k].papr_samples_db;
    if (sa.size() != sb.size()) return false;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (sa[i] != sb[i]) return false;
    }
    if (!(a.schemes[k].total_ops == b.schemes[k].total_ops)) return false;
    if (a.schemes[k].sdr.signal_energy != b.schemes[k].sdr.signal_energy) return false;
    if (a.schemes[k].sdr.distortion_energy != b.schemes[k].sdr.distortion_energy) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial-vs-parallel benchmark for the PAPR Monte-Carlo loop"};
  app.set_version_flag("--version", std::string("papr_benchmark ") + papr::kVersion);

  papr::ExperimentConfig cfg;
  cfg.n_symbols = 2000;
  // Timing workload, not a tail measurement: keep the CCDF target shallow so
  // small --symbols values stay valid.
  cfg.ccdf_target = 0.1;
  std::string scheme = "alg1";
  double a_db = 6.0;
  int parallel_threads = 0;

  app.add_option("--carriers", cfg.n_carriers, "Subcarrier count N")->capture_default_str();
  app.add_option("--oversample", cfg.oversample, "Oversampling factor J")->capture_default_str();
  app.add_option("--symbols", cfg.n_symbols, "Symbols per run")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--n-s,--window-taps", cfg.window_taps, "Cancellation window support length")
      ->capture_default_str();
  app.add_option("--scheme", scheme, "Scheme label to benchmark")->capture_default_str();
  app.add_option("--a-db", a_db, "Clipping threshold over RMS in dB")->capture_default_str();
  app.add_option("--threads", parallel_threads, "Parallel thread count (0 = all available)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);

    papr::SchemeConfig sc = papr::parse_scheme(scheme);
    sc.a_db = a_db;
    cfg.schemes = {sc};
    papr::validate(cfg);

#ifdef _OPENMP
    int hw = omp_get_max_threads();
#else
    int hw = 1;
#endif
    int requested = parallel_threads > 0 ? parallel_threads : hw;

    std::printf("workload: N=%d J=%d symbols=%lld scheme=%s a_db=%g seed=%llu\n",
                cfg.n_carriers, cfg.oversample, cfg.n_symbols, sc.label().c_str(), a_db,
                static_cast<unsigned long long>(cfg.seed));

    papr::ExperimentResult serial, parallel;
    cfg.threads = 1;
    double t_serial = run_timed(cfg, serial);
    cfg.threads = parallel_threads;
    double t_parallel = run_timed(cfg, parallel);

    double rate_s = static_cast<double>(cfg.n_symbols) / t_serial;
    double rate_p = static_cast<double>(cfg.n_symbols) / t_parallel;
    std::printf("serial   (1 thread%s): %8.3f s  %9.1f symbols/s\n", "", t_serial, rate_s);
    std::printf("parallel (%d thread%s): %8.3f s  %9.1f symbols/s\n", requested,
                requested == 1 ? "" : "s", t_parallel, rate_p);
    std::printf("speedup: %.2fx\n", t_serial / t_parallel);

    bool match = same_samples(serial, parallel);
    serial.config.threads = parallel.config.threads;
    match = match && papr::results_csv(serial) == papr::results_csv(parallel);
    std::printf("outputs: %s\n", match ? "identical" : "MISMATCH");
    if (!match) return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
