// paprsim — Monte-Carlo driver for the distortion-based PAPR reduction
// schemes in this library. Subcommands cover the standard comparison
// workloads: fixed-threshold and fixed-PAPR scheme tables, CCDF curves,
// BER sweeps, and threshold sweeps. All outputs are deterministic for a
// fixed seed and identical across thread counts.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "papr/emit.hpp"
#include "papr/experiment.hpp"
#include "papr/version.hpp"

namespace {

struct CommonOpts {
  int carriers = 1024;
  int oversample = 4;
  long long symbols = 20000;
  std::uint64_t seed = 1;
  int threads = 0;
  int window_taps = 64;
  double ccdf_target = 1e-3;
  double ccdf_step = 0.02;
  std::string out = "out";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->set_config("--config", "", "Key-value file holding these same option names");
  cmd->add_option("--carriers", o.carriers, "Subcarrier count N")->capture_default_str();
  cmd->add_option("--oversample", o.oversample, "Oversampling factor J")->capture_default_str();
  cmd->add_option("--symbols", o.symbols, "Monte-Carlo symbol count")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master RNG seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all, 1 = serial reference)")
      ->capture_default_str();
  cmd->add_option("--n-s,--window-taps", o.window_taps,
                  "Cancellation window support length N_s")
      ->capture_default_str();
  cmd->add_option("--ccdf-target", o.ccdf_target, "CCDF level for the reported PAPR column")
      ->capture_default_str();
  cmd->add_option("--ccdf-step", o.ccdf_step, "CCDF grid step in dB")->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
}

papr::ExperimentConfig make_config(const CommonOpts& o) {
  papr::ExperimentConfig cfg;
  cfg.n_carriers = o.carriers;
  cfg.oversample = o.oversample;
  cfg.n_symbols = o.symbols;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.ccdf_target = o.ccdf_target;
  cfg.ccdf_step_db = o.ccdf_step;
  cfg.window_taps = o.window_taps;
  return cfg;
}

std::vector<papr::SchemeConfig> parse_scheme_list(const std::vector<std::string>& names,
                                                  double a_db) {
  std::vector<papr::SchemeConfig> out;
  for (const std::string& n : names) {
    if (n.empty()) continue;  // an empty list is a valid (empty) run
    papr::SchemeConfig sc = papr::parse_scheme(n);
    sc.a_db = a_db;
    out.push_back(sc);
  }
  return out;
}

int run_and_emit(papr::ExperimentConfig cfg, const std::string& out_dir,
                 bool with_ber = false) {
  papr::validate(cfg);
  papr::ExperimentResult result = papr::run_experiment(cfg);
  std::vector<std::vector<papr::BerPoint>> ber;
  if (with_ber) ber = papr::run_ber(cfg);
  papr::emit_outputs(result, with_ber ? &ber : nullptr, out_dir);
  std::fputs(papr::results_csv(result).c_str(), stdout);
  for (const std::string& w : result.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  std::fprintf(stderr, "wrote %s/results.csv (+curves, manifest.json)\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDM PAPR reduction benchmark"};
  app.set_version_flag("--version", std::string("paprsim ") + papr::kVersion);
  app.require_subcommand(1);

  CommonOpts o;

  // --- table1: every scheme at one shared clipping threshold ---------------
  double t1_a_db = 6.0;
  CLI::App* table1 = app.add_subcommand(
      "table1", "All schemes at a common threshold: PAPR/SDR/cost comparison");
  add_common(table1, o);
  table1->add_option("--a-db", t1_a_db, "Clipping threshold over RMS in dB")
      ->capture_default_str();
  table1->callback([&]() {
    papr::ExperimentConfig cfg = make_config(o);
    for (const char* n : {"none", "rcf_v1", "rcf_v3", "rcf_v5", "scf", "cpc", "alg1", "alg2"}) {
      papr::SchemeConfig sc = papr::parse_scheme(n);
      sc.a_db = t1_a_db;
      cfg.schemes.push_back(sc);
    }
    run_and_emit(std::move(cfg), o.out);
  });

  // --- table2: fixed-PAPR comparison preset --------------------------------
  CLI::App* table2 = app.add_subcommand(
      "table2", "Schemes tuned to comparable PAPR: quality and cost at matched output");
  add_common(table2, o);
  table2->callback([&]() {
    papr::ExperimentConfig cfg = make_config(o);
    auto at = [](const char* name, double a) {
      papr::SchemeConfig sc = papr::parse_scheme(name);
      sc.a_db = a;
      return sc;
    };
    cfg.schemes = {at("rcf_v1", 2.5), at("rcf_v3", 5.0), at("rcf_v5", 5.5),
                   at("scf", 5.25),   at("scf", 5.5),    at("alg1", 6.0),
                   at("alg2", 6.0)};
    run_and_emit(std::move(cfg), o.out);
  });

  // --- ccdf: full curves for chosen schemes --------------------------------
  double cc_a_db = 6.0;
  double cc_beta = 0.0;
  std::vector<std::string> cc_schemes{"none", "alg1", "alg2", "cpc", "scf", "rcf_v5"};
  CLI::App* ccdf = app.add_subcommand("ccdf", "CCDF curves for a scheme list");
  add_common(ccdf, o);
  ccdf->add_option("--a-db", cc_a_db, "Clipping threshold over RMS in dB")
      ->capture_default_str();
  ccdf->add_option("--schemes", cc_schemes, "Comma-separated scheme labels")
      ->delimiter(',')
      ->capture_default_str();
  ccdf->add_option("--beta", cc_beta,
                   "scf noise scale: 0 = calibrated default, positive = fixed "
                   "override, negative = per-symbol adaptive search");
  ccdf->callback([&]() {
    papr::ExperimentConfig cfg = make_config(o);
    cfg.schemes = parse_scheme_list(cc_schemes, cc_a_db);
    for (papr::SchemeConfig& sc : cfg.schemes) {
      if (sc.scheme == papr::Scheme::kScf) sc.beta_override = cc_beta;
    }
    run_and_emit(std::move(cfg), o.out);
  });

  // --- ber: AWGN error-rate sweep -------------------------------------------
  double ber_a_db = 6.0;
  std::vector<std::string> ber_schemes{"none", "alg1", "alg2", "cpc", "scf", "rcf_v5"};
  std::vector<double> ber_snr;
  long long ber_min_bits = 1000000;
  CLI::App* ber = app.add_subcommand("ber", "Bit error rate vs per-bit Eb/N0 over AWGN");
  add_common(ber, o);
  ber->add_option("--a-db", ber_a_db, "Clipping threshold over RMS in dB")
      ->capture_default_str();
  ber->add_option("--schemes", ber_schemes, "Comma-separated scheme labels")
      ->delimiter(',')
      ->capture_default_str();
  ber->add_option("--snr", ber_snr, "Eb/N0 grid in dB (default 4..20 step 2)")
      ->delimiter(',');
  ber->add_option("--min-bits", ber_min_bits, "Minimum data bits per BER point")
      ->capture_default_str();
  ber->callback([&]() {
    papr::ExperimentConfig cfg = make_config(o);
    cfg.schemes = parse_scheme_list(ber_schemes, ber_a_db);
    cfg.snr_grid_db = ber_snr;
    if (cfg.snr_grid_db.empty()) {
      for (double s = 4.0; s <= 20.0; s += 2.0) cfg.snr_grid_db.push_back(s);
    }
    cfg.min_bits = ber_min_bits;
    std::vector<std::vector<papr::BerPoint>> points = papr::run_ber(cfg);
    papr::emit_ber_outputs(cfg, points, o.out);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (const papr::BerPoint& pt : points[i]) {
        std::printf("%s,%.1f,%.6g,%lld,%lld\n", cfg.schemes[i].label().c_str(), pt.snr_db,
                    pt.ber, pt.bit_errors, pt.bits_tested);
      }
    }
    std::fprintf(stderr, "wrote %s/ber_*.csv, manifest.json\n", o.out.c_str());
  });

  // --- sweep: one scheme across a threshold range --------------------------
  std::string sw_scheme = "alg1";
  double sw_from = 3.0, sw_to = 8.0, sw_step = 1.0;
  CLI::App* sweep = app.add_subcommand("sweep", "One scheme across a threshold range");
  add_common(sweep, o);
  sweep->add_option("--scheme", sw_scheme, "Scheme label to sweep")->capture_default_str();
  sweep->add_option("--a-from", sw_from, "First threshold in dB")->capture_default_str();
  sweep->add_option("--a-to", sw_to, "Last threshold in dB (inclusive)")->capture_default_str();
  sweep->add_option("--a-step", sw_step, "Threshold increment in dB")->capture_default_str();
  sweep->callback([&]() {
    if (!(sw_step > 0.0) || sw_to < sw_from) {
      throw CLI::ValidationError("sweep", "need --a-step > 0 and --a-to >= --a-from");
    }
    papr::ExperimentConfig cfg = make_config(o);
    for (double a = sw_from; a <= sw_to + 1e-9; a += sw_step) {
      papr::SchemeConfig sc = papr::parse_scheme(sw_scheme);
      sc.a_db = a;
      cfg.schemes.push_back(sc);
    }
    run_and_emit(std::move(cfg), o.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
