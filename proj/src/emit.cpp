#include "papr/emit.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "papr/version.hpp"

namespace papr {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

double rate_param(const SchemeResult& sr) {
  switch (sr.config.scheme) {
    case Scheme::kAlg1: return sr.mean_iterations;
    case Scheme::kAlg2: return sr.mean_peaks;
    case Scheme::kCpc: return sr.mean_peaks;
    case Scheme::kRcf: return static_cast<double>(sr.config.v_iterations);
    case Scheme::kScf: return static_cast<double>(sr.config.v_iterations);
    case Scheme::kNone: return 0.0;
  }
  return 0.0;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("emit: write failed for " + path.string());
}

}  // namespace

std::string results_csv(const ExperimentResult& result) {
  std::string csv = kResultsHeader;
  csv += '\n';
  const double n = static_cast<double>(result.config.n_symbols);
  for (const SchemeResult& sr : result.schemes) {
    csv += sr.config.label();
    csv += ',' + fmt("%g", sr.config.a_db);
    csv += ',' + fmt("%.4f", sr.papr_at_target_db);
    csv += ',' + fmt("%.4f", sr.sdr.sdr_db());
    csv += ',' + fmt("%.1f", static_cast<double>(sr.total_ops.real_mults) / n);
    csv += ',' + fmt("%.1f", static_cast<double>(sr.total_ops.real_adds) / n);
    csv += ',' + fmt("%.1f", static_cast<double>(sr.total_ops.real_comps) / n);
    csv += ',' + std::to_string(reported_transforms(sr.config));
    csv += ',' + fmt("%.4g", rate_param(sr));
    csv += ',' + std::to_string(result.config.seed);
    csv += '\n';
  }
  return csv;
}

std::string curve_csv(const std::vector<double>& x_db,
                      const std::vector<double>& probability) {
  if (x_db.size() != probability.size()) {
    throw std::invalid_argument("curve_csv: column lengths differ");
  }
  std::string csv = "x_db,probability\n";
  for (std::size_t i = 0; i < x_db.size(); ++i) {
    csv += fmt("%.4f", x_db[i]);
    csv += ',' + fmt("%.10g", probability[i]);
    csv += '\n';
  }
  return csv;
}

std::string manifest_json(const ExperimentResult& result,
                          const std::vector<std::vector<BerPoint>>* ber) {
  nlohmann::json j;
  j["version"] = kVersion;

  const ExperimentConfig& cfg = result.config;
  j["config"] = {
      {"n_carriers", cfg.n_carriers},
      {"oversample", cfg.oversample},
      {"n_symbols", cfg.n_symbols},
      {"seed", cfg.seed},
      {"threads", cfg.threads},
      {"ccdf_target", cfg.ccdf_target},
      {"ccdf_step_db", cfg.ccdf_step_db},
      {"window_taps", cfg.window_taps},
      {"modulation", "16qam"},
  };

  j["schemes"] = nlohmann::json::array();
  for (const SchemeResult& sr : result.schemes) {
    nlohmann::json s = {
        {"label", sr.config.label()},
        {"a_db", sr.config.a_db},
        {"ifft_count", reported_transforms(sr.config)},
    };
    if (sr.window_taps > 0) s["window_taps"] = sr.window_taps;
    if (sr.i_max > 0) s["i_max"] = sr.i_max;
    if (sr.config.scheme == Scheme::kScf) {
      s["beta"] = sr.beta;
      s["beta_mode"] = sr.adaptive_beta ? "adaptive_per_symbol_mean" : "fixed";
    }
    if (sr.config.scheme == Scheme::kRcf || sr.config.scheme == Scheme::kScf) {
      s["v_iterations"] = sr.config.v_iterations;
    }
    j["schemes"].push_back(s);
  }

  j["conventions"] = {
      {"snr", "per-bit Eb/N0 in dB"},
      {"papr_target_column", "papr_1e3_db holds the CCDF crossing at ccdf_target"},
      {"threshold", "a_db is relative to the per-symbol RMS of the unprocessed signal"},
      {"op_costs",
       "complex mult = 4 mul + 2 add; real x complex = 2 mul; complex add = 2 add; "
       "magnitude check = 1 complex mult + 1 comparison; JN-point transform = "
       "(JN/2) log2(JN) complex mults + JN log2(JN) complex adds"},
      {"ifft_count", "transforms attributed to the scheme; the shared output "
                     "filter stage is excluded"},
  };

  if (ber != nullptr) {
    j["ber"] = {
        {"snr_grid_db", cfg.snr_grid_db},
        {"min_bits", cfg.min_bits},
    };
  }

  j["warnings"] = result.warnings;
  return j.dump(2) + "\n";
}

namespace {

std::filesystem::path ensure_dir(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("emit: cannot create directory " + dir.string());
  return dir;
}

// Per-file labels: sweeps repeat a scheme at several thresholds, so repeated
// labels get an _a<threshold> suffix to keep curve files distinct.
std::vector<std::string> file_labels(const std::vector<SchemeConfig>& schemes) {
  std::map<std::string, int> count;
  for (const SchemeConfig& sc : schemes) ++count[sc.label()];
  std::vector<std::string> out;
  out.reserve(schemes.size());
  for (const SchemeConfig& sc : schemes) {
    std::string l = sc.label();
    if (count[l] > 1) l += "_a" + fmt("%g", sc.a_db);
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace

void emit_outputs(const ExperimentResult& result,
                  const std::vector<std::vector<BerPoint>>* ber,
                  const std::string& out_dir) {
  std::filesystem::path dir = ensure_dir(out_dir);

  write_file(dir / "results.csv", results_csv(result));

  std::vector<SchemeConfig> scheme_cfgs;
  for (const SchemeResult& sr : result.schemes) scheme_cfgs.push_back(sr.config);
  std::vector<std::string> labels = file_labels(scheme_cfgs);

  for (std::size_t i = 0; i < result.schemes.size(); ++i) {
    const SchemeResult& sr = result.schemes[i];
    write_file(dir / ("ccdf_" + labels[i] + ".csv"),
               curve_csv(sr.ccdf.thresholds_db, sr.ccdf.probabilities));
  }

  if (ber != nullptr) {
    for (std::size_t i = 0; i < ber->size() && i < result.schemes.size(); ++i) {
      std::vector<double> x, p;
      for (const BerPoint& pt : (*ber)[i]) {
        x.push_back(pt.snr_db);
        p.push_back(pt.ber);
      }
      write_file(dir / ("ber_" + labels[i] + ".csv"), curve_csv(x, p));
    }
  }

  write_file(dir / "manifest.json", manifest_json(result, ber));
}

void emit_ber_outputs(const ExperimentConfig& cfg,
                      const std::vector<std::vector<BerPoint>>& ber,
                      const std::string& out_dir) {
  std::filesystem::path dir = ensure_dir(out_dir);
  ExperimentResult shell;
  shell.config = cfg;
  std::vector<std::string> labels = file_labels(cfg.schemes);
  for (std::size_t i = 0; i < ber.size() && i < cfg.schemes.size(); ++i) {
    std::vector<double> x, p;
    for (const BerPoint& pt : ber[i]) {
      x.push_back(pt.snr_db);
      p.push_back(pt.ber);
    }
    write_file(dir / ("ber_" + labels[i] + ".csv"), curve_csv(x, p));
  }
  write_file(dir / "manifest.json", manifest_json(shell, &ber));
}

}  // namespace papr
