#pragma once

#include <string>
#include <vector>

#include "papr/experiment.hpp"

namespace papr {

// Fixed column set; one row per configured scheme.
inline constexpr const char* kResultsHeader =
    "scheme,a_db,papr_1e3_db,sdr_db,c_mul,c_add,c_comp,ifft_count,rate_param,seed";

std::string results_csv(const ExperimentResult& result);
std::string curve_csv(const std::vector<double>& x_db, const std::vector<double>& probability);
std::string manifest_json(const ExperimentResult& result,
                          const std::vector<std::vector<BerPoint>>* ber);

// Writes results.csv, one ccdf_<scheme>.csv per scheme, optional
// ber_<scheme>.csv files, and manifest.json into out_dir (created if
// needed). Output bytes depend only on the result contents, so equal
// configs and seeds produce identical files.
void emit_outputs(const ExperimentResult& result,
                  const std::vector<std::vector<BerPoint>>* ber,
                  const std::string& out_dir);

// BER-only emission: ber_<scheme>.csv per scheme plus manifest.json.
void emit_ber_outputs(const ExperimentConfig& cfg,
                      const std::vector<std::vector<BerPoint>>& ber,
                      const std::string& out_dir);

}  // namespace papr
