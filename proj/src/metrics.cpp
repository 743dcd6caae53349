#include "papr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace papr {

std::vector<double> ccdf_grid(const std::vector<double>& samples_db, double step_db) {
  if (samples_db.empty()) throw std::invalid_argument("ccdf_grid: no samples");
  if (step_db <= 0.0) throw std::invalid_argument("ccdf_grid: step must be positive");
  auto [lo_it, hi_it] = std::minmax_element(samples_db.begin(), samples_db.end());
  double lo = std::floor((*lo_it - 0.2) / step_db) * step_db;
  double hi = std::ceil((*hi_it + step_db) / step_db) * step_db;
  std::vector<double> grid;
  for (double x = lo; x <= hi + step_db / 2; x += step_db) grid.push_back(x);
  return grid;
}

CcdfCurve ccdf_estimate(const std::vector<double>& samples_db,
                        const std::vector<double>& grid_db) {
  if (samples_db.empty()) throw std::invalid_argument("ccdf_estimate: no samples");
  if (grid_db.empty()) throw std::invalid_argument("ccdf_estimate: empty grid");
  for (std::size_t i = 1; i < grid_db.size(); ++i) {
    if (!(grid_db[i] > grid_db[i - 1])) {
      throw std::invalid_argument("ccdf_estimate: grid must be strictly increasing");
    }
  }
  std::vector<double> sorted = samples_db;
  std::sort(sorted.begin(), sorted.end());
  CcdfCurve curve;
  curve.thresholds_db = grid_db;
  curve.n_symbols = static_cast<long long>(sorted.size());
  curve.probabilities.reserve(grid_db.size());
  const double n = static_cast<double>(sorted.size());
  for (double x : grid_db) {
    auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
    curve.probabilities.push_back(static_cast<double>(above) / n);
  }
  return curve;
}

double papr_at_ccdf(const CcdfCurve& curve, double p) {
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("papr_at_ccdf: p must be in (0, 1]");
  const auto& th = curve.thresholds_db;
  const auto& pr = curve.probabilities;
  if (th.size() < 2 || th.size() != pr.size()) {
    throw std::invalid_argument("papr_at_ccdf: malformed curve");
  }
  if (pr.front() < p) {
    throw std::out_of_range("papr_at_ccdf: target probability above the curve start");
  }
  for (std::size_t i = 0; i + 1 < pr.size(); ++i) {
    if (pr[i] >= p && p >= pr[i + 1]) {
      if (pr[i] == pr[i + 1]) return th[i];
      double t;
      if (pr[i + 1] > 0.0) {
        t = (std::log10(p) - std::log10(pr[i])) / (std::log10(pr[i + 1]) - std::log10(pr[i]));
      } else {
        // Crossing into the empty tail. With at least one expected
        // exceedance the quantile sits at the top samples (ties at the
        // maximum); interpolate linearly, accurate to the grid step. Any
        // deeper target is beyond what this sample size can resolve.
        if (curve.n_symbols > 0 && p * static_cast<double>(curve.n_symbols) < 1.0) {
          throw std::out_of_range(
              "papr_at_ccdf: target probability below the observed support; "
              "increase the symbol count");
        }
        t = (pr[i] - p) / pr[i];
      }
      return th[i] + t * (th[i + 1] - th[i]);
    }
  }
  throw std::out_of_range(
      "papr_at_ccdf: target probability below the observed support; "
      "increase the symbol count");
}

void SdrAccumulator::add(const FreqSymbol& reference, const FreqSymbol& processed) {
  if (reference.size() != processed.size()) {
    throw std::invalid_argument("SdrAccumulator: symbol sizes differ");
  }
  const int jn = reference.size();
  const int n = reference.n_carriers;
  for (int k = 0; k < jn; ++k) {
    bool in_band = k < n / 2 || k >= jn - n / 2;
    if (!in_band) continue;
    signal_energy += std::norm(reference.bins[k]);
    distortion_energy += std::norm(processed.bins[k] - reference.bins[k]);
  }
}

double SdrAccumulator::sdr_db() const {
  if (signal_energy <= 0.0) throw std::domain_error("SdrAccumulator: no signal energy");
  if (distortion_energy <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal_energy / distortion_energy);
}

}  // namespace papr
