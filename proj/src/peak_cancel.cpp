#include "papr/peak_cancel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "papr/rng.hpp"

namespace papr {

namespace {

void check_window(const WindowFn& window, std::size_t signal_len) {
  if (window.n_s < 2 || static_cast<std::size_t>(window.n_s) > signal_len) {
    throw std::invalid_argument("peak cancel: window support exceeds signal length");
  }
}

// Cost of one applied cancellation under the fixed conventions: scaling the
// n_s/2 + 1 distinct tap magnitudes by |alpha| (the pulse is symmetric),
// forming alpha itself (one real-complex product plus one real multiply and
// add for the 1 - a/|s| factor), and n_s complex additions into the signal.
void charge_cancellation(OpCounter& ops, int n_s) {
  ops.real_complex_mults(n_s / 2 + 1);
  ops.real_complex_mults(1);
  ops.real_mults_only(1);
  ops.real_adds_only(1);
  ops.complex_adds(n_s);
}

}  // namespace

cplx scale_factor(cplx peak_sample, double a_linear) {
  if (a_linear <= 0.0) throw std::invalid_argument("scale_factor: threshold must be positive");
  double r = std::abs(peak_sample);
  if (r < a_linear) {
    throw std::invalid_argument("scale_factor: sample is below the threshold");
  }
  return -(1.0 - a_linear / r) * peak_sample;
}

void spc_step(SpcState& state, int m, const WindowFn& window, OpCounter* ops) {
  const int jn = static_cast<int>(state.signal.size());
  check_window(window, state.signal.size());
  if (m < 0 || m >= jn) throw std::invalid_argument("spc_step: index out of range");
  if (std::norm(state.signal[m]) <= state.threshold * state.threshold) {
    throw std::invalid_argument("spc_step: sample is not above the threshold");
  }
  cplx alpha = scale_factor(state.signal[m], state.threshold);
  for (int off = window.min_offset(); off <= window.max_offset(); ++off) {
    int idx = wrap_index(m + off, jn);
    state.signal[idx] += alpha * window.at(off);
  }
  state.iteration += 1;
  if (ops != nullptr) charge_cancellation(*ops, window.n_s);
}

CancelResult cpc(const TimeSignal& signal, double a_linear, const WindowFn& window) {
  check_window(window, signal.size());
  if (a_linear <= 0.0) throw std::invalid_argument("cpc: threshold must be positive");
  const int jn = static_cast<int>(signal.size());
  const double a2 = a_linear * a_linear;

  CancelResult res;
  res.signal = signal;
  res.report.ops.transform(jn);
  res.report.ops.complex_mults(jn);  // one magnitude pass over the input
  res.report.ops.comparisons(jn);

  for (int m = 0; m < jn; ++m) {
    if (std::norm(signal[m]) > a2) {
      cplx alpha = scale_factor(signal[m], a_linear);
      for (int off = window.min_offset(); off <= window.max_offset(); ++off) {
        int idx = wrap_index(m + off, jn);
        res.signal[idx] += alpha * window.at(off);
      }
      res.report.peaks_cancelled += 1;
      charge_cancellation(res.report.ops, window.n_s);
    }
  }
  return res;
}

CancelResult spc_algorithm1(const TimeSignal& signal, double a_linear,
                            const WindowFn& window, long long i_max) {
  check_window(window, signal.size());
  if (a_linear <= 0.0) throw std::invalid_argument("spc_algorithm1: threshold must be positive");
  if (i_max < 1) throw std::invalid_argument("spc_algorithm1: i_max must be >= 1");
  const int jn = static_cast<int>(signal.size());
  const double a2 = a_linear * a_linear;

  SpcState st;
  st.signal = signal;
  st.threshold = a_linear;

  CancelReport rep;
  rep.ops.transform(jn);

  // Squared magnitudes are cached; after a cancellation only the n_s samples
  // under the window change, so later searches recompute just those. The
  // charging mirrors that: the first productive search pays jn magnitude
  // products, subsequent ones pay n_s, every productive search pays jn
  // comparisons, and the final (unproductive) search is free.
  std::vector<double> mag2(jn);
  for (int n = 0; n < jn; ++n) mag2[n] = std::norm(st.signal[n]);

  bool first_search = true;
  while (st.iteration < i_max) {
    int m = 0;
    double best = mag2[0];
    for (int n = 1; n < jn; ++n) {
      if (mag2[n] > best) {  // strict: ties keep the lowest index
        best = mag2[n];
        m = n;
      }
    }
    if (!(best > a2)) break;

    rep.ops.complex_mults(first_search ? jn : window.n_s);
    rep.ops.comparisons(jn);
    first_search = false;

    spc_step(st, m, window, &rep.ops);
    for (int off = window.min_offset(); off <= window.max_offset(); ++off) {
      int idx = wrap_index(m + off, jn);
      mag2[idx] = std::norm(st.signal[idx]);
    }
    // The step sets |signal[m]| to the threshold by construction; pin the
    // cache to a2 so rounding in the last ulp cannot re-elect m.
    mag2[m] = a2;
  }

  rep.iterations_used = st.iteration;
  rep.peaks_cancelled = st.iteration;
  CancelResult res;
  res.signal = std::move(st.signal);
  res.report = rep;
  return res;
}

CancelResult spc_algorithm2(const TimeSignal& signal, double a_linear,
                            const WindowFn& window, std::uint64_t rng_seed) {
  check_window(window, signal.size());
  if (a_linear <= 0.0) throw std::invalid_argument("spc_algorithm2: threshold must be positive");
  const int jn = static_cast<int>(signal.size());
  const double a2 = a_linear * a_linear;

  SpcState st;
  st.signal = signal;
  st.threshold = a_linear;

  CancelReport rep;
  rep.ops.transform(jn);

  // Visit order is a seeded Fisher-Yates permutation; generating it costs no
  // arithmetic under the counting conventions.
  std::vector<int> order(jn);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(rng_seed);
  for (int i = jn - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[i], order[j]);
  }

  for (int m : order) {
    rep.ops.complex_mults(1);
    rep.ops.comparisons(1);
    if (std::norm(st.signal[m]) > a2) {
      spc_step(st, m, window, &rep.ops);
      rep.peaks_cancelled += 1;
    }
  }

  rep.iterations_used = st.iteration;
  CancelResult res;
  res.signal = std::move(st.signal);
  res.report = rep;
  return res;
}

double expected_peak_count(int jn, double a_linear, double sigma) {
  if (jn < 1 || a_linear < 0.0 || sigma <= 0.0) {
    throw std::invalid_argument("expected_peak_count: bad arguments");
  }
  double ratio = (a_linear * a_linear) / (sigma * sigma);
  return static_cast<double>(jn) * std::exp(-ratio);
}

OpCounts complexity_alg1(int jn, int n_s, double i_bar) {
  double lg = std::log2(static_cast<double>(jn));
  OpCounts c;
  c.real_mults = 2.0 * jn * lg + 4.0 * (jn - n_s) + 5.0 * i_bar * (n_s + 1);
  c.real_adds = 3.0 * jn * lg + 2.0 * (jn - n_s) + i_bar * (4.0 * n_s + 1);
  c.real_comps = static_cast<double>(jn) * i_bar;
  return c;
}

OpCounts complexity_alg2(int jn, int n_s, double p_bar) {
  double lg = std::log2(static_cast<double>(jn));
  OpCounts c;
  c.real_mults = 2.0 * jn * lg + 4.0 * jn + p_bar * (n_s + 5);
  c.real_adds = 3.0 * jn * lg + 2.0 * jn + p_bar * (2.0 * n_s + 1);
  c.real_comps = static_cast<double>(jn);
  return c;
}

}  // namespace papr
