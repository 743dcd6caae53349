#pragma once

#include <cstdint>

namespace papr {

// Real-operation tally under the fixed cost conventions used throughout:
//   complex x complex multiply = 4 real mults + 2 real adds
//   real x complex multiply    = 2 real mults
//   complex add                = 2 real adds
//   magnitude check            = 1 complex multiply (|s|^2) + 1 comparison
//   JN-point transform         = (JN/2) log2(JN) complex mults
//                                + JN log2(JN) complex adds
// Fields are exact integers so cross-symbol aggregation is associative and
// order-independent.
struct OpCounter {
  long long real_mults = 0;
  long long real_adds = 0;
  long long real_comps = 0;

  void complex_mults(long long k) {
    real_mults += 4 * k;
    real_adds += 2 * k;
  }
  void complex_adds(long long k) { real_adds += 2 * k; }
  void real_complex_mults(long long k) { real_mults += 2 * k; }
  void real_mults_only(long long k) { real_mults += k; }
  void real_adds_only(long long k) { real_adds += k; }
  void comparisons(long long k) { real_comps += k; }

  void transform(int jn) {
    int lg = 0;
    while ((1 << lg) < jn) ++lg;
    complex_mults(static_cast<long long>(jn) / 2 * lg);
    complex_adds(static_cast<long long>(jn) * lg);
  }

  OpCounter& operator+=(const OpCounter& o) {
    real_mults += o.real_mults;
    real_adds += o.real_adds;
    real_comps += o.real_comps;
    return *this;
  }

  bool operator==(const OpCounter&) const = default;
};

// Real-valued operation counts for closed-form complexity models evaluated at
// a (possibly fractional) average rate.
struct OpCounts {
  double real_mults = 0.0;
  double real_adds = 0.0;
  double real_comps = 0.0;
};

}  // namespace papr
