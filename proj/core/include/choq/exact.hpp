#pragma once

#include "choq/content.hpp"
#include "choq/geometry.hpp"

namespace choq {

/// Layer-cake integral carried as exact integers: thresholds are integer
/// multiples of 2^-value_scale and superlevel contents are (p + q*sqrt(2)) *
/// 2^-content_scale from the dyadic solver, so the whole integral is one
/// ExactVal. Comparing two such values is exact, which is what lets the
/// sublinearity and monotonicity suites assert with zero tolerance: ties are
/// decided structurally, not through float round-off.
///
/// Requires 2*delta integral and every positive value of f an exact multiple
/// of 2^-value_scale (the quantized generator guarantees this).
struct ExactIntegral {
  ExactVal v;     // value = (v.p + v.q*sqrt(2)) * 2^-scale
  int scale = 0;  // value_scale + content scale2

  static ExactIntegral integral(const GridFunction& f, double delta, int value_scale);

  ExactIntegral& operator+=(const ExactIntegral& o);
  static int compare(const ExactIntegral& a, const ExactIntegral& b);  // -1/0/+1, exact
  double approx() const { return v.approx(scale); }
};

}  // namespace choq
