#include "choq/choquet.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace choq {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::dyadic_exact: return "dyadic-exact";
    case Backend::ball_greedy_upper: return "ball-greedy-upper";
  }
  return "?";
}

static double set_content(const GridSet& s, double delta, Backend backend,
                          const ContentParams* ball_params) {
  if (backend == Backend::dyadic_exact) return dyadic_content(s, delta).value;
  ContentParams p = ball_params ? *ball_params : ContentParams{};
  p.delta = delta;
  return ball_content_upper(s, p).value;
}

DistributionFunction distribution(const GridFunction& f, double delta, Backend backend,
                                  const ContentParams* ball_params) {
  check_delta(delta, f.dim());
  DistributionFunction d;

  std::set<double> values;
  bool has_inf = false;
  for (std::int64_t i = 0; i < f.size(); ++i) {
    double v = f[i];
    if (v <= 0) continue;
    if (std::isinf(v)) {
      has_inf = true;
      continue;
    }
    values.insert(v);
  }
  d.thresholds.assign(values.begin(), values.end());

  if (has_inf) {
    GridSet inf_set(f.dim(), f.level());
    for (std::int64_t i = 0; i < f.size(); ++i)
      if (std::isinf(f[i])) inf_set.set(i);
    d.infinity_content = set_content(inf_set, delta, backend, ball_params);
  }

  // Build superlevel sets once, from the top threshold down, so each set is
  // a superset of the previous one.
  d.contents.assign(d.thresholds.size(), 0.0);
  GridSet super(f.dim(), f.level());
  for (std::int64_t i = 0; i < f.size(); ++i)
    if (std::isinf(f[i])) super.set(i);
  for (std::size_t k = d.thresholds.size(); k-- > 0;) {
    double t = d.thresholds[k];
    for (std::int64_t i = 0; i < f.size(); ++i)
      if (f[i] >= t && !std::isinf(f[i])) super.set(i);
    d.contents[k] = set_content(super, delta, backend, ball_params);
  }
  if (backend == Backend::ball_greedy_upper) {
    // Greedy is not monotone under set inclusion on its own. A superset's
    // certificate also covers the subset, so clamping to the neighbour keeps
    // every entry a certified upper bound and restores (C2) for the stored
    // distribution.
    for (std::size_t k = 1; k < d.contents.size(); ++k)
      d.contents[k] = std::min(d.contents[k], d.contents[k - 1]);
  }
  return d;
}

double integral_from_distribution(const DistributionFunction& d) {
  if (d.infinity_content > 0) return std::numeric_limits<double>::infinity();
  double integral = 0, prev = 0;
  for (std::size_t k = 0; k < d.thresholds.size(); ++k) {
    integral += (d.thresholds[k] - prev) * d.contents[k];
    prev = d.thresholds[k];
  }
  return integral;
}

double power_integral_from_distribution(const DistributionFunction& d, double p) {
  if (!(p > 0)) throw ValidationError("power integral requires p > 0, got " + std::to_string(p));
  if (d.infinity_content > 0) return std::numeric_limits<double>::infinity();
  double integral = 0, prev = 0;
  for (std::size_t k = 0; k < d.thresholds.size(); ++k) {
    double tp = std::pow(d.thresholds[k], p);
    integral += (tp - prev) * d.contents[k];
    prev = tp;
  }
  return integral;
}

double choquet_integral(const GridFunction& f, double delta, Backend backend,
                        const ContentParams* ball_params) {
  return integral_from_distribution(distribution(f, delta, backend, ball_params));
}

double choquet_integral_power(const GridFunction& f, double p, double delta, Backend backend,
                              const ContentParams* ball_params) {
  return power_integral_from_distribution(distribution(f, delta, backend, ball_params), p);
}

double quasi_norm(const GridFunction& f, double p, double delta, Backend backend,
                  const ContentParams* ball_params) {
  if (!(p >= 1)) throw ValidationError("quasi-norm requires 1 <= p < inf, got " + std::to_string(p));
  double integral = choquet_integral_power(f, p, delta, backend, ball_params);
  if (std::isinf(integral)) return integral;
  return std::pow(integral, 1.0 / p);
}

}  // namespace choq
