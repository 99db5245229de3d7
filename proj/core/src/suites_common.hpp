#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "choq/exact.hpp"
#include "choq/parallel.hpp"
#include "choq/rng.hpp"
#include "choq/verify.hpp"

namespace choq::detail {

using SuiteFn = SuiteReport (*)(const SuiteConfig&);

struct SuiteEntry {
  const char* id;
  SuiteFn fn;
};

// Registries contributed per translation unit.
const std::vector<SuiteEntry>& exact_suites();
const std::vector<SuiteEntry>& operator_suites();

using SweepFn = std::vector<SweepRow> (*)(const SuiteConfig&);

struct SweepEntry {
  const char* id;
  SweepFn fn;
};

const std::vector<SweepEntry>& exact_sweeps();
const std::vector<SweepEntry>& operator_sweeps();

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline SuiteReport make_report(const char* id, const SuiteConfig& cfg, CapProvenance prov,
                               double cap) {
  SuiteReport r;
  r.suite = id;
  r.config = cfg;
  r.backend = backend_name(cfg.backend);
  r.threads = effective_threads(cfg.threads);
  r.provenance = prov;
  r.asserted_cap = cap;
  return r;
}

inline int samples_or(const SuiteConfig& cfg, int fallback) {
  return cfg.samples > 0 ? cfg.samples : fallback;
}

inline double cap_or(const SuiteConfig& cfg, double fallback) {
  return std::isnan(cfg.cap) ? fallback : cfg.cap;
}

/// Positive quantized random function (values k * 2^-10), suitable for the
/// zero-tolerance integral suites.
inline GridFunction random_quantized(int n, int L, std::uint64_t seed, double density = 0.4) {
  InstanceSpec spec;
  spec.kind = InstanceKind::random_simple;
  spec.n = n;
  spec.L = L;
  spec.seed = seed;
  spec.quantized = true;
  spec.density = density;
  return generate_function(spec);
}

inline GridSet random_set(int n, int L, std::uint64_t seed, double density = 0.4) {
  InstanceSpec spec;
  spec.kind = InstanceKind::random_simple;
  spec.n = n;
  spec.L = L;
  spec.seed = seed;
  spec.density = density;
  return generate_set(spec);
}

/// Mixed corpus for the boundedness suites. Instances are generated at a
/// fixed base level and upsampled to L, so the L=4 and L=5 runs see the same
/// underlying shapes and the refinement-stability comparison is meaningful.
std::vector<GridFunction> boundedness_corpus(int n, int L, int samples, std::uint64_t seed,
                                             double delta);

/// (integral of g^e dH~^delta)^(1/e) through the fast engine path.
double fast_pnorm(const GridFunction& g, double e, double delta);

/// Headroom for comparing two independently rounded double pipelines; the
/// underlying inequalities are strict in exact arithmetic.
inline constexpr double kFloatSlack = 1e-12;

inline bool leq_with_slack(double lhs, double rhs) {
  if (lhs <= rhs) return true;
  return lhs <= rhs * (1 + kFloatSlack) + 1e-300;
}

}  // namespace choq::detail
