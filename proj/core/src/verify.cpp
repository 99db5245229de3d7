#include "choq/verify.hpp"

#include <algorithm>
#include <cmath>

#include "suites_common.hpp"

namespace choq {

const char* provenance_name(CapProvenance p) {
  switch (p) {
    case CapProvenance::paper_explicit: return "paper-explicit";
    case CapProvenance::proof_traced: return "proof-traced";
    case CapProvenance::empirical: return "empirical";
    case CapProvenance::exact: return "exact";
  }
  return "?";
}

void SuiteReport::add(InstanceRecord rec) { records.push_back(std::move(rec)); }

void SuiteReport::finalize() {
  count = static_cast<std::int64_t>(records.size());
  violations = 0;
  std::vector<double> ratios;
  ratios.reserve(records.size());
  max_ratio = 0;
  for (const auto& r : records) {
    if (!r.ok) ++violations;
    if (std::isfinite(r.ratio)) {
      ratios.push_back(r.ratio);
      max_ratio = std::max(max_ratio, r.ratio);
    } else if (r.ratio > 0) {
      max_ratio = std::numeric_limits<double>::infinity();
    }
  }
  std::sort(ratios.begin(), ratios.end());
  median_ratio = ratios.empty()
                     ? 0
                     : (ratios.size() % 2 ? ratios[ratios.size() / 2]
                                          : 0.5 * (ratios[ratios.size() / 2 - 1] + ratios[ratios.size() / 2]));
  pass = violations == 0 && !(max_ratio > asserted_cap) && std::isfinite(max_ratio);
  if (detail.empty()) {
    detail = pass ? "no violations" : std::to_string(violations) + " violation(s)";
    if (std::isfinite(asserted_cap)) detail += ", cap " + std::to_string(asserted_cap);
  }
}

std::vector<std::string> suite_names() {
  std::vector<std::string> ids;
  for (const auto& e : detail::exact_suites()) ids.emplace_back(e.id);
  for (const auto& e : detail::operator_suites()) ids.emplace_back(e.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool suite_exists(const std::string& id) {
  for (const auto& e : detail::exact_suites())
    if (id == e.id) return true;
  for (const auto& e : detail::operator_suites())
    if (id == e.id) return true;
  return false;
}

SuiteReport run_suite(const std::string& id, const SuiteConfig& config) {
  for (const auto& e : detail::exact_suites())
    if (id == e.id) return e.fn(config);
  for (const auto& e : detail::operator_suites())
    if (id == e.id) return e.fn(config);
  throw ValidationError("unknown suite: " + id);
}

std::vector<std::string> sweep_names() {
  std::vector<std::string> ids;
  for (const auto& e : detail::exact_sweeps()) ids.emplace_back(e.id);
  for (const auto& e : detail::operator_sweeps()) ids.emplace_back(e.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<SweepRow> estimate_constant(const std::string& suite, const SuiteConfig& config) {
  for (const auto& e : detail::exact_sweeps())
    if (suite == e.id) return e.fn(config);
  for (const auto& e : detail::operator_sweeps())
    if (suite == e.id) return e.fn(config);
  throw ValidationError("suite does not support constant sweeps: " + suite);
}

namespace detail {

std::vector<GridFunction> boundedness_corpus(int n, int L, int samples, std::uint64_t seed,
                                             double delta) {
  int base = std::min(L, 4);
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    InstanceSpec spec;
    spec.n = n;
    spec.L = base;
    spec.seed = mix_seed(seed, static_cast<std::uint64_t>(i));
    switch (i % 5) {
      case 0:
        spec.kind = InstanceKind::random_simple;
        spec.density = 0.3;
        spec.value_hi = 4.0;
        break;
      case 1: spec.kind = InstanceKind::ball_indicator; break;
      case 2: {
        spec.kind = InstanceKind::cantor_dust;
        double t = std::min(static_cast<double>(n) - 0.1, std::max(0.5, delta));
        spec.dim_target = t;
        break;
      }
      case 3:
        spec.kind = InstanceKind::power_kernel;
        spec.beta = 0.5 * delta;
        break;
      default: spec.kind = InstanceKind::union_of_cubes; break;
    }
    GridFunction f = generate_function(spec);
    if (f.support().empty()) {
      spec.kind = InstanceKind::checkerboard;
      f = generate_function(spec);
    }
    for (int l = base; l < L; ++l) f = f.upsample();
    out.push_back(std::move(f));
  }
  return out;
}

double fast_pnorm(const GridFunction& g, double e, double delta) {
  if (!(e > 0)) throw ValidationError("norm exponent must be positive");
  GridFunction h(g.dim(), g.level());
  for (std::int64_t i = 0; i < g.size(); ++i) {
    double v = g[i];
    if (v > 0) h.set(i, std::pow(v, e));
  }
  RestrictedIntegrator integ(h, delta);
  double integral = integ.integrate_all();
  if (std::isinf(integral)) return integral;
  return std::pow(integral, 1.0 / e);
}

}  // namespace detail

}  // namespace choq
