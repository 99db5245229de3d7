#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "choq/choquet.hpp"
#include "choq/generate.hpp"
#include "choq/operators.hpp"

namespace choq {

/// Shared knob set for every suite. Each suite reads the parameters it needs
/// and rejects values outside the hypotheses of the result it checks, with a
/// message naming the violated range.
struct SuiteConfig {
  int n = 2;
  int L = 4;
  int samples = 0;  // 0 => suite default
  std::uint64_t seed = 20260809ull;
  Backend backend = Backend::dyadic_exact;
  int threads = 0;

  double delta = 1.5;
  double delta2 = 2.0;  // larger exponent for the embedding suite
  double kappa = 0.25;
  double alpha = 0.75;
  double p = 1.0;
  double q = 2.0;
  int stride = 1;

  // Overrides the suite's asserted cap when finite (empirical suites only).
  double cap = std::numeric_limits<double>::quiet_NaN();
};

struct InstanceRecord {
  std::string digest;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  bool ok = true;
  std::string note;
};

enum class CapProvenance { paper_explicit, proof_traced, empirical, exact };

const char* provenance_name(CapProvenance p);

struct SuiteReport {
  std::string suite;
  SuiteConfig config;

  // environment
  std::string backend;
  std::vector<double> ladder;
  double distance_floor = 0;
  int threads = 1;

  std::vector<InstanceRecord> records;

  // summary
  std::int64_t count = 0;
  std::int64_t violations = 0;
  double max_ratio = 0;
  double median_ratio = 0;
  double asserted_cap = std::numeric_limits<double>::infinity();
  CapProvenance provenance = CapProvenance::empirical;
  bool pass = false;
  std::string detail;

  void add(InstanceRecord rec);
  void finalize();  // fills count/violations/max/median and the verdict
};

std::vector<std::string> suite_names();
bool suite_exists(const std::string& id);
SuiteReport run_suite(const std::string& id, const SuiteConfig& config);

/// Parameter sweep of one empirical constant (CSV-oriented rows).
struct SweepRow {
  std::string param;
  double value = 0;       // parameter value
  double empirical = 0;   // empirical max ratio at this point
  double cap = std::numeric_limits<double>::quiet_NaN();
  bool pass = true;
};

std::vector<std::string> sweep_names();
std::vector<SweepRow> estimate_constant(const std::string& suite, const SuiteConfig& config);

}  // namespace choq
