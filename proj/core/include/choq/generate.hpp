#pragma once

#include <cstdint>
#include <string>

#include "choq/geometry.hpp"

namespace choq {

enum class InstanceKind {
  random_simple,
  ball_indicator,
  cantor_dust,
  checkerboard,
  power_kernel,
  union_of_cubes,
};

InstanceKind instance_kind_from_string(const std::string& s);
const char* instance_kind_name(InstanceKind k);

/// Identical spec + seed produce bit-identical instances; all randomness
/// flows through choq::Rng.
struct InstanceSpec {
  InstanceKind kind = InstanceKind::random_simple;
  int n = 2;
  int L = 4;
  std::uint64_t seed = 1;

  double value_lo = 0.0;   // random-simple value range
  double value_hi = 4.0;
  bool quantized = false;  // values are k * 2^-10 in (0, 4]; exact double sums
  double density = 0.25;   // random-simple occupancy probability

  double dim_target = 1.0;  // cantor dust similarity dimension
  double beta = 1.0;        // power kernel exponent
  double kernel_floor = 0;  // 0 => half cell width
  int cube_count = 3;       // union-of-cubes
};

/// Set-valued kinds; random-simple yields a Bernoulli(density) subset.
GridSet generate_set(const InstanceSpec& spec);

/// Function-valued view: set kinds become indicators, random-simple draws
/// values, power-kernel evaluates max(|y-c|, floor)^-beta at cell centers.
GridFunction generate_function(const InstanceSpec& spec);

}  // namespace choq
