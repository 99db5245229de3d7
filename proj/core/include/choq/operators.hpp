#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "choq/choquet.hpp"
#include "choq/geometry.hpp"

namespace choq {

/// Finite stand-in for "sup over r > 0". Radii are half-octave steps from one
/// cell width up to a power of two past sqrt(n), so every dyadic radius and
/// its double are rungs; several pointwise inequalities in the test suites
/// rely on that closure.
struct RadiusLadder {
  std::vector<double> radii;  // strictly increasing, min >= cell width

  static RadiusLadder standard(int n, int L);
  /// Quarter-octave refinement; a superset of standard(n, L).
  static RadiusLadder quarter_steps(int n, int L);

  bool empty() const { return radii.empty(); }
  double top() const { return radii.back(); }
  void validate(int L) const;
};

struct OperatorParams {
  double delta = 1;    // content dimension used by the operator
  double kappa = 0;    // fractional order of the maximal operator
  double alpha = 0;    // order of the Riesz potential
  Backend backend = Backend::dyadic_exact;
  RadiusLadder ladder;        // empty => standard(n, L)
  double distance_floor = 0;  // 0 => half cell width
  int stride = 1;             // uncentered/sharp candidate sub-lattice stride
  int threads = 0;            // 0 => hardware concurrency
};

struct OperatorResult {
  GridFunction output;
  std::string op;
  OperatorParams params;  // effective values (ladder and floor resolved)
  std::uint64_t input_digest = 0;
};

/// sup_r r^kappa / r^delta * int_{B(x,r)} f dH over the ladder, evaluated at
/// every cell center with center-mode ball discretization. The normalization
/// is always the analytic ball content r^delta, never a computed cover.
OperatorResult maximal_centered(const GridFunction& f, const OperatorParams& params);

/// Same normalized averages over candidate balls containing x: centers on the
/// stride sub-lattice plus every centered candidate. Pointwise >= centered.
OperatorResult maximal_uncentered(const GridFunction& f, const OperatorParams& params);

/// sup over candidate balls containing x of r^-delta int_B |f - f_B| dH with
/// f_B = r^-delta int_B f dH.
OperatorResult maximal_sharp(const GridFunction& f, const OperatorParams& params);

/// Riemann-sum Lebesgue averages r^kappa/|B| sum f * h^n over the same
/// ladder, |B| the exact Euclidean ball volume.
OperatorResult classical_maximal(const GridFunction& f, const OperatorParams& params);

/// x -> int f(y) * max(|x-y|, floor)^(alpha-delta) dH(y), layer-cake over the
/// chosen backend; distances between cell centers, the self cell uses the
/// floored kernel.
OperatorResult riesz_potential(const GridFunction& f, const OperatorParams& params);

/// Riemann-sum counterpart with kernel max(|x-y|, floor)^(alpha-n).
OperatorResult classical_riesz(const GridFunction& f, const OperatorParams& params);

double euclidean_ball_volume(int n, double r);

}  // namespace choq
