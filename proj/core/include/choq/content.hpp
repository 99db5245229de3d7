#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "choq/geometry.hpp"

namespace choq {

/// Per-level powers 2^(-l*delta) used as the cost basis for dyadic covers.
/// When 2*delta is an integer every cover cost is (p + q*sqrt(2)) * 2^-scale2
/// with integer p, q, and the solver compares costs exactly; otherwise
/// comparisons use the canonical double evaluation below.
struct DeltaBasis {
  double delta = 1;
  int L = 0;
  bool half_integer = false;
  int twodelta = 0;  // round(2*delta), valid when half_integer
  int scale2 = 0;    // ceil(L*delta) in half-integer arithmetic
  std::array<double, kMaxLevelStore + 1> b{};

  static DeltaBasis make(double delta, int L);
  double cube_cost(int level) const { return b[static_cast<std::size_t>(level)]; }
};

/// Exact cover cost (p + q*sqrt(2)) * 2^-scale2. Additive in integers, so
/// set-function identities (strong subadditivity, scaling, subadditivity)
/// can be asserted with zero tolerance.
struct ExactVal {
  std::int64_t p = 0;
  std::int64_t q = 0;

  ExactVal operator+(const ExactVal& o) const { return {p + o.p, q + o.q}; }
  ExactVal& operator+=(const ExactVal& o) {
    p += o.p;
    q += o.q;
    return *this;
  }
  ExactVal times(std::int64_t m) const { return {p * m, q * m}; }
  bool is_zero() const { return p == 0 && q == 0; }

  /// Sign of (p + q*sqrt(2)): -1, 0, +1. Exact.
  static int sign(const ExactVal& v);
  static int compare(const ExactVal& a, const ExactVal& b) { return sign({a.p - b.p, a.q - b.q}); }

  /// Canonical double: ldexp(p + q*sqrt(2), -scale2).
  double approx(int scale2) const;
};

struct CoverHistogram {
  std::array<std::uint32_t, kMaxLevelStore + 1> count{};

  ExactVal exact(const DeltaBasis& basis) const;
  double value(const DeltaBasis& basis) const;  // canonical ascending-level sum
  CoverHistogram operator+(const CoverHistogram& o) const;
};

enum class ContentBackend { dyadic_exact, ball_greedy, ball_exact_small };

const char* backend_name(ContentBackend b);

struct ContentResult {
  double value = 0;
  double lower = 0;
  double upper = 0;
  ContentBackend backend = ContentBackend::dyadic_exact;
  double delta = 1;

  std::vector<DyadicCube> cube_cover;
  std::vector<Ball> ball_cover;

  // Populated by the dyadic backend; exact_valid when 2*delta is an integer.
  CoverHistogram hist;
  ExactVal exact;
  bool exact_valid = false;
  int exact_scale = 0;
};

/// Exact optimum of sum l(Q_i)^delta over dyadic covers of the occupied
/// cells (cells are atoms: a cover is valid iff every occupied cell is
/// contained in a chosen cube). Levels 0..L suffice. lower == upper == value
/// and the certificate attains it.
ContentResult dyadic_content(const GridSet& E, double delta);

struct ContentParams {
  double delta = 1;
  bool corner_centers = true;  // candidate centers: occupied-cell centers (+ their corners)
  double r_min = 0;            // 0 => half cell width
  double r_max = 0;            // 0 => first rung able to cover the whole cube
  std::int64_t max_occupied = 512;       // ball-backend family construction cap
  std::int64_t exact_occupied_cap = 64;  // branch-and-bound caps
  std::int64_t exact_candidate_cap = 4096;
};

/// Greedy weighted set cover over the candidate ball family (upper bound on
/// the family optimum, hence on nothing less than the continuum content of
/// the occupied cells). A ball covers a cell iff the half-open cell is
/// contained in the open ball; all geometry is exact integer arithmetic in
/// half-cell units. lower = c_low * dyadic content.
ContentResult ball_content_upper(const GridSet& E, const ContentParams& params);

/// Exact minimum over covers drawn from the same candidate family, by
/// branch-and-bound with admissible bound c_low * dyadic(remainder).
ContentResult ball_content_exact_small(const GridSet& E, const ContentParams& params);

/// (c_low, c_high) with c_low * dyadic <= ball <= c_high * dyadic:
/// c_high = (sqrt(n)/2)^delta (circumscribe each cube), and
/// c_low = 2^-n * 4^-delta (a ball of radius r fits in a side-2r cube, which
/// at most 2^n dyadic cubes of side < 4r cover; dyadic nesting keeps every
/// cell inside one of them, so the atom-cover semantics is preserved).
std::pair<double, double> comparability_bracket(int n, double delta);

/// True iff every occupied cell of E is contained in some cube/ball of the
/// cover. Used to re-check certificates without trusting the optimizer.
bool cover_is_valid(const GridSet& E, const std::vector<DyadicCube>& cubes);
bool cover_is_valid(const GridSet& E, const std::vector<Ball>& balls);

void check_delta(double delta, int n);

}  // namespace choq
