#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "choq/error.hpp"

namespace choq {

/// Everything lives on the half-open unit cube [0,1)^n, n in {1,2,3},
/// discretized into 2^(nL) half-open dyadic cells of side 2^-L. Dimensions
/// above 3 and levels above the per-dimension cap are rejected to keep cell
/// counts at desk scale.
inline constexpr int kMaxDim = 3;
inline constexpr int kMaxLevelStore = 12;  // histogram slots 0..12

int max_level(int n);  // 12 for n=1, 8 for n=2, 5 for n=3
void check_dim_level(int n, int L);

using Vec = std::array<double, kMaxDim>;      // entries past n are zero
using CellIdx = std::array<int, kMaxDim>;

struct DyadicCube {
  int n = 1;
  int level = 0;
  CellIdx index{};  // 0 <= index[i] < 2^level

  double side() const { return 1.0 / static_cast<double>(std::int64_t{1} << level); }
  Vec center() const;
  bool valid() const;
};

struct Ball {
  int n = 1;
  Vec center{};
  double radius = 0;  // > 0, open ball
};

enum class BallMode { inner, center, outer };

/// Dense boolean membership of the level-L cells. Cells are the atoms: a set
/// is exactly a union of half-open cells.
class GridSet {
 public:
  GridSet() = default;
  GridSet(int n, int L);
  static GridSet full(int n, int L);

  int dim() const { return n_; }
  int level() const { return L_; }
  std::int64_t size() const { return static_cast<std::int64_t>(cells_.size()); }
  std::int64_t side() const { return std::int64_t{1} << L_; }

  bool test(std::int64_t flat) const { return cells_[static_cast<std::size_t>(flat)] != 0; }
  void set(std::int64_t flat, bool value = true) {
    cells_[static_cast<std::size_t>(flat)] = value ? 1 : 0;
  }

  std::int64_t flat_index(const CellIdx& idx) const;
  CellIdx coords(std::int64_t flat) const;
  Vec cell_center(std::int64_t flat) const;

  std::int64_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::int64_t> occupied() const;

  GridSet operator|(const GridSet& o) const;
  GridSet operator&(const GridSet& o) const;
  GridSet complement() const;
  bool subset_of(const GridSet& o) const;
  bool operator==(const GridSet& o) const;

  /// Each cell becomes its 2^n children at level L+1.
  GridSet upsample() const;
  /// Same cell indices re-read at level L+k; the pattern lands in the corner
  /// block scaled by 2^-k (a dyadic similarity).
  GridSet embed(int extra_levels) const;

  std::uint64_t digest() const;

  const std::vector<std::uint8_t>& raw() const { return cells_; }

 private:
  int n_ = 1;
  int L_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Nonnegative extended-real cell values, constant on each cell. Stands in
/// for |f|: absolute value is applied at ingestion, NaN is rejected, +inf is
/// allowed.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(int n, int L, double fill = 0.0);

  int dim() const { return n_; }
  int level() const { return L_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

  double operator[](std::int64_t flat) const { return values_[static_cast<std::size_t>(flat)]; }
  void set(std::int64_t flat, double v);

  std::int64_t flat_index(const CellIdx& idx) const;
  CellIdx coords(std::int64_t flat) const;
  Vec cell_center(std::int64_t flat) const;

  GridSet support() const;
  bool has_infinite_cell() const;
  double max_value() const;

  GridFunction upsample() const;
  GridFunction embed(int extra_levels) const;
  GridFunction scaled(double a) const;  // a >= 0

  static GridFunction indicator(const GridSet& s, double value = 1.0);

  std::uint64_t digest() const;

  const std::vector<double>& raw() const { return values_; }

 private:
  int n_ = 1;
  int L_ = 0;
  std::vector<double> values_;
};

/// inner: cells entirely inside the open ball; center: cells whose center
/// lies in it; outer: cells intersecting it. inner <= center <= outer.
GridSet discretize_ball(const Ball& b, int n, int L, BallMode mode);

/// The 2^(n(L - q.level)) level-L cells contained in q.
GridSet cube_cells(const DyadicCube& q, int L);

double cell_center_distance(std::int64_t a, std::int64_t b, int n, int L);

/// Exact membership predicates for one cell against an open ball, used by
/// both discretize_ball and the ball-cover backends. Cell closures touch the
/// sphere only through excluded faces in the half-open convention, which is
/// what makes containment decidable at dyadic coordinates.
bool cell_inside_ball(const CellIdx& idx, int n, int L, const Ball& b);
bool cell_center_in_ball(const CellIdx& idx, int n, int L, const Ball& b);
bool cell_intersects_ball(const CellIdx& idx, int n, int L, const Ball& b);

}  // namespace choq
