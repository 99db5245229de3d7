#include "choq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace choq {

int max_level(int n) {
  switch (n) {
    case 1: return 12;
    case 2: return 8;
    case 3: return 5;
    default: return -1;
  }
}

void check_dim_level(int n, int L) {
  if (n < 1 || n > kMaxDim)
    throw ValidationError("dimension must be in {1,2,3}, got " + std::to_string(n));
  if (L < 0 || L > max_level(n))
    throw ValidationError("level " + std::to_string(L) + " exceeds cap " +
                          std::to_string(max_level(n)) + " for n=" + std::to_string(n));
}

Vec DyadicCube::center() const {
  Vec c{};
  double h = side();
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (index[static_cast<std::size_t>(i)] + 0.5) * h;
  return c;
}

bool DyadicCube::valid() const {
  if (n < 1 || n > kMaxDim || level < 0) return false;
  std::int64_t s = std::int64_t{1} << level;
  for (int i = 0; i < n; ++i) {
    int v = index[static_cast<std::size_t>(i)];
    if (v < 0 || v >= s) return false;
  }
  return true;
}

GridSet::GridSet(int n, int L) : n_(n), L_(L) {
  check_dim_level(n, L);
  cells_.assign(static_cast<std::size_t>(std::int64_t{1} << (n * L)), 0);
}

GridSet GridSet::full(int n, int L) {
  GridSet s(n, L);
  std::fill(s.cells_.begin(), s.cells_.end(), std::uint8_t{1});
  return s;
}

std::int64_t GridSet::flat_index(const CellIdx& idx) const {
  std::int64_t f = 0;
  for (int i = 0; i < n_; ++i) f = (f << L_) | idx[static_cast<std::size_t>(i)];
  return f;
}

CellIdx GridSet::coords(std::int64_t flat) const {
  CellIdx idx{};
  std::int64_t mask = side() - 1;
  for (int i = n_ - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = static_cast<int>(flat & mask);
    flat >>= L_;
  }
  return idx;
}

Vec GridSet::cell_center(std::int64_t flat) const {
  CellIdx idx = coords(flat);
  Vec c{};
  double h = 1.0 / static_cast<double>(side());
  for (int i = 0; i < n_; ++i) c[static_cast<std::size_t>(i)] = (idx[static_cast<std::size_t>(i)] + 0.5) * h;
  return c;
}

std::int64_t GridSet::count() const {
  std::int64_t c = 0;
  for (std::uint8_t b : cells_) c += b;
  return c;
}

std::vector<std::int64_t> GridSet::occupied() const {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < size(); ++i)
    if (cells_[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

static void check_same_grid(int n1, int L1, int n2, int L2) {
  if (n1 != n2 || L1 != L2) throw ValidationError("grid mismatch: set algebra requires equal (n, L)");
}

GridSet GridSet::operator|(const GridSet& o) const {
  check_same_grid(n_, L_, o.n_, o.L_);
  GridSet r(n_, L_);
  for (std::size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] | o.cells_[i];
  return r;
}

GridSet GridSet::operator&(const GridSet& o) const {
  check_same_grid(n_, L_, o.n_, o.L_);
  GridSet r(n_, L_);
  for (std::size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] & o.cells_[i];
  return r;
}

GridSet GridSet::complement() const {
  GridSet r(n_, L_);
  for (std::size_t i = 0; i < cells_.size(); ++i) r.cells_[i] = cells_[i] ? 0 : 1;
  return r;
}

bool GridSet::subset_of(const GridSet& o) const {
  check_same_grid(n_, L_, o.n_, o.L_);
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] && !o.cells_[i]) return false;
  return true;
}

bool GridSet::operator==(const GridSet& o) const {
  return n_ == o.n_ && L_ == o.L_ && cells_ == o.cells_;
}

GridSet GridSet::upsample() const {
  GridSet r(n_, L_ + 1);
  for (std::int64_t f = 0; f < size(); ++f) {
    if (!cells_[static_cast<std::size_t>(f)]) continue;
    CellIdx idx = coords(f);
    int combos = 1 << n_;
    for (int c = 0; c < combos; ++c) {
      CellIdx child{};
      for (int i = 0; i < n_; ++i)
        child[static_cast<std::size_t>(i)] = 2 * idx[static_cast<std::size_t>(i)] + ((c >> i) & 1);
      r.set(r.flat_index(child));
    }
  }
  return r;
}

GridSet GridSet::embed(int extra_levels) const {
  GridSet r(n_, L_ + extra_levels);
  for (std::int64_t f = 0; f < size(); ++f) {
    if (!cells_[static_cast<std::size_t>(f)]) continue;
    r.set(r.flat_index(coords(f)));
  }
  return r;
}

static std::uint64_t fnv1a64(const void* data, std::size_t bytes, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t GridSet::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  std::int32_t hdr[2] = {n_, L_};
  h = fnv1a64(hdr, sizeof hdr, h);
  return fnv1a64(cells_.data(), cells_.size(), h);
}

GridFunction::GridFunction(int n, int L, double fill) : n_(n), L_(L) {
  check_dim_level(n, L);
  if (std::isnan(fill)) throw ValidationError("grid function values must not be NaN");
  values_.assign(static_cast<std::size_t>(std::int64_t{1} << (n * L)), std::fabs(fill));
}

void GridFunction::set(std::int64_t flat, double v) {
  if (std::isnan(v)) throw ValidationError("grid function values must not be NaN");
  values_[static_cast<std::size_t>(flat)] = std::fabs(v);
}

std::int64_t GridFunction::flat_index(const CellIdx& idx) const {
  std::int64_t f = 0;
  for (int i = 0; i < n_; ++i) f = (f << L_) | idx[static_cast<std::size_t>(i)];
  return f;
}

CellIdx GridFunction::coords(std::int64_t flat) const {
  CellIdx idx{};
  std::int64_t mask = (std::int64_t{1} << L_) - 1;
  for (int i = n_ - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = static_cast<int>(flat & mask);
    flat >>= L_;
  }
  return idx;
}

Vec GridFunction::cell_center(std::int64_t flat) const {
  CellIdx idx = coords(flat);
  Vec c{};
  double h = std::ldexp(1.0, -L_);
  for (int i = 0; i < n_; ++i) c[static_cast<std::size_t>(i)] = (idx[static_cast<std::size_t>(i)] + 0.5) * h;
  return c;
}

GridSet GridFunction::support() const {
  GridSet s(n_, L_);
  for (std::int64_t i = 0; i < size(); ++i)
    if (values_[static_cast<std::size_t>(i)] > 0) s.set(i);
  return s;
}

bool GridFunction::has_infinite_cell() const {
  for (double v : values_)
    if (std::isinf(v)) return true;
  return false;
}

double GridFunction::max_value() const {
  double m = 0;
  for (double v : values_) m = std::max(m, v);
  return m;
}

GridFunction GridFunction::upsample() const {
  GridFunction r(n_, L_ + 1);
  for (std::int64_t f = 0; f < size(); ++f) {
    double v = values_[static_cast<std::size_t>(f)];
    if (v == 0) continue;
    CellIdx idx = coords(f);
    int combos = 1 << n_;
    for (int c = 0; c < combos; ++c) {
      CellIdx child{};
      for (int i = 0; i < n_; ++i)
        child[static_cast<std::size_t>(i)] = 2 * idx[static_cast<std::size_t>(i)] + ((c >> i) & 1);
      r.set(r.flat_index(child), v);
    }
  }
  return r;
}

GridFunction GridFunction::embed(int extra_levels) const {
  GridFunction r(n_, L_ + extra_levels);
  for (std::int64_t f = 0; f < size(); ++f) {
    double v = values_[static_cast<std::size_t>(f)];
    if (v == 0) continue;
    r.set(r.flat_index(coords(f)), v);
  }
  return r;
}

GridFunction GridFunction::scaled(double a) const {
  if (a < 0 || std::isnan(a)) throw ValidationError("scale factor must be >= 0");
  GridFunction r = *this;
  for (double& v : r.values_) v *= a;
  return r;
}

GridFunction GridFunction::indicator(const GridSet& s, double value) {
  GridFunction f(s.dim(), s.level());
  for (std::int64_t i = 0; i < s.size(); ++i)
    if (s.test(i)) f.set(i, value);
  return f;
}

std::uint64_t GridFunction::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  std::int32_t hdr[2] = {n_, L_};
  h = fnv1a64(hdr, sizeof hdr, h);
  return fnv1a64(values_.data(), values_.size() * sizeof(double), h);
}

// -- ball predicates ---------------------------------------------------------

// Per-axis geometry is exact: cell endpoints are dyadic rationals, so the
// squared distances below carry no rounding for candidate balls with dyadic
// centers, and containment at the sphere boundary is decided by the half-open
// corner rule rather than by an epsilon.

bool cell_inside_ball(const CellIdx& idx, int n, int L, const Ball& b) {
  double h = std::ldexp(1.0, -L);
  double sup2 = 0;
  bool some_axis_hi_strictly_farther = false;
  for (int i = 0; i < n; ++i) {
    double lo = idx[static_cast<std::size_t>(i)] * h;
    double hi = lo + h;
    double dlo = std::fabs(b.center[static_cast<std::size_t>(i)] - lo);
    double dhi = std::fabs(b.center[static_cast<std::size_t>(i)] - hi);
    double m = std::max(dlo, dhi);
    sup2 += m * m;
    if (dhi > dlo) some_axis_hi_strictly_farther = true;
  }
  double r2 = b.radius * b.radius;
  if (sup2 < r2) return true;
  // Distance r is attained only at corners; a corner is in the half-open cell
  // iff all its coordinates sit at the low face.
  return sup2 == r2 && some_axis_hi_strictly_farther;
}

bool cell_center_in_ball(const CellIdx& idx, int n, int L, const Ball& b) {
  double h = std::ldexp(1.0, -L);
  double d2 = 0;
  for (int i = 0; i < n; ++i) {
    double c = (idx[static_cast<std::size_t>(i)] + 0.5) * h;
    double d = c - b.center[static_cast<std::size_t>(i)];
    d2 += d * d;
  }
  return d2 < b.radius * b.radius;
}

bool cell_intersects_ball(const CellIdx& idx, int n, int L, const Ball& b) {
  double h = std::ldexp(1.0, -L);
  double d2 = 0;
  for (int i = 0; i < n; ++i) {
    double lo = idx[static_cast<std::size_t>(i)] * h;
    double hi = lo + h;
    double c = b.center[static_cast<std::size_t>(i)];
    double d = c < lo ? lo - c : (c > hi ? c - hi : 0.0);
    d2 += d * d;
  }
  return d2 < b.radius * b.radius;
}

GridSet discretize_ball(const Ball& b, int n, int L, BallMode mode) {
  check_dim_level(n, L);
  if (b.radius <= 0) throw ValidationError("ball radius must be positive");
  GridSet s(n, L);
  for (std::int64_t f = 0; f < s.size(); ++f) {
    CellIdx idx = s.coords(f);
    bool in = false;
    switch (mode) {
      case BallMode::inner: in = cell_inside_ball(idx, n, L, b); break;
      case BallMode::center: in = cell_center_in_ball(idx, n, L, b); break;
      case BallMode::outer: in = cell_intersects_ball(idx, n, L, b); break;
    }
    if (in) s.set(f);
  }
  return s;
}

GridSet cube_cells(const DyadicCube& q, int L) {
  check_dim_level(q.n, L);
  if (!q.valid()) throw ValidationError("invalid dyadic cube");
  if (q.level > L)
    throw ValidationError("cube level " + std::to_string(q.level) + " is finer than grid level " +
                          std::to_string(L));
  GridSet s(q.n, L);
  int span = 1 << (L - q.level);
  CellIdx base{};
  for (int i = 0; i < q.n; ++i) base[static_cast<std::size_t>(i)] = q.index[static_cast<std::size_t>(i)] * span;
  std::int64_t total = 1;
  for (int i = 0; i < q.n; ++i) total *= span;
  for (std::int64_t k = 0; k < total; ++k) {
    std::int64_t rem = k;
    CellIdx idx = base;
    for (int i = q.n - 1; i >= 0; --i) {
      idx[static_cast<std::size_t>(i)] += static_cast<int>(rem % span);
      rem /= span;
    }
    s.set(s.flat_index(idx));
  }
  return s;
}

double cell_center_distance(std::int64_t a, std::int64_t b, int n, int L) {
  check_dim_level(n, L);
  std::int64_t mask = (std::int64_t{1} << L) - 1;
  std::int64_t d2 = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t ai = (a >> (L * (n - 1 - i))) & mask;
    std::int64_t bi = (b >> (L * (n - 1 - i))) & mask;
    std::int64_t d = ai - bi;
    d2 += d * d;
  }
  return std::sqrt(static_cast<double>(d2)) * std::ldexp(1.0, -L);
}

}  // namespace choq
