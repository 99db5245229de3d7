#include "choq/generate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "choq/rng.hpp"

namespace choq {

InstanceKind instance_kind_from_string(const std::string& s) {
  if (s == "random-simple") return InstanceKind::random_simple;
  if (s == "ball-indicator") return InstanceKind::ball_indicator;
  if (s == "cantor-dust") return InstanceKind::cantor_dust;
  if (s == "checkerboard") return InstanceKind::checkerboard;
  if (s == "power-kernel") return InstanceKind::power_kernel;
  if (s == "union-of-cubes") return InstanceKind::union_of_cubes;
  throw ValidationError("unknown instance kind: " + s);
}

const char* instance_kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::random_simple: return "random-simple";
    case InstanceKind::ball_indicator: return "ball-indicator";
    case InstanceKind::cantor_dust: return "cantor-dust";
    case InstanceKind::checkerboard: return "checkerboard";
    case InstanceKind::power_kernel: return "power-kernel";
    case InstanceKind::union_of_cubes: return "union-of-cubes";
  }
  return "?";
}

namespace {

GridSet cantor_dust(const InstanceSpec& spec) {
  const int n = spec.n, L = spec.L;
  // Keep k of the 2^(n*m) descendants every m levels; the similarity
  // dimension is log2(k)/m. Search (m, k) with m dividing L for the closest
  // match to the target.
  int best_m = -1, best_k = -1;
  double best_err = 1e9;
  for (int m = 1; m <= 3 && m <= L; ++m) {
    if (L % m != 0) continue;
    int options = 1 << (n * m);
    for (int k = 1; k <= options; ++k) {
      double d = std::log2(static_cast<double>(k)) / m;
      double err = std::fabs(d - spec.dim_target);
      if (err < best_err) {
        best_err = err;
        best_m = m;
        best_k = k;
      }
    }
  }
  if (best_m < 0 || best_err > 0.25)
    throw ValidationError("cantor dust: target dimension " + std::to_string(spec.dim_target) +
                          " unreachable at L=" + std::to_string(L));
  Rng rng(spec.seed);
  const int m = best_m, k = best_k, options = 1 << (n * m);
  std::vector<CellIdx> kept{CellIdx{}};
  for (int level = 0; level < L; level += m) {
    std::vector<CellIdx> next;
    std::vector<int> pool(static_cast<std::size_t>(options));
    for (const CellIdx& cell : kept) {
      for (int i = 0; i < options; ++i) pool[static_cast<std::size_t>(i)] = i;
      // Partial Fisher-Yates draw of k distinct child slots.
      for (int j = 0; j < k; ++j) {
        int pick = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(options - j)));
        std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick)]);
        int slot = pool[static_cast<std::size_t>(j)];
        CellIdx child{};
        for (int i = 0; i < n; ++i) {
          int digit = (slot >> (m * i)) & ((1 << m) - 1);
          child[static_cast<std::size_t>(i)] = (cell[static_cast<std::size_t>(i)] << m) | digit;
        }
        next.push_back(child);
      }
    }
    kept = std::move(next);
  }
  GridSet s(n, L);
  for (const CellIdx& cell : kept) s.set(s.flat_index(cell));
  return s;
}

}  // namespace

GridSet generate_set(const InstanceSpec& spec) {
  check_dim_level(spec.n, spec.L);
  Rng rng(spec.seed);
  switch (spec.kind) {
    case InstanceKind::random_simple: {
      GridSet s(spec.n, spec.L);
      for (std::int64_t i = 0; i < s.size(); ++i)
        if (rng.bernoulli(spec.density)) s.set(i);
      return s;
    }
    case InstanceKind::ball_indicator: {
      GridSet proto(spec.n, spec.L);
      std::int64_t c = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(proto.size())));
      Ball b;
      b.n = spec.n;
      b.center = proto.cell_center(c);
      b.radius = rng.uniform(0.1, 0.35);
      return discretize_ball(b, spec.n, spec.L, BallMode::center);
    }
    case InstanceKind::cantor_dust:
      return cantor_dust(spec);
    case InstanceKind::checkerboard: {
      GridSet s(spec.n, spec.L);
      for (std::int64_t i = 0; i < s.size(); ++i) {
        CellIdx idx = s.coords(i);
        int parity = 0;
        for (int d = 0; d < spec.n; ++d) parity += idx[static_cast<std::size_t>(d)];
        if (parity % 2 == 0) s.set(i);
      }
      return s;
    }
    case InstanceKind::union_of_cubes: {
      GridSet s(spec.n, spec.L);
      int count = std::max(1, spec.cube_count);
      for (int j = 0; j < count; ++j) {
        DyadicCube q;
        q.n = spec.n;
        q.level = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.L) + 1));
        for (int i = 0; i < spec.n; ++i)
          q.index[static_cast<std::size_t>(i)] =
              static_cast<int>(rng.below(std::uint64_t{1} << q.level));
        s = s | cube_cells(q, spec.L);
      }
      return s;
    }
    case InstanceKind::power_kernel:
      return generate_function(spec).support();
  }
  throw ValidationError("unhandled instance kind");
}

GridFunction generate_function(const InstanceSpec& spec) {
  check_dim_level(spec.n, spec.L);
  switch (spec.kind) {
    case InstanceKind::random_simple: {
      Rng rng(spec.seed);
      GridFunction f(spec.n, spec.L);
      for (std::int64_t i = 0; i < f.size(); ++i) {
        if (!rng.bernoulli(spec.density)) continue;
        double v;
        if (spec.quantized) {
          v = static_cast<double>(1 + rng.below(4095)) * 0x1.0p-10;
        } else {
          v = rng.uniform(spec.value_lo, spec.value_hi);
        }
        if (v > 0) f.set(i, v);
      }
      return f;
    }
    case InstanceKind::power_kernel: {
      Rng rng(spec.seed);
      GridFunction f(spec.n, spec.L);
      std::int64_t c = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(f.size())));
      double floor =
          spec.kernel_floor > 0 ? spec.kernel_floor : std::ldexp(1.0, -(spec.L + 1));
      for (std::int64_t i = 0; i < f.size(); ++i) {
        double d = cell_center_distance(i, c, spec.n, spec.L);
        f.set(i, std::pow(std::max(d, floor), -spec.beta));
      }
      return f;
    }
    default:
      return GridFunction::indicator(generate_set(spec));
  }
}

}  // namespace choq
