#include "choq/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "choq/parallel.hpp"

namespace choq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Grid {
  int n, L;
  std::int64_t side, cells;
  double h;
};

Grid grid_of(const GridFunction& f) {
  return {f.dim(), f.level(), std::int64_t{1} << f.level(),
          std::int64_t{1} << (f.dim() * f.level()), std::ldexp(1.0, -f.level())};
}

void decode(std::int64_t flat, const Grid& g, std::int64_t* out) {
  std::int64_t mask = g.side - 1;
  for (int i = g.n - 1; i >= 0; --i) {
    out[i] = flat & mask;
    flat >>= g.L;
  }
}

std::int64_t sq_cell_distance(std::int64_t a, std::int64_t b, const Grid& g) {
  std::int64_t mask = g.side - 1;
  std::int64_t d2 = 0;
  for (int i = 0; i < g.n; ++i) {
    std::int64_t ai = (a >> (g.L * (g.n - 1 - i))) & mask;
    std::int64_t bi = (b >> (g.L * (g.n - 1 - i))) & mask;
    std::int64_t d = ai - bi;
    d2 += d * d;
  }
  return d2;
}

/// Squared radius in cell units; ldexp keeps the power-of-two scaling exact.
double sq_radius_cells(double r, int L) {
  double rc = std::ldexp(r, L);
  return rc * rc;
}

OperatorParams resolve(const GridFunction& f, const OperatorParams& in) {
  OperatorParams p = in;
  if (p.ladder.empty()) p.ladder = RadiusLadder::standard(f.dim(), f.level());
  p.ladder.validate(f.level());
  if (p.distance_floor <= 0) p.distance_floor = std::ldexp(1.0, -(f.level() + 1));
  if (p.stride < 1) throw ValidationError("stride must be >= 1");
  return p;
}

OperatorResult make_result(const GridFunction& f, const char* op, const OperatorParams& p) {
  OperatorResult r;
  r.output = GridFunction(f.dim(), f.level());
  r.op = op;
  r.params = p;
  r.input_digest = f.digest();
  return r;
}

/// Layer-cake integral of arbitrary (value, cell) pairs through an engine.
double integrate_pairs(DyadicEngine& engine, std::vector<std::pair<double, std::int64_t>>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  engine.clear();
  double integral = 0;
  // First accumulate (threshold, content) in decreasing-threshold order.
  static thread_local std::vector<double> th, ct;
  th.clear();
  ct.clear();
  bool any = false;
  double cur = 0;
  for (const auto& [v, idx] : pairs) {
    if (std::isinf(v)) return kInf;
    if (any && v != cur) {
      th.push_back(cur);
      ct.push_back(engine.value());
    }
    cur = v;
    any = true;
    engine.add_cell(idx);
  }
  if (any) {
    th.push_back(cur);
    ct.push_back(engine.value());
  }
  double prev = 0;
  for (std::size_t j = th.size(); j-- > 0;) {
    integral += (th[j] - prev) * ct[j];
    prev = th[j];
  }
  return integral;
}

/// Slow generic restricted integral used by the ball-greedy backend.
template <class Member>
double integrate_backend(const GridFunction& f, double delta, Backend backend, Member&& member) {
  GridFunction g(f.dim(), f.level());
  for (std::int64_t i = 0; i < f.size(); ++i)
    if (member(i)) g.set(i, f[i]);
  return choquet_integral(g, delta, backend);
}

void check_maximal_params(const GridFunction& f, const OperatorParams& p) {
  check_delta(p.delta, f.dim());
  if (!(p.kappa >= 0) || !(p.kappa < p.delta))
    throw ValidationError("fractional maximal operator requires kappa in [0, delta) = [0, " +
                          std::to_string(p.delta) + "), got kappa=" + std::to_string(p.kappa));
}

}  // namespace

RadiusLadder RadiusLadder::standard(int n, int L) {
  check_dim_level(n, L);
  RadiusLadder ladder;
  // top octave: first power of two >= 2*sqrt(n)
  int top = 1;
  while (std::exp2(top) < 2.0 * std::sqrt(static_cast<double>(n))) ++top;
  for (int k = 0; k <= 2 * (L + top); ++k) ladder.radii.push_back(std::exp2(0.5 * k - L));
  return ladder;
}

RadiusLadder RadiusLadder::quarter_steps(int n, int L) {
  check_dim_level(n, L);
  RadiusLadder ladder;
  int top = 1;
  while (std::exp2(top) < 2.0 * std::sqrt(static_cast<double>(n))) ++top;
  for (int k = 0; k <= 4 * (L + top); ++k) ladder.radii.push_back(std::exp2(0.25 * k - L));
  return ladder;
}

void RadiusLadder::validate(int L) const {
  if (radii.empty()) throw ValidationError("radius ladder must be nonempty");
  double h = std::ldexp(1.0, -L);
  if (radii.front() < h)
    throw ValidationError("minimum ladder radius must be at least one cell width");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw ValidationError("radius ladder must be increasing");
}

double euclidean_ball_volume(int n, double r) {
  switch (n) {
    case 1: return 2 * r;
    case 2: return std::numbers::pi * r * r;
    case 3: return 4.0 / 3.0 * std::numbers::pi * r * r * r;
    default: throw ValidationError("dimension must be in {1,2,3}");
  }
}

OperatorResult maximal_centered(const GridFunction& f, const OperatorParams& params) {
  OperatorParams p = resolve(f, params);
  check_maximal_params(f, p);
  Grid g = grid_of(f);
  OperatorResult res = make_result(f, "maximal-centered", p);

  std::vector<double> rsq(p.ladder.radii.size()), weight(p.ladder.radii.size());
  for (std::size_t k = 0; k < p.ladder.radii.size(); ++k) {
    rsq[k] = sq_radius_cells(p.ladder.radii[k], g.L);
    weight[k] = std::pow(p.ladder.radii[k], p.kappa - p.delta);
  }

  auto& out = res.output;
  parallel_blocks(g.cells, p.threads, [&](std::int64_t lo, std::int64_t hi) {
    RestrictedIntegrator integ(f, p.delta);
    for (std::int64_t x = lo; x < hi; ++x) {
      double best = 0;
      for (std::size_t k = 0; k < rsq.size(); ++k) {
        double v;
        if (p.backend == Backend::dyadic_exact) {
          v = integ.integrate_if([&](std::int64_t y) { return sq_cell_distance(x, y, g) < rsq[k]; });
        } else {
          v = integrate_backend(f, p.delta, p.backend,
                                [&](std::int64_t y) { return sq_cell_distance(x, y, g) < rsq[k]; });
        }
        v *= weight[k];
        if (v > best) best = v;
      }
      out.set(x, best);
    }
  });
  return res;
}

namespace {

struct Candidate {
  std::int64_t center;  // flat cell id
  std::size_t k;        // ladder index
};

std::vector<Candidate> lattice_candidates(const Grid& g, const RadiusLadder& ladder, int stride) {
  std::vector<Candidate> cands;
  std::vector<std::int64_t> centers;
  std::int64_t per_axis = (g.side + stride - 1) / stride;
  std::int64_t total = 1;
  for (int i = 0; i < g.n; ++i) total *= per_axis;
  for (std::int64_t t = 0; t < total; ++t) {
    std::int64_t rem = t, flat = 0;
    for (int i = g.n - 1; i >= 0; --i) {
      std::int64_t coord = (rem % per_axis) * stride;
      rem /= per_axis;
      flat |= coord << (g.L * (g.n - 1 - i));
    }
    centers.push_back(flat);
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  for (std::int64_t c : centers)
    for (std::size_t k = 0; k < ladder.radii.size(); ++k) cands.push_back({c, k});
  return cands;
}

}  // namespace

OperatorResult maximal_uncentered(const GridFunction& f, const OperatorParams& params) {
  OperatorParams p = resolve(f, params);
  check_maximal_params(f, p);
  Grid g = grid_of(f);

  // Centered candidates first: the output is pointwise >= the centered one.
  OperatorResult res = maximal_centered(f, p);
  res.op = "maximal-uncentered";

  std::vector<double> rsq(p.ladder.radii.size()), weight(p.ladder.radii.size());
  for (std::size_t k = 0; k < p.ladder.radii.size(); ++k) {
    rsq[k] = sq_radius_cells(p.ladder.radii[k], g.L);
    weight[k] = std::pow(p.ladder.radii[k], p.kappa - p.delta);
  }

  std::vector<Candidate> cands = lattice_candidates(g, p.ladder, p.stride);
  std::vector<double> vals(cands.size(), 0.0);
  parallel_blocks(static_cast<std::int64_t>(cands.size()), p.threads,
                  [&](std::int64_t lo, std::int64_t hi) {
                    RestrictedIntegrator integ(f, p.delta);
                    for (std::int64_t i = lo; i < hi; ++i) {
                      const Candidate& c = cands[static_cast<std::size_t>(i)];
                      double v;
                      if (p.backend == Backend::dyadic_exact) {
                        v = integ.integrate_if([&](std::int64_t y) {
                          return sq_cell_distance(c.center, y, g) < rsq[c.k];
                        });
                      } else {
                        v = integrate_backend(f, p.delta, p.backend, [&](std::int64_t y) {
                          return sq_cell_distance(c.center, y, g) < rsq[c.k];
                        });
                      }
                      vals[static_cast<std::size_t>(i)] = v * weight[c.k];
                    }
                  });

  auto& out = res.output;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const Candidate& c = cands[i];
    if (vals[i] <= 0) continue;
    for (std::int64_t x = 0; x < g.cells; ++x)
      if (sq_cell_distance(c.center, x, g) < rsq[c.k] && vals[i] > out[x]) out.set(x, vals[i]);
  }
  return res;
}

OperatorResult maximal_sharp(const GridFunction& f, const OperatorParams& params) {
  OperatorParams p = resolve(f, params);
  check_delta(p.delta, f.dim());
  Grid g = grid_of(f);
  OperatorResult res = make_result(f, "maximal-sharp", p);

  std::vector<double> rsq(p.ladder.radii.size()), wnorm(p.ladder.radii.size());
  for (std::size_t k = 0; k < p.ladder.radii.size(); ++k) {
    rsq[k] = sq_radius_cells(p.ladder.radii[k], g.L);
    wnorm[k] = std::pow(p.ladder.radii[k], -p.delta);
  }

  // Lattice candidates contribute to every cell they contain; centered
  // candidates contribute to their own cell.
  std::vector<Candidate> cands = lattice_candidates(g, p.ladder, p.stride);
  std::vector<double> vals(cands.size(), 0.0);
  auto eval_candidate = [&](RestrictedIntegrator& integ, std::int64_t center, std::size_t k) {
    auto member = [&](std::int64_t y) { return sq_cell_distance(center, y, g) < rsq[k]; };
    double mean = wnorm[k] * integ.integrate_if(member);
    if (std::isinf(mean)) return kInf;
    return wnorm[k] * integ.integrate_abs_shift_if(mean, member);
  };

  parallel_blocks(static_cast<std::int64_t>(cands.size()), p.threads,
                  [&](std::int64_t lo, std::int64_t hi) {
                    RestrictedIntegrator integ(f, p.delta);
                    for (std::int64_t i = lo; i < hi; ++i)
                      vals[static_cast<std::size_t>(i)] =
                          eval_candidate(integ, cands[static_cast<std::size_t>(i)].center,
                                         cands[static_cast<std::size_t>(i)].k);
                  });

  auto& out = res.output;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const Candidate& c = cands[i];
    if (vals[i] <= 0) continue;
    for (std::int64_t x = 0; x < g.cells; ++x)
      if (sq_cell_distance(c.center, x, g) < rsq[c.k] && vals[i] > out[x]) out.set(x, vals[i]);
  }
  parallel_blocks(g.cells, p.threads, [&](std::int64_t lo, std::int64_t hi) {
    RestrictedIntegrator integ(f, p.delta);
    for (std::int64_t x = lo; x < hi; ++x) {
      double best = out[x];
      for (std::size_t k = 0; k < rsq.size(); ++k) {
        double v = eval_candidate(integ, x, k);
        if (v > best) best = v;
      }
      out.set(x, best);
    }
  });
  return res;
}

OperatorResult classical_maximal(const GridFunction& f, const OperatorParams& params) {
  OperatorParams p = resolve(f, params);
  if (!(p.kappa >= 0) || !(p.kappa < f.dim()))
    throw ValidationError("classical fractional maximal operator requires kappa in [0, n)");
  Grid g = grid_of(f);
  OperatorResult res = make_result(f, "classical-maximal", p);

  std::vector<double> rsq(p.ladder.radii.size()), weight(p.ladder.radii.size());
  double cellvol = std::pow(g.h, g.n);
  for (std::size_t k = 0; k < p.ladder.radii.size(); ++k) {
    rsq[k] = sq_radius_cells(p.ladder.radii[k], g.L);
    weight[k] =
        std::pow(p.ladder.radii[k], p.kappa) / euclidean_ball_volume(g.n, p.ladder.radii[k]);
  }

  auto& out = res.output;
  parallel_blocks(g.cells, p.threads, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t x = lo; x < hi; ++x) {
      double best = 0;
      for (std::size_t k = 0; k < rsq.size(); ++k) {
        double sum = 0;
        for (std::int64_t y = 0; y < g.cells; ++y)
          if (f[y] > 0 && sq_cell_distance(x, y, g) < rsq[k]) sum += f[y];
        double v = weight[k] * sum * cellvol;
        if (v > best) best = v;
      }
      out.set(x, best);
    }
  });
  return res;
}

namespace {

/// Kernel lookup over integer squared cell distances: max(h*sqrt(d2), floor)^expo.
std::vector<double> kernel_table(const Grid& g, double floor, double expo) {
  std::int64_t maxd2 = 0;
  std::int64_t span = g.side - 1;
  maxd2 = static_cast<std::int64_t>(g.n) * span * span;
  std::vector<double> table(static_cast<std::size_t>(maxd2) + 1);
  for (std::int64_t d2 = 0; d2 <= maxd2; ++d2) {
    double d = g.h * std::sqrt(static_cast<double>(d2));
    table[static_cast<std::size_t>(d2)] = std::pow(std::max(d, floor), expo);
  }
  return table;
}

}  // namespace

OperatorResult riesz_potential(const GridFunction& f, const OperatorParams& params) {
  OperatorParams p = resolve(f, params);
  check_delta(p.delta, f.dim());
  if (!(p.alpha > 0) || !(p.alpha < p.delta))
    throw ValidationError("riesz potential requires alpha in (0, delta) = (0, " +
                          std::to_string(p.delta) + "), got alpha=" + std::to_string(p.alpha));
  Grid g = grid_of(f);
  OperatorResult res = make_result(f, "riesz-potential", p);

  std::vector<double> ktab = kernel_table(g, p.distance_floor, p.alpha - p.delta);
  std::vector<std::int64_t> support;
  for (std::int64_t y = 0; y < g.cells; ++y)
    if (f[y] > 0) support.push_back(y);

  auto& out = res.output;
  parallel_blocks(g.cells, p.threads, [&](std::int64_t lo, std::int64_t hi) {
    DyadicEngine engine(g.n, g.L, p.delta);
    std::vector<std::pair<double, std::int64_t>> pairs;
    pairs.reserve(support.size());
    for (std::int64_t x = lo; x < hi; ++x) {
      if (p.backend == Backend::dyadic_exact) {
        pairs.clear();
        for (std::int64_t y : support)
          pairs.emplace_back(f[y] * ktab[static_cast<std::size_t>(sq_cell_distance(x, y, g))], y);
        out.set(x, integrate_pairs(engine, pairs));
      } else {
        GridFunction gx(g.n, g.L);
        for (std::int64_t y : support)
          gx.set(y, f[y] * ktab[static_cast<std::size_t>(sq_cell_distance(x, y, g))]);
        out.set(x, choquet_integral(gx, p.delta, p.backend));
      }
    }
  });
  return res;
}

OperatorResult classical_riesz(const GridFunction& f, const OperatorParams& params) {
  OperatorParams p = resolve(f, params);
  if (!(p.alpha > 0) || !(p.alpha < f.dim()))
    throw ValidationError("classical riesz potential requires alpha in (0, n)");
  Grid g = grid_of(f);
  OperatorResult res = make_result(f, "classical-riesz", p);

  std::vector<double> ktab = kernel_table(g, p.distance_floor, p.alpha - g.n);
  double cellvol = std::pow(g.h, g.n);
  std::vector<std::int64_t> support;
  for (std::int64_t y = 0; y < g.cells; ++y)
    if (f[y] > 0) support.push_back(y);

  auto& out = res.output;
  parallel_blocks(g.cells, p.threads, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t x = lo; x < hi; ++x) {
      double sum = 0;
      for (std::int64_t y : support)
        sum += f[y] * ktab[static_cast<std::size_t>(sq_cell_distance(x, y, g))];
      out.set(x, sum * cellvol);
    }
  });
  return res;
}

}  // namespace choq
