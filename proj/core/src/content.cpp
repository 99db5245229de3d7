#include "choq/content.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

namespace choq {

void check_delta(double delta, int n) {
  if (!(delta > 0) || !(delta <= n))
    throw ValidationError("delta must lie in (0, n] = (0, " + std::to_string(n) + "], got " +
                          std::to_string(delta));
}

const char* backend_name(ContentBackend b) {
  switch (b) {
    case ContentBackend::dyadic_exact: return "dyadic-exact";
    case ContentBackend::ball_greedy: return "ball-greedy";
    case ContentBackend::ball_exact_small: return "ball-exact-small";
  }
  return "?";
}

DeltaBasis DeltaBasis::make(double delta, int L) {
  if (!(delta > 0)) throw ValidationError("delta must be positive");
  DeltaBasis basis;
  basis.delta = delta;
  basis.L = L;
  double td = 2.0 * delta;
  basis.half_integer = td == std::floor(td) && td <= 2.0 * kMaxDim;
  if (basis.half_integer) {
    basis.twodelta = static_cast<int>(td);
    basis.scale2 = (L * basis.twodelta + 1) / 2;
  }
  for (int l = 0; l <= kMaxLevelStore; ++l) {
    double t = l * delta;
    double ip = std::floor(t);
    double fr = t - ip;
    // ldexp keeps basis values at equal fractional parts exact power-of-two
    // multiples of each other, which keeps scaling identities tie-safe.
    basis.b[static_cast<std::size_t>(l)] = std::ldexp(fr == 0.0 ? 1.0 : std::exp2(-fr), -static_cast<int>(ip));
  }
  return basis;
}

int ExactVal::sign(const ExactVal& v) {
  if (v.p == 0 && v.q == 0) return 0;
  if (v.p >= 0 && v.q >= 0) return 1;
  if (v.p <= 0 && v.q <= 0) return -1;
  // Mixed signs: sign of p + q*sqrt(2) from p^2 vs 2 q^2.
  __int128 p2 = static_cast<__int128>(v.p) * v.p;
  __int128 q2 = static_cast<__int128>(v.q) * v.q * 2;
  if (v.p > 0) return p2 > q2 ? 1 : -1;  // q < 0
  return q2 > p2 ? 1 : -1;               // p < 0, q > 0
}

double ExactVal::approx(int scale2) const {
  return std::ldexp(static_cast<double>(p) + static_cast<double>(q) * std::numbers::sqrt2, -scale2);
}

ExactVal CoverHistogram::exact(const DeltaBasis& basis) const {
  ExactVal v;
  for (int l = 0; l <= basis.L; ++l) {
    std::uint32_t m = count[static_cast<std::size_t>(l)];
    if (!m) continue;
    int T = l * basis.twodelta;
    if (T % 2 == 0)
      v.p += static_cast<std::int64_t>(m) << (basis.scale2 - T / 2);
    else
      v.q += static_cast<std::int64_t>(m) << (basis.scale2 - (T + 1) / 2);
  }
  return v;
}

double CoverHistogram::value(const DeltaBasis& basis) const {
  if (basis.half_integer) return exact(basis).approx(basis.scale2);
  double s = 0;
  for (int l = 0; l <= basis.L; ++l) {
    std::uint32_t m = count[static_cast<std::size_t>(l)];
    if (m) s += static_cast<double>(m) * basis.b[static_cast<std::size_t>(l)];
  }
  return s;
}

CoverHistogram CoverHistogram::operator+(const CoverHistogram& o) const {
  CoverHistogram r;
  for (std::size_t l = 0; l < r.count.size(); ++l) r.count[l] = count[l] + o.count[l];
  return r;
}

// -- dyadic cover solver ------------------------------------------------------
//
// value(Q) = 0 if Q misses E; l(Q)^delta at an occupied leaf; else
// min(l(Q)^delta, sum over children). Ties prefer the coarser cube. Child
// sums run in index order so results are reproducible bit for bit.

namespace {

struct ExactCost {
  using V = ExactVal;
  const DeltaBasis* basis;
  V zero() const { return {}; }
  bool is_zero(const V& v) const { return v.is_zero(); }
  V cube(int l) const {
    ExactVal v;
    int T = l * basis->twodelta;
    if (T % 2 == 0)
      v.p = std::int64_t{1} << (basis->scale2 - T / 2);
    else
      v.q = std::int64_t{1} << (basis->scale2 - (T + 1) / 2);
    return v;
  }
  void add(V& a, const V& b) const { a += b; }
  bool le(const V& a, const V& b) const { return ExactVal::compare(a, b) <= 0; }
};

struct DoubleCost {
  using V = double;
  const DeltaBasis* basis;
  V zero() const { return 0.0; }
  bool is_zero(const V& v) const { return v == 0.0; }
  V cube(int l) const { return basis->b[static_cast<std::size_t>(l)]; }
  void add(V& a, const V& b) const { a += b; }
  bool le(const V& a, const V& b) const { return a <= b; }
};

// take[l][j]: node covered by its own cube rather than by children.
struct DpState {
  std::vector<std::vector<std::uint8_t>> take;
  std::vector<std::vector<std::uint8_t>> occ;
};

template <class Cost>
typename Cost::V run_dp(const GridSet& E, const Cost& cost, DpState& st) {
  const int n = E.dim(), L = E.level();
  const int combos = 1 << n;
  st.take.assign(static_cast<std::size_t>(L) + 1, {});
  st.occ.assign(static_cast<std::size_t>(L) + 1, {});
  std::vector<typename Cost::V> cur, next;

  for (int l = L; l >= 0; --l) {
    std::int64_t nodes = std::int64_t{1} << (n * l);
    st.take[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(nodes), 0);
    st.occ[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(nodes), 0);
    cur.assign(static_cast<std::size_t>(nodes), cost.zero());
    if (l == L) {
      for (std::int64_t j = 0; j < nodes; ++j) {
        if (E.test(j)) {
          cur[static_cast<std::size_t>(j)] = cost.cube(L);
          st.take[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = 1;
          st.occ[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = 1;
        }
      }
    } else {
      int cl = l + 1;
      std::int64_t cmask = (std::int64_t{1} << cl) - 1;
      std::array<std::int64_t, 8> off{};
      for (int c = 0; c < combos; ++c) {
        std::int64_t o = 0;
        for (int i = 0; i < n; ++i)
          o |= static_cast<std::int64_t>((c >> i) & 1) << (cl * (n - 1 - i));
        off[static_cast<std::size_t>(c)] = o;
      }
      (void)cmask;
      for (std::int64_t j = 0; j < nodes; ++j) {
        std::int64_t base = 0;
        for (int i = 0; i < n; ++i) {
          std::int64_t a = (j >> (l * (n - 1 - i))) & ((std::int64_t{1} << l) - 1);
          base |= (a << 1) << (cl * (n - 1 - i));
        }
        typename Cost::V sum = cost.zero();
        bool occ = false;
        for (int c = 0; c < combos; ++c) {
          const auto& v = next[static_cast<std::size_t>(base + off[static_cast<std::size_t>(c)])];
          if (!cost.is_zero(v)) occ = true;
          cost.add(sum, v);
        }
        if (!occ) continue;
        st.occ[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = 1;
        typename Cost::V own = cost.cube(l);
        if (cost.le(own, sum)) {
          cur[static_cast<std::size_t>(j)] = own;
          st.take[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = 1;
        } else {
          cur[static_cast<std::size_t>(j)] = sum;
        }
      }
    }
    next = std::move(cur);
  }
  return next.empty() ? cost.zero() : next[0];
}

void reconstruct_cover(const GridSet& E, const DpState& st, std::vector<DyadicCube>& out) {
  const int n = E.dim(), L = E.level();
  const int combos = 1 << n;
  struct Frame {
    int l;
    std::int64_t j;
  };
  std::vector<Frame> stack;
  if (!st.occ[0].empty() && st.occ[0][0]) stack.push_back({0, 0});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (st.take[static_cast<std::size_t>(f.l)][static_cast<std::size_t>(f.j)]) {
      DyadicCube q;
      q.n = n;
      q.level = f.l;
      for (int i = 0; i < n; ++i)
        q.index[static_cast<std::size_t>(i)] =
            static_cast<int>((f.j >> (f.l * (n - 1 - i))) & ((std::int64_t{1} << f.l) - 1));
      out.push_back(q);
      continue;
    }
    int cl = f.l + 1;
    std::int64_t base = 0;
    for (int i = 0; i < n; ++i) {
      std::int64_t a = (f.j >> (f.l * (n - 1 - i))) & ((std::int64_t{1} << f.l) - 1);
      base |= (a << 1) << (cl * (n - 1 - i));
    }
    // Push in reverse so children pop in index order.
    for (int c = combos - 1; c >= 0; --c) {
      std::int64_t o = 0;
      for (int i = 0; i < n; ++i)
        o |= static_cast<std::int64_t>((c >> i) & 1) << (cl * (n - 1 - i));
      std::int64_t cj = base + o;
      if (st.occ[static_cast<std::size_t>(cl)][static_cast<std::size_t>(cj)]) stack.push_back({cl, cj});
    }
  }
}

}  // namespace

ContentResult dyadic_content(const GridSet& E, double delta) {
  check_delta(delta, E.dim());
  DeltaBasis basis = DeltaBasis::make(delta, E.level());
  ContentResult r;
  r.backend = ContentBackend::dyadic_exact;
  r.delta = delta;
  DpState st;
  if (basis.half_integer) {
    ExactVal root = run_dp(E, ExactCost{&basis}, st);
    reconstruct_cover(E, st, r.cube_cover);
    for (const auto& q : r.cube_cover) ++r.hist.count[static_cast<std::size_t>(q.level)];
    r.exact = root;
    r.exact_valid = true;
    r.exact_scale = basis.scale2;
    r.value = root.approx(basis.scale2);
  } else {
    double root = run_dp(E, DoubleCost{&basis}, st);
    reconstruct_cover(E, st, r.cube_cover);
    for (const auto& q : r.cube_cover) ++r.hist.count[static_cast<std::size_t>(q.level)];
    r.value = root;
  }
  r.lower = r.upper = r.value;
  return r;
}

// -- ball-cover backends ------------------------------------------------------
//
// Geometry in half-cell integer units: cell [idx, idx+1) spans [2i, 2i+2],
// its center is 2i+1, candidate radii satisfy r^2 = 2^k (h/2)^2. Containment
// of a half-open cell in an open ball is then an exact integer decision,
// including the corner rule at sup^2 == r^2.

namespace {

struct IntBall {
  std::array<std::int32_t, kMaxDim> c{};  // half-cell units
  int k = 0;                              // r^2 = 2^k in half-cell units
  double cost = 0;                        // r^delta
};

bool int_cell_inside(const CellIdx& idx, int n, const IntBall& b) {
  std::int64_t sup2 = 0;
  bool hi_strictly_farther = false;
  for (int i = 0; i < n; ++i) {
    std::int64_t lo = 2 * static_cast<std::int64_t>(idx[static_cast<std::size_t>(i)]);
    std::int64_t hi = lo + 2;
    std::int64_t dlo = std::llabs(b.c[static_cast<std::size_t>(i)] - lo);
    std::int64_t dhi = std::llabs(b.c[static_cast<std::size_t>(i)] - hi);
    std::int64_t m = dlo > dhi ? dlo : dhi;
    sup2 += m * m;
    if (dhi > dlo) hi_strictly_farther = true;
  }
  std::int64_t rr2 = std::int64_t{1} << b.k;
  return sup2 < rr2 || (sup2 == rr2 && hi_strictly_farther);
}

struct Family {
  std::vector<IntBall> balls;
  std::vector<std::vector<std::uint64_t>> cover;  // bitsets over `occupied`
  std::vector<std::int64_t> occupied;
  std::size_t words = 0;
  int n = 0, L = 0;
};

double ball_cost(int k, int L, double delta) {
  // r = 2^(k/2 - (L+1)), so r^delta = 2^(delta * (k/2 - L - 1)).
  return std::exp2(delta * (0.5 * k - (L + 1)));
}

Ball to_ball(const IntBall& ib, int n, int L) {
  Ball b;
  b.n = n;
  double half = std::ldexp(1.0, -(L + 1));
  for (int i = 0; i < n; ++i) b.center[static_cast<std::size_t>(i)] = ib.c[static_cast<std::size_t>(i)] * half;
  double r = std::exp2(0.5 * ib.k - (L + 1));
  // Irrational radii round; one ulp up keeps the double-precision certificate
  // check consistent with the exact integer containment decision.
  if (ib.k % 2 != 0) r = std::nextafter(r, std::numeric_limits<double>::infinity());
  b.radius = r;
  return b;
}

Family build_family(const GridSet& E, const ContentParams& params) {
  const int n = E.dim(), L = E.level();
  Family fam;
  fam.n = n;
  fam.L = L;
  fam.occupied = E.occupied();
  std::int64_t m = static_cast<std::int64_t>(fam.occupied.size());
  if (m == 0) return fam;
  if (m > params.max_occupied)
    throw ValidationError("ball backend instance too large: " + std::to_string(m) +
                          " occupied cells exceed cap " + std::to_string(params.max_occupied));

  // Candidate centers: occupied-cell centers, optionally their corners, plus
  // the centers of the optimal dyadic cover's cubes (so circumscribing that
  // cover is always expressible in the family, which is what the derived
  // upper comparability bound leans on).
  std::vector<std::array<std::int32_t, kMaxDim>> centers;
  auto push_center = [&](const std::array<std::int32_t, kMaxDim>& c) { centers.push_back(c); };
  for (std::int64_t f : fam.occupied) {
    CellIdx idx = E.coords(f);
    std::array<std::int32_t, kMaxDim> cc{};
    for (int i = 0; i < n; ++i) cc[static_cast<std::size_t>(i)] = 2 * idx[static_cast<std::size_t>(i)] + 1;
    push_center(cc);
    if (params.corner_centers) {
      for (int c = 0; c < (1 << n); ++c) {
        std::array<std::int32_t, kMaxDim> corner{};
        for (int i = 0; i < n; ++i)
          corner[static_cast<std::size_t>(i)] =
              2 * idx[static_cast<std::size_t>(i)] + 2 * ((c >> i) & 1);
        push_center(corner);
      }
    }
  }
  for (const DyadicCube& q : dyadic_content(E, params.delta).cube_cover) {
    std::array<std::int32_t, kMaxDim> cc{};
    for (int i = 0; i < n; ++i)
      cc[static_cast<std::size_t>(i)] =
          static_cast<std::int32_t>((2 * q.index[static_cast<std::size_t>(i)] + 1)
                                    << (L - q.level));
    push_center(cc);
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

  // Radius ladder r = r_min * 2^(j/2), r_min >= half cell width, up to the
  // first radius whose ball can contain the whole grid.
  double h = std::ldexp(1.0, -L);
  double rmin = params.r_min > 0 ? params.r_min : h / 2;
  if (rmin < h / 2) throw ValidationError("r_min must be at least half a cell width");
  int k_lo = 0;
  while (std::exp2(0.5 * k_lo - (L + 1)) < rmin) ++k_lo;
  int k_hi = k_lo;
  if (params.r_max > 0) {
    while (std::exp2(0.5 * (k_hi + 1) - (L + 1)) <= params.r_max) ++k_hi;
  } else {
    while (std::exp2(0.5 * k_hi - (L + 1)) < std::sqrt(static_cast<double>(n))) ++k_hi;
    ++k_hi;  // one rung past sqrt(n) so a single ball can always cover the cube
  }

  fam.words = static_cast<std::size_t>((m + 63) / 64);
  std::vector<CellIdx> occ_idx(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) occ_idx[static_cast<std::size_t>(i)] = E.coords(fam.occupied[static_cast<std::size_t>(i)]);

  for (int k = k_lo; k <= k_hi; ++k) {
    for (const auto& c : centers) {
      IntBall ib;
      ib.c = c;
      ib.k = k;
      ib.cost = ball_cost(k, L, params.delta);
      std::vector<std::uint64_t> bits(fam.words, 0);
      bool any = false;
      for (std::int64_t i = 0; i < m; ++i) {
        if (int_cell_inside(occ_idx[static_cast<std::size_t>(i)], n, ib)) {
          bits[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
          any = true;
        }
      }
      if (!any) continue;
      fam.balls.push_back(ib);
      fam.cover.push_back(std::move(bits));
    }
  }
  // Canonical order: radius, then center lexicographic. Greedy scans keep the
  // first best, which realizes the smaller-radius-then-lex tie rule.
  std::vector<std::size_t> order(fam.balls.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (fam.balls[a].k != fam.balls[b].k) return fam.balls[a].k < fam.balls[b].k;
    return fam.balls[a].c < fam.balls[b].c;
  });
  Family sorted;
  sorted.n = fam.n;
  sorted.L = fam.L;
  sorted.occupied = fam.occupied;
  sorted.words = fam.words;
  sorted.balls.reserve(order.size());
  sorted.cover.reserve(order.size());
  for (std::size_t i : order) {
    sorted.balls.push_back(fam.balls[i]);
    sorted.cover.push_back(std::move(fam.cover[i]));
  }
  return sorted;
}

std::int64_t popcount_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::int64_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += __builtin_popcountll(a[i] & b[i]);
  return c;
}

GridSet subset_from_bits(const Family& fam, const std::vector<std::uint64_t>& bits, bool complement,
                         const GridSet& proto) {
  GridSet s(proto.dim(), proto.level());
  for (std::size_t i = 0; i < fam.occupied.size(); ++i) {
    bool in = (bits[i / 64] >> (i % 64)) & 1;
    if (in != complement) s.set(fam.occupied[i]);
  }
  return s;
}

}  // namespace

ContentResult ball_content_upper(const GridSet& E, const ContentParams& params) {
  check_delta(params.delta, E.dim());
  ContentResult r;
  r.backend = ContentBackend::ball_greedy;
  r.delta = params.delta;
  ContentResult dy = dyadic_content(E, params.delta);
  double c_low = comparability_bracket(E.dim(), params.delta).first;

  Family fam = build_family(E, params);
  std::int64_t m = static_cast<std::int64_t>(fam.occupied.size());
  if (m == 0) {
    r.value = r.lower = r.upper = 0;
    return r;
  }
  if (fam.balls.empty()) throw ValidationError("empty candidate ball family");

  std::vector<std::uint64_t> remaining(fam.words, ~std::uint64_t{0});
  if (m % 64) remaining.back() = (std::uint64_t{1} << (m % 64)) - 1;
  std::int64_t uncovered = m;
  double total = 0;
  while (uncovered > 0) {
    std::size_t best = fam.balls.size();
    double best_score = -1;
    std::int64_t best_new = 0;
    for (std::size_t i = 0; i < fam.balls.size(); ++i) {
      std::int64_t fresh = popcount_and(fam.cover[i], remaining);
      if (fresh == 0) continue;
      double score = static_cast<double>(fresh) / fam.balls[i].cost;
      if (score > best_score) {
        best_score = score;
        best = i;
        best_new = fresh;
      }
    }
    if (best == fam.balls.size())
      throw ValidationError("candidate ball family cannot cover the occupied cells");
    (void)best_new;
    for (std::size_t w = 0; w < fam.words; ++w) remaining[w] &= ~fam.cover[best][w];
    uncovered = 0;
    for (std::size_t w = 0; w < fam.words; ++w) uncovered += __builtin_popcountll(remaining[w]);
    total += fam.balls[best].cost;
    r.ball_cover.push_back(to_ball(fam.balls[best], fam.n, fam.L));
  }
  r.value = r.upper = total;
  r.lower = c_low * dy.value;
  return r;
}

ContentResult ball_content_exact_small(const GridSet& E, const ContentParams& params) {
  check_delta(params.delta, E.dim());
  ContentResult r;
  r.backend = ContentBackend::ball_exact_small;
  r.delta = params.delta;

  std::int64_t m = E.count();
  if (m == 0) {
    r.value = r.lower = r.upper = 0;
    return r;
  }
  if (m > params.exact_occupied_cap)
    throw ValidationError("exact ball cover: " + std::to_string(m) + " occupied cells exceed cap " +
                          std::to_string(params.exact_occupied_cap));
  Family fam = build_family(E, params);
  if (static_cast<std::int64_t>(fam.balls.size()) > params.exact_candidate_cap)
    throw ValidationError("exact ball cover: " + std::to_string(fam.balls.size()) +
                          " candidates exceed cap " + std::to_string(params.exact_candidate_cap));
  if (fam.balls.empty()) throw ValidationError("empty candidate ball family");

  double c_low = comparability_bracket(E.dim(), params.delta).first;

  // Seed with greedy.
  ContentResult greedy = ball_content_upper(E, params);
  double best = greedy.value;
  std::vector<std::size_t> best_choice;  // filled only when improving on greedy

  std::vector<std::vector<std::size_t>> covering(static_cast<std::size_t>(m));
  for (std::size_t b = 0; b < fam.balls.size(); ++b)
    for (std::int64_t i = 0; i < m; ++i)
      if ((fam.cover[b][static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1)
        covering[static_cast<std::size_t>(i)].push_back(b);

  std::vector<std::uint64_t> covered(fam.words, 0);
  std::vector<std::size_t> choice;

  auto lower_bound_remaining = [&]() {
    GridSet rem = subset_from_bits(fam, covered, true, E);
    if (rem.empty()) return 0.0;
    return c_low * dyadic_content(rem, params.delta).value;
  };

  std::function<void(double)> rec = [&](double cur) {
    std::int64_t pick = -1;
    std::size_t pick_fanout = 0;
    for (std::int64_t i = 0; i < m; ++i) {
      if ((covered[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1) continue;
      std::size_t fanout = covering[static_cast<std::size_t>(i)].size();
      if (pick < 0 || fanout < pick_fanout) {
        pick = i;
        pick_fanout = fanout;
      }
    }
    if (pick < 0) {
      if (cur < best) {
        best = cur;
        best_choice = choice;
      }
      return;
    }
    if (cur + lower_bound_remaining() >= best) return;
    for (std::size_t b : covering[static_cast<std::size_t>(pick)]) {
      if (cur + fam.balls[b].cost >= best) continue;
      std::vector<std::uint64_t> saved = covered;
      for (std::size_t w = 0; w < fam.words; ++w) covered[w] |= fam.cover[b][w];
      choice.push_back(b);
      rec(cur + fam.balls[b].cost);
      choice.pop_back();
      covered = saved;
    }
  };
  rec(0.0);

  r.value = r.lower = r.upper = best;
  if (!best_choice.empty()) {
    for (std::size_t b : best_choice) r.ball_cover.push_back(to_ball(fam.balls[b], fam.n, fam.L));
  } else {
    r.ball_cover = greedy.ball_cover;
  }
  return r;
}

std::pair<double, double> comparability_bracket(int n, double delta) {
  check_delta(delta, n);
  double c_low = std::exp2(-static_cast<double>(n) - 2.0 * delta);
  double c_high = std::pow(std::sqrt(static_cast<double>(n)) / 2.0, delta);
  return {c_low, c_high};
}

bool cover_is_valid(const GridSet& E, const std::vector<DyadicCube>& cubes) {
  const int n = E.dim(), L = E.level();
  for (std::int64_t f = 0; f < E.size(); ++f) {
    if (!E.test(f)) continue;
    CellIdx idx = E.coords(f);
    bool covered = false;
    for (const auto& q : cubes) {
      if (q.level > L) continue;
      bool inside = true;
      for (int i = 0; i < n; ++i)
        if ((idx[static_cast<std::size_t>(i)] >> (L - q.level)) != q.index[static_cast<std::size_t>(i)]) {
          inside = false;
          break;
        }
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool cover_is_valid(const GridSet& E, const std::vector<Ball>& balls) {
  const int n = E.dim(), L = E.level();
  for (std::int64_t f = 0; f < E.size(); ++f) {
    if (!E.test(f)) continue;
    CellIdx idx = E.coords(f);
    bool covered = false;
    for (const auto& b : balls)
      if (cell_inside_ball(idx, n, L, b)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

}  // namespace choq
