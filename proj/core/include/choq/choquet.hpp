#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "choq/content.hpp"
#include "choq/dyadic_engine.hpp"
#include "choq/geometry.hpp"

namespace choq {

enum class Backend { dyadic_exact, ball_greedy_upper };

const char* backend_name(Backend b);

/// Step distribution function of f: thresholds are the sorted distinct
/// positive finite values, contents[k] = H({f >= thresholds[k]}), which is
/// the value of t -> H({f > t}) on [thresholds[k-1], thresholds[k]).
struct DistributionFunction {
  std::vector<double> thresholds;
  std::vector<double> contents;
  double infinity_content = 0;
};

DistributionFunction distribution(const GridFunction& f, double delta, Backend backend,
                                  const ContentParams* ball_params = nullptr);

/// sum_k (t_k - t_{k-1}) * contents[k-1] with t_0 = 0; +inf iff the set
/// {f = inf} has positive content.
double integral_from_distribution(const DistributionFunction& d);

/// sum_k (t_k^p - t_{k-1}^p) * contents[k-1]: the closed form of
/// int p t^{p-1} H({f > t}) dt per step interval.
double power_integral_from_distribution(const DistributionFunction& d, double p);

double choquet_integral(const GridFunction& f, double delta, Backend backend = Backend::dyadic_exact,
                        const ContentParams* ball_params = nullptr);
double choquet_integral_power(const GridFunction& f, double p, double delta,
                              Backend backend = Backend::dyadic_exact,
                              const ContentParams* ball_params = nullptr);
double quasi_norm(const GridFunction& f, double p, double delta,
                  Backend backend = Backend::dyadic_exact, const ContentParams* ball_params = nullptr);

/// Layer-cake integrator over the dyadic backend. Construction memoizes the
/// decreasing-value cell order of f; each restricted integral is then one
/// sweep over that order feeding the incremental cover engine. Instances are
/// not thread-safe; use one per worker thread (values are pure functions of
/// the inputs, so any scheduling yields identical results).
class RestrictedIntegrator {
 public:
  RestrictedIntegrator(const GridFunction& f, double delta)
      : f_(&f), engine_(f.dim(), f.level(), delta) {
    order_.reserve(static_cast<std::size_t>(f.size()));
    for (std::int64_t i = 0; i < f.size(); ++i)
      if (f[i] > 0) order_.push_back(i);
    std::sort(order_.begin(), order_.end(), [&f](std::int64_t a, std::int64_t b) {
      if (f[a] != f[b]) return f[a] > f[b];
      return a < b;
    });
  }

  const GridFunction& fn() const { return *f_; }

  /// Integral of f restricted to the cells accepted by `member`.
  template <class Member>
  double integrate_if(Member&& member) {
    engine_.clear();
    th_.clear();
    ct_.clear();
    bool any = false;
    double cur = 0;
    for (std::int64_t idx : order_) {
      double v = (*f_)[idx];
      if (!member(idx)) continue;
      if (std::isinf(v)) return std::numeric_limits<double>::infinity();
      if (any && v != cur) {
        th_.push_back(cur);
        ct_.push_back(engine_.value());
      }
      cur = v;
      any = true;
      engine_.add_cell(idx);
    }
    if (any) {
      th_.push_back(cur);
      ct_.push_back(engine_.value());
    }
    return sum_layers();
  }

  double integrate_all() {
    return integrate_if([](std::int64_t) { return true; });
  }

  /// Integral of |f - shift| restricted to the cells accepted by `member`.
  template <class Member>
  double integrate_abs_shift_if(double shift, Member&& member) {
    scratch_.clear();
    for (std::int64_t i = 0; i < f_->size(); ++i) {
      if (!member(i)) continue;
      double g = std::fabs((*f_)[i] - shift);
      if (g > 0) scratch_.emplace_back(g, i);
    }
    std::sort(scratch_.begin(), scratch_.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    engine_.clear();
    th_.clear();
    ct_.clear();
    bool any = false;
    double cur = 0;
    for (const auto& [g, idx] : scratch_) {
      if (std::isinf(g)) return std::numeric_limits<double>::infinity();
      if (any && g != cur) {
        th_.push_back(cur);
        ct_.push_back(engine_.value());
      }
      cur = g;
      any = true;
      engine_.add_cell(idx);
    }
    if (any) {
      th_.push_back(cur);
      ct_.push_back(engine_.value());
    }
    return sum_layers();
  }

 private:
  // th_/ct_ hold thresholds in decreasing order; the layer-cake sum walks
  // them ascending, matching integral_from_distribution's summation order.
  double sum_layers() const {
    double integral = 0, prev = 0;
    for (std::size_t j = th_.size(); j-- > 0;) {
      integral += (th_[j] - prev) * ct_[j];
      prev = th_[j];
    }
    return integral;
  }

  const GridFunction* f_;
  DyadicEngine engine_;
  std::vector<std::int64_t> order_;
  std::vector<double> th_, ct_;
  std::vector<std::pair<double, std::int64_t>> scratch_;
};

}  // namespace choq
